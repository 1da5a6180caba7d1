#include <nlohmann/json.hpp>

#include "bifree/model_io.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace bifree;
using nlohmann::json;

namespace {

json valid_model() {
  return json::parse(R"({
    "components": [
      {
        "dim": 2,
        "generators": [
          [[[0.0, 0.0], [1.0, 0.0]], [[0.0, 0.0], [0.0, 0.0]]],
          [[[0.5, 0.0], [0.0, -0.5]], [[0.25, 0.0], [0.0, 0.0]]]
        ],
        "state": {"schmidt": [0.5, 0.5]}
      },
      {
        "dim": 1,
        "generators": [[[[2.0, 1.0]]]],
        "state": {"vector": [[1.0, 0.0]]}
      }
    ],
    "options": {"max_word_len": 3, "psd_tol": 1e-8, "moment_tol": 1e-9,
                "term_cap": 100000, "seed": 7}
  })");
}

}  // namespace

TEST_CASE("a valid model parses and instantiates") {
  const ModelFile model = parse_model(valid_model());
  REQUIRE(model.components.size() == 2);
  CHECK(model.components[0].dim == 2);
  CHECK(model.components[0].generators.size() == 2);
  REQUIRE(model.components[0].state.schmidt.has_value());
  CHECK(model.options.max_word_len == 3);
  CHECK(model.options.term_cap == 100000);
  CHECK(model.options.seed == 7);

  const auto models = instantiate(model);
  REQUIRE(models.size() == 2);
  CHECK(models[0].dim() == 2);
  CHECK(std::abs(models[0].state()(0) - Scalar(1.0 / std::sqrt(2.0))) <=
        1e-15);
  CHECK(models[1].dim() == 1);

  const BiFreeSystem sys = make_system(model);
  CHECK(sys.component_count() == 2);
  CHECK(std::abs(sys.evaluate_tau(NCPoly::unit()) - Scalar(1.0)) <= 1e-12);
}

TEST_CASE("defaults apply when options are omitted") {
  json j = valid_model();
  j.erase("options");
  const ModelFile model = parse_model(j);
  CHECK(model.options.max_word_len == 2);
  CHECK(model.options.psd_tol == kDefaultPsdTol);
  CHECK(model.options.moment_tol == kDefaultMomentTol);
  CHECK(model.options.term_cap == kDefaultTermCap);
  CHECK(model.options.seed == 42);
}

TEST_CASE("parse and re-serialize round-trips to an equal model") {
  const ModelFile model = parse_model(valid_model());
  const ModelFile again = parse_model(model_to_json(model));
  CHECK(model == again);
  // And the serialized form is stable.
  CHECK(model_to_json(model).dump() == model_to_json(again).dump());
}

TEST_CASE("validation failures") {
  auto expect_throw = [](json j) {
    CHECK_THROWS_AS(parse_model(j), ParseError);
  };

  json no_components = valid_model();
  no_components["components"] = json::array();
  expect_throw(no_components);

  json bad_dim = valid_model();
  bad_dim["components"][0]["dim"] = 0;
  expect_throw(bad_dim);

  json bad_shape = valid_model();
  bad_shape["components"][0]["generators"][0] = json::array();
  expect_throw(bad_shape);

  json bad_entry = valid_model();
  bad_entry["components"][0]["generators"][0][0][0] = 1.25;
  expect_throw(bad_entry);

  json bad_state_len = valid_model();
  bad_state_len["components"][1]["state"]["vector"] =
      json::array({json::array({1.0, 0.0}), json::array({0.0, 0.0})});
  expect_throw(bad_state_len);

  json negative_weight = valid_model();
  negative_weight["components"][0]["state"]["schmidt"] = {1.0, -0.5};
  expect_throw(negative_weight);

  json both_states = valid_model();
  both_states["components"][0]["state"]["vector"] = json::array(
      {json::array({1.0, 0.0}), json::array({0.0, 0.0}),
       json::array({0.0, 0.0}), json::array({0.0, 0.0})});
  expect_throw(both_states);

  json unknown_key = valid_model();
  unknown_key["extra"] = 1;
  expect_throw(unknown_key);

  json unknown_option = valid_model();
  unknown_option["options"]["psdtol"] = 1e-8;
  expect_throw(unknown_option);
}

TEST_CASE("all-zero Schmidt weights are rejected at instantiation") {
  json j = valid_model();
  j["components"][0]["state"]["schmidt"] = {0.0, 0.0};
  const ModelFile model = parse_model(j);
  CHECK_THROWS_AS(instantiate(model), ModelError);
}

TEST_CASE("word specs parse in operator order") {
  const Word w = parse_word_spec("~0.1 1.0 0.1");
  REQUIRE(w.size() == 3);
  CHECK(w.letters()[0] == neg_letter(0, 1));  // reflected block first
  CHECK(w.boundary() == 1);

  CHECK(parse_word_spec("").empty());
  CHECK(parse_word_spec("  \t ").empty());
  CHECK(word_spec(w) == "~0.1 1.0 0.1");
  CHECK(word_spec(Word()) == "");

  const Word mixed = parse_word_spec("0.0 ~1.1");
  CHECK(word_spec(mixed) == "~1.1 0.0");  // normal form

  CHECK_THROWS_AS(parse_word_spec("abc"), ParseError);
  CHECK_THROWS_AS(parse_word_spec("1"), ParseError);
  CHECK_THROWS_AS(parse_word_spec("1."), ParseError);
  CHECK_THROWS_AS(parse_word_spec(".2"), ParseError);
  CHECK_THROWS_AS(parse_word_spec("~~1.2"), ParseError);
  CHECK_THROWS_AS(parse_word_spec("1.2.3"), ParseError);
  CHECK_THROWS_AS(parse_word_spec("-1.2"), ParseError);
}
