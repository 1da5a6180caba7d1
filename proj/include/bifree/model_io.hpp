#pragma once

#include <cstdint>
#include <memory>
#include <nlohmann/json_fwd.hpp>
#include <optional>
#include <string>
#include <vector>

#include "bifree/matrix_model.hpp"
#include "bifree/product.hpp"
#include "bifree/word.hpp"

namespace bifree {

struct Options {
  int max_word_len = 2;
  double psd_tol = kDefaultPsdTol;
  double moment_tol = kDefaultMomentTol;
  std::size_t term_cap = kDefaultTermCap;
  std::uint64_t seed = 42;

  friend bool operator==(const Options&, const Options&) = default;
};

// State of one component: Schmidt weights or an explicit dim^2 vector.
struct StateSpec {
  std::optional<std::vector<double>> schmidt;
  std::optional<Eigen::VectorXcd> vector;
};

struct ComponentSpec {
  int dim = 1;
  std::vector<Eigen::MatrixXcd> generators;
  StateSpec state;
};

struct ModelFile {
  std::vector<ComponentSpec> components;
  Options options;
};

bool operator==(const StateSpec& a, const StateSpec& b);
bool operator==(const ComponentSpec& a, const ComponentSpec& b);
bool operator==(const ModelFile& a, const ModelFile& b);

// JSON schema: complex numbers are [re, im] pairs, matrices are arrays of
// rows. Unknown keys and malformed shapes are rejected.
ModelFile parse_model(const nlohmann::json& j);
ModelFile load_model(const std::string& path);
nlohmann::ordered_json model_to_json(const ModelFile& model);

std::vector<MatrixModel> instantiate(const ModelFile& model);
BiFreeSystem make_system(const ModelFile& model);

// Word spec: whitespace-separated letters in operator order; `i.g` is
// generator g of component i, `~i.g` its reflection. Empty spec = unit.
Word parse_word_spec(const std::string& spec);
std::string word_spec(const Word& w);

}  // namespace bifree
