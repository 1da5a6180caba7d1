#include "bifree/model_io.hpp"

#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

namespace bifree {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

void require_keys(const json& j, std::initializer_list<const char*> allowed,
                  const std::string& where) {
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw ParseError("model: unknown key '" + key + "' in " + where);
  }
}

Scalar parse_complex(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ParseError("model: " + where + " must be a [re, im] pair");
  return {j[0].get<double>(), j[1].get<double>()};
}

Eigen::MatrixXcd parse_matrix(const json& j, int dim,
                              const std::string& where) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim)
    throw ParseError("model: " + where + " must have " + std::to_string(dim) +
                     " rows");
  Eigen::MatrixXcd m(dim, dim);
  for (int r = 0; r < dim; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<int>(row.size()) != dim)
      throw ParseError("model: " + where + " row " + std::to_string(r) +
                       " must have " + std::to_string(dim) + " entries");
    for (int c = 0; c < dim; ++c)
      m(r, c) = parse_complex(row[static_cast<std::size_t>(c)],
                              where + " entry");
  }
  return m;
}

ordered_json complex_to_json(const Scalar& z) {
  return ordered_json::array({z.real(), z.imag()});
}

ordered_json matrix_to_json(const Eigen::MatrixXcd& m) {
  ordered_json rows = ordered_json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    ordered_json row = ordered_json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      row.push_back(complex_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

bool operator==(const StateSpec& a, const StateSpec& b) {
  if (a.schmidt != b.schmidt) return false;
  if (a.vector.has_value() != b.vector.has_value()) return false;
  return !a.vector || *a.vector == *b.vector;
}

bool operator==(const ComponentSpec& a, const ComponentSpec& b) {
  return a.dim == b.dim && a.generators == b.generators && a.state == b.state;
}

bool operator==(const ModelFile& a, const ModelFile& b) {
  return a.components == b.components && a.options == b.options;
}

ModelFile parse_model(const json& j) {
  if (!j.is_object()) throw ParseError("model: root must be an object");
  require_keys(j, {"components", "options"}, "root");
  if (!j.contains("components") || !j["components"].is_array() ||
      j["components"].empty())
    throw ParseError("model: 'components' must be a nonempty array");

  ModelFile model;
  for (std::size_t i = 0; i < j["components"].size(); ++i) {
    const json& cj = j["components"][i];
    const std::string where = "components[" + std::to_string(i) + "]";
    if (!cj.is_object()) throw ParseError("model: " + where + " not an object");
    require_keys(cj, {"dim", "generators", "state"}, where);
    ComponentSpec comp;
    if (!cj.contains("dim") || !cj["dim"].is_number_integer() ||
        cj["dim"].get<int>() < 1)
      throw ParseError("model: " + where + ".dim must be an integer >= 1");
    comp.dim = cj["dim"].get<int>();
    if (!cj.contains("generators") || !cj["generators"].is_array() ||
        cj["generators"].empty())
      throw ParseError("model: " + where +
                       ".generators must be a nonempty array");
    for (std::size_t g = 0; g < cj["generators"].size(); ++g)
      comp.generators.push_back(
          parse_matrix(cj["generators"][g], comp.dim,
                       where + ".generators[" + std::to_string(g) + "]"));

    if (!cj.contains("state") || !cj["state"].is_object())
      throw ParseError("model: " + where + ".state must be an object");
    const json& sj = cj["state"];
    require_keys(sj, {"schmidt", "vector"}, where + ".state");
    if (sj.contains("schmidt") == sj.contains("vector"))
      throw ParseError("model: " + where +
                       ".state needs exactly one of 'schmidt' or 'vector'");
    if (sj.contains("schmidt")) {
      const json& wj = sj["schmidt"];
      if (!wj.is_array() || static_cast<int>(wj.size()) != comp.dim)
        throw ParseError("model: " + where + ".state.schmidt must have dim=" +
                         std::to_string(comp.dim) + " weights");
      std::vector<double> weights;
      for (const json& w : wj) {
        if (!w.is_number() || w.get<double>() < 0.0)
          throw ParseError("model: " + where +
                           ".state.schmidt weights must be nonnegative");
        weights.push_back(w.get<double>());
      }
      comp.state.schmidt = std::move(weights);
    } else {
      const json& vj = sj["vector"];
      const int expected = comp.dim * comp.dim;
      if (!vj.is_array() || static_cast<int>(vj.size()) != expected)
        throw ParseError("model: " + where + ".state.vector must have dim^2=" +
                         std::to_string(expected) + " entries");
      Eigen::VectorXcd v(expected);
      for (int k = 0; k < expected; ++k)
        v(k) = parse_complex(vj[static_cast<std::size_t>(k)],
                             where + ".state.vector entry");
      comp.state.vector = std::move(v);
    }
    model.components.push_back(std::move(comp));
  }

  if (j.contains("options")) {
    const json& oj = j["options"];
    if (!oj.is_object()) throw ParseError("model: options must be an object");
    require_keys(oj,
                 {"max_word_len", "psd_tol", "moment_tol", "term_cap", "seed"},
                 "options");
    Options& o = model.options;
    if (oj.contains("max_word_len")) o.max_word_len = oj["max_word_len"];
    if (oj.contains("psd_tol")) o.psd_tol = oj["psd_tol"];
    if (oj.contains("moment_tol")) o.moment_tol = oj["moment_tol"];
    if (oj.contains("term_cap")) o.term_cap = oj["term_cap"];
    if (oj.contains("seed")) o.seed = oj["seed"];
    if (o.max_word_len < 0 || o.psd_tol < 0 || o.moment_tol < 0)
      throw ParseError("model: options must be nonnegative");
  }
  return model;
}

ModelFile load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("model: cannot open '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseError(std::string("model: invalid JSON: ") + e.what());
  }
  return parse_model(j);
}

nlohmann::ordered_json model_to_json(const ModelFile& model) {
  ordered_json root;
  root["components"] = ordered_json::array();
  for (const ComponentSpec& comp : model.components) {
    ordered_json cj;
    cj["dim"] = comp.dim;
    cj["generators"] = ordered_json::array();
    for (const auto& g : comp.generators)
      cj["generators"].push_back(matrix_to_json(g));
    ordered_json sj;
    if (comp.state.schmidt) {
      sj["schmidt"] = *comp.state.schmidt;
    } else {
      ordered_json vj = ordered_json::array();
      for (Eigen::Index k = 0; k < comp.state.vector->size(); ++k)
        vj.push_back(complex_to_json((*comp.state.vector)(k)));
      sj["vector"] = std::move(vj);
    }
    cj["state"] = std::move(sj);
    root["components"].push_back(std::move(cj));
  }
  ordered_json oj;
  oj["max_word_len"] = model.options.max_word_len;
  oj["psd_tol"] = model.options.psd_tol;
  oj["moment_tol"] = model.options.moment_tol;
  oj["term_cap"] = model.options.term_cap;
  oj["seed"] = model.options.seed;
  root["options"] = std::move(oj);
  return root;
}

std::vector<MatrixModel> instantiate(const ModelFile& model) {
  std::vector<MatrixModel> out;
  out.reserve(model.components.size());
  for (const ComponentSpec& comp : model.components) {
    Eigen::VectorXcd state =
        comp.state.schmidt ? schmidt_state(*comp.state.schmidt)
                           : *comp.state.vector;
    out.emplace_back(comp.generators, std::move(state));
  }
  return out;
}

BiFreeSystem make_system(const ModelFile& model) {
  std::vector<std::shared_ptr<const MomentOracle>> oracles;
  for (MatrixModel& m : instantiate(model))
    oracles.push_back(std::make_shared<const MatrixModel>(std::move(m)));
  SystemConfig cfg;
  cfg.term_cap = model.options.term_cap;
  return BiFreeSystem(std::move(oracles), cfg);
}

Word parse_word_spec(const std::string& spec) {
  std::istringstream in(spec);
  std::vector<Letter> letters;
  std::string token;
  while (in >> token) {
    std::string body = token;
    bool reflected = false;
    if (!body.empty() && body[0] == '~') {
      reflected = true;
      body = body.substr(1);
    }
    const auto dot = body.find('.');
    if (dot == std::string::npos || dot == 0 || dot + 1 == body.size())
      throw ParseError("word spec: bad letter '" + token +
                       "' (expected [~]i.g)");
    std::int32_t algebra = 0;
    std::int32_t local = 0;
    try {
      std::size_t used = 0;
      algebra = std::stoi(body.substr(0, dot), &used);
      if (used != dot) throw std::invalid_argument("trailing");
      local = std::stoi(body.substr(dot + 1), &used);
      if (used != body.size() - dot - 1) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw ParseError("word spec: bad letter '" + token +
                       "' (expected [~]i.g)");
    }
    if (algebra < 0 || local < 0)
      throw ParseError("word spec: negative index in '" + token + "'");
    letters.push_back(reflected ? neg_letter(algebra, local)
                                : pos_letter(algebra, local));
  }
  return Word(std::move(letters));
}

std::string word_spec(const Word& w) {
  std::string out;
  for (const Letter& l : w.letters()) {
    if (!out.empty()) out += ' ';
    if (l.reflected) out += '~';
    out += std::to_string(l.gen.algebra_id);
    out += '.';
    out += std::to_string(l.gen.local_id);
  }
  return out;
}

}  // namespace bifree
