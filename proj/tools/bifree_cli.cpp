// Command-line driver: model loading, moment evaluation, reflection
// positivity checks, the product-level theorem harness, and comparison
// against the free-product-space oracle.
//
// Exit codes: 0 success, 1 check failure, 2 parse/validation/resource
// error, 3 hypothesis failure (verify-theorem only).

#include <cstdio>
#include <cstdlib>
#include <optional>
#include <random>
#include <string>
#include <thread>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "bifree/bifree.hpp"

namespace {

using bifree::Scalar;
using ordered_json = nlohmann::ordered_json;

int worker_count() {
  int threads = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("BIFREE_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && cap >= 1)
      threads = std::min<long>(threads, cap);
  }
  return threads;
}

std::string format_scalar(const Scalar& z) {
  char buf[80];
  std::snprintf(buf, sizeof(buf), "%.12g%+.12gi", z.real(), z.imag());
  return buf;
}

ordered_json complex_json(const Scalar& z) {
  return ordered_json::array({z.real(), z.imag()});
}

ordered_json options_json(const bifree::Options& o) {
  ordered_json j;
  j["max_word_len"] = o.max_word_len;
  j["psd_tol"] = o.psd_tol;
  j["moment_tol"] = o.moment_tol;
  j["term_cap"] = o.term_cap;
  j["seed"] = o.seed;
  return j;
}

ordered_json header_json(const std::string& command,
                         const bifree::ModelFile& model) {
  ordered_json j;
  j["tool"] = bifree::kToolName;
  j["version"] = bifree::kVersion;
  j["command"] = command;
  j["options"] = options_json(model.options);
  ordered_json comps = ordered_json::array();
  for (const auto& c : model.components) {
    ordered_json cj;
    cj["dim"] = c.dim;
    cj["generators"] = c.generators.size();
    comps.push_back(std::move(cj));
  }
  j["model"] = std::move(comps);
  return j;
}

ordered_json gram_json(const bifree::GramReport& rep, bool include_matrix) {
  ordered_json j;
  j["basis_size"] = rep.basis.size();
  ordered_json basis = ordered_json::array();
  for (const auto& w : rep.basis) basis.push_back(bifree::word_spec(w));
  j["basis"] = std::move(basis);
  j["min_eig"] = rep.min_eig;
  j["hermitian_defect"] = rep.hermitian_defect;
  j["psd"] = rep.psd;
  if (rep.witness) {
    ordered_json wj;
    ordered_json coeffs = ordered_json::array();
    for (Eigen::Index k = 0; k < rep.witness->size(); ++k)
      coeffs.push_back(complex_json((*rep.witness)(k)));
    wj["coeffs"] = std::move(coeffs);
    const Scalar q = (rep.witness->adjoint() * rep.matrix * *rep.witness)(0);
    wj["quadratic_form"] = complex_json(q);
    j["witness"] = std::move(wj);
  } else {
    j["witness"] = nullptr;
  }
  if (include_matrix) {
    ordered_json rows = ordered_json::array();
    for (Eigen::Index r = 0; r < rep.matrix.rows(); ++r) {
      ordered_json row = ordered_json::array();
      for (Eigen::Index c = 0; c < rep.matrix.cols(); ++c)
        row.push_back(complex_json(rep.matrix(r, c)));
      rows.push_back(std::move(row));
    }
    j["matrix"] = std::move(rows);
  }
  return j;
}

void emit(const ordered_json& report) {
  std::printf("%s\n", report.dump(2).c_str());
}

void print_gram_text(const bifree::GramReport& rep, const char* label) {
  std::printf("%s: basis %zu, min eig % .6e, hermitian defect %.3e -> %s\n",
              label, rep.basis.size(), rep.min_eig, rep.hermitian_defect,
              rep.psd ? "PSD" : "NOT PSD");
  if (rep.witness) {
    const Scalar q = (rep.witness->adjoint() * rep.matrix * *rep.witness)(0);
    std::printf("  witness quadratic form: %s\n", format_scalar(q).c_str());
  }
}

int cmd_check_rp(const bifree::ModelFile& model, std::optional<int> component,
                 int max_len, bool as_json) {
  auto models = bifree::instantiate(model);
  if (component && (*component < 0 ||
                    static_cast<std::size_t>(*component) >= models.size()))
    throw bifree::ModelError("check-rp: component index out of range");

  bool all_psd = true;
  ordered_json results = ordered_json::array();
  for (std::size_t i = 0; i < models.size(); ++i) {
    if (component && static_cast<std::size_t>(*component) != i) continue;
    const auto rep = bifree::check_component_rp(
        models[i], max_len, model.options.psd_tol,
        static_cast<std::int32_t>(i));
    all_psd = all_psd && rep.psd;
    if (as_json) {
      ordered_json cj = gram_json(rep, false);
      cj["component"] = i;
      results.push_back(std::move(cj));
    } else {
      const std::string label = "component " + std::to_string(i);
      print_gram_text(rep, label.c_str());
    }
  }
  if (as_json) {
    ordered_json report = header_json("check-rp", model);
    report["result"] = {{"components", std::move(results)},
                        {"all_psd", all_psd}};
    emit(report);
  } else {
    std::printf("check-rp: %s\n", all_psd ? "PASS" : "FAIL");
  }
  return all_psd ? 0 : 1;
}

int cmd_moment(const bifree::ModelFile& model, const std::string& word,
               bool verify, bool as_json) {
  const bifree::Word w = bifree::parse_word_spec(word);
  const bifree::BiFreeSystem sys = bifree::make_system(model);
  const bifree::NCPoly p = bifree::NCPoly::monomial(w);
  const Scalar value = sys.evaluate_tau(p);

  std::optional<Scalar> oracle;
  if (verify) oracle = bifree::oracle_tau(bifree::instantiate(model), p);
  const bool ok =
      !oracle || std::abs(value - *oracle) <= bifree::kOracleCompareTol;

  if (as_json) {
    ordered_json report = header_json("moment", model);
    ordered_json r;
    r["word"] = bifree::word_spec(w);
    r["value"] = complex_json(value);
    if (oracle) {
      r["oracle"] = complex_json(*oracle);
      r["difference"] = std::abs(value - *oracle);
      r["ok"] = ok;
    }
    report["result"] = std::move(r);
    emit(report);
  } else {
    std::printf("%s\n", format_scalar(value).c_str());
    if (oracle) {
      std::printf("oracle: %s (|diff| = %.3e) -> %s\n",
                  format_scalar(*oracle).c_str(), std::abs(value - *oracle),
                  ok ? "OK" : "MISMATCH");
    }
  }
  return ok ? 0 : 1;
}

int cmd_gram(const bifree::ModelFile& model, int max_len, bool as_json) {
  const bifree::BiFreeSystem sys = bifree::make_system(model);
  const auto basis = bifree::positive_word_basis(sys, max_len);
  const auto rep =
      bifree::build_gram(sys, basis, model.options.psd_tol, worker_count());
  if (as_json) {
    ordered_json report = header_json("gram", model);
    report["result"] = gram_json(rep, true);
    emit(report);
  } else {
    print_gram_text(rep, "gram");
  }
  return rep.psd ? 0 : 1;
}

const char* verdict_name(bifree::TheoremVerdict v) {
  switch (v) {
    case bifree::TheoremVerdict::kPass:
      return "pass";
    case bifree::TheoremVerdict::kTheoremFailure:
      return "theorem-failure";
    case bifree::TheoremVerdict::kHypothesisFailure:
      return "hypothesis-failure";
  }
  return "unknown";
}

int cmd_verify_theorem(const bifree::ModelFile& model, int max_len, int trials,
                       std::uint64_t seed, bool as_json) {
  const bifree::BiFreeSystem sys = bifree::make_system(model);
  const auto rep = bifree::verify_theorem(sys, max_len, trials,
                                          model.options.psd_tol,
                                          model.options.moment_tol, seed,
                                          worker_count());
  if (as_json) {
    ordered_json report = header_json("verify-theorem", model);
    ordered_json comps = ordered_json::array();
    for (std::size_t i = 0; i < rep.components.size(); ++i) {
      ordered_json cj = gram_json(rep.components[i], false);
      cj["component"] = i;
      comps.push_back(std::move(cj));
    }
    ordered_json r;
    r["hypothesis"] = {{"ok", rep.hypothesis_ok},
                       {"components", std::move(comps)}};
    r["gram"] = gram_json(rep.gram, false);
    r["random"] = {{"trials", rep.trials},
                   {"min_real", rep.min_quadratic_real},
                   {"max_imag", rep.max_quadratic_imag},
                   {"ok", rep.random_ok}};
    r["verdict"] = verdict_name(rep.verdict);
    report["result"] = std::move(r);
    emit(report);
  } else {
    for (std::size_t i = 0; i < rep.components.size(); ++i) {
      const std::string label = "component " + std::to_string(i);
      print_gram_text(rep.components[i], label.c_str());
    }
    print_gram_text(rep.gram, "product gram");
    std::printf(
        "random elements: %d trials, min Re % .6e, max |Im| %.3e -> %s\n",
        rep.trials, rep.min_quadratic_real, rep.max_quadratic_imag,
        rep.random_ok ? "OK" : "FAIL");
    std::printf("verify-theorem: %s\n", verdict_name(rep.verdict));
  }
  switch (rep.verdict) {
    case bifree::TheoremVerdict::kPass:
      return 0;
    case bifree::TheoremVerdict::kTheoremFailure:
      return 1;
    case bifree::TheoremVerdict::kHypothesisFailure:
      return 3;
  }
  return 2;
}

int cmd_oracle_compare(const bifree::ModelFile& model, int count, int max_len,
                       std::uint64_t seed, bool as_json) {
  const bifree::BiFreeSystem sys = bifree::make_system(model);
  const auto models = bifree::instantiate(model);
  const bifree::FreeProductSpace space(models, std::max(1, max_len));

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> len_dist(0, max_len);
  std::uniform_int_distribution<std::int32_t> comp_dist(
      0, static_cast<std::int32_t>(models.size()) - 1);
  std::uniform_int_distribution<int> face_dist(0, 1);

  double max_diff = 0.0;
  std::string worst;
  for (int t = 0; t < count; ++t) {
    std::vector<bifree::Letter> letters;
    const int len = len_dist(rng);
    for (int k = 0; k < len; ++k) {
      const std::int32_t comp = comp_dist(rng);
      std::uniform_int_distribution<std::int32_t> gen_dist(
          0, models[static_cast<std::size_t>(comp)].generator_count() - 1);
      const std::int32_t gen = gen_dist(rng);
      letters.push_back(face_dist(rng) ? bifree::neg_letter(comp, gen)
                                       : bifree::pos_letter(comp, gen));
    }
    const bifree::NCPoly p = bifree::NCPoly::monomial(bifree::Word(letters));
    const double diff = std::abs(sys.evaluate_tau(p) - space.tau(p));
    if (diff > max_diff) {
      max_diff = diff;
      worst = bifree::word_spec(p.terms().begin()->first);
    }
  }
  const bool ok = max_diff <= bifree::kOracleCompareTol;

  if (as_json) {
    ordered_json report = header_json("oracle-compare", model);
    report["result"] = {{"count", count},
                        {"max_len", max_len},
                        {"seed", seed},
                        {"max_abs_diff", max_diff},
                        {"tol", bifree::kOracleCompareTol},
                        {"worst_word", worst},
                        {"ok", ok}};
    emit(report);
  } else {
    std::printf("oracle-compare: %d words (len <= %d), max |diff| = %.3e -> %s\n",
                count, max_len, max_diff, ok ? "OK" : "MISMATCH");
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bi-free products of reflection-positive systems"};
  app.require_subcommand(1);
  app.set_version_flag("--version",
                       std::string(bifree::kToolName) + " " + bifree::kVersion);

  std::string model_path;
  std::string word;
  bool as_json = false;
  bool verify = false;
  bool all_components = false;
  std::optional<int> component;
  std::optional<int> max_len;
  std::optional<std::uint64_t> seed;
  int trials = 500;
  int count = 200;
  int compare_len = 4;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("model", model_path, "model JSON file")->required();
    sub->add_flag("--json", as_json, "machine-readable JSON on stdout");
  };

  CLI::App* check = app.add_subcommand("check-rp",
                                       "reflection positivity per component");
  add_common(check);
  check->add_option("--component", component, "check a single component");
  check->add_flag("--all", all_components, "check every component (default)");
  check->add_option("--max-len", max_len, "basis word length");

  CLI::App* moment = app.add_subcommand("moment", "evaluate tau on one word");
  add_common(moment);
  moment->add_option("--word", word, "word spec, letters `i.g` / `~i.g`");
  moment->add_flag("--verify", verify, "also evaluate the oracle");

  CLI::App* gram = app.add_subcommand("gram", "product Gram matrix report");
  add_common(gram);
  gram->add_option("--max-len", max_len, "basis word length");

  CLI::App* verify_thm =
      app.add_subcommand("verify-theorem", "product reflection positivity");
  add_common(verify_thm);
  verify_thm->add_option("--max-len", max_len, "basis word length");
  verify_thm->add_option("--trials", trials, "random elements to test");
  verify_thm->add_option("--seed", seed, "RNG seed (default from model)");

  CLI::App* compare =
      app.add_subcommand("oracle-compare", "evaluator vs free-product oracle");
  add_common(compare);
  compare->add_option("--count", count, "number of random words");
  compare->add_option("--max-len", compare_len, "maximum word length");
  compare->add_option("--seed", seed, "RNG seed (default from model)");

  CLI11_PARSE(app, argc, argv);

  try {
    const bifree::ModelFile model = bifree::load_model(model_path);
    const int basis_len = max_len.value_or(model.options.max_word_len);
    const std::uint64_t rng_seed = seed.value_or(model.options.seed);

    if (check->parsed())
      return cmd_check_rp(model,
                          all_components ? std::nullopt : component,
                          basis_len, as_json);
    if (moment->parsed()) return cmd_moment(model, word, verify, as_json);
    if (gram->parsed()) return cmd_gram(model, basis_len, as_json);
    if (verify_thm->parsed())
      return cmd_verify_theorem(model, basis_len, trials, rng_seed, as_json);
    if (compare->parsed())
      return cmd_oracle_compare(model, count, compare_len, rng_seed, as_json);
  } catch (const bifree::ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const bifree::ModelError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const bifree::CapExceeded& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
