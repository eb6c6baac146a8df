// symrmt: Weingarten tables, exact Haar integrals, symmetric-space sampling
// and CLT verification from the command line.
//
// Exit codes: 0 success, 1 a checked criterion failed, 2 usage, regime or
// size-limit error.

#include <CLI11.hpp>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>

#include "symrmt/acceptance.hpp"
#include "symrmt/errors.hpp"
#include "symrmt/io.hpp"
#include "symrmt/limits.hpp"

using namespace symrmt;

namespace {

constexpr int kOk = 0;
constexpr int kCriterionFailed = 1;
constexpr int kUsage = 2;

void emit(const std::string& text, const std::string& out) {
  if (out.empty() || out == "-")
    std::cout << text;
  else
    write_text_file(out, text);
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ArgumentError("expected a comma-separated integer list, got '" + text + "'");
    }
  }
  if (out.empty()) throw ArgumentError("empty integer list");
  return out;
}

struct WgArgs {
  std::string series;
  int degree = 0;
  int n = 0;
  std::string out;
};

int cmd_wg(const WgArgs& a) {
  Json j;
  switch (parse_series(a.series)) {
    case Series::unitary: j = to_json(wg_unitary(a.degree, a.n)); break;
    case Series::orthogonal: j = to_json(wg_orthogonal(a.degree, a.n)); break;
    case Series::symplectic: j = to_json(wg_symplectic(a.degree, a.n)); break;
  }
  emit(j.dump(2) + "\n", a.out);
  return kOk;
}

struct IntegrateArgs {
  std::string monomial;
  std::string group;
  int n = 0;
  std::string format = "json";
  std::string out;
};

int cmd_integrate(const IntegrateArgs& a) {
  const MonomialSpec spec = parse_monomial(Json::parse(read_text_file(a.monomial)));
  std::optional<Series> series = spec.group;
  if (!a.group.empty()) series = parse_series(a.group);
  std::optional<int> n = spec.n;
  if (a.n > 0) n = a.n;
  if (!series) throw ArgumentError("integrate: no group given (flag --group or key 'group')");
  if (!n) throw ArgumentError("integrate: no size given (flag -n or key 'n')");
  const Rational value = integrate_factors(*series, *n, spec.factors);
  if (a.format == "text") {
    emit(to_string(value) + "\n", a.out);
  } else {
    Json j = {{"group", to_string(*series)}, {"n", *n}, {"degree", spec.factors.size()},
              {"value", to_string(value)}, {"decimal", value.get_d()}};
    emit(j.dump(2) + "\n", a.out);
  }
  return kOk;
}

struct SampleArgs {
  std::string cls;
  std::int64_t count = 1;
  std::uint64_t seed = 0;
  std::string format = "json";
  std::string out;
};

int cmd_sample(const SampleArgs& a) {
  const SymmetryClass cls = SymmetryClass::parse(a.cls);
  if (a.count < 1) throw ArgumentError("sample: count must be positive");
  if (a.format == "csv") {
    std::string text;
    for (std::int64_t i = 0; i < a.count; ++i) {
      RngStream rng(a.seed, static_cast<std::uint64_t>(i));
      text += "# " + cls.to_string() + " seed=" + std::to_string(a.seed) + " stream=" + std::to_string(i) + "\n";
      text += matrix_to_csv(sample_V(cls, rng));
    }
    emit(text, a.out);
    return kOk;
  }
  Json samples = Json::array();
  for (std::int64_t i = 0; i < a.count; ++i) {
    RngStream rng(a.seed, static_cast<std::uint64_t>(i));
    samples.push_back({{"stream", i}, {"matrix", matrix_to_json(sample_V(cls, rng))}});
  }
  const Json j = {{"class", cls.to_string()}, {"seed", a.seed}, {"samples", samples}};
  emit(j.dump() + "\n", a.out);
  return kOk;
}

struct MomentsArgs {
  std::string cls;
  std::string recipe;
  std::string matrix;
  std::string out;
};

int cmd_moments(const MomentsArgs& a) {
  const SymmetryClass cls = SymmetryClass::parse(a.cls);
  ComplexMatrix m;
  std::string id;
  if (!a.recipe.empty() == !a.matrix.empty()) throw ArgumentError("moments: give exactly one of --recipe, --matrix");
  if (!a.recipe.empty()) {
    m = recipe_matrix(parse_recipe(a.recipe), cls);
    id = a.recipe;
  } else {
    const std::string text = read_text_file(a.matrix);
    m = a.matrix.size() > 4 && a.matrix.substr(a.matrix.size() - 4) == ".csv" ? matrix_from_csv(text)
                                                                              : matrix_from_json(Json::parse(text));
    m = project_W(cls, m);
    id = a.matrix;
  }
  emit(to_json(moment_report(cls, m, id)).dump(2) + "\n", a.out);
  return kOk;
}

struct VerifyArgs {
  std::string config;
  std::string cls;
  std::vector<std::string> recipes;
  std::int64_t samples = 20000;
  std::uint64_t seed = 0;
  int workers = 1;
  std::string targets = "asymptotic";
  std::string sweep;
  std::string out;
  std::string samples_csv;
  bool quiet = false;
};

int cmd_verify_clt(const VerifyArgs& a, const CLI::App& sub) {
  if (!a.sweep.empty()) {
    if (a.cls.empty() || a.recipes.size() != 1) throw ArgumentError("verify-clt --sweep needs --class TAG and one --recipe");
    const SymmetryTag tag = parse_tag(a.cls.substr(0, a.cls.find(':')));
    const auto rows = convergence_sweep(tag, parse_recipe(a.recipes.front()), parse_int_list(a.sweep), a.samples,
                                        a.seed, a.workers);
    emit(to_json(rows).dump(2) + "\n", a.out);
    return kOk;
  }
  ExperimentSpec spec;
  if (!a.config.empty()) {
    spec = experiment_from_json(Json::parse(read_text_file(a.config)));
    if (sub.count("--seed")) spec.seed = a.seed;
    if (sub.count("--workers")) spec.workers = a.workers;
    if (sub.count("--samples")) spec.samples = a.samples;
  } else {
    if (a.cls.empty() || a.recipes.empty()) throw ArgumentError("verify-clt needs --config, or --class with --recipe");
    std::vector<Recipe> recipes;
    for (const auto& r : a.recipes) recipes.push_back(parse_recipe(r));
    spec = recipe_spec(SymmetryClass::parse(a.cls), recipes, a.samples, a.seed, a.workers);
    spec.targets = parse_target_mode(a.targets);
  }
  spec.keep_samples = !a.samples_csv.empty();
  const SampleReport report = run_experiment(spec);
  if (!a.samples_csv.empty()) write_text_file(a.samples_csv, samples_to_csv(report));
  emit(to_json(report).dump(2) + "\n", a.out);
  if (!a.quiet)
    for (const auto& v : report.verdicts)
      if (!v.pass) std::cerr << "FAIL " << v.name << ": " << v.detail << "\n";
  return report.passed() ? kOk : kCriterionFailed;
}

struct SelftestArgs {
  std::uint64_t seed = AcceptanceOptions{}.seed;
  int workers = 1;
  std::string only;
  std::string json;
  bool verbose = false;
};

int cmd_selftest(const SelftestArgs& a) {
  AcceptanceOptions options;
  options.seed = a.seed;
  options.workers = a.workers;
  if (!a.only.empty())
    for (int id : parse_int_list(a.only)) options.only.insert(id);
  const auto results = run_acceptance(options, [&](const CriterionResult& r) {
    std::cout << format_result_line(r) << std::endl;
    if (a.verbose)
      for (const auto& d : r.details) std::cout << "    " << d << "\n";
  });
  if (!a.json.empty()) write_text_file(a.json, to_json(results, options).dump(2) + "\n");
  bool all = true;
  for (const auto& r : results) all = all && r.pass;
  std::cout << (all ? "selftest: all criteria passed" : "selftest: some criteria failed") << std::endl;
  return all ? kOk : kCriterionFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weingarten calculus, Haar integrals and CLT checks on compact symmetric spaces"};
  app.require_subcommand(1);
  std::string caps;
  app.add_option("--caps", caps, "cap overrides, e.g. perm=7,pair=4,terms=50000000 (also SYMRMT_CAPS)");

  WgArgs wg;
  auto* wg_cmd = app.add_subcommand("wg", "emit an exact Weingarten table");
  wg_cmd->add_option("--series", wg.series, "unitary | orthogonal | symplectic")->required();
  auto* k_opt = wg_cmd->add_option("-k", wg.degree, "degree k (unitary)");
  wg_cmd->add_option("-l", wg.degree, "half-degree l (orthogonal, symplectic)")->excludes(k_opt);
  wg_cmd->add_option("-n", wg.n, "group size (Sp_2n for symplectic)")->required();
  wg_cmd->add_option("-o,--out", wg.out, "output path (default stdout)");

  IntegrateArgs integ;
  auto* int_cmd = app.add_subcommand("integrate", "exact Haar integral of an entry monomial");
  int_cmd->add_option("monomial", integ.monomial, "monomial JSON file")->required();
  int_cmd->add_option("--group", integ.group, "unitary | orthogonal | symplectic (overrides the file)");
  int_cmd->add_option("-n", integ.n, "group size (overrides the file)");
  int_cmd->add_option("--format", integ.format, "json | text")->check(CLI::IsMember({"json", "text"}));
  int_cmd->add_option("-o,--out", integ.out, "output path");

  SampleArgs smp;
  auto* smp_cmd = app.add_subcommand("sample", "sample V from a symmetric space");
  smp_cmd->add_option("--class", smp.cls, "class descriptor, e.g. AIII:n=5,p=3,q=2")->required();
  smp_cmd->add_option("--count", smp.count, "number of samples");
  smp_cmd->add_option("--seed", smp.seed, "seed");
  smp_cmd->add_option("--format", smp.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
  smp_cmd->add_option("-o,--out", smp.out, "output path");

  MomentsArgs mom;
  auto* mom_cmd = app.add_subcommand("moments", "exact mean and variance of Re Tr(A V)");
  mom_cmd->add_option("--class", mom.cls, "class descriptor")->required();
  mom_cmd->add_option("--recipe", mom.recipe, "cyclic-shift | signature | shift+diag | tridiag");
  mom_cmd->add_option("--matrix", mom.matrix, "matrix file (.json or .csv); projected onto W_C");
  mom_cmd->add_option("-o,--out", mom.out, "output path");

  VerifyArgs ver;
  auto* ver_cmd = app.add_subcommand("verify-clt", "Monte Carlo check of the Gaussian limit");
  ver_cmd->add_option("--config", ver.config, "experiment config (JSON)");
  ver_cmd->add_option("--class", ver.cls, "class descriptor (TAG alone with --sweep)");
  ver_cmd->add_option("--recipe", ver.recipes, "matrix recipe; repeat for a joint experiment");
  ver_cmd->add_option("--samples", ver.samples, "sample count N");
  ver_cmd->add_option("--seed", ver.seed, "seed");
  ver_cmd->add_option("--workers", ver.workers, "worker threads")->check(CLI::PositiveNumber);
  ver_cmd->add_option("--targets", ver.targets, "exact | asymptotic | both")
      ->check(CLI::IsMember({"exact", "asymptotic", "both"}));
  ver_cmd->add_option("--sweep", ver.sweep, "comma-separated n grid for a convergence sweep");
  ver_cmd->add_option("-o,--out", ver.out, "report path");
  ver_cmd->add_option("--samples-csv", ver.samples_csv, "write the raw T samples here");
  ver_cmd->add_flag("-q,--quiet", ver.quiet, "do not list failed verdicts on stderr");

  SelftestArgs st;
  auto* st_cmd = app.add_subcommand("selftest", "run the acceptance criteria");
  st_cmd->add_option("--seed", st.seed, "base seed");
  st_cmd->add_option("--workers", st.workers, "worker threads")->check(CLI::PositiveNumber);
  st_cmd->add_option("--only", st.only, "comma-separated criterion ids");
  st_cmd->add_option("--json", st.json, "write a machine-readable summary here");
  st_cmd->add_flag("-v,--verbose", st.verbose, "print failing items and notes");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    if (!caps.empty()) set_limits(parse_limits(caps, limits()));
    if (*wg_cmd) {
      if (wg_cmd->count("-k") == 0 && wg_cmd->count("-l") == 0) throw ArgumentError("wg: give -k or -l");
      const Series s = parse_series(wg.series);
      if ((s == Series::unitary) != (wg_cmd->count("-k") > 0))
        throw ArgumentError("wg: use -k for the unitary series and -l otherwise");
      return cmd_wg(wg);
    }
    if (*int_cmd) return cmd_integrate(integ);
    if (*smp_cmd) return cmd_sample(smp);
    if (*mom_cmd) return cmd_moments(mom);
    if (*ver_cmd) return cmd_verify_clt(ver, *ver_cmd);
    if (*st_cmd) return cmd_selftest(st);
  } catch (const RegimeError& e) {
    std::cerr << "regime error: " << e.what() << "\n";
    return kUsage;
  } catch (const SizeLimitError& e) {
    std::cerr << "size limit: " << e.what() << "\n";
    return kUsage;
  } catch (const ArgumentError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: malformed JSON: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
