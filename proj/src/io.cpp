#include "symrmt/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "symrmt/errors.hpp"

namespace symrmt {
namespace {

Json partition_json(const PairPartition& m) {
  Json blocks = Json::array();
  for (const auto& [a, b] : m.blocks()) blocks.push_back({a + 1, b + 1});
  return blocks;
}

template <class Table>
Json pair_table_json(const Table& table, Series series) {
  Json index = Json::array();
  for (const auto& m : table.index) index.push_back(partition_json(m));
  Json exact = Json::array();
  Json decimal = Json::array();
  for (std::size_t i = 0; i < table.matrix.rows(); ++i) {
    Json row = Json::array();
    Json drow = Json::array();
    for (std::size_t j = 0; j < table.matrix.cols(); ++j) {
      row.push_back(to_string(table.matrix(i, j)));
      drow.push_back(table.matrix(i, j).get_d());
    }
    exact.push_back(row);
    decimal.push_back(drow);
  }
  return {{"series", to_string(series)}, {"l", table.l},        {"n", table.n},
          {"index", index},              {"values", exact},      {"decimal", decimal}};
}

void reject_unknown_keys(const Json& j, const std::set<std::string>& allowed, const std::string& what) {
  if (!j.is_object()) throw ArgumentError(what + ": expected a JSON object");
  for (const auto& item : j.items())
    if (!allowed.count(item.key())) throw ArgumentError(what + ": unknown key '" + item.key() + "'");
}

template <class T>
T get_as(const Json& j, const std::string& key, const std::string& what) {
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ArgumentError(what + ": key '" + key + "' is missing or has the wrong type");
  }
}

Complex complex_entry(const Json& e) {
  if (e.is_number()) return {e.get<double>(), 0.0};
  if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number())
    return {e[0].get<double>(), e[1].get<double>()};
  throw ArgumentError("matrix JSON: entries must be numbers or [re, im] pairs");
}

}  // namespace

Json exact_json(const Rational& value) { return {{"exact", to_string(value)}, {"decimal", value.get_d()}}; }

Json exact_json(const ExactComplex& value) {
  return {{"exact", to_string(value)}, {"decimal", {value.re.get_d(), value.im.get_d()}}};
}

Json to_json(const WeingartenTableU& table) {
  Json entries = Json::array();
  for (std::size_t i = 0; i < table.cycle_types.size(); ++i)
    entries.push_back({{"cycle_type", table.cycle_types[i]},
                       {"value", to_string(table.values[i])},
                       {"decimal", table.values[i].get_d()}});
  return {{"series", "unitary"}, {"k", table.k}, {"n", table.n}, {"index", "cycle_type"}, {"entries", entries}};
}

Json to_json(const WeingartenTableO& table) { return pair_table_json(table, Series::orthogonal); }
Json to_json(const WeingartenTableSp& table) { return pair_table_json(table, Series::symplectic); }

Json to_json(const MomentReport& report) {
  const ExactMoments& e = report.exact;
  Json out = {{"class", report.cls.to_string()},
              {"matrix", report.matrix_id},
              {"exact",
               {{"mean", exact_json(e.mean)},
                {"mean_square", exact_json(e.mean_square)},
                {"abs_square", exact_json(e.abs_square)},
                {"second_moment", exact_json(e.second_moment)},
                {"variance", exact_json(e.variance)},
                {"terms", e.terms}}},
              {"asymptotic_variance", report.asymptotic_variance}};
  if (report.cls.chiral()) out["chiral_mean"] = report.chiral_mean;
  return out;
}

Json to_json(const SampleReport& report, bool include_runtime) {
  Json marginals = Json::array();
  for (const auto& m : report.marginals) {
    Json entry = {{"label", m.label},
                  {"mean", m.mean},
                  {"mean_se", m.mean_se},
                  {"variance", m.variance},
                  {"variance_se", m.variance_se},
                  {"k2", m.cumulants.k2},
                  {"k3", m.cumulants.k3},
                  {"k4", m.cumulants.k4},
                  {"k3_se", m.cumulants.se_k3},
                  {"k4_se", m.cumulants.se_k4},
                  {"standardized_k3", m.cumulants.standardized_k3()},
                  {"standardized_k4", m.cumulants.standardized_k4()},
                  {"target_mean", m.target_mean},
                  {"target_variance", m.target_variance}};
    if (m.exact_mean) entry["exact_mean"] = *m.exact_mean;
    if (m.exact_variance) entry["exact_variance"] = *m.exact_variance;
    marginals.push_back(entry);
  }
  auto matrix = [](const Eigen::MatrixXd& a) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      Json row = Json::array();
      for (Eigen::Index j = 0; j < a.cols(); ++j) row.push_back(a(i, j));
      rows.push_back(row);
    }
    return rows;
  };
  Json verdicts = Json::array();
  for (const auto& v : report.verdicts) verdicts.push_back({{"name", v.name}, {"pass", v.pass}, {"detail", v.detail}});
  Json out = {{"class", report.cls.to_string()},
              {"samples", report.samples},
              {"seed", report.seed},
              {"marginals", marginals},
              {"covariance", matrix(report.covariance)},
              {"covariance_se", matrix(report.covariance_se)},
              {"target_covariance", matrix(report.target_covariance)},
              {"verdicts", verdicts},
              {"passed", report.passed()}};
  if (include_runtime) out["runtime"] = {{"workers", report.workers}, {"seconds", report.runtime_seconds}};
  return out;
}

Json to_json(const std::vector<SweepRow>& rows) {
  Json out = Json::array();
  for (const auto& r : rows)
    out.push_back({{"n", r.n},
                   {"class", r.cls.to_string()},
                   {"variance", r.variance},
                   {"variance_se", r.variance_se},
                   {"scaled_variance", r.scaled_variance},
                   {"trace_target", r.trace_target},
                   {"mean", r.mean},
                   {"mean_se", r.mean_se},
                   {"target_mean", r.target_mean},
                   {"standardized_k3", r.standardized_k3},
                   {"standardized_k4", r.standardized_k4},
                   {"k3_null_se", r.null_se},
                   {"k4_null_se", 2 * r.null_se}});
  return out;
}

Json matrix_to_json(const ComplexMatrix& a) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < a.cols(); ++j) row.push_back({a(i, j).real(), a(i, j).imag()});
    rows.push_back(row);
  }
  return rows;
}

ComplexMatrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array())
    throw ArgumentError("matrix JSON: expected a non-empty array of rows");
  const std::size_t rows = j.size();
  const std::size_t cols = j[0].size();
  ComplexMatrix a(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols) throw ArgumentError("matrix JSON: ragged rows");
    for (std::size_t c = 0; c < cols; ++c) a(i, c) = complex_entry(j[i][c]);
  }
  return a;
}

std::string matrix_to_csv(const ComplexMatrix& a) {
  std::ostringstream os;
  os.precision(17);
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (j) os << ',';
      os << a(i, j).real() << ',' << a(i, j).imag();
    }
    os << '\n';
  }
  return os.str();
}

ComplexMatrix matrix_from_csv(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<double> row;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(cell, &used));
        if (cell.find_first_not_of(" \t\r", used) != std::string::npos) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        throw ArgumentError("matrix CSV: bad number '" + cell + "'");
      }
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty() || rows[0].size() % 2 != 0) throw ArgumentError("matrix CSV: expected re,im column pairs");
  ComplexMatrix a(rows.size(), rows[0].size() / 2);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows[0].size()) throw ArgumentError("matrix CSV: ragged rows");
    for (std::size_t j = 0; j < rows[i].size() / 2; ++j) a(i, j) = Complex(rows[i][2 * j], rows[i][2 * j + 1]);
  }
  return a;
}

std::string samples_to_csv(const SampleReport& report) {
  if (report.values.empty()) throw ArgumentError("samples CSV: the report kept no samples");
  std::ostringstream os;
  os.precision(17);
  os << "draw";
  for (const auto& m : report.marginals) os << ',' << m.label;
  os << '\n';
  for (std::size_t i = 0; i < report.values[0].size(); ++i) {
    os << i;
    for (const auto& column : report.values) os << ',' << column[i];
    os << '\n';
  }
  return os.str();
}

MonomialSpec parse_monomial(const Json& j) {
  const std::string what = "monomial";
  reject_unknown_keys(j, {"group", "n", "factors"}, what);
  MonomialSpec spec;
  if (j.contains("group")) spec.group = parse_series(get_as<std::string>(j, "group", what));
  if (j.contains("n")) spec.n = get_as<int>(j, "n", what);
  if (!j.contains("factors") || !j["factors"].is_array()) throw ArgumentError("monomial: 'factors' must be an array");
  for (const auto& f : j["factors"]) {
    reject_unknown_keys(f, {"row", "col", "conj"}, "monomial factor");
    EntryFactor factor;
    factor.row = get_as<int>(f, "row", "monomial factor") - 1;
    factor.col = get_as<int>(f, "col", "monomial factor") - 1;
    if (f.contains("conj")) factor.conjugated = get_as<bool>(f, "conj", "monomial factor");
    if (factor.row < 0 || factor.col < 0) throw ArgumentError("monomial factor: indices are 1-based");
    spec.factors.push_back(factor);
  }
  return spec;
}

Rational integrate_factors(Series series, int n, const std::vector<EntryFactor>& factors) {
  if (n < 1) throw ArgumentError("integrate: n must be positive");
  const int size = series == Series::symplectic ? 2 * n : n;
  for (const auto& f : factors)
    if (f.row < 0 || f.col < 0 || f.row >= size || f.col >= size)
      throw ArgumentError("integrate: entry index out of range for size " + std::to_string(size));
  switch (series) {
    case Series::orthogonal: return integrate_orthogonal(orthogonal_monomial(factors), n);
    case Series::unitary: return integrate_unitary(unitary_monomial(factors), n);
    case Series::symplectic: return integrate_symplectic(SymplecticMonomial::from_factors(factors, n), n);
  }
  throw ArgumentError("integrate: unknown series");
}

ExperimentSpec experiment_from_json(const Json& j) {
  const std::string what = "experiment config";
  reject_unknown_keys(j,
                      {"class", "samples", "seed", "workers", "recipes", "matrices", "labels", "targets",
                       "sigma_tolerance", "relative_tolerance", "covariance_relative_tolerance"},
                      what);
  ExperimentSpec spec;
  spec.cls = SymmetryClass::parse(get_as<std::string>(j, "class", what));
  if (j.contains("samples")) spec.samples = get_as<std::int64_t>(j, "samples", what);
  if (j.contains("seed")) spec.seed = get_as<std::uint64_t>(j, "seed", what);
  if (j.contains("workers")) spec.workers = get_as<int>(j, "workers", what);
  if (j.contains("targets")) spec.targets = parse_target_mode(get_as<std::string>(j, "targets", what));
  if (j.contains("sigma_tolerance")) spec.sigma_tolerance = get_as<double>(j, "sigma_tolerance", what);
  if (j.contains("relative_tolerance")) spec.relative_tolerance = get_as<double>(j, "relative_tolerance", what);
  if (j.contains("covariance_relative_tolerance"))
    spec.covariance_relative_tolerance = get_as<double>(j, "covariance_relative_tolerance", what);

  std::vector<std::string> labels;
  if (j.contains("recipes")) {
    for (const auto& r : get_as<std::vector<std::string>>(j, "recipes", what)) {
      spec.matrices.push_back(recipe_matrix(parse_recipe(r), spec.cls));
      labels.push_back(r);
    }
  }
  if (j.contains("matrices")) {
    if (!j["matrices"].is_array()) throw ArgumentError(what + ": 'matrices' must be an array");
    for (const auto& m : j["matrices"]) {
      spec.matrices.push_back(matrix_from_json(m));
      labels.push_back("A" + std::to_string(spec.matrices.size()));
    }
  }
  if (j.contains("labels")) {
    labels = get_as<std::vector<std::string>>(j, "labels", what);
    if (labels.size() != spec.matrices.size()) throw ArgumentError(what + ": label count does not match matrices");
  }
  if (spec.matrices.empty()) throw ArgumentError(what + ": give 'recipes' or 'matrices'");
  spec.labels = labels;
  return spec;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ArgumentError("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ArgumentError("cannot write '" + path + "'");
  out << text;
}

}  // namespace symrmt
