#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "symrmt/acceptance.hpp"
#include "symrmt/errors.hpp"
#include "symrmt/io.hpp"

namespace py = pybind11;
using namespace symrmt;

namespace {

std::string table_json(const std::string& series, int degree, int n) {
  switch (parse_series(series)) {
    case Series::unitary: return to_json(wg_unitary(degree, n)).dump();
    case Series::orthogonal: return to_json(wg_orthogonal(degree, n)).dump();
    case Series::symplectic: return to_json(wg_symplectic(degree, n)).dump();
  }
  return "{}";
}

std::pair<std::string, double> integrate(const std::string& series, int n,
                                         const std::vector<std::tuple<int, int, bool>>& factors) {
  std::vector<EntryFactor> f;
  for (const auto& [row, col, conj] : factors) {
    if (row < 1 || col < 1) throw ArgumentError("integrate: indices are 1-based");
    f.push_back({row - 1, col - 1, conj});
  }
  const Rational value = integrate_factors(parse_series(series), n, f);
  return {to_string(value), value.get_d()};
}

py::tuple experiment(const std::string& config, bool keep_samples) {
  ExperimentSpec spec = experiment_from_json(Json::parse(config));
  spec.keep_samples = keep_samples;
  SampleReport report;
  {
    py::gil_scoped_release release;
    report = run_experiment(spec);
  }
  return py::make_tuple(to_json(report).dump(), report.values);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "symrmt core bindings";

  py::register_exception<ArgumentError>(m, "ArgumentError", PyExc_ValueError);
  py::register_exception<RegimeError>(m, "RegimeError", PyExc_ValueError);
  py::register_exception<SizeLimitError>(m, "SizeLimitError", PyExc_OverflowError);

  m.def("weingarten_table_json", &table_json, py::arg("series"), py::arg("degree"), py::arg("n"));
  m.def("integrate", &integrate, py::arg("series"), py::arg("n"), py::arg("factors"),
        "Exact integral of a product of 1-based entries (row, col, conj); returns (p/q, decimal).");

  m.def("gamma", [](const std::string& tag) { return to_string(gamma(parse_tag(tag))); }, py::arg("tag"));
  m.def("canonical_class", [](const std::string& text) { return SymmetryClass::parse(text).to_string(); });
  m.def("ambient_size", [](const std::string& cls) { return SymmetryClass::parse(cls).ambient_size(); });

  m.def("sample_haar",
        [](const std::string& group, int m_size, std::uint64_t seed, std::uint64_t stream) {
          const GroupKind g = group == "U" ? GroupKind::U : group == "O" ? GroupKind::O : group == "Sp" ? GroupKind::Sp
                              : throw ArgumentError("group must be U, O or Sp");
          RngStream rng(seed, stream);
          return sample_haar(g, m_size, rng).matrix;
        },
        py::arg("group"), py::arg("m"), py::arg("seed") = 0, py::arg("stream") = 0);
  m.def("sample_V",
        [](const std::string& cls, std::uint64_t seed, std::uint64_t stream) {
          RngStream rng(seed, stream);
          return sample_V(SymmetryClass::parse(cls), rng);
        },
        py::arg("cls"), py::arg("seed") = 0, py::arg("stream") = 0);
  m.def("cartan_embed", [](const std::string& cls, const ComplexMatrix& g) {
    return cartan_embed(SymmetryClass::parse(cls), g);
  });

  m.def("project", [](const std::string& cls, const ComplexMatrix& a) { return project_W(SymmetryClass::parse(cls), a); },
        py::arg("cls"), py::arg("a"));
  m.def("in_W",
        [](const std::string& cls, const ComplexMatrix& a, double tol) {
          return membership_W(SymmetryClass::parse(cls), a, tol);
        },
        py::arg("cls"), py::arg("a"), py::arg("tol") = kStructureTolerance);
  m.def("recipe_matrix",
        [](const std::string& recipe, const std::string& cls) {
          return recipe_matrix(parse_recipe(recipe), SymmetryClass::parse(cls));
        },
        py::arg("recipe"), py::arg("cls"));

  m.def("theoretical_covariance",
        [](const std::string& cls, const std::vector<ComplexMatrix>& a) {
          return theoretical_covariance(SymmetryClass::parse(cls), a);
        },
        py::arg("cls"), py::arg("matrices"));
  m.def("chiral_mean", [](const std::string& cls, const ComplexMatrix& a) {
    return chiral_mean(SymmetryClass::parse(cls), a);
  });
  m.def("moment_report_json",
        [](const std::string& cls, const ComplexMatrix& a, const std::string& id) {
          const SymmetryClass c = SymmetryClass::parse(cls);
          py::gil_scoped_release release;
          return to_json(moment_report(c, project_W(c, a), id)).dump();
        },
        py::arg("cls"), py::arg("a"), py::arg("matrix_id") = "A");

  m.def("k_statistics",
        [](const std::vector<double>& x) {
          const KStatistics k = k_statistics(x);
          py::dict d;
          d["count"] = k.count;
          d["mean"] = k.mean;
          d["k2"] = k.k2;
          d["k3"] = k.k3;
          d["k4"] = k.k4;
          d["se_k3"] = k.se_k3;
          d["se_k4"] = k.se_k4;
          return d;
        },
        py::arg("samples"));
  m.def("run_experiment_json", &experiment, py::arg("config"), py::arg("keep_samples") = false,
        "Runs an experiment config (JSON text); returns (report JSON, raw samples per marginal).");

  m.def("selftest_json",
        [](const std::vector<int>& only, std::uint64_t seed, int workers) {
          AcceptanceOptions options;
          options.seed = seed;
          options.workers = workers;
          options.only.insert(only.begin(), only.end());
          std::vector<CriterionResult> results;
          {
            py::gil_scoped_release release;
            results = run_acceptance(options);
          }
          return to_json(results, options).dump();
        },
        py::arg("only") = std::vector<int>{}, py::arg("seed") = AcceptanceOptions{}.seed, py::arg("workers") = 1);
}
