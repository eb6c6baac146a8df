#pragma once

// JSON and CSV surfaces. Exact values are written as "p/q" strings next to a
// decimal. Matrix and monomial indices in files are 1-based.
//
//   matrix JSON   [[[re, im], ...], ...]   (row major)
//   matrix CSV    one row per line, columns re_1,im_1,re_2,im_2,...
//   monomial      {"group": "symplectic", "n": 2,
//                  "factors": [{"row": 1, "col": 1, "conj": false}, ...]}

#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "symrmt/haar_integrals.hpp"
#include "symrmt/moments.hpp"
#include "symrmt/montecarlo.hpp"
#include "symrmt/weingarten.hpp"

namespace symrmt {

using Json = nlohmann::json;

Json exact_json(const Rational& value);      // {"exact": "p/q", "decimal": x}
Json exact_json(const ExactComplex& value);  // {"exact": "a + b i", "decimal": [re, im]}

Json to_json(const WeingartenTableU& table);
Json to_json(const WeingartenTableO& table);
Json to_json(const WeingartenTableSp& table);

Json to_json(const MomentReport& report);

/// Runtime metadata is left out when include_runtime is false, so two runs of
/// the same spec serialize identically.
Json to_json(const SampleReport& report, bool include_runtime = true);
Json to_json(const std::vector<SweepRow>& rows);

Json matrix_to_json(const ComplexMatrix& a);
ComplexMatrix matrix_from_json(const Json& j);
std::string matrix_to_csv(const ComplexMatrix& a);
ComplexMatrix matrix_from_csv(const std::string& text);

/// Raw T samples, one column per marginal.
std::string samples_to_csv(const SampleReport& report);

struct MonomialSpec {
  std::optional<Series> group;
  std::optional<int> n;
  std::vector<EntryFactor> factors;  // 0-based
};

/// Strict: unknown keys, non-positive indices and malformed factors throw
/// ArgumentError.
MonomialSpec parse_monomial(const Json& j);

/// Exact integral of the product of the factors over the group of the series
/// (O_n, U_n, or Sp_2n). Indices must lie in range for the group size.
Rational integrate_factors(Series series, int n, const std::vector<EntryFactor>& factors);

/// Experiment config:
///   {"class": "AIII:n=50,p=30,q=20", "samples": 20000, "seed": 1,
///    "workers": 1, "recipes": ["shift+diag"], "matrices": [<matrix JSON>],
///    "labels": [...], "targets": "asymptotic", "sigma_tolerance": 5,
///    "relative_tolerance": 0.1, "covariance_relative_tolerance": 0.15}
/// Recipes and explicit matrices may be combined; at least one is needed.
ExperimentSpec experiment_from_json(const Json& j);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace symrmt
