#pragma once

// Monte Carlo estimation of the joint law of T_mu = Re Tr(P(A_mu) V).
//
// Draw i always uses RngStream(seed, i), so a report depends on the spec
// alone and never on the worker count or scheduling.

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "symrmt/symmetric_spaces.hpp"

namespace symrmt {

// ---------------------------------------------------------------------------
// Matrix recipes

enum class Recipe {
  cyclic_shift,  // S, S_{j, j+1 mod m} = 1
  signature,     // I_pq (AIII, BDI) or scriptI_pq (CII)
  shift_diag,    // S + diag(1, 1/2, ..., 1/m)
  tridiag,       // I + S + S'
};

std::string to_string(Recipe recipe);
Recipe parse_recipe(const std::string& text);

/// The recipe matrix at the class's ambient size m, projected onto W_C.
/// signature throws ArgumentError for non-chiral classes.
ComplexMatrix recipe_matrix(Recipe recipe, const SymmetryClass& cls);

/// p = ceil(3n/5) clamped to [1, n - 1]; needs n >= 2.
int chiral_p(int n);

/// The class at size n, chiral classes split by chiral_p.
SymmetryClass class_at(SymmetryTag tag, int n);

// ---------------------------------------------------------------------------
// Estimators

struct KStatistics {
  std::int64_t count = 0;
  double mean = 0;
  double k2 = 0;
  double k3 = 0;
  double k4 = 0;
  double se_k3 = 0;  // sqrt(6 k2^3 / N), Gaussian null
  double se_k4 = 0;  // sqrt(24 k2^4 / N)

  /// k3 / k2^{3/2} and k4 / k2^2; zero when k2 vanishes.
  double standardized_k3() const;
  double standardized_k4() const;
};

/// Unbiased k-statistics. Throws ArgumentError for N <= 4.
KStatistics k_statistics(const std::vector<double>& samples);

/// Standard error of the unbiased sample variance, from central moments.
double variance_standard_error(const std::vector<double>& samples);

// ---------------------------------------------------------------------------
// Experiments

enum class TargetMode { exact, asymptotic, both };

std::string to_string(TargetMode mode);
TargetMode parse_target_mode(const std::string& text);

struct ExperimentSpec {
  SymmetryClass cls;
  std::int64_t samples = 10000;
  std::uint64_t seed = 0;
  int workers = 1;
  std::vector<ComplexMatrix> matrices;  // projected onto W_C before use
  std::vector<std::string> labels;      // defaults to "A1", "A2", ...
  TargetMode targets = TargetMode::asymptotic;
  double sigma_tolerance = 5.0;
  double relative_tolerance = 0.10;             // variance vs asymptotic target
  double covariance_relative_tolerance = 0.15;  // off-diagonal and joint checks
  bool keep_samples = false;
};

/// Spec with one matrix per recipe.
ExperimentSpec recipe_spec(const SymmetryClass& cls, const std::vector<Recipe>& recipes,
                           std::int64_t samples, std::uint64_t seed, int workers = 1);

struct MarginalReport {
  std::string label;
  double mean = 0;
  double mean_se = 0;
  double variance = 0;
  double variance_se = 0;
  KStatistics cumulants;
  double target_mean = 0;      // chiral_mean, or 0
  double target_variance = 0;  // (gamma / n) Re Tr(P(A) P(A)*)
  std::optional<double> exact_mean;
  std::optional<double> exact_variance;
};

struct Verdict {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct SampleReport {
  SymmetryClass cls;
  std::int64_t samples = 0;
  std::uint64_t seed = 0;
  int workers = 1;
  std::vector<MarginalReport> marginals;
  Eigen::MatrixXd covariance;
  Eigen::MatrixXd covariance_se;
  Eigen::MatrixXd target_covariance;
  std::vector<Verdict> verdicts;
  std::vector<std::vector<double>> values;  // per marginal, when keep_samples
  double runtime_seconds = 0;

  bool passed() const;
  const Verdict* find(const std::string& name) const;
};

/// Runs the experiment. Throws ArgumentError for invalid specs (N < 5,
/// workers < 1, no matrices, wrong sizes, matrices that fail membership
/// after projection) and propagates sampler and moment errors.
SampleReport run_experiment(const ExperimentSpec& spec);

/// T_mu for one V, with P(A_mu) already applied.
std::vector<double> trace_values(const std::vector<ComplexMatrix>& projected, const ComplexMatrix& v);

// ---------------------------------------------------------------------------
// Convergence sweeps

struct SweepRow {
  int n = 0;
  SymmetryClass cls;
  double variance = 0;
  double variance_se = 0;
  double scaled_variance = 0;  // variance * n / gamma
  double trace_target = 0;     // Re Tr(P(A) P(A)*)
  double mean = 0;
  double mean_se = 0;
  double target_mean = 0;
  double standardized_k3 = 0;
  double standardized_k4 = 0;
  double null_se = 0;  // sqrt(6/N) for k3; sqrt(24/N) for k4 is 2x this
};

std::vector<SweepRow> convergence_sweep(SymmetryTag tag, Recipe recipe, const std::vector<int>& n_grid,
                                        std::int64_t samples, std::uint64_t seed, int workers = 1);

}  // namespace symrmt
