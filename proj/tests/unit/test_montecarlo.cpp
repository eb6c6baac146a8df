#include <doctest.h>

#include <cmath>

#include "symrmt/errors.hpp"
#include "symrmt/moments.hpp"
#include "symrmt/montecarlo.hpp"

using namespace symrmt;

namespace {

// k-statistics from raw power sums (Fisher's formulas), independent of the
// central-moment implementation.
struct PowerSumK {
  double k2, k3, k4;
};

PowerSumK power_sum_k(const std::vector<double>& x) {
  long double s1 = 0, s2 = 0, s3 = 0, s4 = 0;
  for (double v : x) {
    const long double w = v;
    s1 += w;
    s2 += w * w;
    s3 += w * w * w;
    s4 += w * w * w * w;
  }
  const long double n = x.size();
  PowerSumK k;
  k.k2 = static_cast<double>((n * s2 - s1 * s1) / (n * (n - 1)));
  k.k3 = static_cast<double>((n * n * s3 - 3 * n * s2 * s1 + 2 * s1 * s1 * s1) / (n * (n - 1) * (n - 2)));
  k.k4 = static_cast<double>(((n * n * n + n * n) * s4 - 4 * (n * n + n) * s3 * s1 - 3 * (n * n - n) * s2 * s2 +
                              12 * n * s2 * s1 * s1 - 6 * s1 * s1 * s1 * s1) /
                             (n * (n - 1) * (n - 2) * (n - 3)));
  return k;
}

std::vector<double> gaussian_sample(std::size_t count, std::uint64_t seed, double mean = 0, double sd = 1) {
  RngStream rng(seed, 0);
  std::vector<double> x(count);
  for (auto& v : x) v = mean + sd * rng.gaussian();
  return x;
}

ComplexMatrix one() { return ComplexMatrix::Ones(1, 1); }

}  // namespace

TEST_CASE("k-statistics: degenerate and symmetric samples") {
  const auto k = k_statistics(std::vector<double>(10, 2.5));
  CHECK(k.k2 == 0.0);
  CHECK(k.k3 == 0.0);
  CHECK(k.k4 == 0.0);
  CHECK(k.standardized_k3() == 0.0);

  std::vector<double> pm;
  for (int i = 0; i < 1000; ++i) pm.push_back(i % 2 ? 1.0 : -1.0);
  CHECK(k_statistics(pm).k3 == 0.0);

  CHECK_THROWS_AS(k_statistics({1, 2, 3, 4}), ArgumentError);
}

TEST_CASE("k-statistics agree with the power-sum formulas") {
  std::vector<double> x;
  RngStream rng(11, 3);
  for (int i = 0; i < 500; ++i) x.push_back(std::exp(rng.gaussian()));
  const auto k = k_statistics(x);
  const auto ref = power_sum_k(x);
  CHECK(k.k2 == doctest::Approx(ref.k2).epsilon(1e-9));
  CHECK(k.k3 == doctest::Approx(ref.k3).epsilon(1e-7));
  CHECK(k.k4 == doctest::Approx(ref.k4).epsilon(1e-6));
}

TEST_CASE("k-statistics on Gaussian input") {
  const std::size_t n = 100000;
  const auto x = gaussian_sample(n, 42);
  const auto k = k_statistics(x);
  CHECK(std::abs(k.k3) <= 5 * std::sqrt(6.0 / n));
  CHECK(std::abs(k.k4) <= 5 * std::sqrt(24.0 / n));
  CHECK(k.se_k3 == doctest::Approx(std::sqrt(6 * std::pow(k.k2, 3) / n)));
  CHECK(std::abs(k.k2 - 1.0) <= 5 * variance_standard_error(x));
}

TEST_CASE("estimator coverage on synthetic Gaussians") {
  int mean_hits = 0, var_hits = 0;
  for (int rep = 0; rep < 100; ++rep) {
    const auto x = gaussian_sample(2000, 1000 + rep, 0.3, std::sqrt(2.0));
    const auto k = k_statistics(x);
    if (std::abs(k.mean - 0.3) <= 5 * std::sqrt(k.k2 / x.size())) ++mean_hits;
    if (std::abs(k.k2 - 2.0) <= 5 * variance_standard_error(x)) ++var_hits;
  }
  CHECK(mean_hits >= 99);
  CHECK(var_hits >= 99);
}

TEST_CASE("standard errors shrink like 1/sqrt(N)") {
  const auto small = gaussian_sample(4000, 5);
  const auto large = gaussian_sample(64000, 6);
  const double ratio = variance_standard_error(small) / variance_standard_error(large);
  CHECK(ratio == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("recipes") {
  CHECK(chiral_p(50) == 30);
  CHECK(chiral_p(2) == 1);
  CHECK(chiral_p(4) == 3);
  CHECK_THROWS_AS(chiral_p(1), ArgumentError);
  CHECK(class_at(SymmetryTag::BDI, 50) == SymmetryClass::make(SymmetryTag::BDI, 50, 30, 20));

  for (int n : {3, 7}) {
    const auto cls = SymmetryClass::make(SymmetryTag::BD, n);
    const ComplexMatrix s = recipe_matrix(Recipe::cyclic_shift, cls);
    CHECK((s * s.adjoint()).trace().real() == doctest::Approx(n));
  }
  CHECK_THROWS_AS(recipe_matrix(Recipe::signature, SymmetryClass::make(SymmetryTag::AI, 4)), ArgumentError);
  const auto cii = SymmetryClass::make(SymmetryTag::CII, 5, 3, 2);
  CHECK((recipe_matrix(Recipe::signature, cii) - doubled_signature(3, 2)).norm() < 1e-14);

  for (SymmetryTag tag : kAllTags) {
    const auto cls = class_at(tag, 6);
    for (Recipe r : {Recipe::cyclic_shift, Recipe::shift_diag, Recipe::tridiag})
      CHECK(membership_W(cls, recipe_matrix(r, cls)));
  }
  CHECK(parse_recipe("shift+diag") == Recipe::shift_diag);
  CHECK_THROWS_AS(parse_recipe("shift"), ArgumentError);
}

TEST_CASE("experiment: A at n = 1 is cos(theta)") {
  ExperimentSpec spec;
  spec.cls = SymmetryClass::make(SymmetryTag::A, 1);
  spec.samples = 100000;
  spec.seed = 3;
  spec.matrices = {one()};
  const auto rep = run_experiment(spec);
  const auto& m = rep.marginals[0];
  CHECK(m.target_variance == doctest::Approx(0.5));
  CHECK(std::abs(m.variance - 0.5) <= 5 * m.variance_se);
  CHECK(rep.find("mean:A1")->pass);
  CHECK(rep.find("variance:A1")->pass);
  // arcsine law: excess kurtosis -3/2
  CHECK(m.cumulants.standardized_k4() == doctest::Approx(-1.5).epsilon(0.02));
  CHECK_FALSE(rep.find("k4:A1")->pass);
}

TEST_CASE("experiment: BD at n = 1 is a fair sign") {
  ExperimentSpec spec;
  spec.cls = SymmetryClass::make(SymmetryTag::BD, 1);
  spec.samples = 100000;
  spec.seed = 4;
  spec.matrices = {one()};
  spec.keep_samples = true;
  const auto rep = run_experiment(spec);
  for (double t : rep.values[0]) CHECK(std::abs(t) == 1.0);
  const auto& m = rep.marginals[0];
  const double n = static_cast<double>(spec.samples);
  CHECK(m.variance == doctest::Approx(n / (n - 1) * (1 - m.mean * m.mean)));
  CHECK(std::abs(m.variance - 1.0) <= 5 * m.variance_se + 1e-3);
}

TEST_CASE("experiment: fast traces match the embedded V") {
  for (SymmetryTag tag : kAllTags) {
    const auto cls = class_at(tag, 4);
    std::vector<Recipe> recipes = {Recipe::shift_diag, Recipe::tridiag};
    if (cls.chiral()) recipes.push_back(Recipe::signature);
    auto spec = recipe_spec(cls, recipes, 20, 99, 1);
    spec.keep_samples = true;
    const auto rep = run_experiment(spec);
    for (int i = 0; i < 20; ++i) {
      RngStream rng(99, static_cast<std::uint64_t>(i));
      const auto t = trace_values(spec.matrices, sample_V(cls, rng));
      for (std::size_t mu = 0; mu < t.size(); ++mu) CHECK(rep.values[mu][i] == doctest::Approx(t[mu]).epsilon(1e-10));
    }
  }
}

TEST_CASE("experiment: bit-identical across worker counts") {
  const auto cls = SymmetryClass::make(SymmetryTag::CII, 5, 3, 2);
  auto spec = recipe_spec(cls, {Recipe::shift_diag, Recipe::signature}, 10000, 2024, 1);
  spec.keep_samples = true;
  const auto a = run_experiment(spec);
  spec.workers = 4;
  const auto b = run_experiment(spec);
  CHECK(a.values == b.values);
  CHECK(a.covariance == b.covariance);
  for (std::size_t mu = 0; mu < a.marginals.size(); ++mu) {
    CHECK(a.marginals[mu].variance == b.marginals[mu].variance);
    CHECK(a.marginals[mu].cumulants.k4 == b.marginals[mu].cumulants.k4);
  }
  spec.seed = 2025;
  CHECK(run_experiment(spec).values != a.values);
}

TEST_CASE("experiment: second moments match the exact values at small n") {
  for (SymmetryTag tag : kAllTags) {
    CAPTURE(to_string(tag));
    const auto cls = class_at(tag, 3);
    auto spec = recipe_spec(cls, {Recipe::shift_diag}, 20000, 77, 1);
    spec.targets = TargetMode::exact;
    const auto rep = run_experiment(spec);
    const auto* mean = rep.find("exact-mean:shift+diag");
    const auto* var = rep.find("exact-variance:shift+diag");
    REQUIRE(mean != nullptr);
    REQUIRE(var != nullptr);
    CHECK_MESSAGE(mean->pass, mean->detail);
    CHECK_MESSAGE(var->pass, var->detail);
    CHECK(rep.find("variance:shift+diag") == nullptr);
  }
}

TEST_CASE("experiment: signature recipe is deterministic") {
  const auto cls = SymmetryClass::make(SymmetryTag::AIII, 5, 3, 2);
  const auto rep = run_experiment(recipe_spec(cls, {Recipe::signature}, 200, 1, 1));
  const auto& m = rep.marginals[0];
  CHECK(m.mean == doctest::Approx(m.target_mean));
  CHECK(m.variance < 1e-20);
  CHECK(rep.find("k3:signature")->pass);
  CHECK(rep.find("mean:signature")->pass);
}

TEST_CASE("experiment: spec validation") {
  const auto cls = SymmetryClass::make(SymmetryTag::AI, 3);
  auto spec = recipe_spec(cls, {Recipe::shift_diag}, 4, 1, 1);
  CHECK_THROWS_AS(run_experiment(spec), ArgumentError);
  spec.samples = 10;
  spec.workers = 0;
  CHECK_THROWS_AS(run_experiment(spec), ArgumentError);
  spec.workers = 1;
  spec.matrices = {ComplexMatrix::Identity(4, 4)};
  CHECK_THROWS_AS(run_experiment(spec), ArgumentError);
  spec.matrices.clear();
  CHECK_THROWS_AS(run_experiment(spec), ArgumentError);
  CHECK(parse_target_mode("both") == TargetMode::both);
  CHECK_THROWS_AS(parse_target_mode("all"), ArgumentError);
}

TEST_CASE("convergence sweep rows") {
  const auto rows = convergence_sweep(SymmetryTag::BD, Recipe::cyclic_shift, {4, 8}, 4000, 8, 1);
  REQUIRE(rows.size() == 2);
  for (const auto& row : rows) {
    CHECK(row.trace_target == doctest::Approx(row.n));
    CHECK(std::abs(row.variance - 1.0) <= 5 * row.variance_se);
    CHECK(row.scaled_variance == doctest::Approx(row.variance * row.n));
    CHECK(row.null_se == doctest::Approx(std::sqrt(6.0 / 4000)));
  }
}
