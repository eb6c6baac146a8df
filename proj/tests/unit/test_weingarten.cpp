#include <map>

#include "doctest.h"
#include "symrmt/errors.hpp"
#include "symrmt/weingarten.hpp"

using namespace symrmt;

namespace {

Rational q(long p, long d = 1) {
  Rational r(p, d);
  r.canonicalize();
  return r;
}

// Explicit tensor of a symplectic invariant: basis tuple -> coefficient.
std::map<std::vector<int>, long> invariant_tensor(const OrderedPairPartition& m, int n) {
  const int l = static_cast<int>(m.pairs.size());
  std::map<std::vector<int>, long> out;
  std::vector<int> eta(static_cast<std::size_t>(l), 0), eps(static_cast<std::size_t>(l), 0);
  while (true) {
    std::vector<int> idx(static_cast<std::size_t>(2 * l));
    long coeff = 1;
    for (int nu = 0; nu < l; ++nu) {
      const auto [a, b] = m.pairs[static_cast<std::size_t>(nu)];
      const int e = eta[static_cast<std::size_t>(nu)], s = eps[static_cast<std::size_t>(nu)];
      idx[static_cast<std::size_t>(a)] = e + n * s;
      idx[static_cast<std::size_t>(b)] = e + n * (1 - s);
      if (s == 1) coeff = -coeff;
    }
    out[idx] += coeff;
    int pos = 0;
    while (pos < l) {
      auto& e = eta[static_cast<std::size_t>(pos)];
      auto& s = eps[static_cast<std::size_t>(pos)];
      if (++s < 2) break;
      s = 0;
      if (++e < n) break;
      e = 0;
      ++pos;
    }
    if (pos == l) break;
  }
  return out;
}

int form(int x, int y, int n) {
  if (x < n && y == x + n) return 1;
  if (x >= n && y == x - n) return -1;
  return 0;
}

long contract(const std::map<std::vector<int>, long>& s, const std::map<std::vector<int>, long>& t, int n) {
  long total = 0;
  for (const auto& [x, cx] : s)
    for (const auto& [y, cy] : t) {
      long term = cx * cy;
      for (std::size_t j = 0; j < x.size() && term != 0; ++j) term *= form(x[j], y[j], n);
      total += term;
    }
  return total;
}

template <class M>
bool is_identity(const M& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j) != (i == j ? 1 : 0)) return false;
  return true;
}

}  // namespace

TEST_CASE("orthogonal Gram and inverse") {
  CHECK(gram_orthogonal(1, 5)(0, 0) == 5);
  const auto g = gram_orthogonal(2, 2);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(g(i, j) == (i == j ? 4 : 2));
  const auto wg = wg_orthogonal(2, 2);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(wg.matrix(i, j) == (i == j ? q(3, 8) : q(-1, 8)));
  CHECK(wg_orthogonal(1, 7).matrix(0, 0) == q(1, 7));
  for (int l = 1; l <= 3; ++l)
    for (int n = l; n <= 6; ++n) {
      const auto table = wg_orthogonal(l, n);
      CHECK(is_identity(multiply(table.matrix, to_rational(gram_orthogonal(l, n)))));
      for (std::size_t i = 0; i < table.matrix.rows(); ++i)
        for (std::size_t j = 0; j < i; ++j) CHECK(table.matrix(i, j) == table.matrix(j, i));
    }
  CHECK_THROWS_AS(wg_orthogonal(3, 2), RegimeError);
}

TEST_CASE("symplectic Gram matches explicit tensor contraction") {
  for (int n = 1; n <= 3; ++n) CHECK(gram_symplectic(1, n)(0, 0) == 2 * n);
  for (int l = 1; l <= 2; ++l)
    for (int n = 1; n <= 3; ++n) {
      const auto parts = enumerate_pair_partitions(l);
      const auto g = gram_symplectic(l, n);
      for (std::size_t i = 0; i < parts.size(); ++i) {
        const auto ti = invariant_tensor(OrderedPairPartition::canonical(parts[i]), n);
        for (std::size_t j = 0; j < parts.size(); ++j) {
          const auto tj = invariant_tensor(OrderedPairPartition::canonical(parts[j]), n);
          CHECK(g(i, j) == contract(ti, tj, n));
        }
      }
    }
  for (int l = 1; l <= 3; ++l)
    for (int n = 1; n <= 3; ++n) {
      const auto g = gram_symplectic(l, n);
      for (std::size_t i = 0; i < g.rows(); ++i) {
        CHECK(g(i, i) == power(2 * n, static_cast<unsigned>(l)));
        for (std::size_t j = 0; j < g.cols(); ++j) CHECK(g(i, j) == g(j, i));
      }
    }
}

TEST_CASE("symplectic Weingarten inverse") {
  CHECK(wg_symplectic(1, 3).matrix(0, 0) == q(1, 6));
  for (int l = 1; l <= 3; ++l)
    for (int n = l; n <= 6; ++n) {
      const auto table = wg_symplectic(l, n);
      CHECK(is_identity(multiply(table.matrix, to_rational(gram_symplectic(l, n)))));
    }
  CHECK_THROWS_AS(wg_symplectic(2, 1), RegimeError);
}

TEST_CASE("unitary Weingarten") {
  CHECK(wg_unitary(1, 4).value(std::vector<int>{1}) == q(1, 4));
  for (int n = 2; n <= 8; ++n) {
    const auto t = wg_unitary(2, n);
    CHECK(t.value(std::vector<int>{1, 1}) == q(1, n * n - 1));
    CHECK(t.value(std::vector<int>{2}) == q(-1, n * (n * n - 1)));
  }
  const auto t5 = wg_unitary(2, 5);
  CHECK(t5.value(std::vector<int>{1, 1}) == q(1, 24));
  CHECK(t5.value(std::vector<int>{2}) == q(-1, 120));
  CHECK_THROWS_AS(wg_unitary(3, 2), RegimeError);
}

TEST_CASE("unitary table is a convolution inverse and a class function") {
  for (int k = 1; k <= 4; ++k)
    for (int n = k; n <= 8; ++n) {
      const auto table = wg_unitary(k, n);
      const auto perms = enumerate_permutations(k);
      const auto per_perm = wg_unitary_by_permutation(k, n);
      for (std::size_t i = 0; i < perms.size(); ++i) CHECK(per_perm[i] == table.value(perms[i]));
      for (const auto& sigma : perms) {
        Rational sum;
        for (const auto& tau : perms)
          sum += table.value(compose(tau, sigma.inverse())) * Rational(power(n, static_cast<unsigned>(tau.cycle_count())));
        CHECK(sum == (sigma.is_identity() ? 1 : 0));
      }
    }
}

TEST_CASE("asymptotics") {
  const std::vector<int> grid{4, 8, 16, 32};
  const auto u = check_asymptotics(Series::unitary, 2, grid);
  CHECK(u.passed);
  CHECK(u.rows.front().diagonal_deviation == doctest::Approx(1.0 / 15));
  const auto o = check_asymptotics(Series::orthogonal, 1, grid);
  CHECK(o.passed);
  for (const auto& row : o.rows) CHECK(row.diagonal_scaled == 1.0);
  const auto sp = check_asymptotics(Series::symplectic, 1, grid);
  CHECK(sp.passed);
  CHECK_FALSE(sp.leading_constant_checked);
  CHECK(sp.rows.front().diagonal_scaled == doctest::Approx(0.5));
  const std::vector<int> bad{1, 2};
  CHECK_THROWS_AS(check_asymptotics(Series::orthogonal, 2, bad), RegimeError);
}
