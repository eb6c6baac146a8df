#pragma once

// Exact Haar integrals of products of matrix entries over O_n, U_n and Sp_2n.
// Indices are 0-based; for Sp_2n an entry index x in {0..2n-1} decomposes as
// x = phi + n * alpha with phi in {0..n-1} and alpha in {0, 1}.

#include <memory>
#include <span>
#include <vector>

#include "symrmt/combinatorics.hpp"
#include "symrmt/rational.hpp"
#include "symrmt/weingarten.hpp"

namespace symrmt {

/// One factor g_{row,col} (or its complex conjugate).
struct EntryFactor {
  int row = 0;
  int col = 0;
  bool conjugated = false;
};

struct OrthogonalMonomial {
  std::vector<int> phi;  // row indices
  std::vector<int> psi;  // column indices
};

struct UnitaryMonomial {
  std::vector<int> phi, psi;              // plain factors u_{phi_j, psi_j}
  std::vector<int> phi_conj, psi_conj;    // conjugated factors
};

struct SymplecticMonomial {
  std::vector<int> phi, psi;      // base indices in {0..n-1}
  std::vector<int> alpha, beta;   // half selectors in {0, 1}
  std::vector<bool> conjugated;   // factors entered as complex conjugates

  /// Splits ambient indices in {0..2n-1} into (phi, alpha) and (psi, beta).
  static SymplecticMonomial from_factors(std::span<const EntryFactor> factors, int n);
};

OrthogonalMonomial orthogonal_monomial(std::span<const EntryFactor> factors);
UnitaryMonomial unitary_monomial(std::span<const EntryFactor> factors);

Rational integrate_orthogonal(const OrthogonalMonomial& mono, int n);
Rational integrate_unitary(const UnitaryMonomial& mono, int n);
Rational integrate_symplectic(const SymplecticMonomial& mono, int n);

/// conj(g_{x,y}) = s(x) s(y) g_{x', y'} on Sp_2n, where x' swaps the halves of
/// x and s(x) = +1 on the first half, -1 on the second.
struct SignedEntry {
  int row;
  int col;
  int sign;
};
SignedEntry symplectic_conjugate_entry(int row, int col, int n);

/// Integral of (Tr g)^{a_1} (Tr g^2)^{a_2} ... over O_n, by expanding the
/// traces into entry monomials.
Rational power_sum_integral_orthogonal(std::span<const int> exponents, int n);

/// Compares the power-sum integral for the cycle type of s with the number of
/// matchings fixed by s. Requires n >= k.
bool check_trace_formula(const Permutation& s, int n);

// ---------------------------------------------------------------------------
// Reusable integrators over a fixed group size, used by the exact moment
// expansions where the same tables serve millions of monomials. All index
// spans are 0-based and have the integrand degree as length.

class OrthogonalIntegrator {
 public:
  explicit OrthogonalIntegrator(int n) : n_(n) {}
  /// Adds the integral of prod g_{rows[j], cols[j]} times `weight` to `acc`.
  /// Returns false when the integral vanishes.
  bool accumulate(std::span<const int> rows, std::span<const int> cols, Rational& acc,
                  const Rational& weight = Rational(1));
  Rational integrate(std::span<const int> rows, std::span<const int> cols);

 private:
  int n_;
  std::vector<std::shared_ptr<const WeingartenTableO>> tables_;  // by l
};

class UnitaryIntegrator {
 public:
  explicit UnitaryIntegrator(int n) : n_(n) {}
  Rational integrate(std::span<const int> rows, std::span<const int> cols, std::span<const int> conj_rows,
                     std::span<const int> conj_cols);

 private:
  int n_;
  std::vector<std::shared_ptr<const WeingartenTableU>> tables_;  // by k
};

class SymplecticIntegrator {
 public:
  explicit SymplecticIntegrator(int n) : n_(n) {}
  /// Plain factors only: prod g_{rows[j], cols[j]} with ambient indices.
  Rational integrate(std::span<const int> rows, std::span<const int> cols);

 private:
  int n_;
  std::vector<std::shared_ptr<const WeingartenTableSp>> tables_;
};

}  // namespace symrmt
