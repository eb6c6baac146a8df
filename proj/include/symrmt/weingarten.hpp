#pragma once

// Exact Weingarten tables for U_n, O_n and Sp_2n at fixed degree and size.
//
// Orthogonal and symplectic tables are inverses of Gram matrices of tensor
// invariants indexed by the canonical list of pair partitions of {0..2l-1}.
// The unitary table is the convolution inverse on S_k of
// sigma -> n^{#cycles(sigma)}, stored per cycle type.

#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "symrmt/combinatorics.hpp"
#include "symrmt/rational.hpp"

namespace symrmt {

enum class Series { unitary, orthogonal, symplectic };

std::string to_string(Series series);
Series parse_series(const std::string& text);

struct WeingartenTableU {
  int k = 0;
  int n = 0;
  std::vector<std::vector<int>> cycle_types;  // integer partitions of k
  std::vector<Rational> values;               // aligned with cycle_types

  const Rational& value(const std::vector<int>& cycle_type) const;
  const Rational& value(const Permutation& sigma) const { return value(sigma.cycle_type()); }
};

struct WeingartenTableO {
  int l = 0;
  int n = 0;
  std::vector<PairPartition> index;  // canonical order
  RationalMatrix matrix;
};

/// Rows and columns follow the canonical pair partitions read as ordered pair
/// partitions with first < second in each pair.
struct WeingartenTableSp {
  int l = 0;
  int n = 0;  // the group is Sp_2n
  std::vector<PairPartition> index;
  RationalMatrix matrix;
};

/// Entry (m, m') = n^loops(m, m').
IntegerMatrix gram_orthogonal(int l, int n);

/// Entry (m, m') = a(theta_m, theta_m') by explicit contraction of the signed
/// symplectic invariants against the form a(e_i, e_{n+i}) = 1.
IntegerMatrix gram_symplectic(int l, int n);

/// Coefficient of the basis tensor e_psi (psi: {0..2l-1} -> {0..2n-1}) in the
/// symplectic invariant theta_m for the ordered pair partition m.
int symplectic_invariant_coefficient(const OrderedPairPartition& m, std::span<const int> psi, int n);

WeingartenTableO wg_orthogonal(int l, int n);
WeingartenTableSp wg_symplectic(int l, int n);
WeingartenTableU wg_unitary(int k, int n);

/// M[sigma, tau] = n^{#cycles(sigma tau^-1)} over enumerate_permutations(k).
IntegerMatrix unitary_convolution_matrix(int k, int n);

/// Per-permutation unitary Weingarten values from the full k! x k! system,
/// indexed like enumerate_permutations(k). Used to confirm the class-function
/// property of the cycle-type table.
std::vector<Rational> wg_unitary_by_permutation(int k, int n);

/// Shared immutable tables, computed once per (degree, n).
std::shared_ptr<const WeingartenTableU> shared_wg_unitary(int k, int n);
std::shared_ptr<const WeingartenTableO> shared_wg_orthogonal(int l, int n);
std::shared_ptr<const WeingartenTableSp> shared_wg_symplectic(int l, int n);

struct AsymptoticsRow {
  int n = 0;
  double diagonal_scaled = 0;   // n^d * Wg(id) or n^d * Wg(m, m)
  double diagonal_deviation = 0;  // |diagonal_scaled - 1|
  double offdiagonal_scaled = 0;  // n^{d+1} * max |Wg(non-identity)|
};

struct AsymptoticsReport {
  Series series = Series::unitary;
  int degree = 0;  // k for unitary, l otherwise
  std::vector<AsymptoticsRow> rows;
  double fitted_c = 0;  // max over the grid of n * diagonal_deviation
  bool leading_constant_checked = true;
  bool passed = false;
};

/// Confirms the leading-order decay of the Weingarten function over a grid of
/// sizes. For Sp the leading constant is reported, not checked.
AsymptoticsReport check_asymptotics(Series series, int degree, std::span<const int> n_grid);

}  // namespace symrmt
