#include "symrmt/haar_integrals.hpp"

#include <algorithm>
#include <string>

#include "symrmt/errors.hpp"
#include "symrmt/limits.hpp"

namespace symrmt {
namespace {

void require_same_length(std::size_t a, std::size_t b, const char* what) {
  if (a != b) throw ArgumentError(std::string(what) + ": index functions of different length");
}

void require_range(std::span<const int> values, int bound, const char* what) {
  for (int v : values)
    if (v < 0 || v >= bound)
      throw ArgumentError(std::string(what) + ": index " + std::to_string(v) + " outside {0.." +
                          std::to_string(bound - 1) + "}");
}

// All sigma in S_k with target[j] == source[sigma(j)] for every j.
void matching_permutations(std::span<const int> target, std::span<const int> source,
                           std::vector<std::vector<int>>& out) {
  out.clear();
  const std::size_t k = target.size();
  std::vector<int> current(k, -1);
  std::vector<char> used(k, 0);
  // Iterative DFS over positions.
  std::vector<std::size_t> next_choice(k + 1, 0);
  std::size_t pos = 0;
  while (true) {
    if (pos == k) {
      out.push_back(current);
      if (k == 0) return;
      --pos;
      used[static_cast<std::size_t>(current[pos])] = 0;
      current[pos] = -1;
      continue;
    }
    std::size_t& choice = next_choice[pos];
    bool advanced = false;
    while (choice < k) {
      const std::size_t c = choice++;
      if (!used[c] && source[c] == target[pos]) {
        used[c] = 1;
        current[pos] = static_cast<int>(c);
        next_choice[pos + 1] = 0;
        ++pos;
        advanced = true;
        break;
      }
    }
    if (advanced) continue;
    choice = 0;
    if (pos == 0) return;
    --pos;
    used[static_cast<std::size_t>(current[pos])] = 0;
    current[pos] = -1;
  }
}

std::vector<int> cycle_type_of(const std::vector<int>& images) {
  std::vector<int> lengths;
  std::vector<char> seen(images.size(), 0);
  for (std::size_t s = 0; s < images.size(); ++s) {
    if (seen[s]) continue;
    int len = 0;
    for (std::size_t i = s; !seen[i]; i = static_cast<std::size_t>(images[i])) {
      seen[i] = 1;
      ++len;
    }
    lengths.push_back(len);
  }
  std::sort(lengths.begin(), lengths.end(), std::greater<>());
  return lengths;
}

}  // namespace

SymplecticMonomial SymplecticMonomial::from_factors(std::span<const EntryFactor> factors, int n) {
  if (n < 1) throw ArgumentError("symplectic monomial needs n >= 1");
  SymplecticMonomial mono;
  for (const auto& f : factors) {
    if (f.row < 0 || f.row >= 2 * n || f.col < 0 || f.col >= 2 * n)
      throw ArgumentError("symplectic factor index outside {0.." + std::to_string(2 * n - 1) + "}");
    mono.phi.push_back(f.row % n);
    mono.alpha.push_back(f.row / n);
    mono.psi.push_back(f.col % n);
    mono.beta.push_back(f.col / n);
    mono.conjugated.push_back(f.conjugated);
  }
  return mono;
}

OrthogonalMonomial orthogonal_monomial(std::span<const EntryFactor> factors) {
  OrthogonalMonomial mono;
  for (const auto& f : factors) {
    // Real group: conjugation is the identity on entries.
    mono.phi.push_back(f.row);
    mono.psi.push_back(f.col);
  }
  return mono;
}

UnitaryMonomial unitary_monomial(std::span<const EntryFactor> factors) {
  UnitaryMonomial mono;
  for (const auto& f : factors) {
    if (f.conjugated) {
      mono.phi_conj.push_back(f.row);
      mono.psi_conj.push_back(f.col);
    } else {
      mono.phi.push_back(f.row);
      mono.psi.push_back(f.col);
    }
  }
  return mono;
}

SignedEntry symplectic_conjugate_entry(int row, int col, int n) {
  const int sign = ((row < n) ? 1 : -1) * ((col < n) ? 1 : -1);
  return SignedEntry{row < n ? row + n : row - n, col < n ? col + n : col - n, sign};
}

// ---------------------------------------------------------------------------

Rational OrthogonalIntegrator::integrate(std::span<const int> rows, std::span<const int> cols) {
  Rational acc;
  accumulate(rows, cols, acc);
  return acc;
}

bool OrthogonalIntegrator::accumulate(std::span<const int> rows, std::span<const int> cols, Rational& acc,
                                      const Rational& weight) {
  require_same_length(rows.size(), cols.size(), "orthogonal integral");
  if (rows.size() % 2 != 0) return false;
  if (rows.empty()) {
    acc += weight;
    return true;
  }
  const int l = static_cast<int>(rows.size() / 2);
  if (static_cast<std::size_t>(l) >= tables_.size()) tables_.resize(static_cast<std::size_t>(l) + 1);
  auto& table = tables_[static_cast<std::size_t>(l)];
  if (!table) table = shared_wg_orthogonal(l, n_);

  thread_local std::vector<std::size_t> row_hits, col_hits;
  row_hits.clear();
  col_hits.clear();
  for (std::size_t i = 0; i < table->index.size(); ++i)
    if (is_constant_on_blocks(rows, table->index[i])) row_hits.push_back(i);
  if (row_hits.empty()) return false;
  for (std::size_t i = 0; i < table->index.size(); ++i)
    if (is_constant_on_blocks(cols, table->index[i])) col_hits.push_back(i);
  if (col_hits.empty()) return false;
  Rational sum;
  for (std::size_t a : row_hits)
    for (std::size_t b : col_hits) sum += table->matrix(a, b);
  acc += sum * weight;
  return true;
}

Rational UnitaryIntegrator::integrate(std::span<const int> rows, std::span<const int> cols,
                                      std::span<const int> conj_rows, std::span<const int> conj_cols) {
  require_same_length(rows.size(), cols.size(), "unitary integral");
  require_same_length(conj_rows.size(), conj_cols.size(), "unitary integral");
  // Invariance under u -> z u, |z| = 1, kills unbalanced integrands.
  if (rows.size() != conj_rows.size()) return Rational(0);
  const int k = static_cast<int>(rows.size());
  if (k == 0) return Rational(1);
  if (n_ < k)
    throw RegimeError("unitary Weingarten table requires n >= k (got n=" + std::to_string(n_) +
                      ", k=" + std::to_string(k) + ")");

  thread_local std::vector<std::vector<int>> sigmas, taus;
  matching_permutations(rows, conj_rows, sigmas);
  if (sigmas.empty()) return Rational(0);
  matching_permutations(cols, conj_cols, taus);
  if (taus.empty()) return Rational(0);

  if (static_cast<std::size_t>(k) >= tables_.size()) tables_.resize(static_cast<std::size_t>(k) + 1);
  auto& table = tables_[static_cast<std::size_t>(k)];
  if (!table) table = shared_wg_unitary(k, n_);
  Rational sum;
  std::vector<int> sigma_inv(static_cast<std::size_t>(k));
  std::vector<int> product(static_cast<std::size_t>(k));
  for (const auto& sigma : sigmas) {
    for (int i = 0; i < k; ++i) sigma_inv[static_cast<std::size_t>(sigma[static_cast<std::size_t>(i)])] = i;
    for (const auto& tau : taus) {
      for (int i = 0; i < k; ++i)
        product[static_cast<std::size_t>(i)] = tau[static_cast<std::size_t>(sigma_inv[static_cast<std::size_t>(i)])];
      sum += table->value(cycle_type_of(product));
    }
  }
  return sum;
}

Rational SymplecticIntegrator::integrate(std::span<const int> rows, std::span<const int> cols) {
  require_same_length(rows.size(), cols.size(), "symplectic integral");
  if (rows.size() % 2 != 0) return Rational(0);
  if (rows.empty()) return Rational(1);
  const int l = static_cast<int>(rows.size() / 2);
  if (static_cast<std::size_t>(l) >= tables_.size()) tables_.resize(static_cast<std::size_t>(l) + 1);
  auto& table = tables_[static_cast<std::size_t>(l)];
  if (!table) table = shared_wg_symplectic(l, n_);
  const int n = n_;

  // Indicator 1_{F(m, 2n)}(phi + n alpha): phi constant on blocks, alpha
  // takes both values on every block. Sign (-1)^{#{nu : alpha(m_nu) = 0}}.
  auto hits = [&](std::span<const int> idx, std::vector<std::pair<std::size_t, int>>& out) {
    out.clear();
    for (std::size_t i = 0; i < table->index.size(); ++i) {
      int sign = 1;
      bool ok = true;
      for (const auto& [a, b] : table->index[i].blocks()) {
        const int x = idx[static_cast<std::size_t>(a)];
        const int y = idx[static_cast<std::size_t>(b)];
        if (x % n != y % n || (x < n) == (y < n)) {
          ok = false;
          break;
        }
        if (x < n) sign = -sign;
      }
      if (ok) out.emplace_back(i, sign);
    }
  };
  thread_local std::vector<std::pair<std::size_t, int>> row_hits, col_hits;
  hits(rows, row_hits);
  if (row_hits.empty()) return Rational(0);
  hits(cols, col_hits);
  if (col_hits.empty()) return Rational(0);

  Rational sum;
  for (const auto& [i, si] : row_hits)
    for (const auto& [j, sj] : col_hits) {
      if (si * sj > 0)
        sum += table->matrix(i, j);
      else
        sum -= table->matrix(i, j);
    }
  return sum;
}

// ---------------------------------------------------------------------------

Rational integrate_orthogonal(const OrthogonalMonomial& mono, int n) {
  require_same_length(mono.phi.size(), mono.psi.size(), "orthogonal monomial");
  require_range(mono.phi, n, "orthogonal monomial");
  require_range(mono.psi, n, "orthogonal monomial");
  OrthogonalIntegrator integrator(n);
  return integrator.integrate(mono.phi, mono.psi);
}

Rational integrate_unitary(const UnitaryMonomial& mono, int n) {
  require_same_length(mono.phi.size(), mono.psi.size(), "unitary monomial");
  require_same_length(mono.phi_conj.size(), mono.psi_conj.size(), "unitary monomial");
  require_range(mono.phi, n, "unitary monomial");
  require_range(mono.psi, n, "unitary monomial");
  require_range(mono.phi_conj, n, "unitary monomial");
  require_range(mono.psi_conj, n, "unitary monomial");
  UnitaryIntegrator integrator(n);
  return integrator.integrate(mono.phi, mono.psi, mono.phi_conj, mono.psi_conj);
}

Rational integrate_symplectic(const SymplecticMonomial& mono, int n) {
  const std::size_t k = mono.phi.size();
  if (mono.psi.size() != k || mono.alpha.size() != k || mono.beta.size() != k || mono.conjugated.size() != k)
    throw ArgumentError("symplectic monomial: index functions of different length");
  require_range(mono.phi, n, "symplectic monomial");
  require_range(mono.psi, n, "symplectic monomial");
  require_range(mono.alpha, 2, "symplectic monomial");
  require_range(mono.beta, 2, "symplectic monomial");

  std::vector<int> rows(k), cols(k);
  int sign = 1;
  for (std::size_t j = 0; j < k; ++j) {
    int x = mono.phi[j] + n * mono.alpha[j];
    int y = mono.psi[j] + n * mono.beta[j];
    if (mono.conjugated[j]) {
      const auto e = symplectic_conjugate_entry(x, y, n);
      x = e.row;
      y = e.col;
      sign *= e.sign;
    }
    rows[j] = x;
    cols[j] = y;
  }
  SymplecticIntegrator integrator(n);
  Rational value = integrator.integrate(rows, cols);
  if (sign < 0) value = -value;
  return value;
}

Rational power_sum_integral_orthogonal(std::span<const int> exponents, int n) {
  if (n < 1) throw ArgumentError("power-sum integral needs n >= 1");
  // A permutation s of cycle type (1^{a_1} 2^{a_2} ...); the trace product is
  // sum_i prod_j g_{i_j, i_{s(j)}}.
  std::vector<int> images;
  for (std::size_t j = 0; j < exponents.size(); ++j) {
    const int len = static_cast<int>(j) + 1;
    if (exponents[j] < 0) throw ArgumentError("power-sum exponents must be non-negative");
    for (int rep = 0; rep < exponents[j]; ++rep) {
      const int base = static_cast<int>(images.size());
      for (int t = 0; t < len; ++t) images.push_back(base + (t + 1) % len);
    }
  }
  const int k = static_cast<int>(images.size());
  if (k == 0) return Rational(1);
  if (k % 2 != 0) return Rational(0);
  const int cap = 2 * limits().max_pair_partition_half;
  if (k > cap)
    throw SizeLimitError("power-sum integral of degree " + std::to_string(k) + " exceeds the cap 2l <= " +
                         std::to_string(cap));
  if (n < k / 2)
    throw RegimeError("orthogonal Weingarten table requires n >= l (got n=" + std::to_string(n) +
                      ", l=" + std::to_string(k / 2) + ")");

  OrthogonalIntegrator integrator(n);
  std::vector<int> rows(static_cast<std::size_t>(k), 0), cols(static_cast<std::size_t>(k));
  Rational total;
  while (true) {
    for (int j = 0; j < k; ++j)
      cols[static_cast<std::size_t>(j)] = rows[static_cast<std::size_t>(images[static_cast<std::size_t>(j)])];
    integrator.accumulate(rows, cols, total);
    int pos = 0;
    while (pos < k && ++rows[static_cast<std::size_t>(pos)] == n) rows[static_cast<std::size_t>(pos++)] = 0;
    if (pos == k) break;
  }
  return total;
}

bool check_trace_formula(const Permutation& s, int n) {
  const int k = s.degree();
  if (n < k) throw RegimeError("trace formula check requires the stable range n >= k");
  const auto type = s.cycle_type();
  std::vector<int> exponents(static_cast<std::size_t>(type.empty() ? 0 : type.front()), 0);
  for (int len : type) ++exponents[static_cast<std::size_t>(len - 1)];
  const Rational lhs = power_sum_integral_orthogonal(exponents, n);
  const Rational rhs = k % 2 == 0 ? Rational(fixed_pair_partitions(s)) : Rational(0);
  return lhs == rhs;
}

}  // namespace symrmt
