#include "symrmt/weingarten.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <tuple>

#include "symrmt/errors.hpp"

namespace symrmt {

std::string to_string(Series series) {
  switch (series) {
    case Series::unitary: return "unitary";
    case Series::orthogonal: return "orthogonal";
    case Series::symplectic: return "symplectic";
  }
  return "?";
}

Series parse_series(const std::string& text) {
  if (text == "unitary" || text == "U") return Series::unitary;
  if (text == "orthogonal" || text == "O") return Series::orthogonal;
  if (text == "symplectic" || text == "Sp") return Series::symplectic;
  throw ArgumentError("unknown series '" + text + "' (expected unitary, orthogonal or symplectic)");
}

const Rational& WeingartenTableU::value(const std::vector<int>& cycle_type) const {
  for (std::size_t i = 0; i < cycle_types.size(); ++i)
    if (cycle_types[i] == cycle_type) return values[i];
  throw ArgumentError("cycle type does not belong to S_" + std::to_string(k));
}

namespace {

void require_positive(int value, const char* what) {
  if (value < 1) throw ArgumentError(std::string(what) + " must be at least 1");
}

void require_regime(int n, int degree, const char* group, const char* symbol) {
  if (n < degree)
    throw RegimeError(std::string(group) + " Weingarten table requires n >= " + symbol + " (got n=" +
                      std::to_string(n) + ", " + symbol + "=" + std::to_string(degree) +
                      "); the n < " + symbol + " pseudo-inverse regime is not supported");
}

}  // namespace

IntegerMatrix gram_orthogonal(int l, int n) {
  require_positive(l, "l");
  require_positive(n, "n");
  const auto parts = enumerate_pair_partitions(l);
  IntegerMatrix gram(parts.size(), parts.size());
  for (std::size_t i = 0; i < parts.size(); ++i)
    for (std::size_t j = 0; j < parts.size(); ++j)
      gram(i, j) = power(n, static_cast<unsigned>(loops(parts[i], parts[j])));
  return gram;
}

int symplectic_invariant_coefficient(const OrderedPairPartition& m, std::span<const int> psi, int n) {
  if (psi.size() != 2 * m.pairs.size()) throw ArgumentError("tensor degree does not match the pair partition");
  int sign = 1;
  for (const auto& [first, second] : m.pairs) {
    const int x = psi[static_cast<std::size_t>(first)];
    const int y = psi[static_cast<std::size_t>(second)];
    // v(eta, eps, .) puts e_{eta + n eps} at `first` and e_{eta + n(1-eps)} at
    // `second`, the latter weighted by (-1)^eps.
    if (x % n != y % n || (x < n) == (y < n)) return 0;
    if (x >= n) sign = -sign;
  }
  return sign;
}

namespace {

// a(e_x, e_y): +1 for y = x + n, -1 for x = y + n, else 0.
inline int symplectic_form(int x, int y, int n) {
  if (y == x + n) return 1;
  if (x == y + n) return -1;
  return 0;
}

}  // namespace

IntegerMatrix gram_symplectic(int l, int n) {
  require_positive(l, "l");
  require_positive(n, "n");
  const auto parts = enumerate_pair_partitions(l);
  std::vector<OrderedPairPartition> ordered;
  ordered.reserve(parts.size());
  for (const auto& m : parts) ordered.push_back(OrderedPairPartition::canonical(m));

  const int degree = 2 * l;
  IntegerMatrix gram(parts.size(), parts.size());
  std::vector<int> eta(static_cast<std::size_t>(l), 0);
  std::vector<int> eps(static_cast<std::size_t>(l), 0);
  std::vector<int> psi(static_cast<std::size_t>(degree));
  std::vector<int> partner(static_cast<std::size_t>(degree));

  for (std::size_t row = 0; row < ordered.size(); ++row) {
    const auto& m = ordered[row];
    std::vector<long> acc(ordered.size(), 0);
    // Expand theta_m as a signed sum over (eta, eps) in F(l, n) x F(l, {0,1}).
    std::fill(eta.begin(), eta.end(), 0);
    while (true) {
      for (unsigned mask = 0; mask < (1u << l); ++mask) {
        int coefficient = 1;
        for (int nu = 0; nu < l; ++nu) {
          const int e = static_cast<int>((mask >> nu) & 1u);
          const auto [first, second] = m.pairs[static_cast<std::size_t>(nu)];
          psi[static_cast<std::size_t>(first)] = eta[static_cast<std::size_t>(nu)] + n * e;
          psi[static_cast<std::size_t>(second)] = eta[static_cast<std::size_t>(nu)] + n * (1 - e);
          if (e == 1) coefficient = -coefficient;
        }
        // Pair e_psi against theta_m': the only basis tensor with non-zero
        // pairing is e_{psi shifted by n}, with the product of form signs.
        int form_sign = 1;
        for (int j = 0; j < degree; ++j) {
          const int x = psi[static_cast<std::size_t>(j)];
          const int y = x < n ? x + n : x - n;
          partner[static_cast<std::size_t>(j)] = y;
          form_sign *= symplectic_form(x, y, n);
        }
        for (std::size_t col = 0; col < ordered.size(); ++col) {
          const int c = symplectic_invariant_coefficient(ordered[col], partner, n);
          if (c != 0) acc[col] += static_cast<long>(coefficient * form_sign * c);
        }
      }
      int pos = 0;
      while (pos < l && ++eta[static_cast<std::size_t>(pos)] == n) eta[static_cast<std::size_t>(pos++)] = 0;
      if (pos == l) break;
    }
    for (std::size_t col = 0; col < ordered.size(); ++col) gram(row, col) = acc[col];
  }
  return gram;
}

WeingartenTableO wg_orthogonal(int l, int n) {
  require_positive(l, "l");
  require_regime(n, l, "orthogonal", "l");
  WeingartenTableO table;
  table.l = l;
  table.n = n;
  table.index = enumerate_pair_partitions(l);
  table.matrix = inverse_exact(gram_orthogonal(l, n));
  return table;
}

WeingartenTableSp wg_symplectic(int l, int n) {
  require_positive(l, "l");
  require_regime(n, l, "symplectic", "l");
  WeingartenTableSp table;
  table.l = l;
  table.n = n;
  table.index = enumerate_pair_partitions(l);
  table.matrix = inverse_exact(gram_symplectic(l, n));
  return table;
}

IntegerMatrix unitary_convolution_matrix(int k, int n) {
  require_positive(n, "n");
  const auto perms = enumerate_permutations(k);
  std::vector<Permutation> inverses;
  inverses.reserve(perms.size());
  for (const auto& p : perms) inverses.push_back(p.inverse());
  std::vector<Integer> powers(static_cast<std::size_t>(k) + 1);
  for (int c = 0; c <= k; ++c) powers[static_cast<std::size_t>(c)] = power(n, static_cast<unsigned>(c));

  IntegerMatrix m(perms.size(), perms.size());
  for (std::size_t i = 0; i < perms.size(); ++i)
    for (std::size_t j = 0; j < perms.size(); ++j)
      m(i, j) = powers[static_cast<std::size_t>(compose(perms[i], inverses[j]).cycle_count())];
  return m;
}

std::vector<Rational> wg_unitary_by_permutation(int k, int n) {
  require_positive(k, "k");
  require_regime(n, k, "unitary", "k");
  const auto perms = enumerate_permutations(k);
  const IntegerMatrix m = unitary_convolution_matrix(k, n);
  // Solve M w = e_id; with W(tau sigma^-1) as unknowns the row for sigma reads
  // sum_tau n^{#cycles(sigma tau^-1)} W(tau) = [sigma = id].
  IntegerMatrix rhs(perms.size(), 1);
  rhs(0, 0) = 1;  // the identity is first in lexicographic order
  const RationalMatrix w = solve_exact(m, rhs);
  std::vector<Rational> out(perms.size());
  for (std::size_t i = 0; i < perms.size(); ++i) out[i] = w(i, 0);
  return out;
}

WeingartenTableU wg_unitary(int k, int n) {
  require_positive(k, "k");
  require_regime(n, k, "unitary", "k");
  const auto perms = enumerate_permutations(k);
  const auto classes = integer_partitions(k);
  std::map<std::vector<int>, std::size_t> class_index;
  for (std::size_t c = 0; c < classes.size(); ++c) class_index[classes[c]] = c;

  std::vector<std::size_t> class_of(perms.size());
  std::vector<int> cycles_of(perms.size());
  std::vector<std::size_t> representative(classes.size(), perms.size());
  for (std::size_t i = 0; i < perms.size(); ++i) {
    const auto type = perms[i].cycle_type();
    class_of[i] = class_index.at(type);
    cycles_of[i] = static_cast<int>(type.size());
    if (representative[class_of[i]] == perms.size()) representative[class_of[i]] = i;
  }

  // The solution of the full k! x k! system is a class function, so one
  // equation per conjugacy class determines it:
  //   sum_tau W(class(tau sigma^-1)) n^{#cycles(tau)} = [sigma = id].
  IntegerMatrix m(classes.size(), classes.size());
  IntegerMatrix rhs(classes.size(), 1);
  std::vector<Integer> powers(static_cast<std::size_t>(k) + 1);
  for (int c = 0; c <= k; ++c) powers[static_cast<std::size_t>(c)] = power(n, static_cast<unsigned>(c));

  for (std::size_t row = 0; row < classes.size(); ++row) {
    const Permutation sigma_inv = perms[representative[row]].inverse();
    for (std::size_t t = 0; t < perms.size(); ++t) {
      const auto type = compose(perms[t], sigma_inv).cycle_type();
      m(row, class_index.at(type)) += powers[static_cast<std::size_t>(cycles_of[t])];
    }
    if (perms[representative[row]].is_identity()) rhs(row, 0) = 1;
  }

  const RationalMatrix w = solve_exact(m, rhs);
  WeingartenTableU table;
  table.k = k;
  table.n = n;
  table.cycle_types = classes;
  table.values.resize(classes.size());
  for (std::size_t c = 0; c < classes.size(); ++c) table.values[c] = w(c, 0);
  return table;
}

namespace {

template <class Table>
class TableCache {
 public:
  template <class Builder>
  std::shared_ptr<const Table> get(int degree, int n, Builder&& build) {
    {
      std::lock_guard lock(mutex_);
      if (auto it = tables_.find({degree, n}); it != tables_.end()) return it->second;
    }
    auto table = std::make_shared<const Table>(build(degree, n));
    std::lock_guard lock(mutex_);
    return tables_.emplace(std::pair{degree, n}, std::move(table)).first->second;
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<int, int>, std::shared_ptr<const Table>> tables_;
};

}  // namespace

std::shared_ptr<const WeingartenTableU> shared_wg_unitary(int k, int n) {
  static TableCache<WeingartenTableU> cache;
  return cache.get(k, n, wg_unitary);
}

std::shared_ptr<const WeingartenTableO> shared_wg_orthogonal(int l, int n) {
  static TableCache<WeingartenTableO> cache;
  return cache.get(l, n, wg_orthogonal);
}

std::shared_ptr<const WeingartenTableSp> shared_wg_symplectic(int l, int n) {
  static TableCache<WeingartenTableSp> cache;
  return cache.get(l, n, wg_symplectic);
}

AsymptoticsReport check_asymptotics(Series series, int degree, std::span<const int> n_grid) {
  if (n_grid.empty()) throw ArgumentError("check_asymptotics needs a non-empty grid");
  AsymptoticsReport report;
  report.series = series;
  report.degree = degree;
  report.leading_constant_checked = series != Series::symplectic;

  for (int n : n_grid) {
    AsymptoticsRow row;
    row.n = n;
    double diagonal = 0;
    double offdiagonal = 0;
    if (series == Series::unitary) {
      const auto table = shared_wg_unitary(degree, n);
      for (std::size_t c = 0; c < table->cycle_types.size(); ++c) {
        const double v = table->values[c].get_d();
        if (static_cast<int>(table->cycle_types[c].size()) == degree)
          diagonal = v;
        else
          offdiagonal = std::max(offdiagonal, std::abs(v));
      }
    } else {
      const RationalMatrix& m = series == Series::orthogonal ? shared_wg_orthogonal(degree, n)->matrix
                                                             : shared_wg_symplectic(degree, n)->matrix;
      diagonal = m(0, 0).get_d();
      for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
          if (i != j) offdiagonal = std::max(offdiagonal, std::abs(m(i, j).get_d()));
    }
    row.diagonal_scaled = std::pow(static_cast<double>(n), degree) * diagonal;
    row.diagonal_deviation = std::abs(row.diagonal_scaled - 1.0);
    row.offdiagonal_scaled = std::pow(static_cast<double>(n), degree + 1) * offdiagonal;
    report.fitted_c = std::max(report.fitted_c, n * row.diagonal_deviation);
    report.rows.push_back(row);
  }

  bool ok = std::isfinite(report.fitted_c);
  for (std::size_t i = 1; i < report.rows.size(); ++i) {
    const auto& prev = report.rows[i - 1];
    const auto& cur = report.rows[i];
    if (report.leading_constant_checked) {
      // Deviation from 1 shrinks along the grid.
      ok = ok && cur.diagonal_deviation <= prev.diagonal_deviation + 1e-15;
    } else if (i >= 2) {
      // Only convergence of n^l Wg(m, m): successive increments shrink.
      const double step = std::abs(cur.diagonal_scaled - prev.diagonal_scaled);
      const double before = std::abs(prev.diagonal_scaled - report.rows[i - 2].diagonal_scaled);
      ok = ok && step <= before + 1e-15;
    }
    // Non-identity entries are O(n^-(d+1)): the scaled value stays bounded.
    ok = ok && cur.offdiagonal_scaled <= 2.0 * report.rows.front().offdiagonal_scaled + 1e-12;
  }
  report.passed = ok;
  return report;
}

}  // namespace symrmt
