#include "symrmt/moments.hpp"

#include <string>

#include "symrmt/combinatorics.hpp"
#include "symrmt/errors.hpp"
#include "symrmt/limits.hpp"
#include "symrmt/weingarten.hpp"

namespace symrmt {
namespace {

// One factor group of an integrand.
//   linear:    sum_{r,c} first(r, c) g_{r c}
//   quadratic: sum_{j,k,t,l} first(t, j) second(k, l) g_{j k} g_{t l}
// with each g optionally conjugated.
struct Piece {
  bool quadratic = false;
  ExactMatrix first;
  ExactMatrix second;
  bool conj_a = false;
  bool conj_b = false;

  int slots() const { return quadratic ? 2 : 1; }
};

using Integrand = std::vector<Piece>;

ExactMatrix conjugate(const ExactMatrix& a) {
  ExactMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j).conj();
  return out;
}

ExactMatrix transpose(const ExactMatrix& a) {
  ExactMatrix out(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = a(i, j);
  return out;
}

ExactMatrix multiply(const ExactMatrix& a, const ExactMatrix& b) {
  ExactMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k).is_zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        if (!b(k, j).is_zero()) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

Piece conjugate(const Piece& p) {
  Piece out = p;
  out.first = conjugate(p.first);
  if (p.quadratic) out.second = conjugate(p.second);
  out.conj_a = !p.conj_a;
  out.conj_b = !p.conj_b;
  return out;
}

int slot_count(const Integrand& f) {
  int k = 0;
  for (const auto& p : f) k += p.slots();
  return k;
}

std::vector<bool> slot_conj(const Integrand& f) {
  std::vector<bool> out;
  for (const auto& p : f) {
    out.push_back(p.conj_a);
    if (p.quadratic) out.push_back(p.conj_b);
  }
  return out;
}

bool has_linear(const Integrand& f) {
  for (const auto& p : f)
    if (!p.quadratic) return true;
  return false;
}

inline std::size_t at(const std::vector<int>& v, int s) { return static_cast<std::size_t>(v[static_cast<std::size_t>(s)]); }

ExactComplex row_part(const Integrand& f, const std::vector<int>& r) {
  ExactComplex w(1);
  int s = 0;
  for (const auto& p : f) {
    if (p.quadratic) {
      const ExactComplex& e = p.first(at(r, s + 1), at(r, s));
      if (e.is_zero()) return ExactComplex();
      w *= e;
    }
    s += p.slots();
  }
  return w;
}

ExactComplex col_part(const Integrand& f, const std::vector<int>& c) {
  ExactComplex w(1);
  int s = 0;
  for (const auto& p : f) {
    if (p.quadratic) {
      const ExactComplex& e = p.second(at(c, s), at(c, s + 1));
      if (e.is_zero()) return ExactComplex();
      w *= e;
    }
    s += p.slots();
  }
  return w;
}

ExactComplex coupled_part(const Integrand& f, const std::vector<int>& r, const std::vector<int>& c) {
  ExactComplex w(1);
  int s = 0;
  for (const auto& p : f) {
    if (!p.quadratic) {
      const ExactComplex& e = p.first(at(r, s), at(c, s));
      if (e.is_zero()) return ExactComplex();
      w *= e;
    }
    s += p.slots();
  }
  return w;
}

// An index assignment for all slots, with the sign it carries.
struct Assignment {
  std::vector<int> idx;
  int sign = 1;
};
using AssignmentSet = std::vector<Assignment>;

// Signed sum over r in rows, c in cols of row_part * col_part * coupled_part.
class Contractor {
 public:
  Contractor(const Integrand& f, std::int64_t& budget) : f_(f), coupled_(has_linear(f)), budget_(budget) {}

  ExactComplex sum(const AssignmentSet& rows, const AssignmentSet& cols) {
    ExactComplex total;
    if (!coupled_) {
      charge(static_cast<std::int64_t>(rows.size() + cols.size()));
      ExactComplex rs, cs;
      for (const auto& r : rows) {
        const ExactComplex w = row_part(f_, r.idx);
        if (r.sign > 0) rs += w; else rs -= w;
      }
      if (rs.is_zero()) return total;
      for (const auto& c : cols) {
        const ExactComplex w = col_part(f_, c.idx);
        if (c.sign > 0) cs += w; else cs -= w;
      }
      return rs * cs;
    }
    charge(static_cast<std::int64_t>(rows.size()) * static_cast<std::int64_t>(cols.size()));
    for (const auto& r : rows) {
      const ExactComplex rw = row_part(f_, r.idx);
      if (rw.is_zero()) continue;
      ExactComplex inner;
      for (const auto& c : cols) {
        ExactComplex w = col_part(f_, c.idx);
        if (w.is_zero()) continue;
        w *= coupled_part(f_, r.idx, c.idx);
        if (r.sign * c.sign > 0) inner += w; else inner -= w;
      }
      total += rw * inner;
    }
    return total;
  }

 private:
  void charge(std::int64_t amount) {
    budget_ -= amount;
    if (budget_ < 0)
      throw SizeLimitError("exact moment expansion exceeds the budget of " +
                           std::to_string(limits().max_expansion_terms) + " weight evaluations");
  }

  const Integrand& f_;
  bool coupled_;
  std::int64_t& budget_;
};

// Row/column assignments constant on the blocks of m, values in {0..size-1}.
AssignmentSet orthogonal_assignments(const PairPartition& m, int size) {
  const int l = m.half_size();
  AssignmentSet out;
  std::vector<int> values(static_cast<std::size_t>(l), 0);
  while (true) {
    Assignment a;
    a.idx.assign(static_cast<std::size_t>(2 * l), 0);
    for (int nu = 0; nu < l; ++nu) {
      const auto [x, y] = m.blocks()[static_cast<std::size_t>(nu)];
      a.idx[static_cast<std::size_t>(x)] = a.idx[static_cast<std::size_t>(y)] = values[static_cast<std::size_t>(nu)];
    }
    out.push_back(std::move(a));
    int pos = 0;
    while (pos < l && ++values[static_cast<std::size_t>(pos)] == size) values[static_cast<std::size_t>(pos++)] = 0;
    if (pos == l) break;
  }
  return out;
}

// Assignments in F(m, 2n) with the sign (-1)^{#{nu : first point of block nu
// lies in 0..n-1}}, then rewritten for conjugated slots: a
// conjugated factor conj(g_{x,y}) equals s(x) s(y) g_{x', y'}, so the weight
// is read at the swapped index and picks up s at the plain one.
AssignmentSet symplectic_assignments(const PairPartition& m, int n, const std::vector<bool>& conj) {
  const int l = m.half_size();
  AssignmentSet out;
  std::vector<int> values(static_cast<std::size_t>(l), 0);  // phi + n * alpha_first
  const int range = 2 * n;
  while (true) {
    Assignment a;
    a.idx.assign(static_cast<std::size_t>(2 * l), 0);
    for (int nu = 0; nu < l; ++nu) {
      const auto [x, y] = m.blocks()[static_cast<std::size_t>(nu)];
      const int v = values[static_cast<std::size_t>(nu)];
      const int phi = v % n;
      const int alpha = v / n;
      a.idx[static_cast<std::size_t>(x)] = phi + n * alpha;
      a.idx[static_cast<std::size_t>(y)] = phi + n * (1 - alpha);
      if (alpha == 0) a.sign = -a.sign;
    }
    for (std::size_t s = 0; s < conj.size(); ++s) {
      if (!conj[s]) continue;
      int& x = a.idx[s];
      if (x >= n) a.sign = -a.sign;
      x = x < n ? x + n : x - n;
    }
    out.push_back(std::move(a));
    int pos = 0;
    while (pos < l && ++values[static_cast<std::size_t>(pos)] == range) values[static_cast<std::size_t>(pos++)] = 0;
    if (pos == l) break;
  }
  return out;
}

// Assignments with plain slot P[i] tied to conjugated slot Q[sigma(i)].
AssignmentSet unitary_assignments(const Permutation& sigma, const std::vector<int>& plain,
                                  const std::vector<int>& conj, int size) {
  const int k = sigma.degree();
  AssignmentSet out;
  std::vector<int> values(static_cast<std::size_t>(k), 0);  // on conjugated slots
  while (true) {
    Assignment a;
    a.idx.assign(static_cast<std::size_t>(2 * k), 0);
    for (int j = 0; j < k; ++j) a.idx[static_cast<std::size_t>(conj[static_cast<std::size_t>(j)])] = values[static_cast<std::size_t>(j)];
    for (int i = 0; i < k; ++i)
      a.idx[static_cast<std::size_t>(plain[static_cast<std::size_t>(i)])] = values[static_cast<std::size_t>(sigma(i))];
    out.push_back(std::move(a));
    int pos = 0;
    while (pos < k && ++values[static_cast<std::size_t>(pos)] == size) values[static_cast<std::size_t>(pos++)] = 0;
    if (pos == k) break;
  }
  return out;
}

ExactComplex integrate(const SymmetryClass& cls, const Integrand& f, std::int64_t& budget) {
  const int k = slot_count(f);
  const int size = cls.ambient_size();
  Contractor contract(f, budget);
  ExactComplex total;
  switch (cls.group()) {
    case GroupKind::O: {
      if (k % 2 != 0) return total;
      const int l = k / 2;
      const auto table = shared_wg_orthogonal(l, size);
      const std::size_t count = table->index.size();
      std::vector<AssignmentSet> sets;
      for (const auto& m : table->index) sets.push_back(orthogonal_assignments(m, size));
      for (std::size_t a = 0; a < count; ++a)
        for (std::size_t b = 0; b < count; ++b) {
          if (sgn(table->matrix(a, b)) == 0) continue;
          total += contract.sum(sets[a], sets[b]) * table->matrix(a, b);
        }
      return total;
    }
    case GroupKind::Sp: {
      if (k % 2 != 0) return total;
      const int l = k / 2;
      const auto table = shared_wg_symplectic(l, cls.n);
      const std::size_t count = table->index.size();
      const auto conj = slot_conj(f);
      std::vector<AssignmentSet> sets;
      for (const auto& m : table->index) sets.push_back(symplectic_assignments(m, cls.n, conj));
      for (std::size_t a = 0; a < count; ++a)
        for (std::size_t b = 0; b < count; ++b) {
          if (sgn(table->matrix(a, b)) == 0) continue;
          total += contract.sum(sets[a], sets[b]) * table->matrix(a, b);
        }
      return total;
    }
    case GroupKind::U: {
      const auto conj = slot_conj(f);
      std::vector<int> plain, conjugated;
      for (int s = 0; s < k; ++s) (conj[static_cast<std::size_t>(s)] ? conjugated : plain).push_back(s);
      // Invariance under g -> z g, |z| = 1.
      if (plain.size() != conjugated.size()) return total;
      const int degree = static_cast<int>(plain.size());
      const auto table = shared_wg_unitary(degree, size);
      const auto perms = enumerate_permutations(degree);
      std::vector<AssignmentSet> sets;
      for (const auto& sigma : perms) sets.push_back(unitary_assignments(sigma, plain, conjugated, size));
      for (std::size_t a = 0; a < perms.size(); ++a)
        for (std::size_t b = 0; b < perms.size(); ++b) {
          const Rational& w = table->value(compose(perms[b], perms[a].inverse()));
          total += contract.sum(sets[a], sets[b]) * w;
        }
      return total;
    }
  }
  return total;
}

Piece trace_piece(const SymmetryClass& cls, const ExactMatrix& a) {
  const CartanForm form = cartan_form(cls);
  Piece p;
  if (form.degree == 1) {
    // Tr(A g) = sum_{r,c} A_{c r} g_{r c}
    p.first = transpose(a);
    return p;
  }
  // V = g L Y R with Y = g' or g*, so Tr(A V) = sum (R A)_{t j} L_{k l} g_{j k} Y'_{t l}.
  p.quadratic = true;
  p.first = multiply(to_exact(form.right), a);
  p.second = to_exact(form.left);
  p.conj_b = form.adjoint;
  return p;
}

}  // namespace

// ---------------------------------------------------------------------------

Rational gamma(SymmetryTag tag) {
  switch (tag) {
    case SymmetryTag::A:
    case SymmetryTag::AII: return Rational(1, 2);
    case SymmetryTag::BDI: return Rational(2);
    case SymmetryTag::CI:
    case SymmetryTag::CII: return Rational(4);
    default: return Rational(1);
  }
}

Eigen::MatrixXd theoretical_covariance(const SymmetryClass& cls, const std::vector<ComplexMatrix>& a_list) {
  std::vector<ComplexMatrix> projected;
  for (const auto& a : a_list) projected.push_back(project_W(cls, a));
  const double scale = gamma(cls.tag).get_d() / cls.n;
  const auto r = static_cast<Eigen::Index>(projected.size());
  Eigen::MatrixXd cov(r, r);
  for (Eigen::Index mu = 0; mu < r; ++mu)
    for (Eigen::Index nu = 0; nu < r; ++nu)
      cov(mu, nu) = scale * (projected[static_cast<std::size_t>(mu)] * projected[static_cast<std::size_t>(nu)].adjoint())
                                .trace()
                                .real();
  return cov;
}

double chiral_mean(const SymmetryClass& cls, const ComplexMatrix& a) {
  if (!cls.chiral()) throw ArgumentError("chiral mean is defined for AIII, BDI and CII only (got " + cls.to_string() + ")");
  const ComplexMatrix pa = project_W(cls, a);
  const double ratio = static_cast<double>(cls.p - cls.q) / cls.n;
  if (cls.tag == SymmetryTag::CII) return 2.0 * ratio * (pa * doubled_signature(cls.p, cls.q)).trace().real();
  return ratio * (pa * signature_matrix(cls.p, cls.q)).trace().real();
}

double asymptotic_second_moment(const SymmetryClass& cls, const ComplexMatrix& a, double tol) {
  if (!membership_W(cls, a, tol))
    throw ArgumentError("asymptotic second moment needs a matrix in W for " + cls.to_string() + "; project it first");
  return gamma(cls.tag).get_d() / cls.n * (a * a.adjoint()).trace().real();
}

ExactMatrix to_exact(const ComplexMatrix& a) {
  ExactMatrix out(static_cast<std::size_t>(a.rows()), static_cast<std::size_t>(a.cols()));
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = ExactComplex::from_double(a(i, j));
  return out;
}

ComplexMatrix to_complex(const ExactMatrix& a) {
  ComplexMatrix out(static_cast<Eigen::Index>(a.rows()), static_cast<Eigen::Index>(a.cols()));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = a(i, j).to_double();
  return out;
}

ExactMoments exact_moments(const SymmetryClass& cls, const ExactMatrix& a) {
  detail::require_ambient(cls, static_cast<long>(a.rows()), static_cast<long>(a.cols()));
  const std::int64_t cap = limits().max_expansion_terms;
  std::int64_t budget = cap;
  const Piece x = trace_piece(cls, a);
  const Piece x_bar = conjugate(x);

  ExactMoments out;
  out.mean = integrate(cls, {x}, budget);
  out.mean_square = integrate(cls, {x, x}, budget);
  const ExactComplex abs_square = integrate(cls, {x, x_bar}, budget);
  if (!abs_square.is_real()) throw std::logic_error("E|X|^2 came out non-real");
  out.abs_square = abs_square.re;
  out.second_moment = (out.mean_square.re + out.abs_square) / 2;
  out.variance = out.second_moment - out.mean.re * out.mean.re;
  out.terms = cap - budget;
  return out;
}

ExactComplex exact_mean(const SymmetryClass& cls, const ExactMatrix& a) {
  detail::require_ambient(cls, static_cast<long>(a.rows()), static_cast<long>(a.cols()));
  std::int64_t budget = limits().max_expansion_terms;
  return integrate(cls, {trace_piece(cls, a)}, budget);
}

Rational exact_second_moment(const SymmetryClass& cls, const ExactMatrix& a) {
  return exact_moments(cls, a).second_moment;
}

MomentReport moment_report(const SymmetryClass& cls, const ComplexMatrix& a, const std::string& matrix_id) {
  MomentReport report;
  report.cls = cls;
  report.matrix_id = matrix_id;
  report.exact = exact_moments(cls, to_exact(a));
  const ComplexMatrix pa = project_W(cls, a);
  report.asymptotic_variance = asymptotic_second_moment(cls, pa, 1e-9);
  if (cls.chiral()) report.chiral_mean = chiral_mean(cls, a);
  return report;
}

}  // namespace symrmt
