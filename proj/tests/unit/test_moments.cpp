#include <map>
#include <tuple>

#include "doctest.h"
#include "symrmt/errors.hpp"
#include "symrmt/haar_integrals.hpp"
#include "symrmt/limits.hpp"
#include "symrmt/moments.hpp"

using namespace symrmt;

namespace {

// Symbolic polynomials in the entries of g and conj(g), for a naive
// monomial-by-monomial oracle built straight from V = g theta(g)^{-1}.
using Factor = std::tuple<int, int, bool>;  // row, col, conjugated
using Monomial = std::vector<Factor>;
using Poly = std::map<Monomial, ExactComplex>;
using SymMatrix = std::vector<std::vector<Poly>>;

void add_term(Poly& p, Monomial m, const ExactComplex& c) {
  if (c.is_zero()) return;
  std::sort(m.begin(), m.end());
  auto& slot = p[m];
  slot += c;
  if (slot.is_zero()) p.erase(m);
}

Poly times(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) {
      Monomial m = ma;
      m.insert(m.end(), mb.begin(), mb.end());
      add_term(out, m, ca * cb);
    }
  return out;
}

Poly conj(const Poly& a) {
  Poly out;
  for (const auto& [m, c] : a) {
    Monomial mc;
    for (auto [r, col, f] : m) mc.emplace_back(r, col, !f);
    add_term(out, mc, c.conj());
  }
  return out;
}

SymMatrix symbolic_g(int size) {
  SymMatrix g(static_cast<std::size_t>(size), std::vector<Poly>(static_cast<std::size_t>(size)));
  for (int i = 0; i < size; ++i)
    for (int j = 0; j < size; ++j) add_term(g[i][j], {{i, j, false}}, ExactComplex(1));
  return g;
}

SymMatrix mul(const SymMatrix& a, const SymMatrix& b) {
  const std::size_t n = a.size();
  SymMatrix out(n, std::vector<Poly>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (a[i][k].empty()) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (!b[k][j].empty())
          for (const auto& [m, c] : times(a[i][k], b[k][j])) add_term(out[i][j], m, c);
    }
  return out;
}

SymMatrix constant(const ComplexMatrix& c) {
  const auto n = static_cast<std::size_t>(c.rows());
  SymMatrix out(n, std::vector<Poly>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) add_term(out[i][j], {}, ExactComplex::from_double(c(i, j)));
  return out;
}

SymMatrix conj_all(const SymMatrix& a) {
  SymMatrix out = a;
  for (auto& row : out)
    for (auto& p : row) p = conj(p);
  return out;
}

SymMatrix adjoint(const SymMatrix& a) {
  const std::size_t n = a.size();
  SymMatrix out(n, std::vector<Poly>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[i][j] = conj(a[j][i]);
  return out;
}

SymMatrix symbolic_theta(const SymmetryClass& cls, const SymMatrix& x) {
  switch (cls.tag) {
    case SymmetryTag::AI: return conj_all(x);
    case SymmetryTag::AII: {
      const ComplexMatrix j = symplectic_form(cls.n);
      return mul(mul(constant(j.transpose()), conj_all(x)), constant(j));
    }
    case SymmetryTag::DIII: {
      const ComplexMatrix j = symplectic_form(cls.n);
      return mul(mul(constant(j.transpose()), x), constant(j));
    }
    case SymmetryTag::AIII:
    case SymmetryTag::BDI: {
      const auto s = constant(signature_matrix(cls.p, cls.q));
      return mul(mul(s, x), s);
    }
    case SymmetryTag::CI: {
      const auto s = constant(signature_matrix(cls.n, cls.n));
      return mul(mul(s, x), s);
    }
    case SymmetryTag::CII: {
      const auto s = constant(doubled_signature(cls.p, cls.q));
      return mul(mul(s, x), s);
    }
    default: return x;
  }
}

Rational integrate_monomial(const SymmetryClass& cls, const Monomial& m) {
  std::vector<EntryFactor> factors;
  for (auto [r, c, f] : m) factors.push_back({r, c, f});
  switch (cls.group()) {
    case GroupKind::O: return integrate_orthogonal(orthogonal_monomial(factors), cls.ambient_size());
    case GroupKind::U: return integrate_unitary(unitary_monomial(factors), cls.ambient_size());
    case GroupKind::Sp: return integrate_symplectic(SymplecticMonomial::from_factors(factors, cls.n), cls.n);
  }
  return Rational(0);
}

ExactComplex expectation(const SymmetryClass& cls, const Poly& p) {
  ExactComplex total;
  for (const auto& [m, c] : p) total += c * integrate_monomial(cls, m);
  return total;
}

struct Naive {
  ExactComplex mean;
  Rational second;
};

Naive naive_moments(const SymmetryClass& cls, const ComplexMatrix& a) {
  const int size = cls.ambient_size();
  const SymMatrix g = symbolic_g(size);
  const bool identity_class = cls.tag == SymmetryTag::A || cls.tag == SymmetryTag::BD || cls.tag == SymmetryTag::C;
  const SymMatrix v = identity_class ? g : mul(g, symbolic_theta(cls, adjoint(g)));
  Poly x;
  for (int i = 0; i < size; ++i)
    for (int j = 0; j < size; ++j)
      for (const auto& [m, c] : v[j][i]) add_term(x, m, c * ExactComplex::from_double(a(i, j)));
  Naive out;
  out.mean = expectation(cls, x);
  const ExactComplex sq = expectation(cls, times(x, x));
  const ExactComplex ab = expectation(cls, times(x, conj(x)));
  out.second = (sq.re + ab.re) / 2;
  return out;
}

SymmetryClass make_class(SymmetryTag tag, int n) {
  if (is_chiral(tag)) return SymmetryClass::make(tag, n, n - n / 2, n / 2);
  return SymmetryClass::make(tag, n);
}

ComplexMatrix small_integer_matrix(int size, RngStream& rng) {
  ComplexMatrix a(size, size);
  for (int j = 0; j < size; ++j)
    for (int i = 0; i < size; ++i)
      a(i, j) = Complex(static_cast<int>(rng.next_u32() % 5) - 2, static_cast<int>(rng.next_u32() % 3) - 1);
  return a;
}

}  // namespace

TEST_CASE("gamma values") {
  CHECK(gamma(SymmetryTag::BDI) == 2);
  CHECK(gamma(SymmetryTag::CI) == 4);
  CHECK(gamma(SymmetryTag::A) == Rational(1, 2));
  CHECK(gamma(SymmetryTag::AII) == Rational(1, 2));
  CHECK(gamma(SymmetryTag::DIII) == 1);
}

TEST_CASE("theoretical covariance and chiral mean") {
  const auto a = SymmetryClass::make(SymmetryTag::A, 6);
  const ComplexMatrix id = ComplexMatrix::Identity(6, 6);
  CHECK(theoretical_covariance(a, {id})(0, 0) == doctest::Approx(0.5));
  ComplexMatrix shift = ComplexMatrix::Zero(6, 6);
  for (int j = 0; j < 6; ++j) shift(j, (j + 1) % 6) = 1;
  CHECK(theoretical_covariance(SymmetryClass::make(SymmetryTag::BD, 6), {shift})(0, 0) == doctest::Approx(1.0));
  ComplexMatrix e00 = ComplexMatrix::Zero(6, 6), e11 = ComplexMatrix::Zero(6, 6);
  e00(0, 0) = 1;
  e11(1, 1) = 1;
  CHECK(theoretical_covariance(a, {e00, e11})(0, 1) == 0);

  const auto bdi = SymmetryClass::make(SymmetryTag::BDI, 5, 3, 2);
  CHECK(chiral_mean(bdi, signature_matrix(3, 2)) == doctest::Approx(1.0));
  CHECK(chiral_mean(bdi, ComplexMatrix::Identity(5, 5)) == doctest::Approx(1.0 / 5));
  CHECK(chiral_mean(SymmetryClass::make(SymmetryTag::AIII, 4, 2, 2), shift.topLeftCorner(4, 4)) == 0);
  const auto cii = SymmetryClass::make(SymmetryTag::CII, 5, 3, 2);
  CHECK(chiral_mean(cii, doubled_signature(3, 2)) == doctest::Approx(4.0));
  CHECK_THROWS_AS(chiral_mean(a, id), ArgumentError);
}

TEST_CASE("asymptotic second moment requires membership") {
  const auto ai = SymmetryClass::make(SymmetryTag::AI, 3);
  ComplexMatrix a = ComplexMatrix::Zero(3, 3);
  a(0, 1) = 1;
  CHECK_THROWS_AS(asymptotic_second_moment(ai, a), ArgumentError);
  CHECK(asymptotic_second_moment(ai, project_W(ai, a)) == doctest::Approx(1.0 / 6));
}

TEST_CASE("closed-form exact moments") {
  for (int n = 2; n <= 5; ++n) {
    const auto bd = SymmetryClass::make(SymmetryTag::BD, n);
    ComplexMatrix e = ComplexMatrix::Zero(n, n);
    e(0, 1) = 1;
    CHECK(exact_second_moment(bd, to_exact(e)) == Rational(1, n));
    const auto a = SymmetryClass::make(SymmetryTag::A, n);
    CHECK(exact_second_moment(a, to_exact(ComplexMatrix::Identity(n, n))) == Rational(1, 2));
  }
  RngStream rng(3, 0);
  for (SymmetryTag tag : {SymmetryTag::AI, SymmetryTag::AII, SymmetryTag::BD, SymmetryTag::DIII, SymmetryTag::C,
                          SymmetryTag::CI, SymmetryTag::A}) {
    const auto cls = make_class(tag, 3);
    CHECK(exact_mean(cls, to_exact(small_integer_matrix(cls.ambient_size(), rng))).is_zero());
  }
  // Over Sp_2n the first column is uniform on the sphere, E|g11|^2 = 1/(2n),
  // and (Re Tr(g))^2 has mean 1/2 E|Tr g|^2 + 1/2 Re E[(Tr g)^2].
  const auto c = SymmetryClass::make(SymmetryTag::C, 2);
  const auto m = exact_moments(c, to_exact(ComplexMatrix::Identity(4, 4)));
  CHECK(m.abs_square == 1);
  CHECK(m.mean_square == ExactComplex(1));
}

TEST_CASE("contraction agrees with the naive monomial expansion") {
  RngStream rng(4, 0);
  for (SymmetryTag tag : kAllTags) {
    const int n = (tag == SymmetryTag::CII) ? 3 : 2;
    const auto cls = make_class(tag, n);
    CAPTURE(cls.to_string());
    const ComplexMatrix a = small_integer_matrix(cls.ambient_size(), rng);
    const ExactMoments fast = exact_moments(cls, to_exact(a));
    const Naive slow = naive_moments(cls, a);
    CHECK(fast.mean == slow.mean);
    CHECK(fast.second_moment == slow.second);
  }
  for (SymmetryTag tag : {SymmetryTag::AI, SymmetryTag::AIII, SymmetryTag::BDI}) {
    const auto cls = make_class(tag, 3);
    CAPTURE(cls.to_string());
    const ComplexMatrix a = small_integer_matrix(cls.ambient_size(), rng);
    CHECK(exact_moments(cls, to_exact(a)).second_moment == naive_moments(cls, a).second);
  }
}

TEST_CASE("restriction invariance, reality and the zero matrix") {
  RngStream rng(5, 0);
  for (SymmetryTag tag : kAllTags) {
    const auto cls = make_class(tag, 3);
    CAPTURE(cls.to_string());
    const ExactMatrix a = to_exact(small_integer_matrix(cls.ambient_size(), rng));
    const ExactMatrix pa = project_W(cls, a);
    const auto ma = exact_moments(cls, a);
    const auto mp = exact_moments(cls, pa);
    CHECK(ma.second_moment == mp.second_moment);
    CHECK(ma.mean.re == mp.mean.re);
    if (cls.group() != GroupKind::U) {
      CHECK(mp.mean.is_real());
      CHECK(mp.mean_square.is_real());
    }
    const auto zero = exact_moments(cls, ExactMatrix(a.rows(), a.cols()));
    CHECK(zero.mean.is_zero());
    CHECK(zero.second_moment == 0);
  }
}

TEST_CASE("exact moment budget and regime") {
  const Limits saved = limits();
  Limits tight = saved;
  tight.max_expansion_terms = 10;
  set_limits(tight);
  const auto cls = SymmetryClass::make(SymmetryTag::AI, 4);
  CHECK_THROWS_AS(exact_moments(cls, to_exact(ComplexMatrix::Identity(4, 4))), SizeLimitError);
  set_limits(saved);
  CHECK_THROWS_AS(exact_moments(SymmetryClass::make(SymmetryTag::CI, 1), to_exact(ComplexMatrix::Identity(2, 2))),
                  RegimeError);
}
