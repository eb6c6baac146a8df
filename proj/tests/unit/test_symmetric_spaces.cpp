#include <cmath>

#include "doctest.h"
#include "symrmt/errors.hpp"
#include "symrmt/symmetric_spaces.hpp"

using namespace symrmt;

namespace {

SymmetryClass cls_of(SymmetryTag tag, int n) {
  if (is_chiral(tag)) {
    const int p = (3 * n + 4) / 5 >= n ? n - 1 : std::max(1, (3 * n + 4) / 5);
    return SymmetryClass::make(tag, n, p, n - p);
  }
  return SymmetryClass::make(tag, n);
}

ComplexMatrix random_matrix(int size, RngStream& rng) {
  ComplexMatrix a(size, size);
  for (int j = 0; j < size; ++j)
    for (int i = 0; i < size; ++i) a(i, j) = Complex(rng.gaussian(), rng.gaussian());
  return a;
}

double max_abs(const ComplexMatrix& a) { return a.cwiseAbs().maxCoeff(); }

double re_inner(const ComplexMatrix& a, const ComplexMatrix& b) { return (a * b.adjoint()).trace().real(); }

}  // namespace

TEST_CASE("class descriptors") {
  const auto c = SymmetryClass::parse("AIII:n=50,p=30,q=20");
  CHECK(c.tag == SymmetryTag::AIII);
  CHECK(c.n == 50);
  CHECK(c.p == 30);
  CHECK(c.to_string() == "AIII:n=50,p=30,q=20");
  CHECK(SymmetryClass::parse("CII:p=2,q=1").n == 3);
  CHECK(SymmetryClass::parse("DIII:n=4").ambient_size() == 8);
  CHECK(SymmetryClass::parse("C:n=4").ambient_size() == 8);
  CHECK(SymmetryClass::parse("BD:n=4").ambient_size() == 4);
  CHECK(SymmetryClass::parse("AII:n=3").delta() == 2);
  CHECK_THROWS_AS(SymmetryClass::parse("AIII:n=5,p=3,q=3"), ArgumentError);
  CHECK_THROWS_AS(SymmetryClass::parse("AI:n=5,p=3,q=2"), ArgumentError);
  CHECK_THROWS_AS(SymmetryClass::parse("AI"), ArgumentError);
  CHECK_THROWS_AS(SymmetryClass::parse("E7:n=3"), ArgumentError);
  CHECK_THROWS_AS(SymmetryClass::parse("AI:n=3,r=1"), ArgumentError);
  CHECK_THROWS_AS(SymmetryClass::parse("AI:n=x"), ArgumentError);
}

TEST_CASE("structure matrices") {
  ComplexMatrix i11(2, 2);
  i11 << 1, 0, 0, -1;
  CHECK(max_abs(signature_matrix(1, 1) - i11) == 0);
  ComplexMatrix j1(2, 2);
  j1 << 0, -1, 1, 0;
  CHECK(max_abs(symplectic_form(1) - j1) == 0);
  ComplexMatrix k1(2, 2);
  k1 << 0, 1, 1, 0;
  CHECK(max_abs(structure_matrix(StructureKind::K, SymmetryClass::make(SymmetryTag::CI, 1)) - k1) == 0);
  const auto cii = SymmetryClass::make(SymmetryTag::CII, 5, 3, 2);
  const ComplexMatrix kpq = structure_matrix(StructureKind::K_pq, cii);
  CHECK(max_abs(kpq.transpose() + kpq) == 0);
  const ComplexMatrix k = structure_matrix(StructureKind::K, SymmetryClass::make(SymmetryTag::CI, 4));
  CHECK(max_abs(k.transpose() - k) == 0);
  const ComplexMatrix j = symplectic_form(4);
  CHECK(max_abs(j.transpose() * j - ComplexMatrix::Identity(8, 8)) == 0);
  const ComplexMatrix s = structure_matrix(StructureKind::scriptI_pq, cii);
  CHECK(max_abs(s * s - ComplexMatrix::Identity(10, 10)) == 0);
  CHECK_THROWS_AS(structure_matrix(StructureKind::K, cii), ArgumentError);
  CHECK_THROWS_AS(structure_matrix(StructureKind::I_pq, SymmetryClass::make(SymmetryTag::AI, 3)), ArgumentError);
}

TEST_CASE("Haar samples satisfy the structure contracts") {
  RngStream rng(11, 0);
  for (int m : {1, 2, 5, 12}) {
    const auto u = sample_haar(GroupKind::U, m, rng);
    CHECK(unitarity_defect(u.matrix) <= kStructureTolerance);
    const auto o = sample_haar(GroupKind::O, m, rng);
    CHECK(unitarity_defect(o.matrix) <= kStructureTolerance);
    CHECK(is_real(o.matrix));
    const auto sp = sample_haar(GroupKind::Sp, m, rng);
    CHECK(unitarity_defect(sp.matrix) <= kStructureTolerance);
    CHECK(is_quaternion(sp.matrix));
    const ComplexMatrix j = symplectic_form(m);
    CHECK(max_abs(sp.matrix.transpose() * j * sp.matrix - j) <= kStructureTolerance);
  }
  RngStream a(5, 3), b(5, 3);
  CHECK(max_abs(sample_haar(GroupKind::Sp, 4, a).matrix - sample_haar(GroupKind::Sp, 4, b).matrix) == 0);
}

TEST_CASE("involutions, embeddings and image structure") {
  RngStream rng(12, 0);
  for (SymmetryTag tag : kAllTags)
    for (int n : {2, 5}) {
      const auto cls = cls_of(tag, n);
      CAPTURE(cls.to_string());
      const int size = cls.ambient_size();
      const auto g = sample_haar(cls.group(), cls.group_parameter(), rng).matrix;
      const auto h = sample_haar(cls.group(), cls.group_parameter(), rng).matrix;
      CHECK(max_abs(theta(cls, theta(cls, g)) - g) <= 1e-12);
      CHECK(max_abs(theta(cls, g * h) - theta(cls, g) * theta(cls, h)) <= 1e-10);
      const ComplexMatrix v = cartan_embed(cls, g);
      if (cartan_form(cls).degree == 2) {
        CHECK(max_abs(v - g * theta(cls, g).inverse()) <= 1e-10);
        CHECK(max_abs(v * theta(cls, v) - ComplexMatrix::Identity(size, size)) <= 1e-10);
      } else {
        CHECK(max_abs(v - g) == 0);
      }
      CHECK(unitarity_defect(v) <= kStructureTolerance);
      CHECK(has_structure(v, cls.structure()));
      CHECK(membership_W(cls, v));
      CHECK(max_abs(cartan_embed(cls, ComplexMatrix::Identity(size, size)) - ComplexMatrix::Identity(size, size)) == 0);
    }
  const auto ai = SymmetryClass::make(SymmetryTag::AI, 4);
  const ComplexMatrix v = sample_V(ai, rng);
  CHECK(max_abs(v - v.transpose()) <= 1e-12);
  const auto bdi = SymmetryClass::make(SymmetryTag::BDI, 5, 3, 2);
  const ComplexMatrix w = sample_V(bdi, rng) * signature_matrix(3, 2);
  CHECK(max_abs(w - w.transpose()) <= 1e-12);
  const auto aiii = SymmetryClass::make(SymmetryTag::AIII, 5, 3, 2);
  const ComplexMatrix x = sample_V(aiii, rng) * signature_matrix(3, 2);
  CHECK(max_abs(x - x.adjoint()) <= 1e-12);
  const auto diii = SymmetryClass::make(SymmetryTag::DIII, 3);
  const ComplexMatrix y = sample_V(diii, rng) * symplectic_form(3);
  CHECK(max_abs(y + y.transpose()) <= 1e-12);
}

TEST_CASE("projection onto W") {
  ComplexMatrix a(2, 2);
  a << 0, 1, 0, 0;
  ComplexMatrix expected(2, 2);
  expected << 0, 0.5, 0.5, 0;
  CHECK(max_abs(project_W(SymmetryClass::make(SymmetryTag::AI, 2), a) - expected) == 0);

  RngStream rng(13, 0);
  for (SymmetryTag tag : kAllTags)
    for (int n : {2, 4}) {
      const auto cls = cls_of(tag, n);
      CAPTURE(cls.to_string());
      const int size = cls.ambient_size();
      for (int trial = 0; trial < 5; ++trial) {
        const ComplexMatrix x = random_matrix(size, rng);
        const ComplexMatrix y = random_matrix(size, rng);
        const ComplexMatrix px = project_W(cls, x);
        CHECK(membership_W(cls, px));
        CHECK(has_structure(px, cls.structure()));
        CHECK(max_abs(project_W(cls, px) - px) <= 1e-12);
        CHECK(std::abs(re_inner(px, y) - re_inner(x, project_W(cls, y))) <= 1e-10);
        const ComplexMatrix v = sample_V(cls, rng);
        CHECK(max_abs(project_W(cls, v) - v) <= 1e-10);
        CHECK(std::abs((x * v).trace().real() - (px * v).trace().real()) <= 1e-10);
      }
      CHECK_FALSE(averaging_group(cls).empty());
    }
  CHECK_THROWS_AS(project_W(SymmetryClass::make(SymmetryTag::C, 2), ComplexMatrix(3, 3)), ArgumentError);
}

TEST_CASE("exact projection agrees with the floating one") {
  const auto cls = SymmetryClass::make(SymmetryTag::CII, 3, 2, 1);
  RngStream rng(14, 0);
  const ComplexMatrix x = random_matrix(cls.ambient_size(), rng);
  ExactMatrix e(6, 6);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) e(i, j) = ExactComplex::from_double(x(i, j));
  const ExactMatrix pe = project_W(cls, e);
  const ComplexMatrix px = project_W(cls, x);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) CHECK(std::abs(pe(i, j).to_double() - px(i, j)) <= 1e-15);
  CHECK(project_W(cls, pe) == pe);
}

TEST_CASE("small-size distributions") {
  RngStream rng(15, 0);
  const int draws = 100000;
  // Class A at n = 1: V uniform on the circle.
  Complex mean = 0;
  double second = 0;
  int plus = 0;
  for (int i = 0; i < draws; ++i) {
    RngStream s(15, static_cast<std::uint64_t>(i));
    const Complex z = sample_V(SymmetryClass::make(SymmetryTag::A, 1), s)(0, 0);
    mean += z;
    second += std::norm(z);
    RngStream t(16, static_cast<std::uint64_t>(i));
    if (sample_V(SymmetryClass::make(SymmetryTag::BD, 1), t)(0, 0).real() > 0) ++plus;
  }
  mean /= draws;
  const double se = std::sqrt(0.5 / draws);
  CHECK(std::abs(mean.real()) <= 5 * se);
  CHECK(std::abs(mean.imag()) <= 5 * se);
  CHECK(second / draws == doctest::Approx(1.0));
  CHECK(std::abs(plus - draws / 2.0) <= 5 * std::sqrt(draws / 4.0));
}
