#pragma once

// CLT parameters and exact / asymptotic low-order moments of
// X = Tr(A V), V = Phi_C(g), g Haar on the class's group.
//
// Exact moments are Weingarten sums. With V = g L h R (h = g' or g*), the
// integrand weight of a degree-4 term splits into a row factor built from
// B = R A and a column factor built from L, so each pair of pair partitions
// (or of permutations, for U) contributes a product of two contracted sums.

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "symrmt/exact_complex.hpp"
#include "symrmt/symmetric_spaces.hpp"

namespace symrmt {

/// gamma_C: A, AII -> 1/2; AI, AIII, BD, DIII, C -> 1; BDI -> 2; CI, CII -> 4.
Rational gamma(SymmetryTag tag);

/// Entry (mu, nu) = (gamma / n) Re Tr[P(A_mu) P(A_nu)*] at the given n
/// (class parameter n, not the ambient size).
Eigen::MatrixXd theoretical_covariance(const SymmetryClass& cls, const std::vector<ComplexMatrix>& a_list);

/// AIII, BDI: ((p - q)/n) Re Tr(P(A) I_pq); CII: 2 ((p - q)/n) Re Tr(P(A) scriptI_pq).
/// Throws ArgumentError for non-chiral classes.
double chiral_mean(const SymmetryClass& cls, const ComplexMatrix& a);

/// (gamma / n) Re Tr(A A*). Requires A in W_C (ArgumentError otherwise).
double asymptotic_second_moment(const SymmetryClass& cls, const ComplexMatrix& a,
                                double tol = kStructureTolerance);

ExactMatrix to_exact(const ComplexMatrix& a);
ComplexMatrix to_complex(const ExactMatrix& a);

struct ExactMoments {
  ExactComplex mean;         // E[Tr(A V)]
  ExactComplex mean_square;  // E[Tr(A V)^2]
  Rational abs_square;       // E[|Tr(A V)|^2]
  Rational second_moment;    // E[(Re Tr(A V))^2]
  Rational variance;         // second_moment - (Re mean)^2
  std::int64_t terms = 0;    // weight evaluations spent
};

/// Exact moments by Weingarten contraction. Throws RegimeError outside the
/// stable range of the degree-4 tables and SizeLimitError when the
/// evaluation count would exceed limits().max_expansion_terms.
ExactMoments exact_moments(const SymmetryClass& cls, const ExactMatrix& a);

ExactComplex exact_mean(const SymmetryClass& cls, const ExactMatrix& a);
Rational exact_second_moment(const SymmetryClass& cls, const ExactMatrix& a);

struct MomentReport {
  SymmetryClass cls;
  std::string matrix_id;
  ExactMoments exact;
  double asymptotic_variance = 0;  // (gamma / n) Re Tr(P(A) P(A)*)
  double chiral_mean = 0;          // zero for non-chiral classes
};

MomentReport moment_report(const SymmetryClass& cls, const ComplexMatrix& a, const std::string& matrix_id);

}  // namespace symrmt
