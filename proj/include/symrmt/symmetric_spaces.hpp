#pragma once

// Structure matrices, involutions, Cartan embeddings, the spaces W_C with
// their orthogonal projections, and Haar samplers for U_m, O_m and Sp_2n.
//
// Quaternionic matrices live in their 2n x 2n complex embedding throughout;
// J = (0 -I; I 0) and the quaternion predicate is A = J conj(A) J'.

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

#include "symrmt/exact_complex.hpp"
#include "symrmt/rng.hpp"
#include "symrmt/symmetry_class.hpp"

namespace symrmt {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

inline constexpr double kStructureTolerance = 1e-10;

// ---------------------------------------------------------------------------
// Structure matrices

ComplexMatrix signature_matrix(int p, int q);   // I_pq = diag(+1 x p, -1 x q)
ComplexMatrix symplectic_form(int n);           // J_n, 2n x 2n
ComplexMatrix doubled_signature(int p, int q);  // scriptI_pq = diag(I_pq, I_pq)

enum class StructureKind { I_pq, J, scriptI_pq, K, K_pq };

/// The matrix of the given kind at the class's dimensions:
///   I_pq        I_pq for AIII, BDI, CII; I_nn (2n x 2n) for CI
///   J           J_n for every class
///   scriptI_pq  CII only
///   K           J I_nn, CI only
///   K_pq        J scriptI_pq, CII only
/// Throws ArgumentError when the kind has no meaning for the class.
ComplexMatrix structure_matrix(StructureKind kind, const SymmetryClass& cls);
StructureKind parse_structure_kind(const std::string& text);

// ---------------------------------------------------------------------------
// Predicates

double unitarity_defect(const ComplexMatrix& g);  // max |g* g - I|
bool is_real(const ComplexMatrix& a, double tol = kStructureTolerance);
bool is_quaternion(const ComplexMatrix& a, double tol = kStructureTolerance);
bool has_structure(const ComplexMatrix& a, Structure structure, double tol = kStructureTolerance);

// ---------------------------------------------------------------------------
// Involutions and Cartan embedding

ComplexMatrix theta(const SymmetryClass& cls, const ComplexMatrix& g);

/// V = g theta(g)^{-1}. For the quadratic classes
///   V = g * left * (adjoint ? g^* : g') * right,
/// with (left, right) = (I, I) for AI, (J', J) for AII and DIII, (I_pq, I_pq)
/// for AIII and BDI, (I_nn, I_nn) for CI, (scriptI_pq, scriptI_pq) for CII.
struct CartanForm {
  int degree = 1;  // 1: V = g
  ComplexMatrix left;
  ComplexMatrix right;
  bool adjoint = false;
};
CartanForm cartan_form(const SymmetryClass& cls);

ComplexMatrix cartan_embed(const SymmetryClass& cls, const ComplexMatrix& g);

// ---------------------------------------------------------------------------
// W_C and its projection
//
// W_C is cut out by a set of pairwise commuting real-linear involutions of
// the ambient matrix space, each acting entrywise:
//   tau(A)_{ij} = sign * [conj] A_{row, col}.
// P_C averages A over the group they generate.

struct EntrySource {
  int row = 0;
  int col = 0;
  int sign = 1;
  bool conj = false;
};

class EntryInvolution {
 public:
  enum class Kind {
    conjugate,             // conj(A)
    transpose,             // A'
    symplectic_transpose,  // J A' J'
    signed_adjoint,        // S A* S
    signed_transpose,      // S A' S
    quaternion,            // J conj(A) J'
  };

  EntryInvolution(Kind kind, int size, std::vector<int> signs = {});

  Kind kind() const { return kind_; }
  EntrySource at(int i, int j) const;

 private:
  Kind kind_;
  int size_;
  std::vector<int> signs_;  // diagonal of S
};

/// Defining involutions of W_C (empty for class A).
std::vector<EntryInvolution> defining_involutions(const SymmetryClass& cls);

/// Composite entry maps for every element of the averaging group, identity
/// first. Construction verifies, on a random matrix, that the defining
/// involutions commute, and throws std::logic_error otherwise.
const std::vector<std::vector<EntryInvolution>>& averaging_group(const SymmetryClass& cls);

EntrySource compose_source(const std::vector<EntryInvolution>& word, int i, int j);

namespace detail {
inline Complex conj_value(const Complex& z) { return std::conj(z); }
inline ExactComplex conj_value(const ExactComplex& z) { return z.conj(); }
inline Complex divide(const Complex& z, int d) { return z / static_cast<double>(d); }
inline ExactComplex divide(const ExactComplex& z, int d) { return z * Rational(1, d); }
inline Complex zero_like(const Complex&) { return Complex(0.0, 0.0); }
inline ExactComplex zero_like(const ExactComplex&) { return ExactComplex(); }
void require_ambient(const SymmetryClass& cls, long rows, long cols);
}  // namespace detail

template <class Matrix>
Matrix apply_entry_map(const std::vector<EntryInvolution>& word, const Matrix& a) {
  const int size = static_cast<int>(a.rows());
  Matrix out(a.rows(), a.cols());
  for (int i = 0; i < size; ++i)
    for (int j = 0; j < size; ++j) {
      const EntrySource s = compose_source(word, i, j);
      auto value = a(s.row, s.col);
      if (s.conj) value = detail::conj_value(value);
      if (s.sign < 0) value = -value;
      out(i, j) = value;
    }
  return out;
}

/// Orthogonal projection onto W_C for the real inner product Re Tr(A B*).
/// Works for ComplexMatrix and ExactMatrix alike.
template <class Matrix>
Matrix project_W(const SymmetryClass& cls, const Matrix& a) {
  detail::require_ambient(cls, static_cast<long>(a.rows()), static_cast<long>(a.cols()));
  const auto& group = averaging_group(cls);
  const int size = static_cast<int>(a.rows());
  const int order = static_cast<int>(group.size());
  Matrix out(a.rows(), a.cols());
  for (int i = 0; i < size; ++i)
    for (int j = 0; j < size; ++j) {
      auto sum = detail::zero_like(a(0, 0));
      for (const auto& word : group) {
        const EntrySource s = compose_source(word, i, j);
        auto value = a(s.row, s.col);
        if (s.conj) value = detail::conj_value(value);
        if (s.sign < 0)
          sum -= value;
        else
          sum += value;
      }
      out(i, j) = detail::divide(sum, order);
    }
  return out;
}

bool membership_W(const SymmetryClass& cls, const ComplexMatrix& a, double tol = kStructureTolerance);

// ---------------------------------------------------------------------------
// Sampling

struct HaarSample {
  ComplexMatrix matrix;
  GroupKind group = GroupKind::U;
  int parameter = 0;  // m for U_m, O_m; n for Sp_2n
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

/// Haar-distributed element by Gaussian orthonormalization with positive
/// real pivots. U and O use Householder QR followed by the pivot phase fix;
/// Sp uses quaternionic Gram-Schmidt on the embedded columns (j, j + n).
HaarSample sample_haar(GroupKind group, int m, RngStream& rng);

ComplexMatrix sample_V(const SymmetryClass& cls, RngStream& rng);

}  // namespace symrmt
