#include "symrmt/symmetric_spaces.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

#include "symrmt/errors.hpp"

namespace symrmt {
namespace {

// For the 2n x 2n form J: J_{x, flip(x)} = j_sign(x), zero elsewhere.
inline int flip(int x, int half) { return x < half ? x + half : x - half; }
inline int j_sign(int x, int half) { return x < half ? -1 : 1; }

std::vector<int> signature_signs(int p, int q) {
  std::vector<int> s(static_cast<std::size_t>(p + q), 1);
  for (int i = p; i < p + q; ++i) s[static_cast<std::size_t>(i)] = -1;
  return s;
}

std::vector<int> doubled_signs(int p, int q) {
  auto s = signature_signs(p, q);
  auto t = s;
  s.insert(s.end(), t.begin(), t.end());
  return s;
}

ComplexMatrix diagonal(const std::vector<int>& signs) {
  const int size = static_cast<int>(signs.size());
  ComplexMatrix out = ComplexMatrix::Zero(size, size);
  for (int i = 0; i < size; ++i) out(i, i) = static_cast<double>(signs[static_cast<std::size_t>(i)]);
  return out;
}

// J w, entrywise.
Eigen::VectorXcd apply_j(const Eigen::VectorXcd& w) {
  const int size = static_cast<int>(w.size());
  const int half = size / 2;
  Eigen::VectorXcd out(size);
  for (int i = 0; i < size; ++i) out(i) = static_cast<double>(j_sign(i, half)) * w(flip(i, half));
  return out;
}

constexpr int kMaxResamples = 16;

ComplexMatrix sample_unitary(int m, RngStream& rng) {
  const double scale = std::sqrt(0.5);
  for (int attempt = 0; attempt < kMaxResamples; ++attempt) {
    ComplexMatrix z(m, m);
    for (int j = 0; j < m; ++j)
      for (int i = 0; i < m; ++i) {
        const double re = rng.gaussian();
        const double im = rng.gaussian();
        z(i, j) = Complex(scale * re, scale * im);
      }
    Eigen::HouseholderQR<ComplexMatrix> qr(z);
    const auto& r = qr.matrixQR();
    bool singular = false;
    for (int j = 0; j < m; ++j)
      if (std::abs(r(j, j)) < 1e-12) singular = true;
    if (singular) continue;
    ComplexMatrix q = qr.householderQ();
    for (int j = 0; j < m; ++j) q.col(j) *= r(j, j) / std::abs(r(j, j));
    return q;
  }
  throw SingularMatrixError("unitary sampler: repeated singular Gaussian draws");
}

ComplexMatrix sample_orthogonal(int m, RngStream& rng) {
  for (int attempt = 0; attempt < kMaxResamples; ++attempt) {
    Eigen::MatrixXd z(m, m);
    for (int j = 0; j < m; ++j)
      for (int i = 0; i < m; ++i) z(i, j) = rng.gaussian();
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(z);
    const auto& r = qr.matrixQR();
    bool singular = false;
    for (int j = 0; j < m; ++j)
      if (std::abs(r(j, j)) < 1e-12) singular = true;
    if (singular) continue;
    Eigen::MatrixXd q = qr.householderQ();
    for (int j = 0; j < m; ++j)
      if (r(j, j) < 0) q.col(j) = -q.col(j);
    return q.cast<Complex>();
  }
  throw SingularMatrixError("orthogonal sampler: repeated singular Gaussian draws");
}

ComplexMatrix sample_symplectic(int n, RngStream& rng) {
  const int size = 2 * n;
  const double scale = std::sqrt(0.5);
  ComplexMatrix g(size, size);
  for (int j = 0; j < n; ++j) {
    bool done = false;
    for (int attempt = 0; attempt < kMaxResamples && !done; ++attempt) {
      Eigen::VectorXcd v(size);
      for (int i = 0; i < size; ++i) {
        const double re = rng.gaussian();
        const double im = rng.gaussian();
        v(i) = Complex(scale * re, scale * im);
      }
      const double initial = v.norm();
      // Two passes of classical Gram-Schmidt against the quaternionic span of
      // the previous columns, i.e. against c_i and c_{i+n} = J conj(c_i).
      for (int pass = 0; pass < 2; ++pass)
        for (int i = 0; i < j; ++i) {
          v -= g.col(i) * g.col(i).dot(v);
          v -= g.col(i + n) * g.col(i + n).dot(v);
        }
      const double norm = v.norm();
      if (!(norm > 1e-10 * initial)) continue;
      g.col(j) = v / norm;
      g.col(j + n) = apply_j(g.col(j).conjugate());
      done = true;
    }
    if (!done) throw SingularMatrixError("symplectic sampler: repeated singular Gaussian draws");
  }
  return g;
}

using ClassKey = std::tuple<int, int, int, int>;

ClassKey key_of(const SymmetryClass& cls) { return {static_cast<int>(cls.tag), cls.n, cls.p, cls.q}; }

}  // namespace

// ---------------------------------------------------------------------------

ComplexMatrix signature_matrix(int p, int q) {
  if (p < 0 || q < 0 || p + q < 1) throw ArgumentError("signature matrix needs p, q >= 0 and p + q >= 1");
  return diagonal(signature_signs(p, q));
}

ComplexMatrix symplectic_form(int n) {
  if (n < 1) throw ArgumentError("symplectic form needs n >= 1");
  ComplexMatrix out = ComplexMatrix::Zero(2 * n, 2 * n);
  for (int i = 0; i < 2 * n; ++i) out(i, flip(i, n)) = static_cast<double>(j_sign(i, n));
  return out;
}

ComplexMatrix doubled_signature(int p, int q) {
  if (p < 0 || q < 0 || p + q < 1) throw ArgumentError("signature matrix needs p, q >= 0 and p + q >= 1");
  return diagonal(doubled_signs(p, q));
}

ComplexMatrix structure_matrix(StructureKind kind, const SymmetryClass& cls) {
  const auto reject = [&](const char* name) -> ComplexMatrix {
    throw ArgumentError(std::string(name) + " is not defined for class " + cls.to_string());
  };
  switch (kind) {
    case StructureKind::I_pq:
      if (cls.tag == SymmetryTag::CI) return signature_matrix(cls.n, cls.n);
      if (cls.chiral()) return signature_matrix(cls.p, cls.q);
      return reject("I_pq");
    case StructureKind::J: return symplectic_form(cls.n);
    case StructureKind::scriptI_pq:
      if (cls.tag == SymmetryTag::CII) return doubled_signature(cls.p, cls.q);
      return reject("scriptI_pq");
    case StructureKind::K:
      if (cls.tag == SymmetryTag::CI) return symplectic_form(cls.n) * signature_matrix(cls.n, cls.n);
      return reject("K");
    case StructureKind::K_pq:
      if (cls.tag == SymmetryTag::CII) return symplectic_form(cls.n) * doubled_signature(cls.p, cls.q);
      return reject("K_pq");
  }
  return reject("structure matrix");
}

StructureKind parse_structure_kind(const std::string& text) {
  if (text == "I_pq" || text == "I") return StructureKind::I_pq;
  if (text == "J") return StructureKind::J;
  if (text == "scriptI_pq" || text == "scriptI") return StructureKind::scriptI_pq;
  if (text == "K") return StructureKind::K;
  if (text == "K_pq") return StructureKind::K_pq;
  throw ArgumentError("unknown structure matrix '" + text + "' (expected I_pq, J, scriptI_pq, K, K_pq)");
}

// ---------------------------------------------------------------------------

double unitarity_defect(const ComplexMatrix& g) {
  const ComplexMatrix d = g.adjoint() * g - ComplexMatrix::Identity(g.rows(), g.cols());
  return d.cwiseAbs().maxCoeff();
}

bool is_real(const ComplexMatrix& a, double tol) { return a.imag().cwiseAbs().maxCoeff() <= tol; }

bool is_quaternion(const ComplexMatrix& a, double tol) {
  if (a.rows() != a.cols() || a.rows() % 2 != 0) return false;
  const ComplexMatrix j = symplectic_form(static_cast<int>(a.rows() / 2));
  return (j * a.conjugate() * j.transpose() - a).cwiseAbs().maxCoeff() <= tol;
}

bool has_structure(const ComplexMatrix& a, Structure structure, double tol) {
  switch (structure) {
    case Structure::complex: return true;
    case Structure::real: return is_real(a, tol);
    case Structure::quaternion: return is_quaternion(a, tol);
  }
  return false;
}

// ---------------------------------------------------------------------------

ComplexMatrix theta(const SymmetryClass& cls, const ComplexMatrix& g) {
  detail::require_ambient(cls, static_cast<long>(g.rows()), static_cast<long>(g.cols()));
  switch (cls.tag) {
    case SymmetryTag::A:
    case SymmetryTag::BD:
    case SymmetryTag::C: return g;
    case SymmetryTag::AI: return g.conjugate();
    case SymmetryTag::AII: {
      const ComplexMatrix j = symplectic_form(cls.n);
      return j.transpose() * g.conjugate() * j;
    }
    case SymmetryTag::DIII: {
      const ComplexMatrix j = symplectic_form(cls.n);
      return j.transpose() * g * j;
    }
    case SymmetryTag::AIII:
    case SymmetryTag::BDI: {
      const ComplexMatrix s = signature_matrix(cls.p, cls.q);
      return s * g * s;
    }
    case SymmetryTag::CI: {
      const ComplexMatrix s = signature_matrix(cls.n, cls.n);
      return s * g * s;
    }
    case SymmetryTag::CII: {
      const ComplexMatrix s = doubled_signature(cls.p, cls.q);
      return s * g * s;
    }
  }
  return g;
}

CartanForm cartan_form(const SymmetryClass& cls) {
  CartanForm form;
  switch (cls.tag) {
    case SymmetryTag::A:
    case SymmetryTag::BD:
    case SymmetryTag::C: return form;
    case SymmetryTag::AI:
      form.left = ComplexMatrix::Identity(cls.n, cls.n);
      form.right = form.left;
      break;
    case SymmetryTag::AII:
    case SymmetryTag::DIII:
      form.right = symplectic_form(cls.n);
      form.left = form.right.transpose();
      break;
    case SymmetryTag::AIII:
      form.left = signature_matrix(cls.p, cls.q);
      form.right = form.left;
      form.adjoint = true;
      break;
    case SymmetryTag::BDI:
      form.left = signature_matrix(cls.p, cls.q);
      form.right = form.left;
      break;
    case SymmetryTag::CI:
      form.left = signature_matrix(cls.n, cls.n);
      form.right = form.left;
      form.adjoint = true;
      break;
    case SymmetryTag::CII:
      form.left = doubled_signature(cls.p, cls.q);
      form.right = form.left;
      form.adjoint = true;
      break;
  }
  form.degree = 2;
  return form;
}

ComplexMatrix cartan_embed(const SymmetryClass& cls, const ComplexMatrix& g) {
  detail::require_ambient(cls, static_cast<long>(g.rows()), static_cast<long>(g.cols()));
  const CartanForm form = cartan_form(cls);
  if (form.degree == 1) return g;
  const ComplexMatrix left = g * form.left;
  if (form.adjoint) return left * g.adjoint() * form.right;
  return left * g.transpose() * form.right;
}

// ---------------------------------------------------------------------------

EntryInvolution::EntryInvolution(Kind kind, int size, std::vector<int> signs)
    : kind_(kind), size_(size), signs_(std::move(signs)) {
  const bool needs_signs = kind == Kind::signed_adjoint || kind == Kind::signed_transpose;
  if (needs_signs && static_cast<int>(signs_.size()) != size_)
    throw ArgumentError("entry involution: sign vector does not match the matrix size");
  if ((kind == Kind::symplectic_transpose || kind == Kind::quaternion) && size_ % 2 != 0)
    throw ArgumentError("entry involution: J needs an even size");
}

EntrySource EntryInvolution::at(int i, int j) const {
  const int half = size_ / 2;
  switch (kind_) {
    case Kind::conjugate: return {i, j, 1, true};
    case Kind::transpose: return {j, i, 1, false};
    case Kind::symplectic_transpose:
      return {flip(j, half), flip(i, half), j_sign(i, half) * j_sign(j, half), false};
    case Kind::signed_adjoint:
      return {j, i, signs_[static_cast<std::size_t>(i)] * signs_[static_cast<std::size_t>(j)], true};
    case Kind::signed_transpose:
      return {j, i, signs_[static_cast<std::size_t>(i)] * signs_[static_cast<std::size_t>(j)], false};
    case Kind::quaternion:
      return {flip(i, half), flip(j, half), j_sign(i, half) * j_sign(j, half), true};
  }
  return {i, j, 1, false};
}

EntrySource compose_source(const std::vector<EntryInvolution>& word, int i, int j) {
  EntrySource s{i, j, 1, false};
  for (const auto& tau : word) {
    const EntrySource t = tau.at(s.row, s.col);
    s.row = t.row;
    s.col = t.col;
    s.sign *= t.sign;
    s.conj = s.conj != t.conj;
  }
  return s;
}

std::vector<EntryInvolution> defining_involutions(const SymmetryClass& cls) {
  using K = EntryInvolution::Kind;
  const int size = cls.ambient_size();
  switch (cls.tag) {
    case SymmetryTag::A: return {};
    case SymmetryTag::AI: return {EntryInvolution(K::transpose, size)};
    case SymmetryTag::AII: return {EntryInvolution(K::symplectic_transpose, size)};
    case SymmetryTag::AIII: return {EntryInvolution(K::signed_adjoint, size, signature_signs(cls.p, cls.q))};
    case SymmetryTag::BD: return {EntryInvolution(K::conjugate, size)};
    case SymmetryTag::BDI:
      return {EntryInvolution(K::conjugate, size),
              EntryInvolution(K::signed_transpose, size, signature_signs(cls.p, cls.q))};
    case SymmetryTag::DIII:
      return {EntryInvolution(K::conjugate, size), EntryInvolution(K::symplectic_transpose, size)};
    case SymmetryTag::C: return {EntryInvolution(K::quaternion, size)};
    case SymmetryTag::CI:
      return {EntryInvolution(K::quaternion, size),
              EntryInvolution(K::signed_adjoint, size, signature_signs(cls.n, cls.n))};
    case SymmetryTag::CII:
      return {EntryInvolution(K::quaternion, size),
              EntryInvolution(K::signed_adjoint, size, doubled_signs(cls.p, cls.q))};
  }
  return {};
}

const std::vector<std::vector<EntryInvolution>>& averaging_group(const SymmetryClass& cls) {
  static std::mutex mutex;
  static std::map<ClassKey, std::vector<std::vector<EntryInvolution>>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  const ClassKey key = key_of(cls);
  if (auto it = cache.find(key); it != cache.end()) return it->second;

  const auto taus = defining_involutions(cls);
  std::vector<std::vector<EntryInvolution>> group{{}};
  for (const auto& tau : taus) {
    const std::size_t existing = group.size();
    for (std::size_t w = 0; w < existing; ++w) {
      auto word = group[w];
      word.insert(word.begin(), tau);
      group.push_back(std::move(word));
    }
  }

  // Averaging over the generated set is a projection only if the generators
  // commute.
  if (taus.size() > 1) {
    const int size = cls.ambient_size();
    RngStream rng(0x5eed, static_cast<std::uint64_t>(size));
    ComplexMatrix a(size, size);
    for (int j = 0; j < size; ++j)
      for (int i = 0; i < size; ++i) a(i, j) = Complex(rng.gaussian(), rng.gaussian());
    for (std::size_t x = 0; x < taus.size(); ++x)
      for (std::size_t y = x + 1; y < taus.size(); ++y) {
        const ComplexMatrix xy = apply_entry_map({taus[x], taus[y]}, a);
        const ComplexMatrix yx = apply_entry_map({taus[y], taus[x]}, a);
        if ((xy - yx).cwiseAbs().maxCoeff() > 0.0)
          throw std::logic_error("defining involutions of " + cls.to_string() + " do not commute");
      }
  }
  return cache.emplace(key, std::move(group)).first->second;
}

bool membership_W(const SymmetryClass& cls, const ComplexMatrix& a, double tol) {
  detail::require_ambient(cls, static_cast<long>(a.rows()), static_cast<long>(a.cols()));
  for (const auto& tau : defining_involutions(cls)) {
    const ComplexMatrix image = apply_entry_map({tau}, a);
    if ((image - a).cwiseAbs().maxCoeff() > tol) return false;
  }
  return true;
}

void detail::require_ambient(const SymmetryClass& cls, long rows, long cols) {
  const long size = cls.ambient_size();
  if (rows != size || cols != size)
    throw ArgumentError("class " + cls.to_string() + " expects " + std::to_string(size) + "x" +
                        std::to_string(size) + " matrices (got " + std::to_string(rows) + "x" +
                        std::to_string(cols) + ")");
}

// ---------------------------------------------------------------------------

HaarSample sample_haar(GroupKind group, int m, RngStream& rng) {
  if (m < 1) throw ArgumentError("Haar sampler needs m >= 1");
  HaarSample out;
  out.group = group;
  out.parameter = m;
  out.seed = rng.seed();
  out.stream = rng.stream();
  switch (group) {
    case GroupKind::U: out.matrix = sample_unitary(m, rng); break;
    case GroupKind::O: out.matrix = sample_orthogonal(m, rng); break;
    case GroupKind::Sp: out.matrix = sample_symplectic(m, rng); break;
  }
  return out;
}

ComplexMatrix sample_V(const SymmetryClass& cls, RngStream& rng) {
  return cartan_embed(cls, sample_haar(cls.group(), cls.group_parameter(), rng).matrix);
}

}  // namespace symrmt
