#pragma once

// The ten symmetry classes and their size bookkeeping.
//
//   tag    group      ambient   involution theta(g)
//   A      U_n        n         identity
//   AI     U_n        n         conj(g)
//   AII    U_2n       2n        J' conj(g) J
//   AIII   U_n        n         I_pq g I_pq
//   BD     O_n        n         identity
//   BDI    O_n        n         I_pq g I_pq
//   DIII   O_2n       2n        J' g J
//   C      Sp_2n      2n        identity
//   CI     Sp_2n      2n        I_nn g I_nn
//   CII    Sp_2n      2n        scriptI_pq g scriptI_pq

#include <array>
#include <string>

namespace symrmt {

enum class SymmetryTag { A, AI, AII, AIII, BD, BDI, DIII, C, CI, CII };

inline constexpr std::array<SymmetryTag, 10> kAllTags = {
    SymmetryTag::A,  SymmetryTag::AI,   SymmetryTag::AII, SymmetryTag::AIII, SymmetryTag::BD,
    SymmetryTag::BDI, SymmetryTag::DIII, SymmetryTag::C,   SymmetryTag::CI,   SymmetryTag::CII};

enum class GroupKind { U, O, Sp };

/// Entry field of parameter matrices: complex, real, or quaternionic
/// (2n x 2n complex of block form (X Y; -conj(Y) conj(X))).
enum class Structure { complex, real, quaternion };

std::string to_string(SymmetryTag tag);
SymmetryTag parse_tag(const std::string& text);
std::string to_string(GroupKind group);
std::string to_string(Structure structure);

bool is_chiral(SymmetryTag tag);

struct SymmetryClass {
  SymmetryTag tag = SymmetryTag::A;
  int n = 1;
  int p = 0;  // chiral tags only
  int q = 0;

  /// Validates arity: chiral tags need p, q >= 1 with p + q = n; others
  /// must not carry p, q. Throws ArgumentError.
  static SymmetryClass make(SymmetryTag tag, int n, int p = 0, int q = 0);

  /// Grammar `TAG[:n=..,p=..,q=..]`, e.g. "AIII:n=50,p=30,q=20" or "C:n=4".
  /// For chiral tags n may be omitted; it defaults to p + q.
  static SymmetryClass parse(const std::string& text);

  std::string to_string() const;

  bool chiral() const { return is_chiral(tag); }
  int delta() const { return (tag == SymmetryTag::AII || tag == SymmetryTag::DIII) ? 2 : 1; }
  GroupKind group() const;
  Structure structure() const;

  /// Size of the matrices g and V.
  int ambient_size() const;

  /// m in U_m or O_m, n in Sp_2n.
  int group_parameter() const;

  friend bool operator==(const SymmetryClass&, const SymmetryClass&) = default;
};

}  // namespace symrmt
