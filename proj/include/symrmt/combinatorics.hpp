#pragma once

// Permutations, pair partitions and the counting primitives that index the
// Weingarten constructions. All points are 0-based: a permutation of degree k
// acts on {0, ..., k-1} and a pair partition of half-size l partitions
// {0, ..., 2l-1}.

#include <compare>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace symrmt {

class Permutation {
 public:
  /// `images[i]` is the image of point i. Throws ArgumentError unless bijective.
  explicit Permutation(std::vector<int> images);

  static Permutation identity(int k);

  int degree() const { return static_cast<int>(images_.size()); }
  int operator()(int i) const { return images_[static_cast<std::size_t>(i)]; }
  std::span<const int> images() const { return images_; }

  Permutation inverse() const;

  /// Cycle lengths in non-increasing order.
  std::vector<int> cycle_type() const;
  int cycle_count() const;
  bool is_identity() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> images_;
};

/// (a * b)(i) = a(b(i)).
Permutation compose(const Permutation& a, const Permutation& b);

/// All of S_k in lexicographic order of image sequences. Respects the
/// permutation-degree cap.
std::vector<Permutation> enumerate_permutations(int k);

/// Integer partitions of k in reverse-lexicographic order, each non-increasing.
/// These index the conjugacy classes of S_k.
std::vector<std::vector<int>> integer_partitions(int k);

class PairPartition {
 public:
  /// Blocks are normalized to (a < b) and sorted by first element.
  /// Throws ArgumentError unless the blocks partition {0, ..., 2l-1}.
  explicit PairPartition(std::vector<std::pair<int, int>> blocks);

  int half_size() const { return static_cast<int>(blocks_.size()); }
  int ground_size() const { return 2 * half_size(); }
  std::span<const std::pair<int, int>> blocks() const { return blocks_; }

  /// Partner of point i under the matching.
  int partner(int i) const { return partner_[static_cast<std::size_t>(i)]; }

  friend bool operator==(const PairPartition& a, const PairPartition& b) {
    return a.blocks_ == b.blocks_;
  }
  friend auto operator<=>(const PairPartition& a, const PairPartition& b) {
    return a.blocks_ <=> b.blocks_;
  }

 private:
  std::vector<std::pair<int, int>> blocks_;
  std::vector<int> partner_;
};

/// A pair partition with an orientation on each block, stored as a sequence
/// of (first, second) pairs. The canonical orientation has first < second and
/// pairs sorted by their first element; that is how M(2l) indexes the
/// symplectic invariants.
struct OrderedPairPartition {
  std::vector<std::pair<int, int>> pairs;

  static OrderedPairPartition canonical(const PairPartition& m);
  PairPartition unordered() const;
};

/// A function {0..k-1} -> {0..n-1}.
class IndexFunction {
 public:
  IndexFunction(std::vector<int> values, int n);

  int size() const { return static_cast<int>(values_.size()); }
  int target_size() const { return n_; }
  int operator[](int j) const { return values_[static_cast<std::size_t>(j)]; }
  std::span<const int> values() const { return values_; }

 private:
  std::vector<int> values_;
  int n_;
};

/// All (2l-1)!! pair partitions of {0..2l-1} in canonical (lexicographic on
/// the sorted block list) order. Throws SizeLimitError past the cap.
std::vector<PairPartition> enumerate_pair_partitions(int l);

std::int64_t double_factorial_odd(int l);  // (2l-1)!!

/// Connected components of the multigraph whose edges are the blocks of both
/// matchings. Equals the exponent in the orthogonal Gram entry n^loops.
int loops(const PairPartition& m, const PairPartition& n);

/// True iff phi takes equal values on both points of every block.
bool is_constant_on_blocks(std::span<const int> phi, const PairPartition& m);
bool is_constant_on_blocks(const IndexFunction& phi, const PairPartition& m);

/// Number of matchings of {0..2l-1} mapped onto themselves by s.
std::int64_t fixed_pair_partitions(const Permutation& s);

}  // namespace symrmt
