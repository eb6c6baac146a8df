#include "symrmt/combinatorics.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "symrmt/errors.hpp"
#include "symrmt/limits.hpp"

namespace symrmt {

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  const int k = degree();
  if (k < 1) throw ArgumentError("permutation degree must be at least 1");
  std::vector<char> seen(images_.size(), 0);
  for (int v : images_) {
    if (v < 0 || v >= k || seen[static_cast<std::size_t>(v)])
      throw ArgumentError("permutation images are not a bijection of {0.." + std::to_string(k - 1) + "}");
    seen[static_cast<std::size_t>(v)] = 1;
  }
}

Permutation Permutation::identity(int k) {
  std::vector<int> images(static_cast<std::size_t>(std::max(k, 0)));
  std::iota(images.begin(), images.end(), 0);
  return Permutation(std::move(images));
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) inv[static_cast<std::size_t>(images_[i])] = static_cast<int>(i);
  return Permutation(std::move(inv));
}

std::vector<int> Permutation::cycle_type() const {
  std::vector<int> lengths;
  std::vector<char> seen(images_.size(), 0);
  for (std::size_t start = 0; start < images_.size(); ++start) {
    if (seen[start]) continue;
    int len = 0;
    for (std::size_t i = start; !seen[i]; i = static_cast<std::size_t>(images_[i])) {
      seen[i] = 1;
      ++len;
    }
    lengths.push_back(len);
  }
  std::sort(lengths.begin(), lengths.end(), std::greater<>());
  return lengths;
}

int Permutation::cycle_count() const { return static_cast<int>(cycle_type().size()); }

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != static_cast<int>(i)) return false;
  return true;
}

Permutation compose(const Permutation& a, const Permutation& b) {
  if (a.degree() != b.degree()) throw ArgumentError("cannot compose permutations of different degree");
  std::vector<int> images(static_cast<std::size_t>(a.degree()));
  for (int i = 0; i < a.degree(); ++i) images[static_cast<std::size_t>(i)] = a(b(i));
  return Permutation(std::move(images));
}

std::vector<Permutation> enumerate_permutations(int k) {
  if (k < 1) throw ArgumentError("permutation degree must be at least 1");
  const int cap = limits().max_permutation_degree;
  if (k > cap)
    throw SizeLimitError("enumerating S_" + std::to_string(k) + " exceeds the permutation cap k <= " +
                         std::to_string(cap));
  std::vector<int> images(static_cast<std::size_t>(k));
  std::iota(images.begin(), images.end(), 0);
  std::vector<Permutation> out;
  do {
    out.emplace_back(images);
  } while (std::next_permutation(images.begin(), images.end()));
  return out;
}

namespace {

void partitions_rec(int remaining, int max_part, std::vector<int>& current, std::vector<std::vector<int>>& out) {
  if (remaining == 0) {
    out.push_back(current);
    return;
  }
  for (int part = std::min(remaining, max_part); part >= 1; --part) {
    current.push_back(part);
    partitions_rec(remaining - part, part, current, out);
    current.pop_back();
  }
}

void matchings_rec(std::vector<int>& free_points, std::vector<std::pair<int, int>>& blocks,
                   std::vector<PairPartition>& out) {
  if (free_points.empty()) {
    out.emplace_back(blocks);
    return;
  }
  const int first = free_points.front();
  for (std::size_t idx = 1; idx < free_points.size(); ++idx) {
    const int second = free_points[idx];
    std::vector<int> rest;
    rest.reserve(free_points.size() - 2);
    for (std::size_t j = 1; j < free_points.size(); ++j)
      if (j != idx) rest.push_back(free_points[j]);
    blocks.emplace_back(first, second);
    matchings_rec(rest, blocks, out);
    blocks.pop_back();
  }
}

}  // namespace

std::vector<std::vector<int>> integer_partitions(int k) {
  if (k < 1) throw ArgumentError("partition size must be at least 1");
  std::vector<std::vector<int>> out;
  std::vector<int> current;
  partitions_rec(k, k, current, out);
  return out;
}

PairPartition::PairPartition(std::vector<std::pair<int, int>> blocks) : blocks_(std::move(blocks)) {
  const int size = ground_size();
  if (blocks_.empty()) throw ArgumentError("pair partition needs at least one block");
  partner_.assign(static_cast<std::size_t>(size), -1);
  for (auto& [a, b] : blocks_) {
    if (a > b) std::swap(a, b);
    if (a < 0 || b >= size || a == b) throw ArgumentError("pair partition block out of range");
    if (partner_[static_cast<std::size_t>(a)] != -1 || partner_[static_cast<std::size_t>(b)] != -1)
      throw ArgumentError("pair partition blocks overlap");
    partner_[static_cast<std::size_t>(a)] = b;
    partner_[static_cast<std::size_t>(b)] = a;
  }
  std::sort(blocks_.begin(), blocks_.end());
}

OrderedPairPartition OrderedPairPartition::canonical(const PairPartition& m) {
  return OrderedPairPartition{std::vector<std::pair<int, int>>(m.blocks().begin(), m.blocks().end())};
}

PairPartition OrderedPairPartition::unordered() const { return PairPartition(pairs); }

IndexFunction::IndexFunction(std::vector<int> values, int n) : values_(std::move(values)), n_(n) {
  if (n < 1) throw ArgumentError("index function target size must be positive");
  for (int v : values_)
    if (v < 0 || v >= n) throw ArgumentError("index function value " + std::to_string(v) + " outside {0.." +
                                             std::to_string(n - 1) + "}");
}

std::int64_t double_factorial_odd(int l) {
  std::int64_t out = 1;
  for (int j = 2 * l - 1; j > 1; j -= 2) out *= j;
  return out;
}

std::vector<PairPartition> enumerate_pair_partitions(int l) {
  if (l < 1) throw ArgumentError("pair partitions need l >= 1");
  const int cap = limits().max_pair_partition_half;
  if (l > cap)
    throw SizeLimitError("enumerating M(" + std::to_string(2 * l) + ") exceeds the pair-partition cap l <= " +
                         std::to_string(cap));
  std::vector<int> points(static_cast<std::size_t>(2 * l));
  std::iota(points.begin(), points.end(), 0);
  std::vector<std::pair<int, int>> blocks;
  std::vector<PairPartition> out;
  out.reserve(static_cast<std::size_t>(double_factorial_odd(l)));
  matchings_rec(points, blocks, out);
  return out;
}

int loops(const PairPartition& m, const PairPartition& n) {
  if (m.ground_size() != n.ground_size()) throw ArgumentError("loops: pair partitions over different ground sets");
  const int size = m.ground_size();
  std::vector<char> seen(static_cast<std::size_t>(size), 0);
  int components = 0;
  // Every vertex has degree two (one edge from each matching), so components
  // are alternating cycles.
  for (int start = 0; start < size; ++start) {
    if (seen[static_cast<std::size_t>(start)]) continue;
    ++components;
    int v = start;
    while (!seen[static_cast<std::size_t>(v)]) {
      seen[static_cast<std::size_t>(v)] = 1;
      const int w = m.partner(v);
      seen[static_cast<std::size_t>(w)] = 1;
      v = n.partner(w);
    }
  }
  return components;
}

bool is_constant_on_blocks(std::span<const int> phi, const PairPartition& m) {
  if (static_cast<int>(phi.size()) != m.ground_size())
    throw ArgumentError("index function length does not match the pair partition ground set");
  for (const auto& [a, b] : m.blocks())
    if (phi[static_cast<std::size_t>(a)] != phi[static_cast<std::size_t>(b)]) return false;
  return true;
}

bool is_constant_on_blocks(const IndexFunction& phi, const PairPartition& m) {
  return is_constant_on_blocks(phi.values(), m);
}

std::int64_t fixed_pair_partitions(const Permutation& s) {
  if (s.degree() % 2 != 0) throw ArgumentError("fixed_pair_partitions needs an even ground set");
  std::int64_t count = 0;
  for (const auto& m : enumerate_pair_partitions(s.degree() / 2)) {
    bool fixed = true;
    for (const auto& [a, b] : m.blocks()) {
      if (m.partner(s(a)) != s(b)) {
        fixed = false;
        break;
      }
    }
    if (fixed) ++count;
  }
  return count;
}

}  // namespace symrmt
