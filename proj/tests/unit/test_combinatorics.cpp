#include <algorithm>
#include <set>

#include "doctest.h"
#include "symrmt/combinatorics.hpp"
#include "symrmt/errors.hpp"
#include "symrmt/limits.hpp"

using namespace symrmt;

namespace {

PairPartition pp(std::vector<std::pair<int, int>> blocks) { return PairPartition(std::move(blocks)); }

// Counts functions {0..2l-1} -> {0..n-1} constant on the blocks of both m and p.
long count_constant(const PairPartition& m, const PairPartition& p, int n) {
  const int k = m.ground_size();
  std::vector<int> phi(static_cast<std::size_t>(k), 0);
  long count = 0;
  while (true) {
    if (is_constant_on_blocks(phi, m) && is_constant_on_blocks(phi, p)) ++count;
    int pos = 0;
    while (pos < k && ++phi[static_cast<std::size_t>(pos)] == n) phi[static_cast<std::size_t>(pos++)] = 0;
    if (pos == k) break;
  }
  return count;
}

long ipow(long b, int e) {
  long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

}  // namespace

TEST_CASE("pair partition counts are odd double factorials") {
  CHECK(enumerate_pair_partitions(1).size() == 1);
  CHECK(enumerate_pair_partitions(2).size() == 3);
  CHECK(enumerate_pair_partitions(3).size() == 15);
  CHECK(enumerate_pair_partitions(4).size() == 105);
  CHECK(double_factorial_odd(5) == 945);
  const auto all = enumerate_pair_partitions(3);
  CHECK(std::is_sorted(all.begin(), all.end()));
  CHECK(std::set<PairPartition>(all.begin(), all.end()).size() == all.size());
}

TEST_CASE("pair partition enumeration respects the cap") {
  const Limits saved = limits();
  Limits tight = saved;
  tight.max_pair_partition_half = 2;
  set_limits(tight);
  CHECK_THROWS_AS(enumerate_pair_partitions(3), SizeLimitError);
  set_limits(saved);
}

TEST_CASE("loops") {
  const auto a = pp({{0, 1}, {2, 3}});
  const auto b = pp({{0, 3}, {1, 2}});
  CHECK(loops(a, b) == 1);
  CHECK(loops(a, a) == 2);
  for (int l = 1; l <= 3; ++l) {
    const auto all = enumerate_pair_partitions(l);
    for (const auto& m : all)
      for (const auto& p : all) {
        CHECK(loops(m, p) == loops(p, m));
        CHECK((loops(m, p) == l) == (m == p));
      }
  }
  CHECK_THROWS_AS(loops(pp({{0, 1}}), a), ArgumentError);
}

TEST_CASE("constant-function count equals n^loops") {
  for (int l = 1; l <= 3; ++l)
    for (int n = 1; n <= 4; ++n) {
      const auto all = enumerate_pair_partitions(l);
      for (const auto& m : all)
        for (const auto& p : all) CHECK(count_constant(m, p, n) == ipow(n, loops(m, p)));
    }
}

TEST_CASE("block constancy") {
  CHECK(is_constant_on_blocks(std::vector<int>{4, 4}, pp({{0, 1}})));
  CHECK_FALSE(is_constant_on_blocks(std::vector<int>{0, 1}, pp({{0, 1}})));
  CHECK(is_constant_on_blocks(IndexFunction({2, 2, 6, 6}, 7), pp({{0, 1}, {2, 3}})));
  CHECK_THROWS_AS(is_constant_on_blocks(std::vector<int>{0, 1, 2}, pp({{0, 1}})), ArgumentError);
  CHECK_THROWS_AS(IndexFunction({0, 3}, 3), ArgumentError);
}

TEST_CASE("permutations") {
  CHECK(Permutation::identity(3).cycle_count() == 3);
  CHECK(Permutation({1, 0, 2}).cycle_type() == std::vector<int>{2, 1});
  const auto all = enumerate_permutations(4);
  CHECK(all.size() == 24);
  for (const auto& s : all) CHECK(compose(s, s.inverse()).is_identity());
  CHECK(compose(Permutation({1, 2, 0}), Permutation({1, 0, 2})) == Permutation({2, 1, 0}));
  CHECK_THROWS_AS(Permutation({0, 0}), ArgumentError);
  CHECK(integer_partitions(5).size() == 7);
  CHECK_THROWS_AS(enumerate_permutations(limits().max_permutation_degree + 1), SizeLimitError);
}

TEST_CASE("fixed pair partitions") {
  CHECK(fixed_pair_partitions(Permutation::identity(4)) == 3);
  CHECK(fixed_pair_partitions(Permutation({1, 0})) == 1);
  CHECK(fixed_pair_partitions(Permutation({1, 2, 3, 0})) == 1);
  CHECK(fixed_pair_partitions(Permutation::identity(6)) == 15);
  CHECK_THROWS_AS(fixed_pair_partitions(Permutation::identity(3)), ArgumentError);
}

TEST_CASE("ordered pair partitions round trip") {
  for (const auto& m : enumerate_pair_partitions(3)) {
    const auto o = OrderedPairPartition::canonical(m);
    for (const auto& [a, b] : o.pairs) CHECK(a < b);
    CHECK(o.unordered() == m);
  }
}
