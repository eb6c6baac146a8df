#pragma once

#include <cstdint>
#include <string>

namespace symrmt {

/// Process-wide caps on combinatorial enumeration and exact expansions.
///
/// Defaults may be overridden through the SYMRMT_CAPS environment variable,
/// e.g. `SYMRMT_CAPS="perm=7,pair=4,terms=50000000"`, which is read on first
/// access, or programmatically through set_limits().
struct Limits {
  int max_permutation_degree = 8;          // k! enumeration, S_k
  int max_pair_partition_half = 5;         // (2l-1)!! enumeration, M(2l)
  std::int64_t max_expansion_terms = 60'000'000;  // monomial pairs in exact moments
};

Limits limits();
void set_limits(const Limits& value);

/// Parses the `key=value,...` grammar used by SYMRMT_CAPS. Throws ArgumentError.
Limits parse_limits(const std::string& text, Limits base = {});

}  // namespace symrmt
