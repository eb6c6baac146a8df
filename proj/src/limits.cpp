#include "symrmt/limits.hpp"

#include <cstdlib>
#include <mutex>
#include <sstream>

#include "symrmt/errors.hpp"

namespace symrmt {
namespace {

std::mutex g_mutex;
bool g_initialized = false;
Limits g_limits;

void ensure_initialized() {
  if (g_initialized) return;
  g_initialized = true;
  if (const char* env = std::getenv("SYMRMT_CAPS"); env != nullptr && *env != '\0') {
    g_limits = parse_limits(env);
  }
}

}  // namespace

Limits limits() {
  std::lock_guard lock(g_mutex);
  ensure_initialized();
  return g_limits;
}

void set_limits(const Limits& value) {
  std::lock_guard lock(g_mutex);
  g_initialized = true;
  g_limits = value;
}

Limits parse_limits(const std::string& text, Limits base) {
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ArgumentError("cap override '" + item + "' is not key=value");
    const std::string key = item.substr(0, eq);
    const std::string val = item.substr(eq + 1);
    std::int64_t number = 0;
    try {
      std::size_t used = 0;
      number = std::stoll(val, &used);
      if (used != val.size()) throw std::invalid_argument(val);
    } catch (const std::exception&) {
      throw ArgumentError("cap override '" + item + "' has a non-integer value");
    }
    if (number < 1) throw ArgumentError("cap override '" + item + "' must be positive");
    if (key == "perm") {
      base.max_permutation_degree = static_cast<int>(number);
    } else if (key == "pair") {
      base.max_pair_partition_half = static_cast<int>(number);
    } else if (key == "terms") {
      base.max_expansion_terms = number;
    } else {
      throw ArgumentError("unknown cap '" + key + "' (expected perm, pair or terms)");
    }
  }
  return base;
}

}  // namespace symrmt
