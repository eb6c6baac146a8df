#pragma once

#include <stdexcept>
#include <string>

namespace symrmt {

/// Malformed or inconsistent arguments (mismatched sizes, bad descriptors).
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A configured enumeration or expansion cap would be exceeded.
class SizeLimitError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// The request lies outside the stable range where the Gram/convolution
/// matrix is invertible (n >= k for U_n, n >= l for O_n and Sp_2n).
class RegimeError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Exact elimination met a zero pivot column.
class SingularMatrixError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace symrmt
