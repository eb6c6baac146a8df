#include "symrmt/exact_complex.hpp"

#include <cmath>

#include "symrmt/errors.hpp"

namespace symrmt {

ExactComplex ExactComplex::from_double(std::complex<double> z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw ArgumentError("non-finite matrix entry");
  return {Rational(z.real()), Rational(z.imag())};
}

std::string to_string(const ExactComplex& z) {
  if (z.is_real()) return to_string(z.re);
  if (sgn(z.im) < 0) return to_string(z.re) + " - " + to_string(Rational(-z.im)) + " i";
  return to_string(z.re) + " + " + to_string(z.im) + " i";
}

}  // namespace symrmt
