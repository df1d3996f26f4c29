#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace dla {

/*
 * Exact rational scalar for echelon elimination. Coefficients in split-edge
 * closures of dense graphs routinely need a few hundred bits, so the
 * numerator and denominator are arbitrary-precision integers.
 */
using Rational = boost::multiprecision::cpp_rational;

}  // namespace dla
