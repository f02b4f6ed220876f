#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

namespace minla {

/// Exact probability or ratio with machine-word parts.
using Rational = boost::rational<std::int64_t>;

/// Arbitrary-precision rational for harmonic sums and lemma checks.
using BigRational = boost::multiprecision::cpp_rational;

inline std::string to_string(const Rational& r) {
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

inline double to_double(const Rational& r) {
    return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

}  // namespace minla
