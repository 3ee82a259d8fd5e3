#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace psmbv {

// Exact rational coefficients. No floating point anywhere in the engine.
using Rational = boost::multiprecision::cpp_rational;

inline std::string to_string(const Rational& r) { return r.str(); }

}  // namespace psmbv
