#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace ascpow {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

inline double to_double(const BigRational& r) {
    return r.convert_to<double>();
}

} // namespace ascpow
