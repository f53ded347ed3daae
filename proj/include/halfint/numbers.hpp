// Shared number types: exact integers/rationals and a high-precision float
// used for embeddings and guard computations.
#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <cstdint>

namespace halfint {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using BigFloat = boost::multiprecision::cpp_bin_float_50;  // ~166 bits
using Complex = std::complex<double>;

inline double to_double(const Int& x) { return x.convert_to<double>(); }
inline double to_double(const BigFloat& x) { return x.convert_to<double>(); }
inline BigFloat to_bigfloat(const Int& x) { return BigFloat(x); }

inline long long to_ll(const Int& x) { return x.convert_to<long long>(); }

inline bool is_perfect_square(const Int& x, Int* root = nullptr) {
    if (x < 0) return false;
    Int s = boost::multiprecision::sqrt(x);
    if (s * s == x) {
        if (root) *root = s;
        return true;
    }
    return false;
}

}  // namespace halfint
