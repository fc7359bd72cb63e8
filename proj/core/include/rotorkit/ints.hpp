#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace rotorkit {

/// Coefficients, matrix entries and counters are arbitrary-precision:
/// rotor-walk step counts and Smith-form intermediates outgrow 64 bits.
using Int = boost::multiprecision::cpp_int;

inline Int abs_int(const Int& x) { return x < 0 ? Int(-x) : x; }

inline Int gcd_int(Int a, Int b) {
    a = abs_int(a);
    b = abs_int(b);
    while (b != 0) {
        Int t = a % b;
        a = b;
        b = t;
    }
    return a;
}

/// Floor division (C++ '/' truncates toward zero).
inline Int floor_div(const Int& a, const Int& b) {
    Int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

inline Int ceil_div(const Int& a, const Int& b) { return -floor_div(-a, b); }

} // namespace rotorkit
