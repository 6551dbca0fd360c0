#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>

namespace cubelab {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using i128 = __int128;
using u128 = unsigned __int128;

inline Int pow_int(const Int& base, unsigned e) {
    Int r = 1, b = base;
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

// floor(sqrt(n)) for n >= 0
inline Int isqrt(const Int& n) {
    if (n < 0) throw std::domain_error("isqrt of negative");
    return boost::multiprecision::sqrt(n);
}

inline bool is_square(const Int& n, Int* root = nullptr) {
    if (n < 0) return false;
    Int r = isqrt(n);
    if (r * r == n) {
        if (root) *root = r;
        return true;
    }
    return false;
}

inline int64_t to_i64(const Int& n) { return static_cast<int64_t>(n); }

inline std::string i128_to_string(i128 v) {
    if (v == 0) return "0";
    bool neg = v < 0;
    u128 u = neg ? u128(0) - u128(v) : u128(v);
    std::string s;
    while (u) {
        s += char('0' + int(u % 10));
        u /= 10;
    }
    if (neg) s += '-';
    return std::string(s.rbegin(), s.rend());
}

inline Int i128_to_int(i128 v) { return Int(i128_to_string(v)); }

}  // namespace cubelab
