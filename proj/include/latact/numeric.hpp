#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <vector>

namespace latact {

// Every quantity in this library is exact. Integer entries can grow well past
// 64 bits during fraction-free elimination, so both scalar types are
// arbitrary precision.
using Integer  = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer abs_int(const Integer& a) { return a < 0 ? Integer(-a) : a; }

inline Integer gcd_int(Integer a, Integer b) {
    a = abs_int(a);
    b = abs_int(b);
    while (b != 0) {
        Integer r = a % b;
        a = b;
        b = r;
    }
    return a;
}

inline Integer gcd_vec(const std::vector<Integer>& v) {
    Integer g = 0;
    for (const auto& x : v) g = gcd_int(g, x);
    return g;
}

inline bool is_primitive(const std::vector<Integer>& v) { return gcd_vec(v) == 1; }

inline std::string to_string(const Integer& a) { return a.str(); }

inline std::string to_string(const Rational& r) {
    if (boost::multiprecision::denominator(r) == 1)
        return boost::multiprecision::numerator(r).str();
    return boost::multiprecision::numerator(r).str() + "/" + boost::multiprecision::denominator(r).str();
}

inline int sign_of(const Rational& r) {
    if (r > 0) return 1;
    if (r < 0) return -1;
    return 0;
}

} // namespace latact
