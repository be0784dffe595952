// SPDX-License-Identifier: Apache-2.0
//
// Exact unbounded-precision integer intervals, the box-domain value used
// throughout the repair algorithms.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <iosfwd>
#include <stdexcept>
#include <string>

namespace ovf {

using Int = boost::multiprecision::cpp_int;

class error : public std::runtime_error {
  public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

class unbound_variable_error : public error {
  public:
    explicit unbound_variable_error(const std::string& var)
        : error("unbound variable: " + var) {}
};

class coefficient_cap_error : public error {
  public:
    explicit coefficient_cap_error(const std::string& what) : error(what) {}
};

class cap_exceeded_error : public error {
  public:
    explicit cap_exceeded_error(const std::string& what) : error(what) {}
};

// Closed interval [lo, hi] with lo <= hi. There is no bottom element: absence
// of a fact is represented by absence of the interval.
struct Interval {
    Int lo;
    Int hi;

    Interval(Int l, Int h) : lo(std::move(l)), hi(std::move(h)) {
        if (lo > hi)
            throw error("ill-formed interval [" + lo.str() + ", " + hi.str() + "]");
    }

    static Interval point(Int v) { return Interval(v, v); }
    static Interval zero() { return Interval(0, 0); }

    bool contains(const Int& v) const { return lo <= v && v <= hi; }
    Int width() const { return hi - lo; }

    friend bool operator==(const Interval& a, const Interval& b) {
        return a.lo == b.lo && a.hi == b.hi;
    }
    friend bool operator!=(const Interval& a, const Interval& b) { return !(a == b); }
};

inline Interval add(const Interval& a, const Interval& b) {
    return Interval(a.lo + b.lo, a.hi + b.hi);
}

inline Interval negate(const Interval& a) { return Interval(-a.hi, -a.lo); }

inline Interval scale(const Interval& a, const Int& k) {
    if (k >= 0)
        return Interval(a.lo * k, a.hi * k);
    return Interval(a.hi * k, a.lo * k);
}

// d([lo,hi]) = max(|lo|, |hi|)
inline Int distance_from_zero(const Interval& a) {
    Int l = abs(a.lo), h = abs(a.hi);
    return l > h ? l : h;
}

std::ostream& operator<<(std::ostream& os, const Interval& iv);
std::string to_string(const Interval& iv);

} // namespace ovf
