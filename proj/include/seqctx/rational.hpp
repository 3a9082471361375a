#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <cstdint>
#include <string>

#include "seqctx/errors.hpp"

namespace seqctx {

using BigInt = boost::multiprecision::cpp_int;

// Arbitrary-precision rational, always kept in lowest terms with a positive
// denominator. All probabilities, weights and bound quantities in the library
// are values of this type; floating point appears only inside the qubit
// simulator.
using Rational = boost::multiprecision::cpp_rational;

inline BigInt num(const Rational& q) { return numerator(q); }
inline BigInt den(const Rational& q) { return denominator(q); }

// Canonical serialization, e.g. "1/2", "0/1", "-3/4".
inline std::string to_string(const Rational& q) {
    return numerator(q).str() + "/" + denominator(q).str();
}

// Accepts "num/den" or a bare integer.
inline Rational parse_rational(const std::string& s) {
    auto bad = [&] { throw ParseError("not a rational: '" + s + "'"); };
    if (s.empty()) bad();
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(BigInt(s));
        BigInt n(s.substr(0, slash));
        BigInt d(s.substr(slash + 1));
        if (d == 0) bad();
        return Rational(n, d);
    } catch (const std::runtime_error&) {
        bad();
    }
    return Rational();  // unreachable
}

// Exact value of a finite double (doubles are dyadic rationals).
inline Rational exact_from_double(double x) {
    if (!std::isfinite(x)) throw RationalizationFailure("non-finite value");
    int exp = 0;
    double frac = std::frexp(x, &exp);
    // frac * 2^53 is integral for any finite double
    auto mant = static_cast<int64_t>(std::ldexp(frac, 53));
    exp -= 53;
    Rational r(mant);
    if (exp > 0) {
        r *= Rational(BigInt(1) << exp);
    } else if (exp < 0) {
        r /= Rational(BigInt(1) << -exp);
    }
    return r;
}

namespace detail {

// Smallest-denominator rational in the closed interval [lo, hi], 0 <= lo <= hi.
// Stern-Brocot descent; terminates because interval endpoints are rational.
inline Rational simplest_in_interval(const Rational& lo, const Rational& hi) {
    BigInt lo_ceil = num(lo) / den(lo) + (num(lo) % den(lo) == 0 ? 0 : 1);
    if (Rational(lo_ceil) <= hi) return Rational(lo_ceil);
    BigInt whole = num(lo) / den(lo);
    Rational inner = simplest_in_interval(1 / (hi - Rational(whole)), 1 / (lo - Rational(whole)));
    return Rational(whole) + 1 / inner;
}

}  // namespace detail

// Snaps a simulated probability to the smallest-denominator rational within
// tol, clamped to [0, 1]. Throws RationalizationFailure when the smallest such
// denominator exceeds max_den or the interval is empty.
inline Rational rationalize(double p, double tol, uint64_t max_den) {
    if (tol <= 0) throw RationalizationFailure("tolerance must be positive");
    Rational pe = exact_from_double(p);
    Rational te = exact_from_double(tol);
    Rational lo = pe - te;
    Rational hi = pe + te;
    if (lo < 0) lo = 0;
    if (hi > 1) hi = 1;
    if (lo > hi)
        throw RationalizationFailure("probability " + std::to_string(p) +
                                     " is outside [0,1] by more than tol");
    Rational best = detail::simplest_in_interval(lo, hi);
    if (den(best) > BigInt(max_den))
        throw RationalizationFailure("no rational with denominator <= " + std::to_string(max_den) +
                                     " within tol of " + std::to_string(p));
    return best;
}

}  // namespace seqctx
