#ifndef BM_RATIONAL_HPP
#define BM_RATIONAL_HPP

#include <gmpxx.h>
#include <string>

#include "bm/errors.hpp"

namespace bm {

// Exact rational arithmetic. mpq_class already keeps values canonical
// (lowest terms, positive denominator), which is exactly the contract
// we need, so Rational is an alias plus a few helpers.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

// Parses "a", "-a" or "a/b". Throws DomainError on malformed text.
inline Rational parse_rational(const std::string& s) {
    if (s.empty()) throw DomainError("empty rational literal");
    Rational q;
    if (q.set_str(s, 10) != 0) throw DomainError("malformed rational: " + s);
    if (q.get_den() <= 0) throw DomainError("nonpositive denominator: " + s);
    q.canonicalize();
    return q;
}

inline std::string format_rational(const Rational& q) {
    return q.get_str();
}

// max(|numerator|, denominator), the coefficient height used by the
// relation detector.
inline Integer rational_height(const Rational& q) {
    Integer n = abs(q.get_num());
    Integer d = q.get_den();
    return n > d ? n : d;
}

inline Integer factorial(unsigned long n) {
    Integer f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return f;
}

} // namespace bm

#endif
