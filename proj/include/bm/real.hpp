#ifndef BM_REAL_HPP
#define BM_REAL_HPP

#include <mpfr.h>

#include <string>
#include <utility>

#include "bm/errors.hpp"
#include "bm/rational.hpp"

namespace bm {

// Requested accuracy in decimal digits. Internal computation adds guard
// digits on top of this (see kGuardDigits).
struct Precision {
    int digits;

    explicit Precision(int d) : digits(d) {
        if (d < 10 || d > kMaxDigits) throw DomainError("precision out of range [10, 1000]");
    }
    static constexpr int kMaxDigits = 1000;
};

constexpr int kGuardDigits = 15;

// ~ digits * log2(10), rounded up, plus slack for the binary<->decimal seam.
inline mpfr_prec_t bits_for_digits(int digits) {
    return static_cast<mpfr_prec_t>(digits * 3.3219280948873626 + 0.5) + 16;
}

// Immutable-after-construction arbitrary-precision real on top of mpfr_t.
// Binary operations allocate their result at the wider of the two operand
// precisions; rounding is always to nearest.
class Real {
  public:
    explicit Real(mpfr_prec_t bits = 64) { mpfr_init2(v_, bits); mpfr_set_nan(v_); }

    static Real with_digits(int digits) { return Real(bits_for_digits(digits)); }

    Real(const Real& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    Real(Real&& o) noexcept {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_swap(v_, o.v_);
    }
    Real& operator=(const Real& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    Real& operator=(Real&& o) noexcept {
        if (this != &o) mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Real() { mpfr_clear(v_); }

    mpfr_prec_t prec_bits() const { return mpfr_get_prec(v_); }

    static Real from_long(long x, mpfr_prec_t bits) {
        Real r(bits);
        mpfr_set_si(r.v_, x, MPFR_RNDN);
        return r;
    }
    static Real from_double(double x, mpfr_prec_t bits) {
        Real r(bits);
        mpfr_set_d(r.v_, x, MPFR_RNDN);
        return r;
    }
    static Real from_rational(const Rational& q, mpfr_prec_t bits) {
        Real r(bits);
        mpfr_set_q(r.v_, q.get_mpq_t(), MPFR_RNDN);
        return r;
    }
    static Real from_integer(const Integer& z, mpfr_prec_t bits) {
        Real r(bits);
        mpfr_set_z(r.v_, z.get_mpz_t(), MPFR_RNDN);
        return r;
    }
    // Parses a decimal literal at the given precision.
    static Real from_string(const std::string& s, mpfr_prec_t bits) {
        Real r(bits);
        if (mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0)
            throw DomainError("malformed real literal: " + s);
        return r;
    }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    // Round-to-nearest decimal rendering with the given significant digits.
    std::string to_string(int digits) const {
        char fmt[32];
        std::snprintf(fmt, sizeof fmt, "%%.%dRg", digits);
        char* out = nullptr;
        mpfr_asprintf(&out, fmt, v_);
        std::string s(out);
        mpfr_free_str(out);
        return s;
    }

    bool is_nan() const { return mpfr_nan_p(v_) != 0; }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }

    friend Real operator+(const Real& a, const Real& b) { return binop(mpfr_add, a, b); }
    friend Real operator-(const Real& a, const Real& b) { return binop(mpfr_sub, a, b); }
    friend Real operator*(const Real& a, const Real& b) { return binop(mpfr_mul, a, b); }
    friend Real operator/(const Real& a, const Real& b) { return binop(mpfr_div, a, b); }
    Real operator-() const {
        Real r(prec_bits());
        mpfr_neg(r.v_, v_, MPFR_RNDN);
        return r;
    }

    Real& operator+=(const Real& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real& operator-=(const Real& o) { mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real& operator*=(const Real& o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real& operator/=(const Real& o) { mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }

    friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
    friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
    friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
    friend bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }
    friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }

    friend Real abs(const Real& a) { return unop(mpfr_abs, a); }
    friend Real sqrt(const Real& a) { return unop(mpfr_sqrt, a); }
    friend Real exp(const Real& a) { return unop(mpfr_exp, a); }
    friend Real log(const Real& a) { return unop(mpfr_log, a); }
    friend Real sinh(const Real& a) { return unop(mpfr_sinh, a); }
    friend Real expm1(const Real& a) { return unop(mpfr_expm1, a); }
    friend Real cosh(const Real& a) { return unop(mpfr_cosh, a); }

    friend Real pow_si(const Real& a, long e) {
        Real r(a.prec_bits());
        mpfr_pow_si(r.v_, a.v_, e, MPFR_RNDN);
        return r;
    }
    friend Real mul_si(const Real& a, long x) {
        Real r(a.prec_bits());
        mpfr_mul_si(r.v_, a.v_, x, MPFR_RNDN);
        return r;
    }
    friend Real div_si(const Real& a, long x) {
        Real r(a.prec_bits());
        mpfr_div_si(r.v_, a.v_, x, MPFR_RNDN);
        return r;
    }
    friend Real si_div(long x, const Real& a) {
        Real r(a.prec_bits());
        mpfr_si_div(r.v_, x, a.v_, MPFR_RNDN);
        return r;
    }

    // 10^e at this value's precision.
    static Real pow10(long e, mpfr_prec_t bits) {
        Real r(bits);
        mpfr_set_ui(r.v_, 10, MPFR_RNDN);
        mpfr_pow_si(r.v_, r.v_, e, MPFR_RNDN);
        return r;
    }

    // Nearest integer (used by the relation detector when scaling).
    Integer round_to_integer() const {
        Real t(prec_bits());
        mpfr_round(t.v_, v_);
        Integer z;
        mpfr_get_z(z.get_mpz_t(), t.v_, MPFR_RNDN);
        return z;
    }

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

  private:
    using BinFn = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);
    using UnFn = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t);

    static Real binop(BinFn fn, const Real& a, const Real& b) {
        Real r(std::max(a.prec_bits(), b.prec_bits()));
        fn(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    static Real unop(UnFn fn, const Real& a) {
        Real r(a.prec_bits());
        fn(r.v_, a.v_, MPFR_RNDN);
        return r;
    }

    mpfr_t v_;
};

// Rounds a guard-precision intermediate down to the storage precision for
// the requested digit count.
inline Real round_to(const Real& x, int digits) {
    Real r(bits_for_digits(digits));
    mpfr_set(r.raw(), x.raw(), MPFR_RNDN);
    return r;
}

} // namespace bm

#endif
