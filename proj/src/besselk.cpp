#include "bm/besselk.hpp"

#include "bm/constants.hpp"

namespace bm {

namespace {

// K0 and K1 by the ascending series. The two series each grow like e^u
// while the results decay like e^-u, so the working precision carries a
// cancellation allowance of ~2u/ln(10) decimal digits.
void k01_series(const Real& u, int digits, Real& k0_out, Real& k1_out) {
    const double ud = u.to_double();
    const int cancel = static_cast<int>(0.8686 * 2.0 * std::max(0.0, ud)) + 1;
    const int wd = digits + cancel + 10;
    const mpfr_prec_t work = bits_for_digits(wd);

    Real x(work);
    mpfr_set(x.raw(), u.raw(), MPFR_RNDN);
    Real t = x * x;
    t = div_si(t, 4);
    Real lh = log(div_si(x, 2));
    Real gamma = fundamental_constant("euler_gamma", Precision(std::min(wd, Precision::kMaxDigits)));
    Real eps = Real::pow10(-(wd), work);

    Real one = Real::from_long(1, work);
    Real T = one;   // t^k / (k!)^2
    Real U = one;   // t^k / (k! (k+1)!)
    Real H = Real::from_long(0, work);   // H_k
    Real Hn = one;                       // H_{k+1}
    Real s_i0 = one;                     // sum T
    Real s_i0h = Real::from_long(0, work); // sum T*H_k
    Real s_i1 = one;                     // sum U
    Real s_i1h = Hn;                     // sum U*(H_k + H_{k+1})
    for (long k = 1;; ++k) {
        T = div_si(div_si(T * t, k), k);
        U = div_si(div_si(U * t, k), k + 1);
        H += si_div(1, Real::from_long(k, work));
        Hn = H + si_div(1, Real::from_long(k + 1, work));
        s_i0 += T;
        s_i0h += T * H;
        s_i1 += U;
        s_i1h += U * (H + Hn);
        if (T < eps * s_i0 && U < eps * s_i1) break;
    }
    // K0 = -(log(u/2)+gamma) I0 + sum H_k t^k/(k!)^2
    k0_out = s_i0h - (lh + gamma) * s_i0;
    // K1 = 1/u + log(u/2) I1 - (u/4) sum (H_k + H_{k+1} - 2 gamma) U_k
    Real i1 = div_si(x, 2) * s_i1;
    k1_out = si_div(1, x) + lh * i1 -
             div_si(x, 4) * (s_i1h - mul_si(gamma, 2) * s_i1);
}

// Large-argument expansion sqrt(pi/2u) e^-u (1 + sum a_k(nu)/u^k),
// truncated at a term below target; only called when that term exists.
Real k_asymptotic(int nu, const Real& u, int digits) {
    const int wd = digits + 10;
    const mpfr_prec_t work = bits_for_digits(wd);
    Real x(work);
    mpfr_set(x.raw(), u.raw(), MPFR_RNDN);
    Real eps = Real::pow10(-(wd), work);
    Real inv8u = si_div(1, mul_si(x, 8));
    const long mu = 4L * nu * nu;

    Real term = Real::from_long(1, work);
    Real s = term;
    Real prev_mag = abs(term);
    for (long k = 1;; ++k) {
        term = div_si(mul_si(term, mu - (2 * k - 1) * (2 * k - 1)), k) * inv8u;
        Real mag = abs(term);
        if (mag < eps * abs(s)) break;
        if (k > 2 && mag > prev_mag)
            throw ConvergenceError("bessel_k asymptotic series called below its range");
        prev_mag = mag;
        s += term;
    }
    Real pi = fundamental_constant("pi", Precision(std::min(wd, Precision::kMaxDigits)));
    return sqrt(pi / mul_si(x, 2)) * exp(-x) * s;
}

void k01_eval(const Real& u, int digits, Real& k0_out, Real& k1_out) {
    const double ud = u.to_double();
    if (ud > 1.2 * (digits + 7)) {
        k0_out = k_asymptotic(0, u, digits);
        k1_out = k_asymptotic(1, u, digits);
    } else {
        k01_series(u, digits, k0_out, k1_out);
    }
}

} // namespace

void bessel_k01(const Real& u, Precision prec, Real& k0, Real& k1) {
    if (!(u > Real::from_long(0, 64))) throw DomainError("bessel_k requires u > 0");
    Real a(64), b(64);
    k01_eval(u, prec.digits + kGuardDigits, a, b);
    k0 = round_to(a, prec.digits);
    k1 = round_to(b, prec.digits);
}

Real bessel_k(int nu, const Real& u, Precision prec) {
    if (nu < 0) throw DomainError("bessel_k requires nu >= 0");
    if (!(u > Real::from_long(0, 64))) throw DomainError("bessel_k requires u > 0");

    const int digits = prec.digits + kGuardDigits + nu;
    Real k0(64), k1(64);
    k01_eval(u, digits, k0, k1);
    if (nu == 0) return round_to(k0, prec.digits);
    if (nu == 1) return round_to(k1, prec.digits);

    // upward recurrence K_{n+1} = 2n K_n / u + K_{n-1}; stable, values grow
    mpfr_prec_t work = k0.prec_bits();
    Real x(work);
    mpfr_set(x.raw(), u.raw(), MPFR_RNDN);
    Real prev = k0, cur = k1;
    for (int n = 1; n < nu; ++n) {
        Real next = mul_si(cur, 2 * n) / x + prev;
        prev = cur;
        cur = next;
    }
    return round_to(cur, prec.digits);
}

Real bessel_k_derivative_check(const Real& u, Precision prec) {
    const int wd = 2 * prec.digits + kGuardDigits;
    const mpfr_prec_t work = bits_for_digits(wd);
    Real x(work);
    mpfr_set(x.raw(), u.raw(), MPFR_RNDN);
    Real h = Real::pow10(-(prec.digits / 3), work);

    Precision inner(std::min(wd, Precision::kMaxDigits));
    Real xp = x + h, xm = x - h;
    Real k0p = bessel_k(0, xp, inner), k0m = bessel_k(0, xm, inner);
    Real k1p = bessel_k(1, xp, inner), k1m = bessel_k(1, xm, inner);
    Real k0 = bessel_k(0, x, inner), k1 = bessel_k(1, x, inner);

    Real two_h = mul_si(h, 2);
    Real r1 = abs((k0p - k0m) / two_h + k1);
    Real r2 = abs((xp * k1p - xm * k1m) / two_h + x * k0);
    return round_to(r1 > r2 ? r1 : r2, prec.digits);
}

} // namespace bm
