#include "bm/quadrature.hpp"

#include <algorithm>
#include <numeric>

#include "bm/besselk.hpp"
#include "bm/constants.hpp"

namespace bm {

MomentIntegrand::MomentIntegrand(int w, std::vector<int> nu)
    : weight_exponent(w), orders(std::move(nu)) {
    if (w < 0) throw DomainError("moment weight exponent must be >= 0");
    if (orders.size() != 3 && orders.size() != 4 && orders.size() != 6)
        throw DomainError("moment integrand takes 3, 4 or 6 Bessel factors");
    int total = 0;
    for (int v : orders) {
        if (v < 0) throw DomainError("Bessel order must be >= 0");
        total += v;
    }
    if (total > 0 && w < total)
        throw DomainError("divergent moment integrand: need weight >= sum of orders");
}

namespace {

constexpr int kMaxLevels = 12;

// One trapezoid pass over the exp-sinh nodes x = exp((pi/2) sinh(j h)),
// summed outward from j = 0 in a fixed order.
Real level_sum(const HalfLineFn& f, double h, mpfr_prec_t work, Precision fw,
               const Real& pi_half, const Real& trunc_eps) {
    Real sum(work);
    mpfr_set_ui(sum.raw(), 0, MPFR_RNDN);

    for (int dir : {+1, -1}) {
        int consecutive_small = 0;
        const long j_cap = static_cast<long>(16.0 / h) + 32;
        for (long j = (dir > 0 ? 0 : -1); ; j += dir) {
            if (std::labs(j) > j_cap)
                throw ConvergenceError("exp-sinh node budget exhausted; integrand decays too slowly");
            Real t = Real::from_double(j * h, work);
            Real sh = pi_half * sinh(t);
            Real x = exp(sh);
            Real weight = x * pi_half * cosh(t);
            Real term = weight;
            if (!x.is_zero()) term = f(x, fw) * weight;
            else mpfr_set_ui(term.raw(), 0, MPFR_RNDN);
            sum += term;
            if (abs(term) <= trunc_eps * abs(sum)) {
                if (++consecutive_small >= 2) break;
            } else {
                consecutive_small = 0;
            }
        }
    }
    Real h_r = Real::from_double(h, work);
    return sum * h_r;
}

} // namespace

Real integrate_halfline(const HalfLineFn& f, Precision prec) {
    const int wd = prec.digits + 10;
    const mpfr_prec_t work = bits_for_digits(wd);
    const Precision fw(std::min(wd, Precision::kMaxDigits));

    Real pi_half = div_si(fundamental_constant("pi", fw), 2);
    Real trunc_eps = Real::pow10(-(prec.digits + 10), work);
    Real agree_eps = Real::pow10(-(prec.digits + 2), work);
    Real floor_scale = Real::pow10(-10, work);

    Real prev(work);
    bool have_prev = false;
    for (int level = 1; level <= kMaxLevels; ++level) {
        double h = 1.0 / static_cast<double>(1L << level);
        Real cur = level_sum(f, h, work, fw, pi_half, trunc_eps);
        if (have_prev) {
            Real scale = abs(cur);
            if (scale < floor_scale) scale = floor_scale;
            if (abs(cur - prev) < agree_eps * scale)
                return round_to(cur, prec.digits);
        }
        prev = cur;
        have_prev = true;
    }
    throw ConvergenceError("exp-sinh level cap reached without two agreeing levels");
}

Real integrate_moment(const MomentIntegrand& f, Precision prec) {
    const int max_order = *std::max_element(f.orders.begin(), f.orders.end());
    const int w = f.weight_exponent;
    const std::vector<int> orders = f.orders;

    HalfLineFn g = [w, max_order, orders](const Real& u, Precision fw) {
        Real k0(64), k1(64);
        bessel_k01(u, fw, k0, k1);
        std::vector<Real> k{k0, k1};
        for (int n = 1; n < max_order; ++n)
            k.push_back(mul_si(k[n], 2 * n) / u + k[n - 1]);
        Real v = pow_si(u, w);
        for (int nu : orders) v *= k[nu];
        return v;
    };
    return integrate_halfline(g, prec);
}

} // namespace bm
