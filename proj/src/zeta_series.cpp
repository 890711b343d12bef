#include "bm/zeta_series.hpp"

#include "bm/constants.hpp"
#include "bm/quadrature.hpp"

namespace bm {

NumeratorPoly::NumeratorPoly(int n) {
    if (n < 2) throw DomainError("NumeratorPoly requires n >= 2");
    coeffs_ = {Rational(1)};
    const int q_max = (n % 2 == 0) ? (n - 2) / 2 : (n - 3) / 2;
    for (int q = 1; q <= q_max; ++q) {
        long root = (n % 2 == 0) ? 2 * q - 1 : 2 * q;
        // multiply by (m^2 - root^2)
        std::vector<Rational> next(coeffs_.size() + 2, Rational(0));
        for (std::size_t j = 0; j < coeffs_.size(); ++j) {
            next[j + 2] += coeffs_[j];
            next[j] -= Rational(root * root) * coeffs_[j];
        }
        coeffs_ = std::move(next);
    }
}

Rational NumeratorPoly::evaluate_at(const Rational& m) const {
    Rational v = 0;
    for (std::size_t j = coeffs_.size(); j-- > 0;) v = v * m + coeffs_[j];
    return v;
}

ZetaExpr decompose_In(int n) {
    if (n < 2) throw DomainError("decompose_In requires n >= 2");
    NumeratorPoly poly(n);
    // prefactor 4 Gamma(n+1) / Gamma(n-1)^2
    Integer g = factorial(n - 2);
    Rational pre = Rational(4 * factorial(n)) / Rational(g * g);

    // I_n = pre * sum_j a_j * sum_m m^{j - e}, summed over odd m (n even,
    // e = n+1) or even m (n odd, e = n). Small excluded m contribute
    // nothing because the polynomial vanishes there.
    const int e = (n % 2 == 0) ? n + 1 : n;
    ZetaExpr total;
    const auto& a = poly.coefficients();
    for (std::size_t j = 0; j < a.size(); ++j) {
        if (a[j] == 0) continue;
        int k = e - static_cast<int>(j);
        if (k < 2)
            throw DomainError("decompose_In produced a divergent zeta exponent");
        Rational weight;
        if (n % 2 == 0) {
            // sum over odd m of m^-k = (1 - 2^-k) zeta(k)
            Integer two_k;
            mpz_ui_pow_ui(two_k.get_mpz_t(), 2, static_cast<unsigned long>(k));
            weight = Rational(two_k - 1) / Rational(two_k);
        } else {
            Integer two_k;
            mpz_ui_pow_ui(two_k.get_mpz_t(), 2, static_cast<unsigned long>(k));
            weight = Rational(1) / Rational(two_k);
        }
        total = total + ZetaExpr::zeta_term(k, a[j] * weight);
    }
    return total.scaled(pre);
}

Real In_numeric(int n, Precision prec, InForm form) {
    if (n < 2) throw DomainError("In_numeric requires n >= 2");
    Rational inv_gamma = Rational(1) / Rational(factorial(n - 2));

    HalfLineFn f;
    Rational scale;
    if (form == InForm::sinh_form) {
        // (2/Gamma(n-1)) int_0^inf y (y/sinh y)^{n-1} dy
        scale = Rational(2) * inv_gamma;
        f = [n](const Real& y, Precision) {
            return y * pow_si(y / sinh(y), n - 1);
        };
    } else {
        // (2^n/Gamma(n-1)) int_0^1 (dy/y)(y/(1-y^2))^{n-1} (log 1/y)^n dy,
        // mapped by y = e^-t onto (0, inf):
        // int_0^inf (e^-t/(1-e^-2t))^{n-1} t^n dt
        Integer two_n;
        mpz_ui_pow_ui(two_n.get_mpz_t(), 2, static_cast<unsigned long>(n));
        scale = Rational(two_n) * inv_gamma;
        f = [n](const Real& t, Precision) {
            // 1 - e^-2t via expm1 to avoid cancellation at small t
            Real et = exp(-t);
            Real denom = -expm1(mul_si(t, -2));
            return pow_si(et / denom, n - 1) * pow_si(t, n);
        };
    }
    Real v = integrate_halfline(f, Precision(std::min(prec.digits + 5, Precision::kMaxDigits)));
    mpfr_prec_t work = bits_for_digits(prec.digits + kGuardDigits);
    return round_to(Real::from_rational(scale, work) * v, prec.digits);
}

Real lambda_sum(int k, LambdaParity parity, Precision prec) {
    if (k < 3 || k % 2 == 0) throw DomainError("lambda_sum requires odd k >= 3");
    mpfr_prec_t work = bits_for_digits(prec.digits + kGuardDigits);
    Precision inner(std::min(prec.digits + kGuardDigits, Precision::kMaxDigits));
    Integer two_k;
    mpz_ui_pow_ui(two_k.get_mpz_t(), 2, static_cast<unsigned long>(k));
    Rational w = (parity == LambdaParity::odd_m)
                     ? Rational(two_k - 1) / Rational(two_k)
                     : Rational(1) / Rational(two_k);
    return round_to(Real::from_rational(w, work) * zeta_value(k, inner), prec.digits);
}

} // namespace bm
