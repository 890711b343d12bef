#include "bm/relation.hpp"

#include <cmath>

namespace bm {

namespace {

using Vec = std::vector<Integer>;

Integer round_nearest(const Rational& q) {
    // floor(q + 1/2)
    Rational t = q + Rational(1, 2);
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), t.get_num().get_mpz_t(), t.get_den().get_mpz_t());
    return r;
}

Rational dot(const Vec& a, const std::vector<Rational>& b) {
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += Rational(a[i]) * b[i];
    return s;
}

// Exact-arithmetic LLL, delta = 99/100. Dimensions here are tiny (<= 7),
// so Gram-Schmidt data is simply recomputed after every swap.
void lll_reduce(std::vector<Vec>& b) {
    const std::size_t n = b.size();
    const std::size_t dim = b[0].size();
    const Rational delta(99, 100);

    std::vector<std::vector<Rational>> gs(n, std::vector<Rational>(dim));
    std::vector<std::vector<Rational>> mu(n, std::vector<Rational>(n));
    std::vector<Rational> norm2(n);

    auto gram_schmidt = [&]() {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t d = 0; d < dim; ++d) gs[i][d] = Rational(b[i][d]);
            for (std::size_t j = 0; j < i; ++j) {
                mu[i][j] = norm2[j] == 0 ? Rational(0) : dot(b[i], gs[j]) / norm2[j];
                for (std::size_t d = 0; d < dim; ++d) gs[i][d] -= mu[i][j] * gs[j][d];
            }
            norm2[i] = 0;
            for (std::size_t d = 0; d < dim; ++d) norm2[i] += gs[i][d] * gs[i][d];
        }
    };

    gram_schmidt();
    std::size_t k = 1;
    while (k < n) {
        for (std::size_t j = k; j-- > 0;) {
            if (abs(mu[k][j]) > Rational(1, 2)) {
                Integer r = round_nearest(mu[k][j]);
                for (std::size_t d = 0; d < dim; ++d) b[k][d] -= r * b[j][d];
                gram_schmidt();
            }
        }
        if (norm2[k] >= (delta - mu[k][k - 1] * mu[k][k - 1]) * norm2[k - 1]) {
            ++k;
        } else {
            std::swap(b[k], b[k - 1]);
            gram_schmidt();
            k = k > 1 ? k - 1 : 1;
        }
    }
}

} // namespace

RelationResult detect_relation(const Real& value, const std::vector<Real>& basis,
                               const Integer& height_bound, Precision prec) {
    if (basis.empty()) throw DomainError("detect_relation requires a nonempty basis");
    if (height_bound < 1) throw DomainError("height bound must be >= 1");

    const std::size_t m = basis.size() + 1;
    const double log_h = std::log10(height_bound.get_d());
    if (prec.digits - 8 < (static_cast<double>(m) + 1.0) * log_h + 10.0)
        throw DomainError("precision too low relative to height bound; relation search undecidable");

    const mpfr_prec_t work = bits_for_digits(prec.digits + kGuardDigits);
    std::vector<Real> xs;
    xs.reserve(m);
    {
        Real v(work);
        mpfr_set(v.raw(), value.raw(), MPFR_RNDN);
        xs.push_back(v);
    }
    for (const Real& b : basis) {
        Real v(work);
        mpfr_set(v.raw(), b.raw(), MPFR_RNDN);
        xs.push_back(v);
    }

    // lattice rows [I | round(10^(prec-8) * x_i)]
    Real scale = Real::pow10(prec.digits - 8, work);
    std::vector<Vec> rows(m, Vec(m + 1, Integer(0)));
    for (std::size_t i = 0; i < m; ++i) {
        rows[i][i] = 1;
        rows[i][m] = (scale * xs[i]).round_to_integer();
    }
    lll_reduce(rows);

    Real threshold = Real::pow10(-prec.digits / 2, work);
    RelationResult best;
    best.residual = Real::from_long(1, work);
    bool have_candidate = false;

    for (const Vec& v : rows) {
        const Integer& c0 = v[0];
        if (c0 == 0) continue;
        Real combo(work);
        mpfr_set_ui(combo.raw(), 0, MPFR_RNDN);
        for (std::size_t i = 0; i < m; ++i)
            combo += Real::from_integer(v[i], work) * xs[i];
        Real resid = abs(combo) / abs(Real::from_integer(c0, work));

        std::vector<Rational> coeffs;
        bool heights_ok = true;
        for (std::size_t i = 1; i < m; ++i) {
            Integer num = -v[i];
            Rational c(num, c0);
            c.canonicalize();
            if (rational_height(c) > height_bound) heights_ok = false;
            coeffs.push_back(c);
        }
        if (!have_candidate || resid < best.residual) {
            best.residual = resid;
            best.coefficients = coeffs;
            best.found = heights_ok && resid < threshold;
            have_candidate = true;
        }
    }
    best.residual = round_to(best.residual, prec.digits);
    return best;
}

} // namespace bm
