#include "bm/constants.hpp"

#include <map>
#include <mutex>

namespace bm {

Real fundamental_constant(const std::string& name, Precision prec) {
    mpfr_prec_t work = bits_for_digits(prec.digits + kGuardDigits);
    Real t(work);
    if (name == "pi") {
        mpfr_const_pi(t.raw(), MPFR_RNDN);
    } else if (name == "euler_gamma") {
        mpfr_const_euler(t.raw(), MPFR_RNDN);
    } else if (name == "log2") {
        mpfr_const_log2(t.raw(), MPFR_RNDN);
    } else {
        throw DomainError("unknown constant: " + name);
    }
    return round_to(t, prec.digits);
}

std::vector<Rational> bernoulli_numbers(int m) {
    // B_n = -1/(n+1) * sum_{j<n} C(n+1, j) B_j
    std::vector<Rational> b(m + 1);
    b[0] = 1;
    for (int n = 1; n <= m; ++n) {
        Rational acc = 0;
        Integer binom = 1; // C(n+1, 0)
        for (int j = 0; j < n; ++j) {
            acc += Rational(binom) * b[j];
            binom = binom * (n + 1 - j) / (j + 1);
        }
        b[n] = -acc / Rational(n + 1);
    }
    return b;
}

namespace {

// zeta(k) at `digits` working digits: partial sum to N plus Euler-Maclaurin
// correction, terms added until below the target or provably past the
// divergent turn (in which case N is enlarged and the computation retried).
Real zeta_euler_maclaurin(int k, int digits) {
    mpfr_prec_t work = bits_for_digits(digits + 10);
    Real eps = Real::pow10(-(digits + 5), work);

    for (long n_cap = std::max(16, digits / 2 + k); ; n_cap *= 2) {
        const long N = n_cap;
        // sum_{n=1}^{N-1} n^-k
        Real s(work);
        mpfr_set_ui(s.raw(), 0, MPFR_RNDN);
        for (long n = 1; n < N; ++n) {
            Integer nk;
            mpz_ui_pow_ui(nk.get_mpz_t(), static_cast<unsigned long>(n),
                          static_cast<unsigned long>(k));
            s += si_div(1, Real::from_integer(nk, work));
        }
        // N^{1-k}/(k-1) + N^{-k}/2
        Integer Nk;
        mpz_ui_pow_ui(Nk.get_mpz_t(), static_cast<unsigned long>(N),
                      static_cast<unsigned long>(k));
        Real Nmk = si_div(1, Real::from_integer(Nk, work)); // N^-k
        s += div_si(mul_si(Nmk, N), k - 1);
        s += div_si(Nmk, 2);

        // correction terms B_2j/(2j)! * k(k+1)...(k+2j-2) * N^{-k-2j+1}
        std::vector<Rational> bern = bernoulli_numbers(2 * (digits + 10));
        Integer rising = 1; // product_{i=0}^{2j-2} (k+i)
        Integer fact = 1;   // (2j)!
        Real Npow = mul_si(Nmk, N); // N^{-k-2j+1}, starts at N^{1-k}
        Real Ninv2 = si_div(1, Real::from_long(N, work));
        Ninv2 *= Ninv2;
        bool converged = false;
        Real scale = abs(s);
        for (int j = 1; 2 * j < static_cast<int>(bern.size()); ++j) {
            if (j == 1) {
                rising = k;
                fact = 2;
            } else {
                rising *= Integer(k + 2 * j - 3) * Integer(k + 2 * j - 2);
                fact *= Integer(2 * j - 1) * Integer(2 * j);
            }
            Npow *= Ninv2;
            Rational c = Rational(bern[2 * j] * rising) / Rational(fact);
            Real term = Real::from_rational(c, work) * Npow;
            Real mag = abs(term);
            if (mag < eps * scale) {
                s += term;
                converged = true;
                break;
            }
            // Past the smallest term the series diverges; enlarge N.
            if (2 * j + k > 6 * N) break;
            s += term;
        }
        if (converged) return s;
    }
}

std::mutex g_zeta_mutex;
std::map<std::pair<int, int>, Real> g_zeta_cache;

} // namespace

Real zeta_value(int k, Precision prec) {
    if (k < 2) throw DomainError("zeta_value requires k >= 2");
    {
        std::lock_guard<std::mutex> lock(g_zeta_mutex);
        auto it = g_zeta_cache.find({k, prec.digits});
        if (it != g_zeta_cache.end()) return it->second;
    }
    Real v = round_to(zeta_euler_maclaurin(k, prec.digits + kGuardDigits), prec.digits);
    std::lock_guard<std::mutex> lock(g_zeta_mutex);
    return g_zeta_cache.emplace(std::make_pair(k, prec.digits), v).first->second;
}

Real sum_recip_3p1_squared(Precision prec) {
    const int digits = prec.digits + kGuardDigits;
    mpfr_prec_t work = bits_for_digits(digits + 10);
    Real eps = Real::pow10(-(digits + 5), work);
    std::vector<Rational> bern = bernoulli_numbers(2 * digits);
    // f(p) = (3p+1)^-2; f^{(r)}(p) = (-1)^r (r+1)! 3^r (3p+1)^{-2-r}
    for (long P = std::max<long>(64, 4L * digits); ; P *= 2) {
        Real s(work);
        mpfr_set_ui(s.raw(), 0, MPFR_RNDN);
        for (long p = 0; p < P; ++p) {
            Integer d = Integer(3 * p + 1) * Integer(3 * p + 1);
            s += si_div(1, Real::from_integer(d, work));
        }
        const Integer X = 3 * P + 1;
        // integral tail 1/(3(3P+1)), plus f(P)/2
        s += si_div(1, Real::from_integer(3 * X, work));
        s += div_si(si_div(1, Real::from_integer(X * X, work)), 2);
        // - sum_j B_2j/(2j)! f^{(2j-1)}(P)
        Integer fact = 1;       // (2j)!
        Integer three_pow = 1;  // 3^{2j}
        Integer Xpow = X;       // X^{2j+1}
        bool converged = false;
        for (int j = 1; 2 * j < static_cast<int>(bern.size()); ++j) {
            fact *= Integer(2 * j - 1) * Integer(2 * j);
            three_pow *= 9;
            Xpow *= X * X;
            // f^{(2j-1)}(P) = -(2j)! 3^{2j-1} / X^{2j+1}
            Rational fd = -Rational(fact * three_pow) / Rational(3 * Xpow);
            Rational c = -bern[2 * j] / Rational(fact) * fd;
            Real term = Real::from_rational(c, work);
            s += term;
            if (abs(term) < eps * abs(s)) {
                converged = true;
                break;
            }
        }
        if (converged) return round_to(s, prec.digits);
    }
}

} // namespace bm
