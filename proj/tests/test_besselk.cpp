#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bm/besselk.hpp"
#include "bm/quadrature.hpp"

using namespace bm;

namespace {

// Independent oracle: K_nu(u) = int_0^inf exp(-u cosh t) cosh(nu t) dt.
// Shares no code with the series/asymptotic evaluation paths. The e^-u
// front factor is pulled out (cosh t - 1 = 2 sinh^2(t/2)) so the
// quadrature's absolute tolerance applies to an O(1) integrand even for
// large u, where the integral itself is exponentially small.
Real bessel_k_oracle(int nu, const Real& u, Precision prec) {
    Real scaled = integrate_halfline(
        [&, nu](const Real& t, Precision work) {
            (void)work;
            Real sh = sinh(div_si(t, 2));
            Real val = exp(-(mul_si(sh * sh, 2) * u));
            if (nu == 0) return val;
            return val * cosh(mul_si(t, nu));
        },
        prec);
    return scaled * exp(-Real(u));
}

Real ref(const char* s) { return Real::from_string(s, 512); }

Real rel_err(const Real& got, const Real& want) { return abs(got - want) / abs(want); }

} // namespace

TEST_CASE("K0 and K1 against 50-digit references") {
    struct Row { int nu; const char* u; const char* value; };
    const Row rows[] = {
        {0, "0.1", "2.4270690247020166125185060204280618998260116853843"},
        {0, "1", "0.42102443824070833333562737921260903613621974822666"},
        {0, "5", "0.0036910983340425942747352610074569950990019443446957"},
        {0, "20", "5.7412378153365242927167020616229737813642403637973e-10"},
        {0, "100", "4.6566282291759020189390052894838863558075394854421e-45"},
        {1, "0.1", "9.8538447808706061348485465966788171513244876976540"},
        {1, "1", "0.60190723019723457473754000153561733926158688996811"},
        {1, "5", "0.0040446134454521642083650218375406113030197252633155"},
        {1, "20", "5.8830579695570381776502821715428105423322660178347e-10"},
    };
    for (int digits : {30, 50}) {
        Precision p(digits);
        Real tol = Real::pow10(-digits + 1, 64);
        for (const Row& r : rows) {
            Real u = ref(r.u);
            Real got = bessel_k(r.nu, u, p);
            CHECK(rel_err(got, ref(r.value)) < tol);
        }
    }
}

TEST_CASE("higher orders against 50-digit references") {
    Precision p(40);
    Real tol = Real::pow10(-39, 64);
    CHECK(rel_err(bessel_k(5, ref("2"), p),
                  ref("9.4310491005964674428193359504971290171008858798494")) < tol);
    CHECK(rel_err(bessel_k(10, ref("30"), p),
                  ref("1.0842816942222973911037536135816849208795047411934e-13")) < tol);
}

TEST_CASE("series and asymptotic paths agree with the integral oracle") {
    // u values straddling the representation switch at every precision
    Precision p(35);
    Real tol = Real::pow10(-33, 64);
    for (const char* us : {"0.05", "0.7", "3", "12", "40", "80", "200"}) {
        Real u = ref(us);
        for (int nu : {0, 1, 2, 4}) {
            Real got = bessel_k(nu, u, p);
            Real oracle = bessel_k_oracle(nu, u, p);
            CHECK(rel_err(got, oracle) < tol);
        }
    }
}

TEST_CASE("upward recurrence residuals vanish") {
    // K_{n+1} = (2n/u) K_n + K_{n-1} is an identity of the true functions;
    // evaluate each order independently and check the residual.
    Precision p(40);
    Real tol = Real::pow10(-36, 64);
    for (const char* us : {"0.1", "1", "5", "20"}) {
        Real u = ref(us);
        for (int n = 1; n <= 10; ++n) {
            Real kn1 = bessel_k(n + 1, u, p);
            Real kn = bessel_k(n, u, p);
            Real knm1 = bessel_k(n - 1, u, p);
            Real resid = abs(kn1 - (mul_si(kn, 2 * n) / u + knm1)) / kn1;
            CHECK(resid < tol);
        }
    }
}

TEST_CASE("derivative identities") {
    Precision p(30);
    for (const char* us : {"1", "0.01", "20"}) {
        Real check = bessel_k_derivative_check(ref(us), p);
        // central differences at h = 10^(-prec/3) leave O(h^2) error
        CHECK(check < Real::pow10(-p.digits / 3, 64));
    }
}

TEST_CASE("k01 joint evaluation matches single evaluation") {
    Precision p(45);
    for (const char* us : {"0.3", "2", "50"}) {
        Real u = ref(us);
        Real k0(64), k1(64);
        bessel_k01(u, p, k0, k1);
        CHECK(rel_err(k0, bessel_k(0, u, p)) < Real::pow10(-44, 64));
        CHECK(rel_err(k1, bessel_k(1, u, p)) < Real::pow10(-44, 64));
    }
}

TEST_CASE("positivity and monotonicity in u") {
    Precision p(25);
    Real prev0(64), prev1(64);
    bool first = true;
    for (const char* us : {"0.01", "0.1", "0.5", "1", "2", "5", "10", "30"}) {
        Real u = ref(us);
        Real k0 = bessel_k(0, u, p);
        Real k1 = bessel_k(1, u, p);
        CHECK(k0.sign() > 0);
        CHECK(k1.sign() > 0);
        CHECK(k1 > k0); // K1 > K0 for all u > 0
        if (!first) {
            CHECK(k0 < prev0);
            CHECK(k1 < prev1);
        }
        prev0 = k0;
        prev1 = k1;
        first = false;
    }
}

TEST_CASE("u K1(u) -> 1 as u -> 0") {
    Precision p(30);
    Real u = Real::pow10(-20, bits_for_digits(60));
    Real val = u * bessel_k(1, u, p);
    CHECK(abs(val - Real::from_long(1, 64)) < Real::pow10(-18, 64));
}

TEST_CASE("domain guards") {
    Precision p(30);
    CHECK_THROWS_AS(bessel_k(0, Real::from_long(0, 64), p), DomainError);
    CHECK_THROWS_AS(bessel_k(0, Real::from_long(-1, 64), p), DomainError);
    CHECK_THROWS_AS(bessel_k(-1, Real::from_long(1, 64), p), DomainError);
}
