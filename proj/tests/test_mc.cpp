#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bm/mc.hpp"
#include "bm/zeta_series.hpp"

using namespace bm;

namespace {

double exact_of(const MomentIndex& idx) {
    MomentEngine eng;
    return eng.reduce(idx).second.evaluate(Precision(30)).to_double();
}

double sigmas(const McEstimate& e, double target) {
    return std::abs(e.mean - target) / e.std_error;
}

} // namespace

TEST_CASE("determinism: same seed, same result") {
    McEstimate a = mc_four(MomentIndex(1, 1, 0, 0), 100000, 42);
    McEstimate b = mc_four(MomentIndex(1, 1, 0, 0), 100000, 42);
    CHECK(a.mean == b.mean);
    CHECK(a.std_error == b.std_error);
    McEstimate c = mc_four(MomentIndex(1, 1, 0, 0), 100000, 43);
    CHECK(a.mean != c.mean);
}

TEST_CASE("serial and parallel paths are bit-identical") {
    for (std::uint64_t seed : {1ull, 99ull}) {
        McEstimate s = mc_four(MomentIndex(1, 1, 0, 0), 300000, seed, McMode::serial);
        McEstimate p = mc_four(MomentIndex(1, 1, 0, 0), 300000, seed, McMode::parallel);
        CHECK(s.mean == p.mean);
        CHECK(s.std_error == p.std_error);
    }
    McEstimate s = mc_root(3, 200000, 7, McMode::serial);
    McEstimate p = mc_root(3, 200000, 7, McMode::parallel);
    CHECK(s.mean == p.mean);
    CHECK(s.std_error == p.std_error);
    McEstimate sb = mc_beta_law(1.5, 200000, 7, McMode::serial);
    McEstimate pb = mc_beta_law(1.5, 200000, 7, McMode::parallel);
    CHECK(sb.mean == pb.mean);
    CHECK(sb.std_error == pb.std_error);
}

TEST_CASE("estimates land within 4 sigma of the exact values") {
    struct Case { MomentIndex idx; std::uint64_t seed; };
    const Case cases[] = {
        {MomentIndex(0, 0, 0, 0), 11}, {MomentIndex(1, 1, 0, 0), 12},
        {MomentIndex(1, 1, 1, 1), 13}, {MomentIndex(2, 1, 0, 0), 14},
        {MomentIndex(1, 1, 1, 1, 2), 15}, {MomentIndex(1, 1, 0, 0, 1, 1), 16},
    };
    for (const Case& c : cases) {
        McEstimate e = mc_four(c.idx, 1000000, c.seed);
        CHECK(sigmas(e, exact_of(c.idx)) < 4.0);
        CHECK(e.samples == 1000000);
        CHECK(e.seed == c.seed);
        CHECK(e.std_error > 0.0);
    }
}

TEST_CASE("beta-law sampler reproduces the beta^3 law") {
    // I_1100(beta) = ((1 + z3t)/16) beta^3 on the bounded simplex
    ZetaExpr law = (ZetaExpr(Rational(1)) + ZetaExpr::zeta3_tilde(Rational(1)))
                       .scaled(Rational(1, 16));
    double unit = law.evaluate(Precision(30)).to_double();
    for (double beta : {0.5, 1.0, 2.0}) {
        McEstimate e = mc_beta_law(beta, 1000000, 31);
        CHECK(sigmas(e, unit * beta * beta * beta) < 4.0);
    }
}

TEST_CASE("simplex sampler matches the odd-zeta decomposition") {
    for (int n : {2, 3, 4}) {
        double target = decompose_In(n).evaluate(Precision(30)).to_double();
        McEstimate e = mc_root(n, 1000000, 5);
        CHECK(sigmas(e, target) < 4.0);
    }
}

TEST_CASE("general sampler reduces to the root sampler") {
    // all-zero exponents reproduce mc_root's integrand
    std::vector<int> zeros(6, 0);
    McEstimate g = mc_general(3, zeros, 200000, 9);
    McEstimate r = mc_root(3, 200000, 9);
    CHECK(g.mean == doctest::Approx(r.mean).epsilon(1e-12));
}

TEST_CASE("standard error scales like 1/sqrt(samples)") {
    McEstimate small = mc_four(MomentIndex(1, 1, 0, 0), 100000, 21);
    McEstimate large = mc_four(MomentIndex(1, 1, 0, 0), 10000000, 21);
    double ratio = small.std_error / large.std_error;
    CHECK(ratio > 10.0 / 1.5);
    CHECK(ratio < 10.0 * 1.5);
}

TEST_CASE("coverage across 20 seeds") {
    double target = exact_of(MomentIndex(1, 1, 0, 0));
    int within = 0;
    for (std::uint64_t seed = 100; seed < 120; ++seed) {
        McEstimate e = mc_four(MomentIndex(1, 1, 0, 0), 1000000, seed);
        if (sigmas(e, target) < 4.0) ++within;
    }
    CHECK(within >= 19); // 4 sigma misses are ~1 in 16000
}

TEST_CASE("input validation") {
    CHECK_THROWS_AS(mc_four(MomentIndex(1, 1, 0, 0), 0, 1), DomainError);
    CHECK_THROWS_AS(mc_beta_law(0.0, 1000, 1), DomainError);
    CHECK_THROWS_AS(mc_beta_law(-1.0, 1000, 1), DomainError);
    CHECK_THROWS_AS(mc_root(1, 1000, 1), DomainError);
    CHECK_THROWS_AS(mc_root(33, 1000, 1), DomainError);
    CHECK_THROWS_AS(mc_general(3, {0, 0}, 1000, 1), DomainError); // needs 2n exponents
    CHECK_THROWS_AS(mc_general(3, {0, 0, 0, 0, 0, -1}, 1000, 1), DomainError);
}
