// bmcli: batch command-line surface for the Bessel-moment engines.
//
// Subcommands: moment, basis, table, series, quad, mc, fit, verify.
// Exit codes: 0 success, 2 domain error, 3 numeric non-convergence.

#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "bm/besselk.hpp"
#include "bm/constants.hpp"
#include "bm/mc.hpp"
#include "bm/moment_engine.hpp"
#include "bm/quadrature.hpp"
#include "bm/relation.hpp"
#include "bm/zeta_expr.hpp"
#include "bm/zeta_series.hpp"

using namespace bm;

namespace {

struct Fmt {
    bool exact = false;
    bool decimal = false;
    bool json = false;
    bool tsv = false;
    bool tilde = false;
    int digits = 30;
};

void add_fmt_flags(CLI::App* cmd, Fmt& fmt) {
    cmd->add_flag("--exact", fmt.exact, "print only the exact form");
    cmd->add_flag("--decimal", fmt.decimal, "print only the decimal value");
    cmd->add_flag("--json", fmt.json, "JSON output");
    cmd->add_flag("--tsv", fmt.tsv, "TSV output");
    cmd->add_flag("--tilde", fmt.tilde, "render zeta(3) terms through z3t = (7/2) zeta(3)");
    cmd->add_option("--digits", fmt.digits, "decimal digits")->check(CLI::Range(10, 1000));
}

int default_digits() {
    if (const char* env = std::getenv("BM_DIGITS")) {
        int d = std::atoi(env);
        if (d >= 10 && d <= 1000) return d;
    }
    return 30;
}

// One value record, schema-stable across commands.
void emit(const std::string& command, const std::optional<ZetaExpr>& exact,
          const std::optional<Real>& decimal, const Fmt& fmt,
          const std::string& extra_json = "") {
    std::string exact_text;
    if (exact) exact_text = fmt.tilde ? exact->format_tilde() : exact->format();
    std::string dec_text;
    if (decimal) dec_text = decimal->to_string(fmt.digits);

    if (fmt.json) {
        std::ostringstream out;
        out << "{\"command\": \"" << command << "\"";
        if (exact) out << ", \"exact\": " << exact->to_json();
        if (decimal) out << ", \"decimal\": \"" << dec_text << "\"";
        out << ", \"digits\": " << fmt.digits;
        if (!extra_json.empty()) out << ", " << extra_json;
        out << "}";
        std::cout << out.str() << "\n";
        return;
    }
    if (fmt.tsv) {
        std::cout << command << "\t" << (exact ? exact_text : "-") << "\t"
                  << (decimal ? dec_text : "-") << "\t" << fmt.digits << "\n";
        return;
    }
    bool want_exact = fmt.exact || !fmt.decimal;
    bool want_decimal = fmt.decimal || !fmt.exact;
    if (exact && want_exact && !(want_decimal && decimal)) {
        std::cout << exact_text << "\n";
    } else if (decimal && want_decimal && !(want_exact && exact)) {
        std::cout << dec_text << "\n";
    } else {
        if (exact) std::cout << "exact   = " << exact_text << "\n";
        if (decimal) std::cout << "decimal = " << dec_text << "\n";
    }
}

Real basis_constant_value(const std::string& name, Precision prec) {
    if (name == "1") return Real::from_long(1, bits_for_digits(prec.digits));
    if (name == "z2z3") {
        Real pi = fundamental_constant("pi", prec);
        return pi * pi / Real::from_long(6, 64) * zeta_value(3, prec);
    }
    if (name.size() >= 2 && name[0] == 'z') {
        int k = std::atoi(name.c_str() + 1);
        if (k >= 2) return zeta_value(k, prec);
    }
    throw DomainError("unknown basis constant: " + name);
}

// ---------------------------------------------------------------------------
// verify: the cross-check matrix
// ---------------------------------------------------------------------------

struct Verifier {
    int failures = 0;

    void check(const std::string& name, bool ok, const std::string& detail = "") {
        std::cout << (ok ? "PASS" : "FAIL") << "  " << name;
        if (!detail.empty()) std::cout << "  [" << detail << "]";
        std::cout << "\n";
        if (!ok) ++failures;
    }
};

// (a + b*z3t)/den, entered in factored form
ZetaExpr tf(const Integer& a, const Integer& b, const Integer& den) {
    ZetaExpr e{Rational(a)};
    e = e + ZetaExpr::zeta3_tilde(Rational(b));
    return e.scaled(Rational(1) / Rational(den));
}

Integer ip(std::initializer_list<long> factors) {
    Integer v = 1;
    for (long f : factors) v *= f;
    return v;
}

Integer p2(int e) { return Integer(1) << e; }

void verify_reference_table(Verifier& v, MomentEngine& eng) {
    struct Row {
        MomentFamily fam;
        int n;
        ZetaExpr expected;
    };
    const std::vector<Row> rows = {
        {MomentFamily::p0000, 0, tf(0, 1, 4)},
        {MomentFamily::i0001, 1, tf(0, 1, 8)},
        {MomentFamily::p0000, 2, tf(-3, 1, 16)},
        {MomentFamily::p0011, 2, tf(1, 1, 16)},
        {MomentFamily::i0001, 3, tf(-3, 1, 16)},
        {MomentFamily::i0111, 3, tf(1, 0, 4)},
        {MomentFamily::p0000, 4, tf(-27, 7, 64)},
        {MomentFamily::p1111, 4, tf(53, -9, 64)},
        {MomentFamily::p0000, 6, tf(-37, 9, 16)},
        {MomentFamily::p1111, 6, tf(3 * 67, -3 * 15, 64)},
        {MomentFamily::p0000, 8, tf(-ip({5, 19, 269}), ip({9, 7, 97}), p2(10))},
        {MomentFamily::p1111, 8, tf(ip({3, 13, 811}), -ip({3, 9, 25, 11}), p2(10))},
        {MomentFamily::p0000, 10, tf(-9304913, ip({9, 125, 11, 179}), 5 * p2(12))},
        {MomentFamily::p1111, 10, tf(ip({81, 3, 11, 4139}), -ip({81, 125, 7, 37}), 5 * p2(12))},
        {MomentFamily::p0000, 12, tf(-ip({81, 7, 19, 23909}), ip({81, 125, 23, 263}), 5 * p2(12))},
        {MomentFamily::p1111, 12, tf(ip({9, 43, 67, 11519}), -ip({9, 9, 125, 49, 11, 13}), 5 * p2(12))},
    };
    for (const auto& row : rows) {
        ZetaExpr got = eng.basis_value({row.fam, row.n});
        v.check(family_name(row.fam) + " n=" + std::to_string(row.n), got == row.expected,
                got.format_tilde());
    }

    struct QRow {
        int k;
        ZetaExpr sum, diff;
    };
    const std::vector<QRow> qrows = {
        {2, tf(13, -1, 3 * p2(8)), tf(5, -1, 3 * p2(5))},
        {3, tf(53, -9, ip({9, 5}) * p2(10)), tf(349, -81, ip({9, 5}) * p2(10))},
        {4, tf(3037, -ip({9, 73}), ip({9, 5, 7}) * p2(16)),
            tf(1787, -ip({9, 47}), ip({9, 5, 7}) * p2(12))},
        {5, tf(ip({439, 2003}), -ip({9, 125, 181}), ip({81, 125, 7}) * p2(19)),
            tf(ip({7, 73, 1993}), -ip({9, 625, 43}), ip({81, 25, 7}) * p2(18))},
        {6, tf(2283583, -ip({9, 125, 479}), ip({27, 125, 7, 11}) * p2(21)),
            tf(ip({127, 1901}), -ip({27, 125, 17}), ip({27, 125, 7, 11}) * p2(14))},
        {7, tf(ip({53, 1708543}), -ip({3, 125, 343, 167}), ip({9, 125, 343, 11, 13}) * p2(21)),
            tf(ip({13, 61485173}), -ip({3, 125, 2401, 211}), ip({9, 125, 49, 11, 13}) * p2(23))},
    };
    for (const auto& row : qrows) {
        auto q = eng.q_values(row.k);
        v.check("q_" + std::to_string(row.k) + " sum", q.sum == row.sum, q.sum.format_tilde());
        v.check("q_" + std::to_string(row.k) + " diff", q.diff == row.diff, q.diff.format_tilde());
    }
}

void verify_fast(Verifier& v, MomentEngine& eng, int digits) {
    verify_reference_table(v, eng);

    // base values re-certified against quadrature at every verify run
    Precision prec(digits);
    Real tol = Real::pow10(-(digits - 5), 64);
    const std::vector<std::pair<MomentFamily, int>> bases = {
        {MomentFamily::p0000, 0}, {MomentFamily::i0001, 1}, {MomentFamily::p0000, 2},
        {MomentFamily::p0011, 2}, {MomentFamily::i0001, 3}, {MomentFamily::i0111, 3},
        {MomentFamily::p0000, 4}, {MomentFamily::p1111, 4},
    };
    for (auto [fam, n] : bases) {
        BasisMoment b(fam, n);
        Real quad = integrate_moment(MomentIntegrand(b.weight_exponent(), b.orders()), prec);
        Real exact = eng.basis_value(b).evaluate(prec);
        v.check("quadrature " + family_name(fam) + " n=" + std::to_string(n),
                abs(quad - exact) < tol);
    }

    // IBP dual routes
    bool ibp_ok = true;
    for (int n = 0; n <= 41; ++n) {
        for (MomentFamily f : {MomentFamily::p0000, MomentFamily::p0011, MomentFamily::p1111,
                               MomentFamily::i0001, MomentFamily::i0111}) {
            try {
                BasisMoment b(f, n);
                if (!(eng.basis_value(b) == eng.basis_value_alt(b))) ibp_ok = false;
            } catch (const DomainError&) {
                // divergent (family, n) combinations are skipped
            }
        }
    }
    v.check("IBP relations (both routes, n <= 41)", ibp_ok);

    auto [hi, lo] = limit_matrix_eigenvalues();
    v.check("limit-matrix eigenvalues 1/4, 1/16",
            hi == Rational(1, 4) && lo == Rational(1, 16));

    // 2n-variable family examples and the cross-module identity
    v.check("I_2 = 7 zeta(3)", decompose_In(2) == ZetaExpr::zeta_term(3, Rational(7)));
    v.check("I_2 equals reduce(0,0,0,0)",
            decompose_In(2) == eng.reduce(MomentIndex(0, 0, 0, 0)).second);
    v.check("I_5 = (5/3)(z3 - z5)",
            decompose_In(5) == ZetaExpr::zeta_term(3, Rational(5, 3)) +
                                   ZetaExpr::zeta_term(5, Rational(-5, 3)));
    v.check("resbis reduce(1,1,0,0) = (1 + z3t)/8",
            eng.reduce(MomentIndex(1, 1, 0, 0)).second == tf(1, 1, 8));
}

void verify_full(Verifier& v, MomentEngine& eng, int digits) {
    // footnote-3 identity at 40 digits
    {
        Precision p40(std::max(digits, 40));
        Real lhs = integrate_moment(MomentIntegrand(1, {0, 0, 0}), p40);
        Real pi = fundamental_constant("pi", p40);
        Real zeta2 = pi * pi / Real::from_long(6, 64);
        Real rhs = div_si(mul_si(sum_recip_3p1_squared(p40), 3), 2) -
                   div_si(mul_si(zeta2, 2), 3);
        Real resid = abs(lhs - rhs);
        v.check("uK0^3 identity residual < 1e-35", resid < Real::pow10(-35, 64),
                resid.to_string(3));
    }

    // reduce-vs-quadrature, all m=1 indices with exponent sum <= 8
    {
        Precision p40(40);
        Real tol = Real::pow10(-25, 64);
        int cases = 0;
        bool all_ok = true;
        for (int a = 0; a <= 8; ++a)
            for (int b = a; a + b <= 8; ++b)
                for (int c = b; a + b + c <= 8; ++c)
                    for (int d = c; a + b + c + d <= 8; ++d) {
                        MomentIndex idx(a, b, c, d);
                        Real exact = eng.reduce(idx).second.evaluate(p40);
                        int sum = a + b + c + d;
                        MomentIntegrand mi(sum + 1, {a, b, c, d});
                        Real quad = div_si(mul_si(integrate_moment(mi, p40), 8), 1L << sum);
                        if (!(abs(exact - quad) < tol)) all_ok = false;
                        ++cases;
                    }
        v.check("reduce vs quadrature (sorted indices, sum <= 8)", all_ok,
                std::to_string(cases) + " cases");
    }

    // MC against exact closed forms
    {
        Precision p30(30);
        const std::vector<MomentIndex> cases = {
            MomentIndex(0, 0, 0, 0), MomentIndex(1, 1, 0, 0), MomentIndex(2, 0, 0, 0),
            MomentIndex(1, 1, 1, 1), MomentIndex(1, 1, 0, 0, 1, 1)};
        for (const auto& idx : cases) {
            McEstimate est = mc_four(idx, 1000000, 20260823);
            double target = eng.reduce(idx).second.evaluate(p30).to_double();
            double sig = std::abs(est.mean - target) / est.std_error;
            std::ostringstream name;
            name << "mc_four (" << idx.na << idx.nb << idx.nc << idx.nd << "; m=" << idx.m
                 << "; s=" << idx.s_order << ") within 4 sigma";
            v.check(name.str(), sig < 4.0, "sigmas=" + std::to_string(sig));
        }
    }

    // K0^6 non-relation with positive controls
    {
        Precision p60(60);
        Real k06 = mul_si(integrate_moment(MomentIntegrand(1, {0, 0, 0, 0, 0, 0}), p60), 32);
        std::vector<Real> basis;
        for (const char* n : {"1", "z3", "z5", "z2z3"})
            basis.push_back(basis_constant_value(n, p60));
        Integer height = ip({1000, 1000});
        auto rr = detect_relation(k06, basis, height, p60);
        v.check("K0^6 relation search: found=false", !rr.found,
                "best residual " + rr.residual.to_string(3));

        auto pos1 = detect_relation(eng.basis_value({MomentFamily::p0000, 2}).evaluate(p60),
                                    basis, height, p60);
        auto pos2 = detect_relation(decompose_In(5).evaluate(p60), basis, height, p60);
        v.check("positive control p2(0000) recovered",
                pos1.found && pos1.coefficients[0] == Rational(-3, 16) &&
                    pos1.coefficients[1] == Rational(7, 32));
        v.check("positive control I_5 recovered",
                pos2.found && pos2.coefficients[1] == Rational(5, 3) &&
                    pos2.coefficients[2] == Rational(-5, 3));
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact and high-precision engine for four-Macdonald-function moment integrals"};
    app.require_subcommand(1);

    Fmt fmt;
    fmt.digits = default_digits();

    // moment
    auto* cmd_moment = app.add_subcommand("moment", "reduce I^{mn}_{na nb nc nd} to closed form");
    std::vector<int> orders;
    int m_power = 1, s_weight = 0;
    cmd_moment->add_option("--orders", orders, "na,nb,nc,nd")->delimiter(',')->expected(4)->required();
    cmd_moment->add_option("--m", m_power, "denominator power (>= 1)");
    cmd_moment->add_option("--sweight", s_weight, "(a+b+c+d)^N weight order");
    add_fmt_flags(cmd_moment, fmt);

    // basis
    auto* cmd_basis = app.add_subcommand("basis", "closed form of a basis moment p_n/i_n");
    std::string family;
    int basis_n = 0;
    cmd_basis->add_option("--family", family, "p0000|p0011|p1111|i0001|i0111")->required();
    cmd_basis->add_option("--n", basis_n, "weight index n")->required();
    add_fmt_flags(cmd_basis, fmt);

    // table
    auto* cmd_table = app.add_subcommand("table", "q_k/j_k values, denominators and ratios");
    int kmax = 7;
    cmd_table->add_option("--kmax", kmax, "largest k");
    add_fmt_flags(cmd_table, fmt);

    // series
    auto* cmd_series = app.add_subcommand("series", "odd-zeta decomposition of I_n");
    int series_n = 2;
    std::string form = "sinh";
    cmd_series->add_option("--n", series_n, "number of variable pairs")->required();
    cmd_series->add_option("--form", form, "log|sinh (numeric cross-check form)");
    add_fmt_flags(cmd_series, fmt);

    // quad
    auto* cmd_quad = app.add_subcommand("quad", "integrate u^w * prod K_nu(u) over (0,inf)");
    std::vector<int> quad_orders;
    int quad_w = 1;
    cmd_quad->add_option("--orders", quad_orders, "Bessel orders (3, 4 or 6 of them)")
        ->delimiter(',')->required();
    cmd_quad->add_option("--w", quad_w, "weight exponent w");
    add_fmt_flags(cmd_quad, fmt);

    // mc
    auto* cmd_mc = app.add_subcommand("mc", "Monte Carlo simplex oracle");
    std::string mc_mode = "four";
    std::vector<int> mc_orders{0, 0, 0, 0};
    std::vector<int> mc_exponents;
    int mc_m = 1, mc_s = 0, mc_n = 2;
    double beta = 1.0;
    std::uint64_t samples = 1000000, seed = 1;
    bool serial = false;
    cmd_mc->add_option("--mode", mc_mode, "four|beta|root|general");
    cmd_mc->add_option("--orders", mc_orders, "na,nb,nc,nd (mode four)")->delimiter(',');
    cmd_mc->add_option("--m", mc_m, "denominator power (mode four)");
    cmd_mc->add_option("--sweight", mc_s, "(a+b+c+d)^N weight (mode four)");
    cmd_mc->add_option("--beta", beta, "simplex size (mode beta)");
    cmd_mc->add_option("--n", mc_n, "variable pairs (modes root/general)");
    cmd_mc->add_option("--exponents", mc_exponents, "monomial exponents (mode general)")->delimiter(',');
    cmd_mc->add_option("--samples", samples, "sample count");
    cmd_mc->add_option("--seed", seed, "RNG seed");
    cmd_mc->add_flag("--serial", serial, "use the serial reference path");
    add_fmt_flags(cmd_mc, fmt);

    // fit
    auto* cmd_fit = app.add_subcommand("fit", "integer-relation detection against a constant basis");
    std::string fit_value;
    std::vector<std::string> fit_basis{"1", "z3"};
    long max_den = 10000;
    cmd_fit->add_option("--value", fit_value, "decimal value to fit")->required();
    cmd_fit->add_option("--basis", fit_basis, "constants, e.g. 1,z3,z5,z2z3")->delimiter(',');
    cmd_fit->add_option("--max-den", max_den, "coefficient height bound");
    add_fmt_flags(cmd_fit, fmt);

    // verify
    auto* cmd_verify = app.add_subcommand("verify", "run the cross-check matrix");
    std::string level = "fast";
    cmd_verify->add_option("--level", level, "fast|full");
    add_fmt_flags(cmd_verify, fmt);

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_moment->parsed()) {
            MomentEngine eng;
            MomentIndex idx(orders[0], orders[1], orders[2], orders[3], m_power, s_weight);
            ZetaExpr val = eng.reduce(idx).second;
            emit("moment", val, val.evaluate(Precision(fmt.digits)), fmt);
        } else if (cmd_basis->parsed()) {
            MomentEngine eng;
            ZetaExpr val = eng.basis_value({family_from_name(family), basis_n});
            emit("basis", val, val.evaluate(Precision(fmt.digits)), fmt);
        } else if (cmd_table->parsed()) {
            MomentEngine eng;
            auto rows = eng.denominator_report(kmax);
            std::cout << "k\tq_sum\tq_diff\tden_sum\tden_diff\t16*ratio_sum\t16*ratio_diff\n";
            for (const auto& r : rows) {
                auto q = eng.q_values(r.k);
                std::cout << r.k << "\t" << (fmt.tilde ? q.sum.format_tilde() : q.sum.format())
                          << "\t" << (fmt.tilde ? q.diff.format_tilde() : q.diff.format())
                          << "\t" << r.den_sum.get_str() << "\t" << r.den_diff.get_str() << "\t"
                          << 16.0 * r.ratio_sum << "\t" << 16.0 * r.ratio_diff << "\n";
            }
        } else if (cmd_series->parsed()) {
            ZetaExpr val = decompose_In(series_n);
            std::optional<Real> dec;
            if (fmt.decimal || fmt.json || fmt.tsv || !fmt.exact)
                dec = In_numeric(series_n, Precision(fmt.digits),
                                 form == "log" ? InForm::log_form : InForm::sinh_form);
            emit("series", val, dec, fmt);
        } else if (cmd_quad->parsed()) {
            Real val = integrate_moment(MomentIntegrand(quad_w, quad_orders), Precision(fmt.digits));
            emit("quad", std::nullopt, val, fmt);
        } else if (cmd_mc->parsed()) {
            McMode mode = serial ? McMode::serial : McMode::parallel;
            McEstimate est;
            std::optional<double> target;
            MomentEngine eng;
            if (mc_mode == "four") {
                MomentIndex idx(mc_orders[0], mc_orders[1], mc_orders[2], mc_orders[3], mc_m, mc_s);
                est = mc_four(idx, samples, seed, mode);
                target = eng.reduce(idx).second.evaluate(Precision(30)).to_double();
            } else if (mc_mode == "beta") {
                est = mc_beta_law(beta, samples, seed, mode);
                target = tf(1, 1, 16).evaluate(Precision(30)).to_double() * beta * beta * beta;
            } else if (mc_mode == "root") {
                est = mc_root(mc_n, samples, seed, mode);
                target = decompose_In(mc_n).evaluate(Precision(30)).to_double();
            } else if (mc_mode == "general") {
                est = mc_general(mc_n, mc_exponents, samples, seed, mode);
            } else {
                throw DomainError("unknown mc mode: " + mc_mode);
            }
            std::ostringstream out;
            out << std::setprecision(17);
            out << "{\"mean\": " << est.mean << ", \"stderr\": " << est.std_error
                << ", \"samples\": " << est.samples << ", \"seed\": " << est.seed;
            if (target) {
                out << ", \"target\": " << *target
                    << ", \"sigmas\": " << std::abs(est.mean - *target) / est.std_error;
            }
            out << "}";
            std::cout << out.str() << "\n";
        } else if (cmd_fit->parsed()) {
            Precision prec(fmt.digits);
            Real value = Real::from_string(fit_value, bits_for_digits(prec.digits + kGuardDigits));
            std::vector<Real> basis;
            for (const auto& name : fit_basis) basis.push_back(basis_constant_value(name, prec));
            auto rr = detect_relation(value, basis, Integer(max_den), prec);
            std::ostringstream out;
            out << "{\"found\": " << (rr.found ? "true" : "false") << ", \"coefficients\": [";
            for (std::size_t i = 0; i < rr.coefficients.size(); ++i) {
                if (i) out << ", ";
                out << "\"" << rr.coefficients[i].get_str() << "\"";
            }
            out << "], \"residual\": \"" << rr.residual.to_string(5) << "\"}";
            std::cout << out.str() << "\n";
        } else if (cmd_verify->parsed()) {
            MomentEngine eng;
            Verifier v;
            verify_fast(v, eng, fmt.digits);
            if (level == "full") verify_full(v, eng, fmt.digits);
            std::cout << (v.failures == 0 ? "ALL CHECKS PASSED" : "FAILURES: " +
                          std::to_string(v.failures)) << "\n";
            return v.failures == 0 ? 0 : 1;
        }
    } catch (const ConvergenceError& e) {
        std::cerr << "error: convergence: " << e.what() << "\n";
        return 3;
    } catch (const DomainError& e) {
        std::cerr << "error: domain: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
