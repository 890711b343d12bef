#include "bm/moment_engine.hpp"

#include <array>

namespace bm {

std::string family_name(MomentFamily f) {
    switch (f) {
        case MomentFamily::p0000: return "p0000";
        case MomentFamily::p0011: return "p0011";
        case MomentFamily::p1111: return "p1111";
        case MomentFamily::i0001: return "i0001";
        case MomentFamily::i0111: return "i0111";
    }
    throw DomainError("unreachable family");
}

MomentFamily family_from_name(const std::string& s) {
    if (s == "p0000") return MomentFamily::p0000;
    if (s == "p0011") return MomentFamily::p0011;
    if (s == "p1111") return MomentFamily::p1111;
    if (s == "i0001") return MomentFamily::i0001;
    if (s == "i0111") return MomentFamily::i0111;
    throw DomainError("unknown moment family: " + s);
}

namespace {

struct FamilySpec {
    int parity;  // n mod 2
    int min_n;
    std::array<int, 4> orders;
};

FamilySpec family_spec(MomentFamily f) {
    switch (f) {
        case MomentFamily::p0000: return {0, 0, {0, 0, 0, 0}};
        case MomentFamily::p0011: return {0, 2, {0, 0, 1, 1}};
        case MomentFamily::p1111: return {0, 4, {1, 1, 1, 1}};
        case MomentFamily::i0001: return {1, 1, {0, 0, 0, 1}};
        case MomentFamily::i0111: return {1, 3, {0, 1, 1, 1}};
    }
    throw DomainError("unreachable family");
}

ZetaExpr tilde_form(long a, long b, const Rational& den) {
    // (a + b*zt3) / den
    ZetaExpr e{Rational(a)};
    e = e + ZetaExpr::zeta3_tilde(Rational(b));
    return e.scaled(Rational(1) / den);
}

} // namespace

BasisMoment::BasisMoment(MomentFamily f, int n_) : family(f), n(n_) {
    FamilySpec spec = family_spec(f);
    if (n < spec.min_n || n % 2 != spec.parity)
        throw DomainError("divergent: " + family_name(f) + " requires " +
                          (spec.parity == 0 ? "even" : "odd") + " n>=" +
                          std::to_string(spec.min_n) + ", got n=" + std::to_string(n));
}

std::vector<int> BasisMoment::orders() const {
    auto o = family_spec(family).orders;
    return {o.begin(), o.end()};
}

MomentIndex::MomentIndex(int a, int b, int c, int d, int m_, int s)
    : na(a), nb(b), nc(c), nd(d), m(m_), s_order(s) {
    if (m < 1) throw DomainError("denominator power m must be >= 1");
    if (s < 0) throw DomainError("s-derivative order must be >= 0");
    for (int v : {na, nb, nc, nd})
        if (v < m - 1)
            throw DomainError("moment index requires all exponents >= m-1");
}

std::vector<ExpandTerm> expand_order(int n) {
    if (n < 0) throw DomainError("expand_order requires n >= 0");
    // E_n = (u^n/2^n) K_n; E_n = (n-1) E_{n-1} + (u^2/4) E_{n-2}
    std::vector<ExpandTerm> prev{{Rational(1), 0, 0}};           // E_0 = K0
    if (n == 0) return prev;
    std::vector<ExpandTerm> cur{{Rational(1, 2), 1, 1}};         // E_1 = (u/2) K1
    for (int k = 2; k <= n; ++k) {
        std::map<std::pair<int, int>, Rational> acc; // (power, base) -> coeff
        for (const auto& t : cur) acc[{t.u_power, t.base}] += Rational(k - 1) * t.coeff;
        for (const auto& t : prev) acc[{t.u_power + 2, t.base}] += t.coeff / 4;
        prev = std::move(cur);
        cur.clear();
        for (const auto& [key, c] : acc)
            if (c != 0) cur.push_back({c, key.first, key.second});
    }
    return cur;
}

std::pair<ZetaExpr, ZetaExpr> MomentEngine::p_pair(int n) {
    if (n < 4 || n % 2 != 0) throw DomainError("p_pair requires even n >= 4");
    auto it = p_cache_.find(n);
    if (it != p_cache_.end()) return it->second;

    std::pair<ZetaExpr, ZetaExpr> v;
    if (n == 4) {
        v = {tilde_form(-27, 7, 64), tilde_form(53, -9, 64)};
    } else {
        auto [p0, p1] = p_pair(n - 2);
        const long q = n - 2;
        Rational pre(1, 32 * (q + 2));
        Rational a11((q + 2) * (q + 2) * (5 * q + 4));
        Rational a12(-3 * q * q * (q - 2));
        Rational a21(-3 * (q + 2) * (q + 2) * (q + 4));
        Rational a22(q * (q - 2) * (5 * q + 16));
        v = {(p0.scaled(a11) + p1.scaled(a12)).scaled(pre),
             (p0.scaled(a21) + p1.scaled(a22)).scaled(pre)};
    }
    p_cache_[n] = v;
    return v;
}

ZetaExpr MomentEngine::basis_value(const BasisMoment& b) {
    switch (b.family) {
        case MomentFamily::p0000:
            if (b.n == 0) return ZetaExpr::zeta3_tilde(Rational(1, 4));
            if (b.n == 2) return tilde_form(-3, 1, 16);
            return p_pair(b.n).first;
        case MomentFamily::p1111:
            return p_pair(b.n).second;
        case MomentFamily::i0001:
            // p_{n-1}(0000) = 4 i_n(0001) / (n+1)
            return basis_value({MomentFamily::p0000, b.n - 1}).scaled(make_rational(b.n + 1, 4));
        case MomentFamily::i0111:
            if (b.n == 3) return ZetaExpr(Rational(1, 4));
            // p_{n-1}(1111) = 4 i_n(0111) / (n-3)
            return basis_value({MomentFamily::p1111, b.n - 1}).scaled(make_rational(b.n - 3, 4));
        case MomentFamily::p0011: {
            // p_n(0011) = (2/n)(i_{n+1}(0001) + i_{n+1}(0111))
            ZetaExpr s = basis_value({MomentFamily::i0001, b.n + 1}) +
                         basis_value({MomentFamily::i0111, b.n + 1});
            return s.scaled(make_rational(2, b.n));
        }
    }
    throw DomainError("unreachable family");
}

ZetaExpr MomentEngine::basis_value_alt(const BasisMoment& b) {
    switch (b.family) {
        case MomentFamily::i0001: {
            ZetaExpr s = basis_value({MomentFamily::p0000, b.n + 1}) +
                         basis_value({MomentFamily::p0011, b.n + 1}).scaled(Rational(3));
            return s.scaled(Rational(1, b.n + 1));
        }
        case MomentFamily::i0111: {
            ZetaExpr s = basis_value({MomentFamily::p1111, b.n + 1}) +
                         basis_value({MomentFamily::p0011, b.n + 1}).scaled(Rational(3));
            return s.scaled(Rational(1, b.n - 1));
        }
        case MomentFamily::p0000:
            return basis_value({MomentFamily::i0001, b.n + 1}).scaled(Rational(4, b.n + 2));
        case MomentFamily::p1111:
            return basis_value({MomentFamily::i0111, b.n + 1}).scaled(Rational(4, b.n - 2));
        case MomentFamily::p0011: {
            if (b.n == 2) return basis_value(b); // the 2n p(0011) identity needs n >= 4
            ZetaExpr s = basis_value({MomentFamily::p0000, b.n}).scaled(Rational(b.n + 2)) +
                         basis_value({MomentFamily::p1111, b.n}).scaled(Rational(b.n - 2));
            return s.scaled(Rational(1, 2 * b.n));
        }
    }
    throw DomainError("unreachable family");
}

std::pair<Reduction, ZetaExpr> MomentEngine::reduce(const MomentIndex& idx) {
    static const MomentFamily by_k1_count[5] = {
        MomentFamily::p0000, MomentFamily::i0001, MomentFamily::p0011,
        MomentFamily::i0111, MomentFamily::p1111};

    const int shift = idx.m - 1;
    std::array<std::vector<ExpandTerm>, 4> expansions = {
        expand_order(idx.na - shift), expand_order(idx.nb - shift),
        expand_order(idx.nc - shift), expand_order(idx.nd - shift)};

    // cartesian product; collect by (#K1 factors, total u power)
    std::map<std::pair<int, int>, Rational> acc;
    for (const auto& ta : expansions[0])
        for (const auto& tb : expansions[1])
            for (const auto& tc : expansions[2])
                for (const auto& td : expansions[3]) {
                    int r = ta.base + tb.base + tc.base + td.base;
                    int p = ta.u_power + tb.u_power + tc.u_power + td.u_power;
                    acc[{r, p}] += ta.coeff * tb.coeff * tc.coeff * td.coeff;
                }

    // prefactor: 2^(5-2m)/Gamma(m) times the scaling-law factor
    // prod_{j=0}^{s-1} (sum n_i + 4 - 3m + j) from I^m(s) = s^(3m-sum-4) I^m(1)
    Rational prefactor = Rational(Integer(1) << 5) /
                         (Rational(Integer(1) << (2 * idx.m)) * Rational(factorial(idx.m - 1)));
    for (int j = 0; j < idx.s_order; ++j)
        prefactor *= Rational(idx.exponent_sum() + 4 - 3 * idx.m + j);

    Reduction red;
    red.prefactor = prefactor;
    ZetaExpr total;
    // the u du/2 measure and the t^(m-1) Laplace weight add 2(m-1)+1 to the
    // u power; the +1 is the basis convention (p_n carries u^(n+1))
    const int extra = 2 * (idx.m - 1);
    for (const auto& [key, c] : acc) {
        if (c == 0) continue;
        auto [r, p0] = key;
        int p = p0 + extra;
        try {
            BasisMoment basis(by_k1_count[r], p);
            red.terms.emplace_back(c, basis);
            total = total + basis_value(basis).scaled(c);
        } catch (const DomainError& e) {
            throw DomainError("reduce generated a divergent basis term (" +
                              family_name(by_k1_count[r]) + ", n=" + std::to_string(p) +
                              "): " + e.what());
        }
    }
    return {std::move(red), total.scaled(prefactor)};
}

MomentEngine::QValues MomentEngine::q_values(int k) {
    if (k < 2) throw DomainError("q_values requires k >= 2");
    Rational inv_fact = Rational(1) / Rational(factorial(2 * k));
    QValues q;
    q.q0 = basis_value({MomentFamily::p0000, 2 * k}).scaled(inv_fact);
    q.q1 = basis_value({MomentFamily::p1111, 2 * k}).scaled(inv_fact);
    q.sum = q.q1 + q.q0;
    q.diff = q.q1 - q.q0;
    return q;
}

MomentEngine::JValues MomentEngine::j_values(int k) {
    if (k < 2) throw DomainError("j_values requires k >= 2");
    QValues q = q_values(k);
    JValues j;
    j.j0001 = q.q0.scaled(make_rational(k + 1, 2 * (2 * k + 1)));
    j.j0111 = q.q1.scaled(make_rational(k - 1, 2 * (2 * k + 1)));
    j.q01 = q.sum - q.diff.scaled(Rational(1, k));
    return j;
}

namespace {

// common denominator of u + v*zt3 in the tilde presentation
Integer tilde_denominator(const ZetaExpr& e) {
    Rational u = e.rational_part();
    Rational v = e.zeta_coeff(3) * Rational(2, 7);
    Integer du = u.get_den(), dv = v.get_den();
    Integer l;
    mpz_lcm(l.get_mpz_t(), du.get_mpz_t(), dv.get_mpz_t());
    return l;
}

} // namespace

std::vector<MomentEngine::DenominatorRow> MomentEngine::denominator_report(int k_max) {
    if (k_max < 2) throw DomainError("denominator_report requires k_max >= 2");
    Precision eval_prec(60);
    std::vector<DenominatorRow> rows;
    QValues cur = q_values(2);
    for (int k = 2; k <= k_max; ++k) {
        QValues next = q_values(k + 1);
        DenominatorRow row;
        row.k = k;
        row.den_sum = tilde_denominator(cur.sum);
        row.den_diff = tilde_denominator(cur.diff);
        row.ratio_sum = (next.sum.evaluate(eval_prec) / cur.sum.evaluate(eval_prec)).to_double();
        row.ratio_diff = (next.diff.evaluate(eval_prec) / cur.diff.evaluate(eval_prec)).to_double();
        rows.push_back(row);
        cur = next;
    }
    return rows;
}

std::pair<Rational, Rational> limit_matrix_eigenvalues() {
    // char poly of [[5/32, -3/32], [-3/32, 5/32]]
    Rational tr(10, 32), det(16, 1024);
    Rational disc = tr * tr - Rational(4) * det;
    Integer num = disc.get_num(), den = disc.get_den();
    Integer sn, sd;
    if (mpz_perfect_square_p(num.get_mpz_t()) == 0 || mpz_perfect_square_p(den.get_mpz_t()) == 0)
        throw DomainError("limit-matrix discriminant is not a rational square");
    mpz_sqrt(sn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(sd.get_mpz_t(), den.get_mpz_t());
    Rational root(sn, sd);
    root.canonicalize();
    Rational lo = (tr - root) / 2, hi = (tr + root) / 2;
    return {hi, lo}; // 1/4, 1/16
}

} // namespace bm
