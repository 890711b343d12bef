#ifndef BM_MOMENT_ENGINE_HPP
#define BM_MOMENT_ENGINE_HPP

#include <map>
#include <string>
#include <vector>

#include "bm/zeta_expr.hpp"

namespace bm {

enum class MomentFamily { p0000, p0011, p1111, i0001, i0111 };

std::string family_name(MomentFamily f);
MomentFamily family_from_name(const std::string& s);

// One member of the five basis families p_n / i_n. Parity and lower bound
// are the convergence conditions of the underlying integral and are
// enforced at construction.
struct BasisMoment {
    MomentFamily family;
    int n;

    BasisMoment(MomentFamily f, int n);
    // weight exponent n+1 and the Bessel order multiset, for quadrature
    int weight_exponent() const { return n + 1; }
    std::vector<int> orders() const;
};

// The tuple identifying one integral of the I^{mn} family.
struct MomentIndex {
    int na, nb, nc, nd;
    int m = 1;           // denominator power, >= 1
    int s_order = 0;     // derivative order in s (the (a+b+c+d)^n weight)

    MomentIndex(int a, int b, int c, int d, int m_ = 1, int s = 0);
    int exponent_sum() const { return na + nb + nc + nd; }
};

// (u^n / 2^n) K_n(u) = sum coeff * u^power * K_{base}(u), exact.
struct ExpandTerm {
    Rational coeff;
    int u_power;
    int base; // 0 -> K0, 1 -> K1
};
std::vector<ExpandTerm> expand_order(int n);

// Exact linear combination of basis moments produced by reduce().
struct Reduction {
    Rational prefactor; // 2^(5-2m)/Gamma(m) times the s-derivative scaling factor
    std::vector<std::pair<Rational, BasisMoment>> terms;
};

// Closed-form engine. Memoizes the p0000/p1111 recurrence per instance.
class MomentEngine {
  public:
    // Exact closed form of a basis moment: base table for n <= 4, the 2x2
    // recurrence above that, and the integration-by-parts relations for
    // the mixed families.
    ZetaExpr basis_value(const BasisMoment& b);

    // Second, independent route through the IBP relations (testing aid):
    // i via (p_{n+1}(....) + 3 p_{n+1}(0011)) / (n +- 1).
    ZetaExpr basis_value_alt(const BasisMoment& b);

    // I^{mn}_{na nb nc nd} as an exact combination of basis moments plus
    // its ZetaExpr total.
    std::pair<Reduction, ZetaExpr> reduce(const MomentIndex& idx);

    // q_k(0), q_k(1), q_k(1)+q_k(0), q_k(1)-q_k(0)
    struct QValues {
        ZetaExpr q0, q1, sum, diff;
    };
    QValues q_values(int k);

    // j_k(0001), j_k(0111), q_k(01)
    struct JValues {
        ZetaExpr j0001, j0111, q01;
    };
    JValues j_values(int k);

    struct DenominatorRow {
        int k;
        Integer den_sum;   // common denominator of q_k(1)+q_k(0) in the tilde basis
        Integer den_diff;
        double ratio_sum;  // (q_{k+1}(1)+q_{k+1}(0)) / (q_k(1)+q_k(0))
        double ratio_diff;
    };
    std::vector<DenominatorRow> denominator_report(int k_max);

  private:
    std::pair<ZetaExpr, ZetaExpr> p_pair(int n); // (p_n(0000), p_n(1111)), even n >= 4
    std::map<int, std::pair<ZetaExpr, ZetaExpr>> p_cache_;
};

// Exact eigenvalues of the k->infinity limit matrix (1/2^5)[[5,-3],[-3,5]].
std::pair<Rational, Rational> limit_matrix_eigenvalues();

} // namespace bm

#endif
