#ifndef BM_ZETA_SERIES_HPP
#define BM_ZETA_SERIES_HPP

#include <vector>

#include "bm/zeta_expr.hpp"

namespace bm {

// The exact numerator polynomial in m = n+2p-1 from the even/odd product
// forms: prod_q (m^2 - (2q-1)^2) for n even, prod_q (m^2 - (2q)^2) for
// n odd. Vanishes at every excluded small m, which is what lets the sum
// run over all odd (resp. even) m.
class NumeratorPoly {
  public:
    explicit NumeratorPoly(int n);

    // coefficient of m^j
    const std::vector<Rational>& coefficients() const { return coeffs_; }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    Rational evaluate_at(const Rational& m) const;

  private:
    std::vector<Rational> coeffs_;
};

// Exact odd-zeta decomposition of the 2n-variable root integral I_n.
ZetaExpr decompose_In(int n);

enum class InForm { log_form, sinh_form };

// Numeric cross-check of I_n through either 1-D integral form.
Real In_numeric(int n, Precision prec, InForm form);

enum class LambdaParity { odd_m, even_m };

// sum over odd m>=1 (resp. even m>=2) of m^-k:
// (1 - 2^-k) zeta(k), resp. 2^-k zeta(k).
Real lambda_sum(int k, LambdaParity parity, Precision prec);

} // namespace bm

#endif
