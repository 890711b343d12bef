#ifndef BM_ZETA_EXPR_HPP
#define BM_ZETA_EXPR_HPP

#include <map>
#include <string>

#include "bm/rational.hpp"
#include "bm/real.hpp"

namespace bm {

// An exact element of Q*1 (+) sum over odd k>=3 of Q*zeta(k).
// Canonical basis is {1, zeta(3), zeta(5), ...}; the tilde form
// zeta~(3) = (7/2) zeta(3) is a presentation-layer rewrite only.
class ZetaExpr {
  public:
    ZetaExpr() = default;
    explicit ZetaExpr(Rational rational_part) : rat_(std::move(rational_part)) {}

    static ZetaExpr zeta_term(int k, Rational coeff);
    // c * zeta~(3) = c * (7/2) zeta(3)
    static ZetaExpr zeta3_tilde(const Rational& coeff);

    const Rational& rational_part() const { return rat_; }
    const std::map<int, Rational>& zeta_coeffs() const { return zeta_; }
    Rational zeta_coeff(int k) const;

    bool is_zero() const { return rat_ == 0 && zeta_.empty(); }

    ZetaExpr operator+(const ZetaExpr& o) const;
    ZetaExpr operator-(const ZetaExpr& o) const;
    ZetaExpr scaled(const Rational& r) const;
    bool operator==(const ZetaExpr& o) const { return rat_ == o.rat_ && zeta_ == o.zeta_; }

    // rational_part + sum coeff_k * zeta(k), to prec digits.
    Real evaluate(Precision prec) const;

    // Canonical text: "a/b + (c/d)*z3 + ...", zero terms omitted, "0" for zero.
    std::string format() const;
    // Same layout but z3 terms re-expressed through z3t = (7/2) zeta(3).
    std::string format_tilde() const;
    static ZetaExpr parse(const std::string& text);

    // {"rational": "a/b", "zeta": {"3": "c/d", ...}}
    std::string to_json() const;

  private:
    void prune(int k);

    Rational rat_ = 0;
    std::map<int, Rational> zeta_; // odd k >= 3 -> nonzero coefficient
};

} // namespace bm

#endif
