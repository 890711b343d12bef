#include "bm/zeta_expr.hpp"

#include <sstream>

#include "bm/constants.hpp"

namespace bm {

ZetaExpr ZetaExpr::zeta_term(int k, Rational coeff) {
    if (k < 3 || k % 2 == 0) throw DomainError("zeta term must have odd k >= 3");
    ZetaExpr e;
    if (coeff != 0) e.zeta_[k] = std::move(coeff);
    return e;
}

ZetaExpr ZetaExpr::zeta3_tilde(const Rational& coeff) {
    return zeta_term(3, coeff * Rational(7, 2));
}

Rational ZetaExpr::zeta_coeff(int k) const {
    auto it = zeta_.find(k);
    return it == zeta_.end() ? Rational(0) : it->second;
}

void ZetaExpr::prune(int k) {
    auto it = zeta_.find(k);
    if (it != zeta_.end() && it->second == 0) zeta_.erase(it);
}

ZetaExpr ZetaExpr::operator+(const ZetaExpr& o) const {
    ZetaExpr r(*this);
    r.rat_ += o.rat_;
    for (const auto& [k, c] : o.zeta_) {
        r.zeta_[k] += c;
        r.prune(k);
    }
    return r;
}

ZetaExpr ZetaExpr::operator-(const ZetaExpr& o) const {
    ZetaExpr r(*this);
    r.rat_ -= o.rat_;
    for (const auto& [k, c] : o.zeta_) {
        r.zeta_[k] -= c;
        r.prune(k);
    }
    return r;
}

ZetaExpr ZetaExpr::scaled(const Rational& r) const {
    ZetaExpr out;
    if (r == 0) return out;
    out.rat_ = rat_ * r;
    for (const auto& [k, c] : zeta_) out.zeta_[k] = c * r;
    return out;
}

Real ZetaExpr::evaluate(Precision prec) const {
    mpfr_prec_t work = bits_for_digits(prec.digits + kGuardDigits);
    Precision inner(std::min(prec.digits + kGuardDigits, Precision::kMaxDigits));
    Real s = Real::from_rational(rat_, work);
    for (const auto& [k, c] : zeta_)
        s += Real::from_rational(c, work) * zeta_value(k, inner);
    return round_to(s, prec.digits);
}

namespace {

std::string coeff_paren(const Rational& c) {
    Rational a = abs(c);
    return "(" + a.get_str() + ")";
}

void append_term(std::ostringstream& out, bool& first, const Rational& c,
                 const std::string& symbol) {
    if (c == 0) return;
    if (first) {
        if (symbol.empty()) {
            out << c.get_str();
        } else {
            out << (c < 0 ? "-" : "") << coeff_paren(c) << "*" << symbol;
        }
        first = false;
        return;
    }
    out << (c < 0 ? " - " : " + ");
    if (symbol.empty()) {
        out << Rational(abs(c)).get_str();
    } else {
        out << coeff_paren(c) << "*" << symbol;
    }
}

} // namespace

std::string ZetaExpr::format() const {
    if (is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    if (rat_ != 0) append_term(out, first, rat_, "");
    for (const auto& [k, c] : zeta_) append_term(out, first, c, "z" + std::to_string(k));
    return out.str();
}

std::string ZetaExpr::format_tilde() const {
    if (is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    if (rat_ != 0) append_term(out, first, rat_, "");
    for (const auto& [k, c] : zeta_) {
        if (k == 3) {
            append_term(out, first, c * Rational(2, 7), "z3t");
        } else {
            append_term(out, first, c, "z" + std::to_string(k));
        }
    }
    return out.str();
}

ZetaExpr ZetaExpr::parse(const std::string& text) {
    // Strip whitespace, then split into signed terms.
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.empty()) throw DomainError("empty zeta expression");

    ZetaExpr result;
    std::size_t i = 0;
    while (i < s.size()) {
        int sign = 1;
        if (s[i] == '+' || s[i] == '-') {
            sign = s[i] == '-' ? -1 : 1;
            ++i;
        }
        std::size_t j = i;
        int depth = 0;
        while (j < s.size()) {
            if (s[j] == '(') ++depth;
            else if (s[j] == ')') --depth;
            else if ((s[j] == '+' || s[j] == '-') && depth == 0) break;
            ++j;
        }
        std::string term = s.substr(i, j - i);
        if (term.empty()) throw DomainError("malformed zeta expression: " + text);
        i = j;

        std::size_t star = term.find("*z");
        if (star == std::string::npos) {
            result.rat_ += Rational(sign) * parse_rational(term);
            continue;
        }
        std::string coeff_text = term.substr(0, star);
        if (coeff_text.size() >= 2 && coeff_text.front() == '(' && coeff_text.back() == ')')
            coeff_text = coeff_text.substr(1, coeff_text.size() - 2);
        std::string sym = term.substr(star + 2);
        bool tilde = false;
        if (!sym.empty() && sym.back() == 't') {
            tilde = true;
            sym.pop_back();
        }
        if (sym.empty()) throw DomainError("malformed zeta symbol in: " + text);
        int k = 0;
        for (char ch : sym) {
            if (!std::isdigit(static_cast<unsigned char>(ch)))
                throw DomainError("malformed zeta symbol in: " + text);
            k = k * 10 + (ch - '0');
        }
        if (tilde && k != 3) throw DomainError("tilde form only defined for z3");
        Rational c = Rational(sign) * parse_rational(coeff_text);
        if (tilde) c *= Rational(7, 2);
        if (k < 3 || k % 2 == 0) throw DomainError("zeta term must have odd k >= 3");
        result.zeta_[k] += c;
        result.prune(k);
    }
    return result;
}

std::string ZetaExpr::to_json() const {
    std::ostringstream out;
    out << "{\"rational\": \"" << rat_.get_str() << "\", \"zeta\": {";
    bool first = true;
    for (const auto& [k, c] : zeta_) {
        if (!first) out << ", ";
        out << "\"" << k << "\": \"" << c.get_str() << "\"";
        first = false;
    }
    out << "}}";
    return out.str();
}

} // namespace bm
