#ifndef BM_RELATION_HPP
#define BM_RELATION_HPP

#include <vector>

#include "bm/real.hpp"

namespace bm {

struct RelationResult {
    bool found = false;
    // coefficients aligned with the queried basis: value = sum c_i * basis_i
    std::vector<Rational> coefficients;
    // best |q*value - sum p_i * basis_i| / |q| witnessed, found or not
    Real residual{64};
};

// Searches for rational coefficients c_i of height <= height_bound with
// value = sum c_i * basis_i, by LLL reduction of the scaled lattice
// [I | round(10^(prec-8) * x)]. Declared detection threshold: residual
// below 10^(-prec/2). Throws DomainError when prec is too low for the
// requested height bound to be decidable.
RelationResult detect_relation(const Real& value, const std::vector<Real>& basis,
                               const Integer& height_bound, Precision prec);

} // namespace bm

#endif
