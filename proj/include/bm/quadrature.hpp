#ifndef BM_QUADRATURE_HPP
#define BM_QUADRATURE_HPP

#include <functional>
#include <vector>

#include "bm/real.hpp"

namespace bm {

// Integrand u^w * prod_i K_{nu_i}(u) over (0, inf). The constructor rejects
// combinations that diverge at the origin: with S = sum of orders, the
// integrand behaves like u^{w-S} (times powers of log u), so we need
// w >= S when any order is positive, and w >= 0 otherwise.
struct MomentIntegrand {
    int weight_exponent;
    std::vector<int> orders;

    MomentIntegrand(int w, std::vector<int> nu);
};

// f(u, work) must return the integrand value at the given working precision.
using HalfLineFn = std::function<Real(const Real&, Precision)>;

// Double-exponential (exp-sinh) integration over (0, inf) for integrands
// with at worst a log singularity at 0 and exponential decay at infinity.
// Certified by level doubling: node density doubles until two successive
// levels agree to 10^-(prec+2); throws ConvergenceError at the level cap.
Real integrate_halfline(const HalfLineFn& f, Precision prec);

Real integrate_moment(const MomentIntegrand& f, Precision prec);

} // namespace bm

#endif
