#ifndef BM_CONSTANTS_HPP
#define BM_CONSTANTS_HPP

#include <string>
#include <vector>

#include "bm/real.hpp"

namespace bm {

// name in {"pi", "euler_gamma", "log2"}. Deterministic: same inputs give
// bit-identical output.
Real fundamental_constant(const std::string& name, Precision prec);

// Riemann zeta at integer k >= 2, via Euler-Maclaurin tail correction.
Real zeta_value(int k, Precision prec);

// Exact Bernoulli numbers B_0..B_m (B_1 = -1/2 convention).
std::vector<Rational> bernoulli_numbers(int m);

// sum_{p>=0} 1/(3p+1)^2, partial sum plus Euler-Maclaurin tail.
// Reference side of the uK0^3 identity check.
Real sum_recip_3p1_squared(Precision prec);

} // namespace bm

#endif
