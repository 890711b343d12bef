#ifndef BM_BESSELK_HPP
#define BM_BESSELK_HPP

#include "bm/real.hpp"

namespace bm {

// K_nu(u) for integer nu >= 0, u > 0, relative error <= 10^-prec.
// Small arguments use the log-series with a cancellation-aware guard;
// large arguments use the asymptotic expansion truncated at a term
// already below target accuracy. n >= 2 by upward recurrence.
Real bessel_k(int nu, const Real& u, Precision prec);

// K0 and K1 together; one series/asymptotic pass instead of two.
void bessel_k01(const Real& u, Precision prec, Real& k0, Real& k1);

// max of |dK0/du + K1| and |d(uK1)/du + uK0| with central differences at
// step h = 10^(-prec/3). Testing aid for the integration-by-parts identities.
Real bessel_k_derivative_check(const Real& u, Precision prec);

} // namespace bm

#endif
