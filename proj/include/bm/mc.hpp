#ifndef BM_MC_HPP
#define BM_MC_HPP

#include <cstdint>
#include <vector>

#include "bm/moment_engine.hpp"

namespace bm {

struct McEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
};

enum class McMode { serial, parallel };

// All estimators are chunked with per-chunk RNG streams keyed by
// (seed, chunk_index) and a fixed in-order chunk reduction, so the
// serial reference and the OpenMP path produce bit-identical results.

// Direct sampler for I^{mn}: a,b,c,d iid Exp(1), averaging
// a^na b^nb c^nc d^nd (a+b+c+d)^s / (abc+bcd+cda+dab)^m.
McEstimate mc_four(const MomentIndex& idx, std::uint64_t samples, std::uint64_t seed,
                   McMode mode = McMode::parallel);

// I_1100(beta): uniform samples on the simplex a+b+c+d = beta, averaging
// d(a+c)(b+d)/(abc+bcd+cda+dab), times the simplex volume beta^3/3!.
McEstimate mc_beta_law(double beta, std::uint64_t samples, std::uint64_t seed,
                       McMode mode = McMode::parallel);

// Root integral I_n over the unit simplex in 2n variables.
McEstimate mc_root(int n, std::uint64_t samples, std::uint64_t seed,
                   McMode mode = McMode::parallel);

// Same sampler with a monomial numerator; exponents are listed as
// (a_1, b_1, a_2, b_2, ..., a_n, b_n).
McEstimate mc_general(int n, const std::vector<int>& monomial_exponents,
                      std::uint64_t samples, std::uint64_t seed,
                      McMode mode = McMode::parallel);

} // namespace bm

#endif
