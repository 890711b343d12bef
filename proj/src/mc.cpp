#include "bm/mc.hpp"

#include <cmath>
#include <functional>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace bm {

namespace {

constexpr std::uint64_t kChunkSize = 1u << 16;

// splitmix64; one independent stream per (seed, chunk)
struct Rng {
    std::uint64_t state;

    explicit Rng(std::uint64_t seed, std::uint64_t chunk) {
        state = seed ^ (chunk * 0x9e3779b97f4a7c15ULL + 0x6a09e667f3bcc909ULL);
        next();
        next();
    }
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    // uniform in (0,1)
    double uniform() { return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53; }
    double exponential() { return -std::log(uniform()); }
};

struct ChunkStats {
    double sum = 0.0;
    double sum_sq = 0.0;
};

// g draws whatever it needs from the rng and returns one estimator sample.
template <typename G>
McEstimate run_chunked(std::uint64_t samples, std::uint64_t seed, McMode mode, G&& g) {
    if (samples < 1) throw DomainError("sample count must be >= 1");
    const std::uint64_t n_chunks = (samples + kChunkSize - 1) / kChunkSize;
    std::vector<ChunkStats> partial(n_chunks);

    auto run_chunk = [&](std::uint64_t c) {
        Rng rng(seed, c);
        const std::uint64_t lo = c * kChunkSize;
        const std::uint64_t hi = std::min(samples, lo + kChunkSize);
        // Kahan-compensated accumulation within the chunk
        double s = 0.0, s_c = 0.0, q = 0.0, q_c = 0.0;
        for (std::uint64_t i = lo; i < hi; ++i) {
            double v = g(rng);
            double y = v - s_c;
            double t = s + y;
            s_c = (t - s) - y;
            s = t;
            double y2 = v * v - q_c;
            double t2 = q + y2;
            q_c = (t2 - q) - y2;
            q = t2;
        }
        partial[c] = {s, q};
    };

    if (mode == McMode::parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
        for (std::int64_t c = 0; c < static_cast<std::int64_t>(n_chunks); ++c)
            run_chunk(static_cast<std::uint64_t>(c));
    } else {
        for (std::uint64_t c = 0; c < n_chunks; ++c) run_chunk(c);
    }

    // fixed in-order reduction over chunks
    double sum = 0.0, sum_sq = 0.0;
    for (const ChunkStats& p : partial) {
        sum += p.sum;
        sum_sq += p.sum_sq;
    }
    const double n = static_cast<double>(samples);
    McEstimate est;
    est.mean = sum / n;
    double var = std::max(0.0, sum_sq / n - est.mean * est.mean);
    est.std_error = samples > 1 ? std::sqrt(var / (n - 1.0)) : 0.0;
    est.samples = samples;
    est.seed = seed;
    return est;
}

double ipow(double x, int e) {
    double r = 1.0;
    for (int i = 0; i < e; ++i) r *= x;
    return r;
}

double log_factorial(int n) {
    return std::lgamma(static_cast<double>(n) + 1.0);
}

} // namespace

McEstimate mc_four(const MomentIndex& idx, std::uint64_t samples, std::uint64_t seed,
                   McMode mode) {
    return run_chunked(samples, seed, mode, [idx](Rng& rng) {
        double a = rng.exponential(), b = rng.exponential();
        double c = rng.exponential(), d = rng.exponential();
        double den = a * b * c + b * c * d + c * d * a + d * a * b;
        double v = ipow(a, idx.na) * ipow(b, idx.nb) * ipow(c, idx.nc) * ipow(d, idx.nd);
        if (idx.s_order > 0) v *= ipow(a + b + c + d, idx.s_order);
        return v / ipow(den, idx.m);
    });
}

McEstimate mc_beta_law(double beta, std::uint64_t samples, std::uint64_t seed, McMode mode) {
    if (!(beta > 0.0)) throw DomainError("beta must be > 0");
    const double volume = beta * beta * beta / 6.0;
    return run_chunked(samples, seed, mode, [beta, volume](Rng& rng) {
        double e0 = rng.exponential(), e1 = rng.exponential();
        double e2 = rng.exponential(), e3 = rng.exponential();
        double s = e0 + e1 + e2 + e3;
        double a = beta * e0 / s, b = beta * e1 / s, c = beta * e2 / s, d = beta * e3 / s;
        double den = a * b * c + b * c * d + c * d * a + d * a * b;
        return volume * d * (a + c) * (b + d) / den;
    });
}

namespace {

template <typename Numerator>
McEstimate mc_simplex_2n(int n, std::uint64_t samples, std::uint64_t seed, McMode mode,
                         Numerator&& numerator) {
    if (n < 2) throw DomainError("mc over 2n variables requires n >= 2");
    const double volume = std::exp(-log_factorial(2 * n - 1));
    return run_chunked(samples, seed, mode, [n, volume, numerator](Rng& rng) {
        // Dirichlet(1,...,1) over 2n coordinates via normalized exponentials;
        // x = (a_1, b_1, ..., a_n, b_n)
        double x[64];
        double s = 0.0;
        for (int i = 0; i < 2 * n; ++i) {
            x[i] = rng.exponential();
            s += x[i];
        }
        for (int i = 0; i < 2 * n; ++i) x[i] /= s;
        // denominator: sum over cyclic shifts j of a_j b_j prod_{i != j} (a_i + b_i)
        double den = 0.0;
        for (int j = 0; j < n; ++j) {
            double term = x[2 * j] * x[2 * j + 1];
            for (int i = 0; i < n; ++i)
                if (i != j) term *= x[2 * i] + x[2 * i + 1];
            den += term;
        }
        return volume * numerator(x) / den;
    });
}

} // namespace

McEstimate mc_root(int n, std::uint64_t samples, std::uint64_t seed, McMode mode) {
    if (n > 32) throw DomainError("mc_root supports n <= 32");
    return mc_simplex_2n(n, samples, seed, mode, [](const double*) { return 1.0; });
}

McEstimate mc_general(int n, const std::vector<int>& monomial_exponents,
                      std::uint64_t samples, std::uint64_t seed, McMode mode) {
    if (n > 32) throw DomainError("mc_general supports n <= 32");
    if (static_cast<int>(monomial_exponents.size()) != 2 * n)
        throw DomainError("mc_general needs exactly 2n monomial exponents");
    for (int e : monomial_exponents)
        if (e < 0) throw DomainError("monomial exponents must be >= 0");
    return mc_simplex_2n(n, samples, seed, mode,
                         [n, monomial_exponents](const double* x) {
                             double v = 1.0;
                             for (int i = 0; i < 2 * n; ++i) v *= ipow(x[i], monomial_exponents[i]);
                             return v;
                         });
}

} // namespace bm
