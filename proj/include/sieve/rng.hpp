#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace sieve {

/// Mixes a 64-bit value through the splitmix64 finalizer. Used to derive
/// independent, schedule-invariant RNG streams from (seed, stream index).
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Derives the seed for sub-stream `index` of stream `seed`.
inline std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t index) {
    return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x51ed270b7a4fca11ULL));
}

/// Deterministic RNG stream. The engine is std::mt19937_64 (output sequence
/// fixed by the standard); all distribution sampling is implemented here
/// because std::*_distribution output is implementation-defined.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : engine_(seed) {}
    RngStream(std::uint64_t seed, std::uint64_t index) : engine_(derive_stream(seed, index)) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform integer in [0, n), n >= 1. Rejection sampling, no modulo bias.
    std::uint64_t next_below(std::uint64_t n) {
        if (n <= 1) return 0;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v;
        do {
            v = engine_();
        } while (v >= limit);
        return v % n;
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_double() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    bool bernoulli(double p) { return next_double() < p; }

    /// Standard normal via Box-Muller (uses two uniforms per pair, caches one).
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = next_double();
        double u2 = next_double();
        while (u1 <= 0.0) u1 = next_double();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    double log_normal(double mu, double sigma) { return std::exp(mu + sigma * normal()); }

    /// Poisson by inversion for small mean, normal approximation above 60.
    std::uint64_t poisson(double lambda) {
        if (lambda <= 0.0) return 0;
        if (lambda > 60.0) {
            const double v = lambda + std::sqrt(lambda) * normal();
            return v <= 0.0 ? 0 : static_cast<std::uint64_t>(std::llround(v));
        }
        const double limit = std::exp(-lambda);
        std::uint64_t k = 0;
        double p = 1.0;
        do {
            ++k;
            p *= next_double();
        } while (p > limit);
        return k - 1;
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace sieve
