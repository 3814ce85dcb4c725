#pragma once

#include <cmath>
#include <span>

namespace sieve {

/// (avg, std, min, max) summary of a multiset of observations.
struct SummaryStats {
    double avg = 0.0;
    double std = 0.0;
    double min = 0.0;
    double max = 0.0;
};

/// Population variance via the canonical accumulation order: sequential sums
/// of values and squares in input order, then E[x^2] - E[x]^2 (clamped at 0).
/// Every variance in the pipeline goes through this recipe so that results
/// are bit-reproducible.
inline double population_variance(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n == 0) return 0.0;
    double sum = 0.0;
    double sumsq = 0.0;
    for (double v : values) {
        sum += v;
        sumsq += v * v;
    }
    const double mean = sum / static_cast<double>(n);
    const double var = sumsq / static_cast<double>(n) - mean * mean;
    return var < 0.0 ? 0.0 : var;
}

inline double mean_of(std::span<const double> values) {
    if (values.empty()) return 0.0;
    double sum = 0.0;
    for (double v : values) sum += v;
    return sum / static_cast<double>(values.size());
}

/// Summary over a multiset; all four fields equal `empty_value` when the
/// multiset is empty (0 for most features, window length for gap features).
inline SummaryStats summarize(std::span<const double> values, double empty_value = 0.0) {
    SummaryStats s;
    if (values.empty()) {
        s.avg = s.std = s.min = s.max = empty_value;
        return s;
    }
    s.min = values[0];
    s.max = values[0];
    for (double v : values) {
        if (v < s.min) s.min = v;
        if (v > s.max) s.max = v;
    }
    s.avg = mean_of(values);
    s.std = std::sqrt(population_variance(values));
    return s;
}

}  // namespace sieve
