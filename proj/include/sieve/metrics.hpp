#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace sieve {

/// Precision, recall, F1, AUC plus confusion counts for one evaluation run.
/// For fold-averaged reports the scalar metrics are arithmetic means over
/// folds while the counts are summed, so f1 need not equal 2PR/(P+R) there.
struct MetricsReport {
    std::int64_t tp = 0;
    std::int64_t fp = 0;
    std::int64_t tn = 0;
    std::int64_t fn = 0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    double auc = 0.0;
    std::int64_t n = 0;
};

/// P = tp/(tp+fp), R = tp/(tp+fn); zero denominators yield 0, and F1 is 0
/// when P+R = 0. Labels must be 0/1. Throws LengthMismatch.
struct PrecisionRecallF1 {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};
PrecisionRecallF1 precision_recall_f1(std::span<const int> y_true, std::span<const int> y_pred);

/// Mann-Whitney AUC via average ranks, ties credited 0.5. O(n log n).
/// Throws SingleClassInput unless both classes are present.
double roc_auc(std::span<const int> y_true, std::span<const double> scores);

/// ROC points at every distinct threshold, sorted by fpr, from (0,0) to
/// (1,1). Trapezoidal integration of the result equals roc_auc.
std::vector<std::pair<double, double>> roc_curve(std::span<const int> y_true,
                                                 std::span<const double> scores);

/// Confusion counts, P/R/F1 at threshold 0.5 on scores, and AUC in one report.
MetricsReport evaluate_scores(std::span<const int> y_true, std::span<const double> scores);

}  // namespace sieve
