#include "sieve/metrics.hpp"

#include <algorithm>
#include <numeric>

#include "sieve/errors.hpp"

namespace sieve {

PrecisionRecallF1 precision_recall_f1(std::span<const int> y_true, std::span<const int> y_pred) {
    if (y_true.size() != y_pred.size())
        throw LengthMismatch("precision_recall_f1: label/prediction length mismatch");
    std::int64_t tp = 0, fp = 0, fn = 0;
    for (std::size_t i = 0; i < y_true.size(); ++i) {
        if (y_pred[i] == 1) {
            if (y_true[i] == 1) ++tp;
            else ++fp;
        } else if (y_true[i] == 1) {
            ++fn;
        }
    }
    PrecisionRecallF1 out;
    out.precision = (tp + fp) > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fp) : 0.0;
    out.recall = (tp + fn) > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fn) : 0.0;
    const double pr = out.precision + out.recall;
    out.f1 = pr > 0.0 ? 2.0 * out.precision * out.recall / pr : 0.0;
    return out;
}

double roc_auc(std::span<const int> y_true, std::span<const double> scores) {
    if (y_true.size() != scores.size())
        throw LengthMismatch("roc_auc: label/score length mismatch");
    const std::size_t n = y_true.size();
    std::size_t n_pos = 0;
    for (int y : y_true) n_pos += (y == 1);
    const std::size_t n_neg = n - n_pos;
    if (n_pos == 0 || n_neg == 0) throw SingleClassInput("roc_auc requires both classes");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

    // Average ranks within tie groups; sum the ranks of positives.
    double rank_sum_pos = 0.0;
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j < n && scores[order[j]] == scores[order[i]]) ++j;
        // 1-based ranks i+1 .. j share the average rank.
        const double avg_rank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
        for (std::size_t k = i; k < j; ++k) {
            if (y_true[order[k]] == 1) rank_sum_pos += avg_rank;
        }
        i = j;
    }
    const double np = static_cast<double>(n_pos);
    const double nn = static_cast<double>(n_neg);
    return (rank_sum_pos - np * (np + 1.0) / 2.0) / (np * nn);
}

std::vector<std::pair<double, double>> roc_curve(std::span<const int> y_true,
                                                 std::span<const double> scores) {
    if (y_true.size() != scores.size())
        throw LengthMismatch("roc_curve: label/score length mismatch");
    const std::size_t n = y_true.size();
    std::size_t n_pos = 0;
    for (int y : y_true) n_pos += (y == 1);
    const std::size_t n_neg = n - n_pos;
    if (n_pos == 0 || n_neg == 0) throw SingleClassInput("roc_curve requires both classes");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

    std::vector<std::pair<double, double>> points;
    points.emplace_back(0.0, 0.0);
    std::size_t tp = 0, fp = 0;
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j < n && scores[order[j]] == scores[order[i]]) ++j;
        for (std::size_t k = i; k < j; ++k) {
            if (y_true[order[k]] == 1) ++tp;
            else ++fp;
        }
        points.emplace_back(static_cast<double>(fp) / static_cast<double>(n_neg),
                            static_cast<double>(tp) / static_cast<double>(n_pos));
        i = j;
    }
    return points;
}

MetricsReport evaluate_scores(std::span<const int> y_true, std::span<const double> scores) {
    if (y_true.size() != scores.size())
        throw LengthMismatch("evaluate_scores: label/score length mismatch");
    MetricsReport r;
    r.n = static_cast<std::int64_t>(y_true.size());
    std::vector<int> y_pred(y_true.size());
    for (std::size_t i = 0; i < y_true.size(); ++i) {
        const int pred = scores[i] >= 0.5 ? 1 : 0;
        y_pred[i] = pred;
        if (pred == 1 && y_true[i] == 1) ++r.tp;
        else if (pred == 1) ++r.fp;
        else if (y_true[i] == 1) ++r.fn;
        else ++r.tn;
    }
    const PrecisionRecallF1 prf = precision_recall_f1(y_true, y_pred);
    r.precision = prf.precision;
    r.recall = prf.recall;
    r.f1 = prf.f1;
    r.auc = roc_auc(y_true, scores);
    return r;
}

}  // namespace sieve
