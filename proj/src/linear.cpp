#include "sieve/linear.hpp"

#include <algorithm>
#include <cmath>

#include "sieve/errors.hpp"
#include "sieve/stats.hpp"

namespace sieve {

namespace {

double sigmoid(double z) {
    if (z >= 0.0) {
        return 1.0 / (1.0 + std::exp(-z));
    }
    const double e = std::exp(z);
    return e / (1.0 + e);
}

// log(1 + exp(m)) - y*m, computed stably.
double log_loss_term(double margin, int y) {
    const double a = margin > 0.0 ? margin : 0.0;
    return a + std::log1p(std::exp(-std::abs(margin))) - static_cast<double>(y) * margin;
}

double soft_threshold(double z, double gamma) {
    if (z > gamma) return z - gamma;
    if (z < -gamma) return z + gamma;
    return 0.0;
}

}  // namespace

Standardization standardize_fit(const Matrix& X) {
    if (X.rows() == 0) throw DimensionMismatch("standardize requires a nonempty matrix");
    Standardization s;
    s.means.resize(X.cols());
    s.stds.resize(X.cols());
    std::vector<double> column(X.rows());
    for (std::size_t c = 0; c < X.cols(); ++c) {
        for (std::size_t r = 0; r < X.rows(); ++r) column[r] = X(r, c);
        const double mean = mean_of(column);
        double sd = std::sqrt(population_variance(column));
        if (sd < 1e-12 * (std::abs(mean) + 1.0)) sd = 1.0;  // zero-variance column
        s.means[c] = mean;
        s.stds[c] = sd;
    }
    return s;
}

Matrix standardize_apply(const Matrix& X, const Standardization& s) {
    if (X.cols() != s.means.size())
        throw DimensionMismatch("standardize_apply: column count mismatch");
    Matrix out(X.rows(), X.cols());
    for (std::size_t r = 0; r < X.rows(); ++r) {
        for (std::size_t c = 0; c < X.cols(); ++c) {
            out(r, c) = (X(r, c) - s.means[c]) / s.stds[c];
        }
    }
    return out;
}

double logistic_loss(const Matrix& X_std, std::span<const int> y,
                     std::span<const double> weights, double intercept) {
    const std::size_t n = X_std.rows();
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double m = intercept;
        const auto row = X_std.row(i);
        for (std::size_t j = 0; j < weights.size(); ++j) m += weights[j] * row[j];
        total += log_loss_term(m, y[i]);
    }
    return total / static_cast<double>(n);
}

double logistic_objective(const Matrix& X_std, std::span<const int> y,
                          std::span<const double> weights, double intercept, double C) {
    double penalty = 0.0;
    for (double w : weights) penalty += std::abs(w);
    return logistic_loss(X_std, y, weights, intercept) + penalty / C;
}

std::vector<double> logistic_loss_gradient(const Matrix& X_std, std::span<const int> y,
                                           std::span<const double> weights, double intercept) {
    const std::size_t n = X_std.rows();
    const std::size_t d = weights.size();
    std::vector<double> grad(d + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const auto row = X_std.row(i);
        double m = intercept;
        for (std::size_t j = 0; j < d; ++j) m += weights[j] * row[j];
        const double resid = sigmoid(m) - static_cast<double>(y[i]);
        for (std::size_t j = 0; j < d; ++j) grad[j] += resid * row[j];
        grad[d] += resid;
    }
    for (double& g : grad) g /= static_cast<double>(n);
    return grad;
}

LinearModel fit_logistic_lasso(const Matrix& X, std::span<const int> y,
                               const LinearModelConfig& config) {
    const std::size_t n = X.rows();
    const std::size_t d = X.cols();
    if (n != y.size()) throw DimensionMismatch("fit_logistic_lasso: rows(X) != len(y)");
    if (n == 0 || d == 0) throw DimensionMismatch("fit_logistic_lasso: empty input");
    std::size_t n_pos = 0;
    for (int v : y) n_pos += (v == 1);
    if (n_pos == 0 || n_pos == n)
        throw SingleClassInput("fit_logistic_lasso requires both classes");
    if (config.C <= 0.0) throw Error("LinearModelConfig.C must be positive");

    LinearModel model;
    model.config = config;
    model.standardization = standardize_fit(X);
    const Matrix Z = standardize_apply(X, model.standardization);

    // Coordinate curvature bounds: (1/4) * (1/n) * sum_i z_ij^2.
    std::vector<double> curvature(d, 0.0);
    for (std::size_t j = 0; j < d; ++j) {
        double sumsq = 0.0;
        for (std::size_t i = 0; i < n; ++i) sumsq += Z(i, j) * Z(i, j);
        curvature[j] = sumsq / (4.0 * static_cast<double>(n));
    }

    std::vector<double> w(d, 0.0);
    double b = 0.0;
    std::vector<double> margin(n, 0.0);
    const double inv_n = 1.0 / static_cast<double>(n);
    const double penalty = 1.0 / config.C;

    for (std::size_t sweep = 0; sweep < config.max_iterations; ++sweep) {
        double max_step = 0.0;

        // Intercept: unpenalized Newton-style step with curvature 1/4.
        double g_b = 0.0;
        for (std::size_t i = 0; i < n; ++i) g_b += sigmoid(margin[i]) - static_cast<double>(y[i]);
        g_b *= inv_n;
        const double db = -4.0 * g_b;
        if (db != 0.0) {
            b += db;
            for (std::size_t i = 0; i < n; ++i) margin[i] += db;
            max_step = std::max(max_step, std::abs(db));
        }

        for (std::size_t j = 0; j < d; ++j) {
            const double L = curvature[j];
            if (L <= 0.0) continue;  // constant column: weight stays 0
            double g = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                g += Z(i, j) * (sigmoid(margin[i]) - static_cast<double>(y[i]));
            g *= inv_n;
            const double candidate = soft_threshold(w[j] - g / L, penalty / L);
            const double step = candidate - w[j];
            if (step != 0.0) {
                w[j] = candidate;
                for (std::size_t i = 0; i < n; ++i) margin[i] += step * Z(i, j);
                max_step = std::max(max_step, std::abs(step));
            }
        }

        // Objective from cached margins; the L1 term uses current weights.
        double loss = 0.0;
        for (std::size_t i = 0; i < n; ++i) loss += log_loss_term(margin[i], y[i]);
        double l1 = 0.0;
        for (double v : w) l1 += std::abs(v);
        model.objective_trace.push_back(loss * inv_n + penalty * l1);

        if (max_step < config.convergence_tol) {
            model.converged = true;
            break;
        }
    }

    model.weights = std::move(w);
    model.intercept = b;
    return model;
}

double linear_predict_one(const LinearModel& model, std::span<const double> x) {
    if (x.size() != model.weights.size())
        throw DimensionMismatch("linear_predict_one: feature count mismatch");
    double z = model.intercept;
    for (std::size_t j = 0; j < x.size(); ++j) {
        z += model.weights[j] * ((x[j] - model.standardization.means[j]) / model.standardization.stds[j]);
    }
    return sigmoid(z);
}

std::vector<double> linear_predict(const LinearModel& model, const Matrix& X) {
    std::vector<double> out(X.rows());
    for (std::size_t i = 0; i < X.rows(); ++i) out[i] = linear_predict_one(model, X.row(i));
    return out;
}

}  // namespace sieve
