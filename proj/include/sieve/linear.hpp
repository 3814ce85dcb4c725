#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sieve/matrix.hpp"

namespace sieve {

struct LinearModelConfig {
    double C = 1.0;  // inverse regularization strength; penalty weight is 1/C
    std::size_t max_iterations = 1000;
    double convergence_tol = 1e-6;
};

/// Per-column standardization parameters frozen at fit time.
struct Standardization {
    std::vector<double> means;
    std::vector<double> stds;  // zero-variance columns recorded as 1
};

Standardization standardize_fit(const Matrix& X);
Matrix standardize_apply(const Matrix& X, const Standardization& s);

/// L1-regularized logistic regression fitted on standardized features.
struct LinearModel {
    LinearModelConfig config;
    Standardization standardization;
    std::vector<double> weights;  // in standardized feature space
    double intercept = 0.0;
    std::vector<double> objective_trace;  // penalized objective after each sweep
    bool converged = false;
};

/// Minimizes (1/n) sum log-loss + (1/C) sum |w_j| by cyclic coordinate
/// descent with soft-thresholding on a quadratic majorizer (curvature bound
/// sigma'' <= 1/4), so the objective never increases. The intercept is
/// unpenalized. Deterministic. Throws SingleClassInput / DimensionMismatch.
LinearModel fit_logistic_lasso(const Matrix& X, std::span<const int> y,
                               const LinearModelConfig& config);

/// sigmoid(w . standardized(x) + intercept)
double linear_predict_one(const LinearModel& model, std::span<const double> x);
std::vector<double> linear_predict(const LinearModel& model, const Matrix& X);

/// Penalized objective at (weights, intercept) for standardized X. Exposed
/// for the descent and gradient checks.
double logistic_objective(const Matrix& X_std, std::span<const int> y,
                          std::span<const double> weights, double intercept, double C);

/// Smooth part only: (1/n) sum log-loss, without the L1 term.
double logistic_loss(const Matrix& X_std, std::span<const int> y,
                     std::span<const double> weights, double intercept);

/// Gradient of the smooth part w.r.t. (weights..., intercept).
std::vector<double> logistic_loss_gradient(const Matrix& X_std, std::span<const int> y,
                                           std::span<const double> weights, double intercept);

}  // namespace sieve
