#pragma once

#include <optional>
#include <vector>

#include "memolab/matrix.hpp"
#include "memolab/training_set.hpp"

namespace memolab {

/**
 * Linear single-layer autoencoder: gradient descent on
 * L = 1/2 sum_i ||A x_i - x_i||^2, whose recurrence from A = 0 is
 * A <- A (I - g S) + g S with S the example second-moment matrix. With
 * g < 1/lambda_1(S) the iterates converge to the orthogonal projector onto
 * the span of the examples (the minimum-norm interpolant).
 */
struct LinearGdRun {
    Matrix weights;
    double learning_rate = 0.0;
    std::size_t steps_taken = 0;
    std::vector<double> loss_history;
    bool diverged = false;
};

/// S = sum_i x_i x_i^T (unnormalized second-moment matrix).
Matrix covariance(const TrainingSet& ts);

/// Largest eigenvalue of covariance(ts); used for the default step size.
double covariance_top_eigenvalue(const TrainingSet& ts);

/// 0.9 / lambda_1(S).
double default_linear_rate(const TrainingSet& ts);

LinearGdRun gd_linear(const TrainingSet& ts, double gamma, std::size_t max_steps,
                      double stop_loss = 1e-12);

/// Exact t-step iterate computed spectrally: Q (I - (I - g L)^t) Q^T.
Matrix gd_linear_closed_form(const TrainingSet& ts, double gamma, std::size_t t);

/// Orthogonal projector onto span of the examples, from the SVD of the
/// stacked example matrix.
Matrix min_norm_projection(const TrainingSet& ts, double rel_tol = 1e-8);

/// Same recurrence started from an arbitrary matrix. Components of the
/// initializer orthogonal to the example span are preserved exactly.
LinearGdRun gd_linear_from(const TrainingSet& ts, const Matrix& init, double gamma,
                           std::size_t steps);

/// dim span(examples) via SVD of the stacked matrix.
int span_dimension(const TrainingSet& ts, double rel_tol = 1e-8);

double linear_loss(const Matrix& a, const TrainingSet& ts);

}  // namespace memolab
