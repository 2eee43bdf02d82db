#pragma once

#include <cstddef>
#include <vector>

#include "memolab/activation.hpp"
#include "memolab/matrix.hpp"
#include "memolab/training_set.hpp"

namespace memolab {

/**
 * Entry-range and shape conditions under which the nonlinear single-layer
 * trainer provably reduces to the linear system A x = phi^{-1}(x).
 *
 * (a) all entries strictly inside (0, 1);
 * (b) per coordinate, entries lie uniformly below or uniformly above phi(0);
 * (c) phi is strictly convex or concave with consistent monotonicity on the
 *     interval between 0 and the extreme pre-image, checked by dense
 *     second-difference sampling.
 */
struct Assumption1Report {
    bool clause_a = false;
    bool clause_b = false;
    bool clause_c = false;
    std::vector<std::size_t> bad_coordinates_a;  // coordinates with out-of-range entries
    std::vector<std::size_t> bad_coordinates_b;  // coordinates straddling phi(0)
    std::vector<std::size_t> bad_coordinates_c;
    std::vector<int> matched_case;  // per coordinate: 1..4 per the clause list, 0 = none

    bool pass() const { return clause_a && clause_b && clause_c; }
};

Assumption1Report check_assumption1(const TrainingSet& ts, const Activation& phi,
                                    std::size_t samples = 1000, double sign_tol = 1e-9);

/**
 * Per-example learning rates for the adaptive trainer. The slope table holds
 * the chord slopes s_{i,j} through (0, phi(0)) and (phi^{-1}(x_j^i), x_j^i);
 * the per-example rate is gamma / max_j |s_{i,j}| and the base rate obeys
 * gamma < 1/(n L d) with L the entry ratio bound.
 */
struct AdaptiveGdConfig {
    double gamma = 0.0;         // base rate, < 1/(n L d)
    double ratio_bound = 1.0;   // L = max x_j / x_k over examples
    Matrix slopes;              // n x d chord-slope table
    std::vector<double> example_rates;  // gamma / worst-case |slope| per example
    std::size_t max_steps = 1000000;
    double stop_residual = 1e-6;  // max reconstruction residual

    static AdaptiveGdConfig from_data(const TrainingSet& ts, const Activation& phi,
                                      double safety = 0.9, std::size_t max_steps = 1000000,
                                      double stop_residual = 1e-6);
};

struct GdResult {
    Matrix weights;
    std::size_t steps = 0;
    double max_recon_residual = 0.0;   // max_i ||phi(A x_i) - x_i||_inf
    double max_linear_residual = 0.0;  // max_i ||A x_i - phi^{-1}(x_i)||_inf
    bool converged = false;
};

/// One update of the adaptive rule on all rows; exposed so callers can
/// observe per-step behavior (monotone entry growth, bounding sequences).
Matrix adaptive_gd_step(const Matrix& a, const TrainingSet& ts, const Activation& phi,
                        const AdaptiveGdConfig& cfg);

/// Gradient descent on the single-layer loss with the adaptive per-example
/// rate, from A = 0. Rejects data that fails the assumption check or a
/// non-overparameterized shape (requires n < d).
GdResult adaptive_gd(const TrainingSet& ts, const Activation& phi, const AdaptiveGdConfig& cfg);

/// Plain constant-rate gradient descent on the same loss, for empirical
/// comparison against the adaptive variant.
GdResult constant_lr_gd(const TrainingSet& ts, const Activation& phi, double gamma,
                        std::size_t max_steps, double stop_residual = 1e-6);

struct PhiEigenResult {
    bool is_eigenvector = false;
    double eigenvalue = 0.0;
    double residual = 0.0;  // ||phi(Au) - lambda u|| / ||u||
};

/// Tests phi(A u) = lambda u with the least-squares lambda = <phi(Au),u>/<u,u>.
PhiEigenResult phi_eigencheck(const Matrix& a, const Activation& phi, const Vector& u,
                              double tol);

struct PhiSpanResult {
    bool member = false;
    double distance = 0.0;  // || (I - P) phi^{-1}(y) || off span{phi^{-1}(x_i)}
};

/// Membership of y in the phi-span of the training examples. Entries of y
/// must lie in range(phi).
PhiSpanResult phi_span_membership(const TrainingSet& train, const Activation& phi,
                                  const Vector& y, double tol);

}  // namespace memolab
