#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "memolab/matrix.hpp"
#include "memolab/net.hpp"
#include "memolab/training_set.hpp"

namespace memolab {

/**
 * Orbit of a point under repeated application of the network map, with the
 * distance to every training example recorded at each step. Iteration stops
 * early if an iterate turns non-finite.
 */
struct Trajectory {
    std::vector<Vector> points;    // x0, f(x0), ..., f^T(x0)
    Matrix distances;              // (steps+1) x n distances to training examples
    std::optional<std::size_t> converged_to;  // set when final distance < eps_recovery
    bool finite = true;            // false if iteration was truncated
};

enum class FixedPointClass { Attractor, Repeller, Inconclusive };

struct FixedPointReport {
    Vector point;
    double residual = 0.0;  // ||f(x) - x||
    double top_jacobian_eigenvalue_magnitude = 0.0;
    FixedPointClass classification = FixedPointClass::Inconclusive;
    bool approx_fixed_point = false;  // residual below the fixed-point tolerance
    bool superattractor_like = false; // one-step capture diagnostic, when run
};

const char* to_string(FixedPointClass c);

/// Default recovery radius: 0.05 x median pairwise training distance.
double default_recovery_eps(const TrainingSet& train);

Trajectory iterate(const Network& net, const Vector& x0, std::size_t steps,
                   const TrainingSet& train, double eps_recovery);

/// Classification by the spectral radius of the Jacobian at x with a margin
/// band: attractor below 1-margin, repeller above 1+margin, else
/// inconclusive.
FixedPointReport classify_fixed_point(const Network& net, const Vector& x, double margin,
                                      double fixed_point_tol = 1e-4);

/**
 * Fraction of training examples x0 for which some start in test_set lands
 * within eps after t iterations; non-decreasing in eps.
 */
double recovery_probability(const Network& net, const TrainingSet& train,
                            const std::vector<Vector>& test_set, double eps, std::size_t t);

/// R_t for every t in ts, computed from one trajectory sweep per start.
std::vector<double> recovery_curve(const Network& net, const TrainingSet& train,
                                   const std::vector<Vector>& test_set, double eps,
                                   const std::vector<std::size_t>& ts);

/// One classification per training example, plus the fixed-point residual.
std::vector<FixedPointReport> attractor_census(const Network& net, const TrainingSet& train,
                                               double margin, double fixed_point_tol = 1e-4);

/**
 * Flags examples whose neighborhoods collapse onto them in a single
 * application of the map: 50 random starts within half the median pairwise
 * distance all land within eps after one step.
 */
void flag_superattractors(std::vector<FixedPointReport>& census, const Network& net,
                          const TrainingSet& train, double eps, std::uint64_t seed);

/// CSV with columns start_id,step,nearest_train_id,nearest_train_distance.
std::string trajectories_to_csv(const std::vector<Trajectory>& trajectories);

}  // namespace memolab
