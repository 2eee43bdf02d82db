#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "memolab/matrix.hpp"
#include "memolab/rng.hpp"

namespace memolab {

/// Eigenvalues descending; columns of `vectors` are the matching orthonormal
/// eigenvectors, so m = vectors * diag(values) * vectors^T.
struct EigenDecomposition {
    std::vector<double> values;
    Matrix vectors;
};

/// Thin SVD: m = u * diag(singular_values) * v^T with orthonormal columns.
struct SingularValueDecomposition {
    Matrix u;
    std::vector<double> singular_values;
    Matrix v;
};

struct SpectralRadiusEstimate {
    double value = 0.0;
    bool converged = false;
    int iterations = 0;
};

/**
 * Symmetric eigendecomposition by cyclic Jacobi rotations.
 *
 * Rejects non-square input and matrices whose asymmetry exceeds
 * tol * max(1, max|m|). The symmetrized average (m + m^T)/2 is decomposed.
 */
EigenDecomposition sym_eig(const Matrix& m, double tol = 1e-9);

/// SVD computed from sym_eig of the Gram matrix of the shorter side.
/// Singular values are refined as column norms of m*V, which keeps the
/// reconstruction accurate even for rank-deficient input.
SingularValueDecomposition svd(const Matrix& m);

/// Count of singular values above rel_tol * largest. Zero matrix has rank 0.
/// rel_tol must lie in (0, 1).
int numerical_rank(const Matrix& m, double rel_tol = 1e-6);

/**
 * Magnitude of the dominant eigenvalue by power iteration with random
 * restarts (fixed internal seed, deterministic). A two-term recurrence fit
 * resolves complex dominant pairs. `converged` is false when the estimate
 * failed to stabilize within `iters`; callers may fall back to the largest
 * singular value, which always bounds the spectral radius from above.
 */
SpectralRadiusEstimate spectral_radius(const Matrix& m, int iters = 20000, double tol = 1e-10);

/// All eigenvalues of a general real square matrix (Hessenberg reduction
/// followed by complex shifted QR). Intended for desk-scale operators.
std::vector<std::complex<double>> eigenvalues(const Matrix& m);

/// |eigenvalues|, sorted descending.
std::vector<double> eigenvalue_magnitudes(const Matrix& m);

/// Orthonormal basis of the span of the given vectors (columns of result),
/// via SVD of the stacked matrix; directions with singular value
/// <= rel_tol * largest are dropped.
Matrix orthonormal_span_basis(const std::vector<Vector>& vectors, double rel_tol = 1e-8);

/// Orthogonal projector onto the span of the given vectors.
Matrix span_projector(const std::vector<Vector>& vectors, double rel_tol = 1e-8);

/// Residual of v after projecting onto the column span of basis Q (Q^T Q = I).
double residual_off_span(const Matrix& basis, const Vector& v);

/// Random matrix with iid standard normal entries.
Matrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols);

/// Haar-ish random orthogonal matrix from QR of a Gaussian matrix.
Matrix random_orthogonal(Rng& rng, std::size_t n);

}  // namespace memolab
