#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "memolab/matrix.hpp"

namespace memolab {

/**
 * Parameters of a bank of 3x3 convolution filters acting on an f_in-channel
 * s x s image with one unit of zero padding. Kernels are stored row-major
 * over the window, indexed (output filter, input channel).
 */
struct ConvFilterParams {
    std::size_t input_side = 0;    // s
    std::size_t input_depth = 1;   // f_in
    std::size_t filter_count = 1;  // f_out
    std::size_t stride = 1;
    std::vector<double> kernels;  // filter_count * input_depth * 9

    double kernel(std::size_t out, std::size_t in, std::size_t k) const {
        return kernels[(out * input_depth + in) * 9 + k];
    }
    double& kernel(std::size_t out, std::size_t in, std::size_t k) {
        return kernels[(out * input_depth + in) * 9 + k];
    }
    static ConvFilterParams zeros(std::size_t s, std::size_t f_in, std::size_t f_out,
                                  std::size_t stride);
};

/**
 * A layer written as a matrix between zero-padded vectorized images: input
 * length in_depth*(in_side+2)^2, output length out_depth*(out_side+2)^2.
 * Every entry is either a structural zero (mask 0) or carries a parameter /
 * upsampling unit (mask 1); the mask records the fixed zero pattern.
 */
struct LinearizedOp {
    Matrix matrix;
    Matrix mask;  // 0/1, same shape
    std::size_t in_side = 0, in_depth = 0;
    std::size_t out_side = 0, out_depth = 0;

    std::size_t in_len() const { return in_depth * (in_side + 2) * (in_side + 2); }
    std::size_t out_len() const { return out_depth * (out_side + 2) * (out_side + 2); }

    /// Writes <prefix>.matrix.txt and <prefix>.mask.txt (0/1 grid).
    void save(const std::string& prefix) const;
};

/// Matrix form of a convolution layer (kernel 3, padding 1, given stride),
/// mapping padded input to padded output. Requires s divisible by stride.
LinearizedOp create_filter_matrix(const ConvFilterParams& p);

/// Matrix form of nearest-neighbor upsampling by `scale` on padded
/// vectorized f-channel s x s images.
LinearizedOp create_upsampling_matrix(std::size_t s, std::size_t f, std::size_t scale);

struct ComposedOp {
    Matrix padded;    // product of the layer matrices, last layer applied last
    Matrix interior;  // restriction to non-padding input/output coordinates
    std::size_t in_side = 0, in_depth = 0;
    std::size_t out_side = 0, out_depth = 0;
};

/// ops in application order: ops.front() is applied first.
ComposedOp compose(const std::vector<LinearizedOp>& ops);

/// Indices of the non-padding coordinates inside a padded vectorization.
std::vector<std::size_t> interior_indices(std::size_t side, std::size_t depth);

/// Embed an unpadded channel-major image vector into its padded frame.
Vector embed_padded(const Vector& image, std::size_t side, std::size_t depth);

/// Extract the non-padding coordinates from a padded vector.
Vector extract_interior(const Vector& padded, std::size_t side, std::size_t depth);

Matrix interior_restriction(const Matrix& padded_op, std::size_t in_side, std::size_t in_depth,
                            std::size_t out_side, std::size_t out_depth);

/**
 * Structurally forced zeros in the interior operator of a stack of
 * layer_count generic 3x3 stride-1 conv layers on s x s images, by boolean
 * propagation of the single-layer sparsity mask. Zero means the product can
 * be fully dense.
 */
long forced_zero_count(int layer_count, int s);

/// ceil(s^4 / 9): single-filter depth at which the stack matches the
/// parameter count of a fully connected layer on s x s images.
long heuristic_depth(int s);

/// Sorted eigenvalue magnitudes split at a tail threshold, mirroring the
/// "leading values, [< tail]" reporting style.
struct SpectrumReport {
    std::vector<double> leading;  // magnitudes > tail threshold, descending
    double tail_bound = 0.0;      // max magnitude of the rest
    int rank_estimate = 0;        // count of leading magnitudes
};

SpectrumReport spectrum(const Matrix& op, double tail_threshold = 1e-2);

}  // namespace memolab
