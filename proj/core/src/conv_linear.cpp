#include "memolab/conv_linear.hpp"

#include <fstream>

#include "memolab/errors.hpp"
#include "memolab/numkit.hpp"

namespace memolab {

ConvFilterParams ConvFilterParams::zeros(std::size_t s, std::size_t f_in, std::size_t f_out,
                                         std::size_t stride) {
    ConvFilterParams p;
    p.input_side = s;
    p.input_depth = f_in;
    p.filter_count = f_out;
    p.stride = stride;
    p.kernels.assign(f_out * f_in * 9, 0.0);
    return p;
}

void LinearizedOp::save(const std::string& prefix) const {
    matrix.save(prefix + ".matrix.txt");
    std::ofstream out(prefix + ".mask.txt");
    if (!out) throw InvalidInput("cannot open for writing: " + prefix + ".mask.txt");
    for (std::size_t i = 0; i < mask.rows(); ++i) {
        for (std::size_t j = 0; j < mask.cols(); ++j) {
            if (j) out << ' ';
            out << (mask(i, j) != 0.0 ? 1 : 0);
        }
        out << '\n';
    }
}

LinearizedOp create_filter_matrix(const ConvFilterParams& p) {
    const std::size_t s = p.input_side;
    const std::size_t stride = p.stride;
    if (s == 0) throw InvalidInput("create_filter_matrix: input side must be positive");
    if (stride != 1 && stride != 2) throw InvalidInput("create_filter_matrix: stride must be 1 or 2");
    if (s % stride != 0) throw InvalidInput("create_filter_matrix: s must be divisible by stride");
    if (p.kernels.size() != p.filter_count * p.input_depth * 9)
        throw InvalidInput("create_filter_matrix: kernel array has wrong length");

    const std::size_t padded = s + 2;
    const std::size_t resized = s / stride;
    const std::size_t out_padded = resized + 2;
    const std::size_t in_len = p.input_depth * padded * padded;
    const std::size_t out_len = p.filter_count * out_padded * out_padded;

    LinearizedOp op;
    op.in_side = s;
    op.in_depth = p.input_depth;
    op.out_side = resized;
    op.out_depth = p.filter_count;
    op.matrix = Matrix(out_len, in_len);
    op.mask = Matrix(out_len, in_len);

    // Per output filter: one row block per input channel holds the kernel at
    // offsets k%3 + padded*floor(k/3); output row (r, c) of the padded
    // output grid shifts that block right by padded*stride*r + stride*c.
    for (std::size_t out_f = 0; out_f < p.filter_count; ++out_f) {
        const std::size_t row_base = out_f * out_padded * out_padded;
        for (std::size_t out_r = 0; out_r < resized; ++out_r) {
            for (std::size_t out_c = 0; out_c < resized; ++out_c) {
                const std::size_t row = row_base + (1 + out_r) * out_padded + (1 + out_c);
                const std::size_t shift = padded * stride * out_r + stride * out_c;
                for (std::size_t in_c = 0; in_c < p.input_depth; ++in_c) {
                    const std::size_t chan_base = in_c * padded * padded;
                    for (std::size_t k = 0; k < 9; ++k) {
                        const std::size_t pos = k % 3 + padded * (k / 3) + shift;
                        op.matrix(row, chan_base + pos) = p.kernel(out_f, in_c, k);
                        op.mask(row, chan_base + pos) = 1.0;
                    }
                }
            }
        }
    }
    return op;
}

LinearizedOp create_upsampling_matrix(std::size_t s, std::size_t f, std::size_t scale) {
    if (s == 0 || f == 0) throw InvalidInput("create_upsampling_matrix: bad shape");
    if (scale < 1) throw InvalidInput("create_upsampling_matrix: scale must be >= 1");

    const std::size_t output_size = s * scale + 2;
    const std::size_t in_len = f * (s + 2) * (s + 2);
    const std::size_t out_len = f * output_size * output_size;

    LinearizedOp op;
    op.in_side = s;
    op.in_depth = f;
    op.out_side = s * scale;
    op.out_depth = f;
    op.matrix = Matrix(out_len, in_len);
    op.mask = Matrix(out_len, in_len);

    std::size_t index = output_size + 1;
    for (std::size_t filter = 0; filter < f; ++filter) {
        for (std::size_t row = 1; row <= s; ++row) {
            for (std::size_t rep_row = 0; rep_row < scale; ++rep_row) {
                for (std::size_t col = 1; col <= s; ++col) {
                    const std::size_t src = col + row * (s + 2) + filter * (s + 2) * (s + 2);
                    for (std::size_t rep_col = 0; rep_col < scale; ++rep_col) {
                        op.matrix(index, src) = 1.0;
                        op.mask(index, src) = 1.0;
                        ++index;
                    }
                }
                index += 2;
            }
        }
        index += 2 * output_size;
    }
    return op;
}

ComposedOp compose(const std::vector<LinearizedOp>& ops) {
    if (ops.empty()) throw InvalidInput("compose: empty operator list");
    for (std::size_t k = 1; k < ops.size(); ++k) {
        if (ops[k].matrix.cols() != ops[k - 1].matrix.rows() ||
            ops[k].in_side != ops[k - 1].out_side || ops[k].in_depth != ops[k - 1].out_depth)
            throw InvalidInput("compose: adjacent operator shapes do not match");
    }
    Matrix product = ops.front().matrix;
    for (std::size_t k = 1; k < ops.size(); ++k) product = ops[k].matrix * product;

    ComposedOp out;
    out.in_side = ops.front().in_side;
    out.in_depth = ops.front().in_depth;
    out.out_side = ops.back().out_side;
    out.out_depth = ops.back().out_depth;
    out.interior = interior_restriction(product, out.in_side, out.in_depth, out.out_side,
                                        out.out_depth);
    out.padded = std::move(product);
    return out;
}

std::vector<std::size_t> interior_indices(std::size_t side, std::size_t depth) {
    const std::size_t padded = side + 2;
    std::vector<std::size_t> idx;
    idx.reserve(depth * side * side);
    for (std::size_t c = 0; c < depth; ++c)
        for (std::size_t r = 1; r <= side; ++r)
            for (std::size_t cc = 1; cc <= side; ++cc)
                idx.push_back(c * padded * padded + r * padded + cc);
    return idx;
}

Vector embed_padded(const Vector& image, std::size_t side, std::size_t depth) {
    if (image.size() != depth * side * side) throw InvalidInput("embed_padded: length mismatch");
    const std::size_t padded = side + 2;
    Vector out(depth * padded * padded, 0.0);
    const std::vector<std::size_t> idx = interior_indices(side, depth);
    for (std::size_t i = 0; i < idx.size(); ++i) out[idx[i]] = image[i];
    return out;
}

Vector extract_interior(const Vector& padded_vec, std::size_t side, std::size_t depth) {
    const std::size_t padded = side + 2;
    if (padded_vec.size() != depth * padded * padded)
        throw InvalidInput("extract_interior: length mismatch");
    const std::vector<std::size_t> idx = interior_indices(side, depth);
    Vector out(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i) out[i] = padded_vec[idx[i]];
    return out;
}

Matrix interior_restriction(const Matrix& padded_op, std::size_t in_side, std::size_t in_depth,
                            std::size_t out_side, std::size_t out_depth) {
    return padded_op.select(interior_indices(out_side, out_depth),
                            interior_indices(in_side, in_depth));
}

long forced_zero_count(int layer_count, int s) {
    if (layer_count < 1 || s < 1) throw InvalidInput("forced_zero_count: bad arguments");
    ConvFilterParams p = ConvFilterParams::zeros(static_cast<std::size_t>(s), 1, 1, 1);
    for (auto& k : p.kernels) k = 1.0;
    const Matrix single = create_filter_matrix(p).mask;
    const std::size_t n = single.rows();

    // boolean matrix power of the sparsity pattern
    std::vector<std::uint8_t> acc(n * n), layer(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            acc[i * n + j] = single(i, j) != 0.0 ? 1 : 0;
            layer[i * n + j] = acc[i * n + j];
        }
    for (int l = 1; l < layer_count; ++l) {
        std::vector<std::uint8_t> next(n * n, 0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k) {
                if (!layer[i * n + k]) continue;
                for (std::size_t j = 0; j < n; ++j)
                    if (acc[k * n + j]) next[i * n + j] = 1;
            }
        acc = std::move(next);
    }

    const std::vector<std::size_t> interior =
        interior_indices(static_cast<std::size_t>(s), 1);
    long zeros = 0;
    for (std::size_t a : interior)
        for (std::size_t b : interior)
            if (!acc[a * n + b]) ++zeros;
    return zeros;
}

long heuristic_depth(int s) {
    if (s < 1) throw InvalidInput("heuristic_depth: s must be >= 1");
    const long s4 = static_cast<long>(s) * s * s * s;
    return (s4 + 8) / 9;
}

SpectrumReport spectrum(const Matrix& op, double tail_threshold) {
    if (!op.is_square()) throw InvalidInput("spectrum: operator must be square");
    const std::vector<double> mags = eigenvalue_magnitudes(op);
    SpectrumReport rep;
    for (double m : mags) {
        if (m > tail_threshold && rep.tail_bound == 0.0)
            rep.leading.push_back(m);
        else
            rep.tail_bound = std::max(rep.tail_bound, m);
    }
    rep.rank_estimate = static_cast<int>(rep.leading.size());
    return rep;
}

}  // namespace memolab
