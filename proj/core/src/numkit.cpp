#include "memolab/numkit.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "memolab/errors.hpp"

namespace memolab {

namespace {

double off_diagonal_norm(const Matrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (i != j) s += a(i, j) * a(i, j);
    return std::sqrt(s);
}

void sort_eigen_descending(std::vector<double>& values, Matrix& vectors) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
    std::vector<double> sorted_vals(n);
    Matrix sorted_vecs(vectors.rows(), n);
    for (std::size_t k = 0; k < n; ++k) {
        sorted_vals[k] = values[order[k]];
        sorted_vecs.set_col(k, vectors.col(order[k]));
    }
    values = std::move(sorted_vals);
    vectors = std::move(sorted_vecs);
}

}  // namespace

EigenDecomposition sym_eig(const Matrix& m, double tol) {
    if (!m.is_square()) throw InvalidInput("sym_eig: matrix must be square");
    if (!m.all_finite()) throw InvalidInput("sym_eig: non-finite entries");
    const double scale = std::max(1.0, m.max_abs());
    if (m.asymmetry() > tol * scale)
        throw InvalidInput("sym_eig: matrix asymmetric beyond tolerance");

    const std::size_t n = m.rows();
    Matrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = 0.5 * (m(i, j) + m(j, i));
    Matrix q = Matrix::identity(n);

    const double frob = std::max(a.frobenius_norm(), 1e-300);
    const int max_sweeps = 60;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        if (off_diagonal_norm(a) <= 1e-15 * frob * static_cast<double>(n)) break;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t qq = p + 1; qq < n; ++qq) {
                const double apq = a(p, qq);
                if (std::fabs(apq) <= 1e-300) {
                    a(p, qq) = a(qq, p) = 0.0;
                    continue;
                }
                const double app = a(p, p);
                const double aqq2 = a(qq, qq);
                const double theta = (aqq2 - app) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    if (k == p || k == qq) continue;
                    const double akp = a(k, p);
                    const double akq = a(k, qq);
                    a(k, p) = a(p, k) = c * akp - s * akq;
                    a(k, qq) = a(qq, k) = s * akp + c * akq;
                }
                a(p, p) = app - t * apq;
                a(qq, qq) = aqq2 + t * apq;
                a(p, qq) = a(qq, p) = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    const double qkp = q(k, p);
                    const double qkq = q(k, qq);
                    q(k, p) = c * qkp - s * qkq;
                    q(k, qq) = s * qkp + c * qkq;
                }
            }
        }
    }

    EigenDecomposition out;
    out.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.values[i] = a(i, i);
    out.vectors = std::move(q);
    sort_eigen_descending(out.values, out.vectors);
    return out;
}

SingularValueDecomposition svd(const Matrix& m) {
    if (!m.all_finite()) throw InvalidInput("svd: non-finite entries");
    if (m.rows() == 0 || m.cols() == 0) return {};

    const bool tall = m.rows() >= m.cols();
    const Matrix& a = m;
    // Gram matrix of the shorter side
    Matrix gram = tall ? (a.transpose() * a) : (a * a.transpose());
    EigenDecomposition eig = sym_eig(gram, 1e-6);

    const std::size_t k = gram.rows();
    Matrix v_side = eig.vectors;  // right factors if tall, left if wide

    // Columns of a*V (or a^T*U) give the paired factors and accurate
    // singular values as their norms.
    Matrix paired(tall ? a.rows() : a.cols(), k);
    std::vector<double> sigma(k, 0.0);
    for (std::size_t j = 0; j < k; ++j) {
        Vector vj = v_side.col(j);
        Vector w = tall ? a.apply(vj) : a.apply_transposed(vj);
        sigma[j] = norm2(w);
        paired.set_col(j, w);
    }

    // Sort descending (eigenvalue order can disagree with refined norms on
    // near-ties).
    std::vector<std::size_t> order(k);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return sigma[x] > sigma[y]; });
    Matrix v_sorted(v_side.rows(), k), p_sorted(paired.rows(), k);
    std::vector<double> s_sorted(k);
    for (std::size_t j = 0; j < k; ++j) {
        s_sorted[j] = sigma[order[j]];
        v_sorted.set_col(j, v_side.col(order[j]));
        p_sorted.set_col(j, paired.col(order[j]));
    }

    const double cutoff = s_sorted.empty() ? 0.0
                                           : s_sorted[0] * 1e-14 * static_cast<double>(std::max(m.rows(), m.cols()));
    for (std::size_t j = 0; j < k; ++j) {
        Vector col = p_sorted.col(j);
        if (s_sorted[j] > cutoff && s_sorted[j] > 0.0) {
            p_sorted.set_col(j, vec_scale(col, 1.0 / s_sorted[j]));
        } else {
            s_sorted[j] = std::max(s_sorted[j], 0.0);
            // complete with a basis vector orthogonal to the previous columns
            const std::size_t dim = p_sorted.rows();
            Vector best(dim, 0.0);
            double best_norm = -1.0;
            for (std::size_t e = 0; e < dim; ++e) {
                Vector cand(dim, 0.0);
                cand[e] = 1.0;
                for (std::size_t jj = 0; jj < j; ++jj) {
                    Vector u = p_sorted.col(jj);
                    const double proj = dot(u, cand);
                    for (std::size_t i = 0; i < dim; ++i) cand[i] -= proj * u[i];
                }
                const double nn = norm2(cand);
                if (nn > best_norm) {
                    best_norm = nn;
                    best = cand;
                }
            }
            if (best_norm > 1e-12) p_sorted.set_col(j, vec_scale(best, 1.0 / best_norm));
        }
    }

    SingularValueDecomposition out;
    out.singular_values = std::move(s_sorted);
    if (tall) {
        out.u = std::move(p_sorted);
        out.v = std::move(v_sorted);
    } else {
        out.u = std::move(v_sorted);
        out.v = std::move(p_sorted);
    }
    return out;
}

int numerical_rank(const Matrix& m, double rel_tol) {
    if (!(rel_tol > 0.0 && rel_tol < 1.0)) throw InvalidInput("numerical_rank: rel_tol must be in (0,1)");
    if (m.rows() == 0 || m.cols() == 0) return 0;
    SingularValueDecomposition s = svd(m);
    if (s.singular_values.empty() || s.singular_values[0] <= 0.0) return 0;
    const double cut = rel_tol * s.singular_values[0];
    int r = 0;
    for (double x : s.singular_values)
        if (x > cut) ++r;
    return r;
}

SpectralRadiusEstimate spectral_radius(const Matrix& m, int iters, double tol) {
    if (!m.is_square()) throw InvalidInput("spectral_radius: matrix must be square");
    const std::size_t n = m.rows();
    if (n == 0) return {0.0, true, 0};
    if (n == 1) return {std::fabs(m(0, 0)), true, 0};
    if (m.max_abs() == 0.0) return {0.0, true, 0};

    Rng rng(0x5eedb0a7d00dull);  // fixed internal seed; results are deterministic
    SpectralRadiusEstimate best{0.0, false, 0};

    const int restarts = 3;
    for (int r = 0; r < restarts; ++r) {
        Vector x = rng.normal_vector(n);
        double nx = norm2(x);
        if (nx == 0.0) continue;
        x = vec_scale(x, 1.0 / nx);

        Vector x_prev;              // unit vector one step back
        double n_prev = 0.0;        // norm multiplier between x_prev -> x
        double estimate = 0.0;
        int stable = 0;
        bool converged = false;
        int it = 0;
        for (it = 0; it < iters; ++it) {
            Vector y = m.apply(x);
            const double ny = norm2(y);
            if (ny == 0.0) {
                // reached the kernel: dominant behavior along this start is nilpotent
                estimate = 0.0;
                converged = true;
                break;
            }
            Vector x_next = vec_scale(y, 1.0 / ny);

            double rho = ny;  // plain power estimate
            if (!x_prev.empty()) {
                // Fit M^2 x_prev = alpha * M x_prev + beta * x_prev using the
                // normalized iterates: n_prev*ny*x_next = alpha*n_prev*x + beta*x_prev.
                Vector lhs = vec_scale(x_next, n_prev * ny);
                // 2x2 normal equations with basis {n_prev*x, x_prev}
                Vector b1 = vec_scale(x, n_prev);
                const Vector& b2 = x_prev;
                const double g11 = dot(b1, b1), g12 = dot(b1, b2), g22 = dot(b2, b2);
                const double r1 = dot(b1, lhs), r2 = dot(b2, lhs);
                const double det = g11 * g22 - g12 * g12;
                if (std::fabs(det) > 1e-30) {
                    const double alpha = (g22 * r1 - g12 * r2) / det;
                    const double beta = (g11 * r2 - g12 * r1) / det;
                    // roots of z^2 - alpha z - beta
                    const std::complex<double> disc(alpha * alpha + 4.0 * beta, 0.0);
                    const std::complex<double> sq = std::sqrt(disc);
                    const std::complex<double> z1 = 0.5 * (alpha + sq);
                    const std::complex<double> z2 = 0.5 * (alpha - sq);
                    rho = std::max(std::abs(z1), std::abs(z2));
                }
            }

            if (it > 2 && std::fabs(rho - estimate) <= tol * std::max(1.0, std::fabs(rho))) {
                ++stable;
                if (stable >= 5) {
                    estimate = rho;
                    converged = true;
                    break;
                }
            } else {
                stable = 0;
            }
            estimate = rho;
            x_prev = x;
            n_prev = ny;
            x = std::move(x_next);
        }

        if (converged) {
            if (!best.converged || estimate > best.value) best = {estimate, true, it + 1};
        } else if (!best.converged && estimate > best.value) {
            best = {estimate, false, it};
        }
    }
    return best;
}

namespace {

// Complex shifted QR with Wilkinson shifts on a Hessenberg matrix.
// Operates in-place on the dense complex matrix h (n x n, row-major).
using cpx = std::complex<double>;

struct ComplexDense {
    std::size_t n = 0;
    std::vector<cpx> a;
    cpx& at(std::size_t i, std::size_t j) { return a[i * n + j]; }
    cpx at(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

void hessenberg_reduce(ComplexDense& h) {
    const std::size_t n = h.n;
    if (n < 3) return;
    for (std::size_t k = 0; k + 2 < n; ++k) {
        // Householder on column k below the subdiagonal
        double col_norm = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) col_norm += std::norm(h.at(i, k));
        col_norm = std::sqrt(col_norm);
        if (col_norm <= 1e-300) continue;
        cpx x0 = h.at(k + 1, k);
        const double ax0 = std::abs(x0);
        cpx phase = (ax0 > 0.0) ? x0 / ax0 : cpx(1.0, 0.0);
        cpx alpha = -phase * col_norm;
        std::vector<cpx> v(n, cpx(0.0, 0.0));
        for (std::size_t i = k + 1; i < n; ++i) v[i] = h.at(i, k);
        v[k + 1] -= alpha;
        double vnorm2 = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) vnorm2 += std::norm(v[i]);
        if (vnorm2 <= 1e-300) continue;

        // H <- (I - 2 v v* / v*v) H
        for (std::size_t j = k; j < n; ++j) {
            cpx s(0.0, 0.0);
            for (std::size_t i = k + 1; i < n; ++i) s += std::conj(v[i]) * h.at(i, j);
            s *= 2.0 / vnorm2;
            for (std::size_t i = k + 1; i < n; ++i) h.at(i, j) -= s * v[i];
        }
        // H <- H (I - 2 v v* / v*v)
        for (std::size_t i = 0; i < n; ++i) {
            cpx s(0.0, 0.0);
            for (std::size_t j = k + 1; j < n; ++j) s += h.at(i, j) * v[j];
            s *= 2.0 / vnorm2;
            for (std::size_t j = k + 1; j < n; ++j) h.at(i, j) -= s * std::conj(v[j]);
        }
        h.at(k + 1, k) = alpha;
        for (std::size_t i = k + 2; i < n; ++i) h.at(i, k) = cpx(0.0, 0.0);
    }
}

cpx wilkinson_shift(const ComplexDense& h, std::size_t p) {
    const cpx a = h.at(p - 1, p - 1), b = h.at(p - 1, p);
    const cpx c = h.at(p, p - 1), d = h.at(p, p);
    const cpx tr = a + d;
    const cpx det = a * d - b * c;
    const cpx disc = std::sqrt(tr * tr - 4.0 * det);
    const cpx l1 = 0.5 * (tr + disc);
    const cpx l2 = 0.5 * (tr - disc);
    return (std::abs(l1 - d) < std::abs(l2 - d)) ? l1 : l2;
}

}  // namespace

std::vector<std::complex<double>> eigenvalues(const Matrix& m) {
    if (!m.is_square()) throw InvalidInput("eigenvalues: matrix must be square");
    if (!m.all_finite()) throw InvalidInput("eigenvalues: non-finite entries");
    const std::size_t n = m.rows();
    std::vector<cpx> out;
    if (n == 0) return out;

    ComplexDense h;
    h.n = n;
    h.a.assign(n * n, cpx(0.0, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) h.at(i, j) = cpx(m(i, j), 0.0);
    hessenberg_reduce(h);

    const double eps = 1e-15;
    std::size_t p = n - 1;
    long total_iters = 0;
    const long iter_cap = 120 * static_cast<long>(n) + 200;
    int since_deflation = 0;

    while (true) {
        // deflate tiny subdiagonals in the active range [0..p]
        for (std::size_t i = 1; i <= p; ++i) {
            const double bound = eps * (std::abs(h.at(i - 1, i - 1)) + std::abs(h.at(i, i)));
            if (std::abs(h.at(i, i - 1)) <= std::max(bound, 1e-300)) h.at(i, i - 1) = cpx(0.0, 0.0);
        }
        if (p == 0) {
            out.push_back(h.at(0, 0));
            break;
        }
        if (std::abs(h.at(p, p - 1)) == 0.0) {
            out.push_back(h.at(p, p));
            --p;
            since_deflation = 0;
            continue;
        }
        // active block [l..p]
        std::size_t l = p;
        while (l > 0 && std::abs(h.at(l, l - 1)) != 0.0) --l;
        if (p - l == 1) {
            // closed-form 2x2 block
            const cpx a = h.at(l, l), b = h.at(l, p);
            const cpx c = h.at(p, l), d = h.at(p, p);
            const cpx tr = a + d;
            const cpx disc = std::sqrt(tr * tr - 4.0 * (a * d - b * c));
            out.push_back(0.5 * (tr + disc));
            out.push_back(0.5 * (tr - disc));
            if (l == 0) break;
            p = l - 1;
            since_deflation = 0;
            continue;
        }

        if (++total_iters > iter_cap)
            throw NumericError("eigenvalues: QR iteration failed to converge");

        cpx mu = wilkinson_shift(h, p);
        if (++since_deflation % 20 == 0) {
            // exceptional shift to break rare stalls
            mu = h.at(p, p) + cpx(1.5 * std::abs(h.at(p, p - 1)), 0.0);
        }

        // explicit shifted QR step on the active window via Givens rotations
        const std::size_t w = p - l + 1;
        std::vector<cpx> cs(w - 1), sn(w - 1);
        for (std::size_t i = l; i < p; ++i) h.at(i, i) -= mu;
        h.at(p, p) -= mu;
        // QR: eliminate subdiagonal within the window
        for (std::size_t k = l; k < p; ++k) {
            const cpx f = h.at(k, k);
            const cpx g = h.at(k + 1, k);
            const double fn = std::abs(f), gn = std::abs(g);
            double denom = std::hypot(fn, gn);
            cpx c(1.0, 0.0), s(0.0, 0.0);
            if (denom > 0.0 && gn > 0.0) {
                c = cpx(fn / denom, 0.0);
                const cpx fphase = (fn > 0.0) ? f / fn : cpx(1.0, 0.0);
                s = fphase * std::conj(g) / denom;
            }
            cs[k - l] = c;
            sn[k - l] = s;
            for (std::size_t j = k; j <= p; ++j) {
                const cpx t1 = h.at(k, j), t2 = h.at(k + 1, j);
                h.at(k, j) = c * t1 + s * t2;
                h.at(k + 1, j) = -std::conj(s) * t1 + c * t2;
            }
        }
        // RQ: apply conjugate rotations on the right
        for (std::size_t k = l; k < p; ++k) {
            const cpx c = cs[k - l], s = sn[k - l];
            const std::size_t top = std::min(k + 2, p + 1);
            for (std::size_t i = l; i < top; ++i) {
                const cpx t1 = h.at(i, k), t2 = h.at(i, k + 1);
                h.at(i, k) = c * t1 + std::conj(s) * t2;
                h.at(i, k + 1) = -s * t1 + c * t2;
            }
        }
        for (std::size_t i = l; i <= p; ++i) h.at(i, i) += mu;
    }

    return out;
}

std::vector<double> eigenvalue_magnitudes(const Matrix& m) {
    std::vector<std::complex<double>> eig = eigenvalues(m);
    std::vector<double> mags(eig.size());
    for (std::size_t i = 0; i < eig.size(); ++i) mags[i] = std::abs(eig[i]);
    std::sort(mags.begin(), mags.end(), std::greater<double>());
    return mags;
}

Matrix orthonormal_span_basis(const std::vector<Vector>& vectors, double rel_tol) {
    if (vectors.empty()) return Matrix();
    Matrix stacked = Matrix::from_rows(vectors);
    SingularValueDecomposition s = svd(stacked);
    if (s.singular_values.empty() || s.singular_values[0] <= 0.0)
        return Matrix(stacked.cols(), 0);
    std::size_t r = 0;
    while (r < s.singular_values.size() && s.singular_values[r] > rel_tol * s.singular_values[0]) ++r;
    std::vector<std::size_t> rows(stacked.cols()), cols(r);
    std::iota(rows.begin(), rows.end(), 0);
    std::iota(cols.begin(), cols.end(), 0);
    return s.v.select(rows, cols);
}

Matrix span_projector(const std::vector<Vector>& vectors, double rel_tol) {
    if (vectors.empty()) throw InvalidInput("span_projector: empty vector set");
    Matrix basis = orthonormal_span_basis(vectors, rel_tol);
    if (basis.cols() == 0) return Matrix(vectors.front().size(), vectors.front().size(), 0.0);
    return basis * basis.transpose();
}

double residual_off_span(const Matrix& basis, const Vector& v) {
    Vector r = v;
    for (std::size_t j = 0; j < basis.cols(); ++j) {
        Vector q = basis.col(j);
        const double proj = dot(q, r);
        for (std::size_t i = 0; i < r.size(); ++i) r[i] -= proj * q[i];
    }
    return norm2(r);
}

Matrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols) {
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = rng.normal();
    return m;
}

Matrix random_orthogonal(Rng& rng, std::size_t n) {
    // modified Gram-Schmidt QR of a Gaussian matrix
    Matrix g = random_matrix(rng, n, n);
    Matrix q(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        Vector v = g.col(j);
        for (std::size_t k = 0; k < j; ++k) {
            Vector u = q.col(k);
            const double proj = dot(u, v);
            for (std::size_t i = 0; i < n; ++i) v[i] -= proj * u[i];
        }
        double nn = norm2(v);
        if (nn < 1e-12) {
            // extraordinarily degenerate draw; replace with a basis vector
            v.assign(n, 0.0);
            v[j] = 1.0;
            for (std::size_t k = 0; k < j; ++k) {
                Vector u = q.col(k);
                const double proj = dot(u, v);
                for (std::size_t i = 0; i < n; ++i) v[i] -= proj * u[i];
            }
            nn = norm2(v);
        }
        q.set_col(j, vec_scale(v, 1.0 / nn));
    }
    return q;
}

}  // namespace memolab
