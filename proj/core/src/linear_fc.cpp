#include "memolab/linear_fc.hpp"

#include <cmath>

#include "memolab/errors.hpp"
#include "memolab/numkit.hpp"

namespace memolab {

Matrix covariance(const TrainingSet& ts) {
    const std::size_t d = ts.dim();
    Matrix s(d, d);
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const Vector x = ts.example(i);
        for (std::size_t a = 0; a < d; ++a) {
            const double xa = x[a];
            if (xa == 0.0) continue;
            for (std::size_t b = 0; b < d; ++b) s(a, b) += xa * x[b];
        }
    }
    return s;
}

double covariance_top_eigenvalue(const TrainingSet& ts) {
    EigenDecomposition e = sym_eig(covariance(ts), 1e-9);
    return e.values.empty() ? 0.0 : e.values.front();
}

double default_linear_rate(const TrainingSet& ts) {
    const double l1 = covariance_top_eigenvalue(ts);
    if (l1 <= 0.0) throw NumericError("default_linear_rate: degenerate training set");
    return 0.9 / l1;
}

double linear_loss(const Matrix& a, const TrainingSet& ts) {
    double loss = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const Vector x = ts.example(i);
        const Vector r = vec_sub(a.apply(x), x);
        loss += dot(r, r);
    }
    return 0.5 * loss;
}

namespace {

LinearGdRun run_recurrence(const TrainingSet& ts, Matrix a, double gamma,
                           std::size_t max_steps, double stop_loss) {
    if (!(gamma > 0.0)) throw InvalidInput("gd_linear: gamma must be positive");
    const Matrix s = covariance(ts);
    const std::size_t d = ts.dim();
    const Matrix step = Matrix::identity(d) - s * gamma;  // I - g S
    const Matrix gs = s * gamma;

    LinearGdRun run;
    run.learning_rate = gamma;
    run.loss_history.reserve(std::min<std::size_t>(max_steps + 1, 1 << 20));
    double loss = linear_loss(a, ts);
    run.loss_history.push_back(loss);

    Matrix best = a;
    double best_loss = loss;
    int rising = 0;
    std::size_t t = 0;
    for (; t < max_steps; ++t) {
        if (loss < stop_loss) break;
        a = a * step + gs;
        const double next_loss = linear_loss(a, ts);
        run.loss_history.push_back(next_loss);
        if (next_loss > loss) {
            if (++rising >= 10) {
                run.diverged = true;
                ++t;
                break;
            }
        } else {
            rising = 0;
        }
        if (next_loss <= best_loss) {
            best_loss = next_loss;
            best = a;
        }
        loss = next_loss;
        if (!std::isfinite(loss)) {
            run.diverged = true;
            ++t;
            break;
        }
    }
    run.steps_taken = t;
    // on divergence, report the last stable iterate
    run.weights = run.diverged ? std::move(best) : std::move(a);
    return run;
}

}  // namespace

LinearGdRun gd_linear(const TrainingSet& ts, double gamma, std::size_t max_steps,
                      double stop_loss) {
    return run_recurrence(ts, Matrix(ts.dim(), ts.dim(), 0.0), gamma, max_steps, stop_loss);
}

LinearGdRun gd_linear_from(const TrainingSet& ts, const Matrix& init, double gamma,
                           std::size_t steps) {
    if (init.rows() != ts.dim() || init.cols() != ts.dim())
        throw InvalidInput("gd_linear_from: init must be d x d");
    // stop_loss 0 runs exactly `steps` iterations
    return run_recurrence(ts, init, gamma, steps, 0.0);
}

Matrix gd_linear_closed_form(const TrainingSet& ts, double gamma, std::size_t t) {
    const Matrix s = covariance(ts);
    EigenDecomposition e = sym_eig(s, 1e-9);
    const std::size_t d = ts.dim();
    Vector diag(d);
    for (std::size_t i = 0; i < d; ++i) {
        const double lam = e.values[i];
        diag[i] = 1.0 - std::pow(1.0 - gamma * lam, static_cast<double>(t));
    }
    return e.vectors * Matrix::diagonal(diag) * e.vectors.transpose();
}

Matrix min_norm_projection(const TrainingSet& ts, double rel_tol) {
    return span_projector(ts.examples(), rel_tol);
}

int span_dimension(const TrainingSet& ts, double rel_tol) {
    return static_cast<int>(orthonormal_span_basis(ts.examples(), rel_tol).cols());
}

}  // namespace memolab
