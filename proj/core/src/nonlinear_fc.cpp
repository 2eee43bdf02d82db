#include "memolab/nonlinear_fc.hpp"

#include <algorithm>
#include <cmath>

#include "memolab/errors.hpp"
#include "memolab/numkit.hpp"

namespace memolab {

namespace {

int sign_of(double x, double tol) {
    if (x > tol) return 1;
    if (x < -tol) return -1;
    return 0;
}

}  // namespace

Assumption1Report check_assumption1(const TrainingSet& ts, const Activation& phi,
                                    std::size_t samples, double sign_tol) {
    const std::size_t n = ts.size();
    const std::size_t d = ts.dim();
    const double phi0 = phi.at_zero();

    Assumption1Report rep;
    rep.clause_a = true;
    rep.clause_b = true;
    rep.clause_c = true;
    rep.matched_case.assign(d, 0);

    for (std::size_t j = 0; j < d; ++j) {
        bool a_ok = true, below = true, above = true;
        for (std::size_t i = 0; i < n; ++i) {
            const double x = ts.stacked()(i, j);
            if (!(x > 0.0 && x < 1.0)) a_ok = false;
            if (!(x < phi0)) below = false;
            if (!(x > phi0)) above = false;
        }
        if (!a_ok) {
            rep.clause_a = false;
            rep.bad_coordinates_a.push_back(j);
        }
        if (!below && !above) {
            rep.clause_b = false;
            rep.bad_coordinates_b.push_back(j);
        }

        // clause (c): extreme pre-image for this coordinate
        double zext = 0.0;
        bool have_z = true;
        for (std::size_t i = 0; i < n; ++i) {
            const double x = ts.stacked()(i, j);
            if (!phi.in_range(x)) {
                have_z = false;
                break;
            }
            const double z = phi.min_norm_preimage(x);
            if (std::fabs(z) > std::fabs(zext)) zext = z;
        }
        if (!have_z || zext == 0.0) {
            rep.clause_c = false;
            rep.bad_coordinates_c.push_back(j);
            continue;
        }

        const double lo = std::min(0.0, zext);
        const double hi = std::max(0.0, zext);
        // second- and first-difference signs sampled densely over [lo, hi]
        int mono = 0, curv = 0;
        bool consistent = true;
        const double h = (hi - lo) / static_cast<double>(samples + 1);
        for (std::size_t k = 1; k <= samples && consistent; ++k) {
            const double z = lo + h * static_cast<double>(k);
            const double fm = phi.apply(z - h), f0 = phi.apply(z), fp = phi.apply(z + h);
            const int ms = sign_of(fp - fm, sign_tol * h);
            const int cs = sign_of(fp - 2.0 * f0 + fm, sign_tol * h * h);
            if (ms != 0) {
                if (mono == 0) mono = ms;
                else if (mono != ms) consistent = false;
            }
            if (cs != 0) {
                if (curv == 0) curv = cs;
                else if (curv != cs) consistent = false;
            }
        }
        int matched = 0;
        if (consistent && mono != 0 && curv != 0) {
            if (zext > 0.0 && curv > 0 && mono < 0) matched = 1;  // convex decreasing on [0, z']
            if (zext > 0.0 && curv < 0 && mono > 0) matched = 2;  // concave increasing on [0, z']
            if (zext < 0.0 && curv > 0 && mono > 0) matched = 3;  // convex increasing on [z', 0]
            if (zext < 0.0 && curv < 0 && mono < 0) matched = 4;  // concave decreasing on [z', 0]
        }
        rep.matched_case[j] = matched;
        if (matched == 0) {
            rep.clause_c = false;
            rep.bad_coordinates_c.push_back(j);
        }
    }
    return rep;
}

AdaptiveGdConfig AdaptiveGdConfig::from_data(const TrainingSet& ts, const Activation& phi,
                                             double safety, std::size_t max_steps,
                                             double stop_residual) {
    const std::size_t n = ts.size();
    const std::size_t d = ts.dim();
    const double phi0 = phi.at_zero();

    AdaptiveGdConfig cfg;
    cfg.max_steps = max_steps;
    cfg.stop_residual = stop_residual;

    double ratio = 1.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t k = 0; k < d; ++k) {
                const double num = ts.stacked()(i, j);
                const double den = ts.stacked()(i, k);
                if (den != 0.0) ratio = std::max(ratio, num / den);
            }
    cfg.ratio_bound = ratio;

    cfg.slopes = Matrix(n, d);
    cfg.example_rates.assign(n, 0.0);
    cfg.gamma = safety / (static_cast<double>(n) * ratio * static_cast<double>(d));
    for (std::size_t i = 0; i < n; ++i) {
        double worst = 0.0;
        for (std::size_t j = 0; j < d; ++j) {
            const double x = ts.stacked()(i, j);
            const double z = phi.min_norm_preimage(x);
            if (z == 0.0) throw InvalidInput("adaptive config: entry equals phi(0)");
            const double slope = (x - phi0) / z;  // chord through (0, phi(0)) and (z, x)
            cfg.slopes(i, j) = slope;
            worst = std::max(worst, std::fabs(slope));
        }
        cfg.example_rates[i] = cfg.gamma / worst;
    }
    return cfg;
}

Matrix adaptive_gd_step(const Matrix& a, const TrainingSet& ts, const Activation& phi,
                        const AdaptiveGdConfig& cfg) {
    const std::size_t n = ts.size();
    const std::size_t d = ts.dim();
    Matrix next = a;
    // rows are independent; the true gradient step with rate
    // gamma_i / |phi'(z)| simplifies to gamma_i * sign(phi'(z)) * residual.
    for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t i = 0; i < n; ++i) {
            const Vector x = ts.example(i);
            const double z = dot(a.row(r), x);
            const double deriv = phi.derivative(z);
            if (std::fabs(deriv) < 1e-300)
                throw NumericError("adaptive_gd: phi' vanished along the trajectory");
            const double sign = deriv > 0.0 ? 1.0 : -1.0;
            const double coef = cfg.example_rates[i] * sign * (x[r] - phi.apply(z));
            for (std::size_t j = 0; j < d; ++j) next(r, j) += coef * x[j];
        }
    }
    return next;
}

namespace {

void fill_residuals(GdResult& res, const Matrix& a, const TrainingSet& ts,
                    const Activation& phi) {
    double recon = 0.0, lin = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const Vector x = ts.example(i);
        const Vector z = a.apply(x);
        recon = std::max(recon, norm_inf(vec_sub(phi.apply(z), x)));
        lin = std::max(lin, norm_inf(vec_sub(z, phi.min_norm_preimage(x))));
    }
    res.max_recon_residual = recon;
    res.max_linear_residual = lin;
}

}  // namespace

GdResult adaptive_gd(const TrainingSet& ts, const Activation& phi, const AdaptiveGdConfig& cfg) {
    if (ts.size() >= ts.dim())
        throw InvalidInput("adaptive_gd: requires the overparameterized setting n < d");
    const Assumption1Report rep = check_assumption1(ts, phi);
    if (!rep.pass()) throw InvalidInput("adaptive_gd: assumption check failed");

    const std::size_t d = ts.dim();
    Matrix a(d, d, 0.0);
    GdResult res;
    for (std::size_t t = 0; t < cfg.max_steps; ++t) {
        a = adaptive_gd_step(a, ts, phi, cfg);
        res.steps = t + 1;
        if ((t & 0x3f) == 0 || t + 1 == cfg.max_steps) {
            fill_residuals(res, a, ts, phi);
            if (res.max_recon_residual < cfg.stop_residual) {
                res.converged = true;
                break;
            }
        }
    }
    res.weights = std::move(a);
    fill_residuals(res, res.weights, ts, phi);
    res.converged = res.max_recon_residual < cfg.stop_residual;
    return res;
}

GdResult constant_lr_gd(const TrainingSet& ts, const Activation& phi, double gamma,
                        std::size_t max_steps, double stop_residual) {
    if (ts.size() == 0) throw InvalidInput("constant_lr_gd: empty training set");
    if (!(gamma > 0.0)) throw InvalidInput("constant_lr_gd: gamma must be positive");
    const std::size_t n = ts.size();
    const std::size_t d = ts.dim();
    Matrix a(d, d, 0.0);
    GdResult res;
    for (std::size_t t = 0; t < max_steps; ++t) {
        Matrix grad(d, d, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            const Vector x = ts.example(i);
            const Vector z = a.apply(x);
            for (std::size_t r = 0; r < d; ++r) {
                const double coef = -(x[r] - phi.apply(z[r])) * phi.derivative(z[r]);
                if (coef == 0.0) continue;
                for (std::size_t j = 0; j < d; ++j) grad(r, j) += coef * x[j];
            }
        }
        a -= grad * gamma;
        res.steps = t + 1;
        if (!a.all_finite()) throw NumericError("constant_lr_gd: iterate became non-finite");
        if ((t & 0x3f) == 0 || t + 1 == max_steps) {
            double recon = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const Vector x = ts.example(i);
                recon = std::max(recon, norm_inf(vec_sub(phi.apply(a.apply(x)), x)));
            }
            if (recon < stop_residual) {
                res.converged = true;
                break;
            }
        }
    }
    res.weights = std::move(a);
    fill_residuals(res, res.weights, ts, phi);
    res.converged = res.max_recon_residual < stop_residual;
    return res;
}

PhiEigenResult phi_eigencheck(const Matrix& a, const Activation& phi, const Vector& u,
                              double tol) {
    const double uu = dot(u, u);
    if (uu == 0.0) throw InvalidInput("phi_eigencheck: u must be nonzero");
    const Vector pu = phi.apply(a.apply(u));
    PhiEigenResult res;
    res.eigenvalue = dot(pu, u) / uu;
    double s = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double r = pu[i] - res.eigenvalue * u[i];
        s += r * r;
    }
    res.residual = std::sqrt(s) / std::sqrt(uu);
    res.is_eigenvector = res.residual < tol;
    return res;
}

PhiSpanResult phi_span_membership(const TrainingSet& train, const Activation& phi,
                                  const Vector& y, double tol) {
    for (double v : y)
        if (!phi.in_range(v)) throw InvalidInput("phi_span_membership: entry outside range(phi)");
    std::vector<Vector> pre;
    pre.reserve(train.size());
    for (std::size_t i = 0; i < train.size(); ++i)
        pre.push_back(phi.min_norm_preimage(train.example(i)));
    const Matrix basis = orthonormal_span_basis(pre);
    PhiSpanResult res;
    res.distance = residual_off_span(basis, phi.min_norm_preimage(y));
    res.member = res.distance < tol;
    return res;
}

}  // namespace memolab
