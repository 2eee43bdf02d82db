#include "memolab/net.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "memolab/errors.hpp"
#include "memolab/numkit.hpp"
#include "memolab/rng.hpp"

namespace memolab {

LayerSpec LayerSpec::fully_connected(std::size_t in, std::size_t out, Activation act,
                                     bool bias) {
    LayerSpec l;
    l.kind = Kind::FullyConnected;
    l.in = in;
    l.out = out;
    l.bias = bias;
    l.activation = act;
    if (in == 0 || out == 0) throw InvalidInput("fully_connected: zero dimension");
    return l;
}

LayerSpec LayerSpec::conv(std::size_t side, std::size_t in_depth, std::size_t out_depth,
                          std::size_t stride, Activation act) {
    LayerSpec l;
    l.kind = Kind::Conv;
    l.side = side;
    l.in_depth = in_depth;
    l.out_depth = out_depth;
    l.stride = stride;
    l.bias = false;
    l.activation = act;
    if (side == 0 || in_depth == 0 || out_depth == 0) throw InvalidInput("conv: zero dimension");
    if (stride != 1 && stride != 2) throw InvalidInput("conv: stride must be 1 or 2");
    if (side % stride != 0) throw InvalidInput("conv: side must be divisible by stride");
    return l;
}

LayerSpec LayerSpec::upsample(std::size_t side, std::size_t depth, std::size_t scale) {
    LayerSpec l;
    l.kind = Kind::Upsample;
    l.side = side;
    l.in_depth = depth;
    l.out_depth = depth;
    l.scale = scale;
    l.activation = Activation::identity();
    if (side == 0 || depth == 0 || scale == 0) throw InvalidInput("upsample: zero dimension");
    return l;
}

std::size_t LayerSpec::input_size() const {
    switch (kind) {
        case Kind::FullyConnected: return in;
        case Kind::Conv:
        case Kind::Upsample: return in_depth * side * side;
    }
    return 0;
}

std::size_t LayerSpec::output_side() const {
    switch (kind) {
        case Kind::Conv: return side / stride;
        case Kind::Upsample: return side * scale;
        case Kind::FullyConnected: return 0;
    }
    return 0;
}

std::size_t LayerSpec::output_size() const {
    switch (kind) {
        case Kind::FullyConnected: return out;
        case Kind::Conv: return out_depth * output_side() * output_side();
        case Kind::Upsample: return out_depth * output_side() * output_side();
    }
    return 0;
}

std::size_t LayerSpec::param_count() const {
    switch (kind) {
        case Kind::FullyConnected: return in * out + (bias ? out : 0);
        case Kind::Conv: return out_depth * in_depth * 9;
        case Kind::Upsample: return 0;
    }
    return 0;
}

Initializer Initializer::from_name(const std::string& name, double eps) {
    if (name == "zeros") return zeros();
    if (name == "constant") return constant(eps);
    if (name == "xavier_uniform") return xavier_uniform();
    if (name == "xavier_normal") return xavier_normal();
    if (name == "kaiming_uniform") return kaiming_uniform();
    if (name == "kaiming_normal") return kaiming_normal();
    if (name == "framework_default") return framework_default();
    throw InvalidInput("unknown initializer: " + name);
}

std::string Initializer::name() const {
    switch (kind) {
        case Kind::Zeros: return "zeros";
        case Kind::Constant: return "constant";
        case Kind::XavierUniform: return "xavier_uniform";
        case Kind::XavierNormal: return "xavier_normal";
        case Kind::KaimingUniform: return "kaiming_uniform";
        case Kind::KaimingNormal: return "kaiming_normal";
        case Kind::FrameworkDefault: return "framework_default";
    }
    return "?";
}

Network::Network(std::vector<LayerSpec> layers, Initializer init, std::uint64_t seed,
                 std::optional<std::size_t> skip_every)
    : layers_(std::move(layers)), skip_every_(skip_every) {
    validate_and_index();
    initialize(init, seed);
}

void Network::validate_and_index() {
    if (layers_.empty()) throw InvalidInput("Network: needs at least one layer");
    for (std::size_t l = 1; l < layers_.size(); ++l) {
        if (layers_[l].input_size() != layers_[l - 1].output_size())
            throw InvalidInput("Network: layer " + std::to_string(l) + " input size " +
                               std::to_string(layers_[l].input_size()) +
                               " does not match previous output " +
                               std::to_string(layers_[l - 1].output_size()));
    }
    if (skip_every_) {
        const std::size_t n = *skip_every_;
        if (n == 0) throw InvalidInput("Network: skip_every must be positive");
        for (std::size_t start = 0; start + n <= layers_.size(); start += n) {
            if (layers_[start].input_size() != layers_[start + n - 1].output_size())
                throw InvalidInput("Network: skip block at layer " + std::to_string(start) +
                                   " has mismatched input/output sizes");
        }
    }
    offsets_.resize(layers_.size());
    std::size_t total = 0;
    for (std::size_t l = 0; l < layers_.size(); ++l) {
        offsets_[l] = total;
        total += layers_[l].param_count();
    }
    params_.assign(total, 0.0);
}

namespace {

double bias_bound(const LayerSpec& l) {
    const double fan_in = static_cast<double>(l.kind == LayerSpec::Kind::FullyConnected
                                                  ? l.in
                                                  : l.in_depth * 9);
    return 1.0 / std::sqrt(fan_in);
}

}  // namespace

void Network::initialize(Initializer init, std::uint64_t seed) {
    Rng rng(seed);
    for (std::size_t l = 0; l < layers_.size(); ++l) {
        const LayerSpec& spec = layers_[l];
        const std::size_t off = offsets_[l];
        const std::size_t weights = spec.kind == LayerSpec::Kind::FullyConnected
                                        ? spec.in * spec.out
                                        : spec.param_count();
        const std::size_t biases = spec.param_count() - weights;
        const double fan_in = static_cast<double>(
            spec.kind == LayerSpec::Kind::FullyConnected ? spec.in : spec.in_depth * 9);
        const double fan_out = static_cast<double>(
            spec.kind == LayerSpec::Kind::FullyConnected ? spec.out : spec.out_depth * 9);

        auto draw_weight = [&]() -> double {
            switch (init.kind) {
                case Initializer::Kind::Zeros: return 0.0;
                case Initializer::Kind::Constant: return init.eps;
                case Initializer::Kind::XavierUniform: {
                    const double b = std::sqrt(6.0 / (fan_in + fan_out));
                    return rng.uniform(-b, b);
                }
                case Initializer::Kind::XavierNormal:
                    return rng.normal(0.0, std::sqrt(2.0 / (fan_in + fan_out)));
                case Initializer::Kind::KaimingUniform: {
                    const double b = std::sqrt(6.0 / fan_in);
                    return rng.uniform(-b, b);
                }
                case Initializer::Kind::KaimingNormal:
                    return rng.normal(0.0, std::sqrt(2.0 / fan_in));
                case Initializer::Kind::FrameworkDefault: {
                    const double b = 1.0 / std::sqrt(fan_in);
                    return rng.uniform(-b, b);
                }
            }
            return 0.0;
        };
        for (std::size_t i = 0; i < weights; ++i) params_[off + i] = draw_weight();
        for (std::size_t i = 0; i < biases; ++i) {
            switch (init.kind) {
                case Initializer::Kind::Zeros: params_[off + weights + i] = 0.0; break;
                case Initializer::Kind::Constant: params_[off + weights + i] = init.eps; break;
                default: {
                    const double b = bias_bound(spec);
                    params_[off + weights + i] = rng.uniform(-b, b);
                }
            }
        }
    }
}

std::size_t Network::input_size() const { return layers_.front().input_size(); }
std::size_t Network::output_size() const { return layers_.back().output_size(); }

void Network::set_params(std::vector<double> p) {
    if (p.size() != params_.size()) throw InvalidInput("set_params: wrong length");
    params_ = std::move(p);
}

bool Network::block_closes_at(std::size_t layer) const {
    if (!skip_every_) return false;
    const std::size_t n = *skip_every_;
    return (layer + 1) % n == 0 && layer + 1 <= (layers_.size() / n) * n;
}

namespace {

// Convolution forward accumulates input channels in ascending order and
// kernel taps in row-major order, which matches the column order of the
// linearized matrix applied to the padded vectorization bit for bit.
void conv_forward(const LayerSpec& l, const double* k, const Vector& x, Vector& y) {
    const std::size_t s = l.side;
    const std::size_t os = l.side / l.stride;
    for (std::size_t of = 0; of < l.out_depth; ++of) {
        for (std::size_t r = 0; r < os; ++r) {
            for (std::size_t c = 0; c < os; ++c) {
                double acc = 0.0;
                for (std::size_t ic = 0; ic < l.in_depth; ++ic) {
                    const double* kk = k + (of * l.in_depth + ic) * 9;
                    const double* xc = x.data() + ic * s * s;
                    for (std::size_t t = 0; t < 9; ++t) {
                        const std::size_t pr = r * l.stride + t / 3;
                        const std::size_t pc = c * l.stride + t % 3;
                        if (pr == 0 || pc == 0 || pr > s || pc > s) continue;
                        acc += kk[t] * xc[(pr - 1) * s + (pc - 1)];
                    }
                }
                y[of * os * os + r * os + c] = acc;
            }
        }
    }
}

void conv_backward(const LayerSpec& l, const double* k, const Vector& x, const Vector& dy,
                   Vector& dx, double* dk) {
    const std::size_t s = l.side;
    const std::size_t os = l.side / l.stride;
    for (std::size_t of = 0; of < l.out_depth; ++of) {
        for (std::size_t r = 0; r < os; ++r) {
            for (std::size_t c = 0; c < os; ++c) {
                const double g = dy[of * os * os + r * os + c];
                if (g == 0.0) continue;
                for (std::size_t ic = 0; ic < l.in_depth; ++ic) {
                    const double* kk = k + (of * l.in_depth + ic) * 9;
                    const std::size_t koff = (of * l.in_depth + ic) * 9;
                    for (std::size_t t = 0; t < 9; ++t) {
                        const std::size_t pr = r * l.stride + t / 3;
                        const std::size_t pc = c * l.stride + t % 3;
                        if (pr == 0 || pc == 0 || pr > s || pc > s) continue;
                        const std::size_t xi = ic * s * s + (pr - 1) * s + (pc - 1);
                        dx[xi] += kk[t] * g;
                        if (dk) dk[koff + t] += x[xi] * g;
                    }
                }
            }
        }
    }
}

void upsample_forward(const LayerSpec& l, const Vector& x, Vector& y) {
    const std::size_t s = l.side;
    const std::size_t os = s * l.scale;
    for (std::size_t f = 0; f < l.in_depth; ++f)
        for (std::size_t r = 0; r < os; ++r)
            for (std::size_t c = 0; c < os; ++c)
                y[f * os * os + r * os + c] = x[f * s * s + (r / l.scale) * s + c / l.scale];
}

void upsample_backward(const LayerSpec& l, const Vector& dy, Vector& dx) {
    const std::size_t s = l.side;
    const std::size_t os = s * l.scale;
    for (std::size_t f = 0; f < l.in_depth; ++f)
        for (std::size_t r = 0; r < os; ++r)
            for (std::size_t c = 0; c < os; ++c)
                dx[f * s * s + (r / l.scale) * s + c / l.scale] += dy[f * os * os + r * os + c];
}

}  // namespace

Vector Network::forward(const Vector& x) const {
    Tape tape;
    return forward(x, tape);
}

Vector Network::forward(const Vector& x, Tape& tape) const {
    if (x.size() != input_size()) throw InvalidInput("forward: input size mismatch");
    const std::size_t L = layers_.size();
    tape.inputs.resize(L);
    tape.pre.resize(L);

    Vector cur = x;
    Vector block_input;
    for (std::size_t l = 0; l < L; ++l) {
        const LayerSpec& spec = layers_[l];
        if (skip_every_ && l % *skip_every_ == 0) block_input = cur;
        tape.inputs[l] = cur;

        Vector z(spec.output_size(), 0.0);
        const double* p = params_.data() + offsets_[l];
        switch (spec.kind) {
            case LayerSpec::Kind::FullyConnected: {
                for (std::size_t i = 0; i < spec.out; ++i) {
                    const double* w = p + i * spec.in;
                    double acc = 0.0;
                    for (std::size_t j = 0; j < spec.in; ++j) acc += w[j] * cur[j];
                    if (spec.bias) acc += p[spec.in * spec.out + i];
                    z[i] = acc;
                }
                break;
            }
            case LayerSpec::Kind::Conv:
                conv_forward(spec, p, cur, z);
                break;
            case LayerSpec::Kind::Upsample:
                upsample_forward(spec, cur, z);
                break;
        }
        tape.pre[l] = z;

        Vector a(z.size());
        for (std::size_t i = 0; i < z.size(); ++i) a[i] = spec.activation.apply(z[i]);
        if (block_closes_at(l)) {
            for (std::size_t i = 0; i < a.size(); ++i) a[i] += block_input[i];
        }
        cur = std::move(a);
    }
    tape.output = cur;
    return cur;
}

Vector Network::backward(const Tape& tape, const Vector& output_seed,
                         std::vector<double>* param_grad) const {
    if (output_seed.size() != output_size()) throw InvalidInput("backward: seed size mismatch");
    if (param_grad && param_grad->size() != params_.size())
        throw InvalidInput("backward: param_grad has wrong length");

    const std::size_t L = layers_.size();
    Vector g = output_seed;
    Vector pending_skip;  // gradient waiting to be re-injected at block start
    bool have_pending = false;

    for (std::size_t l = L; l-- > 0;) {
        const LayerSpec& spec = layers_[l];
        if (block_closes_at(l)) {
            pending_skip = g;
            have_pending = true;
        }
        // through the activation
        Vector dz(g.size());
        for (std::size_t i = 0; i < g.size(); ++i)
            dz[i] = g[i] * spec.activation.derivative(tape.pre[l][i]);

        Vector dx(spec.input_size(), 0.0);
        const double* p = params_.data() + offsets_[l];
        double* pg = param_grad ? param_grad->data() + offsets_[l] : nullptr;
        switch (spec.kind) {
            case LayerSpec::Kind::FullyConnected: {
                const Vector& xin = tape.inputs[l];
                for (std::size_t i = 0; i < spec.out; ++i) {
                    const double di = dz[i];
                    const double* w = p + i * spec.in;
                    if (di != 0.0) {
                        for (std::size_t j = 0; j < spec.in; ++j) dx[j] += w[j] * di;
                    }
                    if (pg) {
                        double* wg = pg + i * spec.in;
                        for (std::size_t j = 0; j < spec.in; ++j) wg[j] += xin[j] * di;
                        if (spec.bias) pg[spec.in * spec.out + i] += di;
                    }
                }
                break;
            }
            case LayerSpec::Kind::Conv:
                conv_backward(spec, p, tape.inputs[l], dz, dx, pg);
                break;
            case LayerSpec::Kind::Upsample:
                upsample_backward(spec, dz, dx);
                break;
        }
        g = std::move(dx);
        if (have_pending && skip_every_ && l % *skip_every_ == 0) {
            for (std::size_t i = 0; i < g.size(); ++i) g[i] += pending_skip[i];
            have_pending = false;
        }
    }
    return g;
}

double reconstruction_loss(const Network& net, const TrainingSet& ts) {
    double loss = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const Vector x = ts.example(i);
        const Vector r = vec_sub(net.forward(x), x);
        loss += dot(r, r);
    }
    return loss;
}

TrainReport train(const Network& net, const TrainingSet& ts, const Optimizer& opt,
                  double stop_loss, std::size_t max_steps) {
    if (ts.dim() != net.input_size() || ts.dim() != net.output_size())
        throw InvalidInput("train: training set dimension does not match the network");
    Network model = net;
    const std::size_t np = model.param_count();
    std::vector<double> grad(np, 0.0);
    std::vector<double> m(np, 0.0), v(np, 0.0);

    TrainReport report;
    report.loss_history.reserve(std::min<std::size_t>(max_steps + 1, 1 << 22));
    Tape tape;
    std::size_t adam_t = 0;

    for (std::size_t step = 0;; ++step) {
        std::fill(grad.begin(), grad.end(), 0.0);
        double loss = 0.0;
        for (std::size_t i = 0; i < ts.size(); ++i) {
            const Vector x = ts.example(i);
            const Vector out = model.forward(x, tape);
            Vector seed(out.size());
            for (std::size_t j = 0; j < out.size(); ++j) {
                const double r = out[j] - x[j];
                loss += r * r;
                seed[j] = 2.0 * r;
            }
            model.backward(tape, seed, &grad);
        }
        report.loss_history.push_back(loss);
        report.final_loss = loss;
        if (!std::isfinite(loss))
            throw NumericError("train: loss became non-finite at step " + std::to_string(step));
        if (loss < stop_loss) {
            report.converged = true;
            break;
        }
        if (step >= max_steps) break;

        std::vector<double> p = model.params();
        if (opt.kind == Optimizer::Kind::Gd) {
            for (std::size_t i = 0; i < np; ++i) p[i] -= opt.lr * grad[i];
        } else {
            ++adam_t;
            const double c1 = 1.0 - std::pow(opt.beta1, static_cast<double>(adam_t));
            const double c2 = 1.0 - std::pow(opt.beta2, static_cast<double>(adam_t));
            for (std::size_t i = 0; i < np; ++i) {
                m[i] = opt.beta1 * m[i] + (1.0 - opt.beta1) * grad[i];
                v[i] = opt.beta2 * v[i] + (1.0 - opt.beta2) * grad[i] * grad[i];
                p[i] -= opt.lr * (m[i] / c1) / (std::sqrt(v[i] / c2) + opt.eps);
            }
        }
        model.set_params(std::move(p));
        report.steps = step + 1;
    }
    report.trained = std::move(model);
    return report;
}

Matrix jacobian(const Network& net, const Vector& x) {
    const std::size_t dout = net.output_size();
    const std::size_t din = net.input_size();
    Tape tape;
    net.forward(x, tape);
    Matrix j(dout, din);
    Vector seed(dout, 0.0);
    for (std::size_t m = 0; m < dout; ++m) {
        seed[m] = 1.0;
        j.set_row(m, net.backward(tape, seed, nullptr));
        seed[m] = 0.0;
    }
    return j;
}

namespace {

// Gaussian elimination with partial pivoting; a is square and small.
Matrix solve_gaussian(Matrix a, Matrix b) {
    const std::size_t n = a.rows();
    if (a.cols() != n || b.rows() != n) throw InvalidInput("solve: shape mismatch");
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::fabs(a(r, col)) > std::fabs(a(piv, col))) piv = r;
        if (std::fabs(a(piv, col)) < 1e-300) throw NumericError("solve: singular matrix");
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(col, j), a(piv, j));
            for (std::size_t j = 0; j < b.cols(); ++j) std::swap(b(col, j), b(piv, j));
        }
        const double d = a(col, col);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = a(r, col) / d;
            if (f == 0.0) continue;
            for (std::size_t j = col; j < n; ++j) a(r, j) -= f * a(col, j);
            for (std::size_t j = 0; j < b.cols(); ++j) b(r, j) -= f * b(col, j);
        }
    }
    Matrix x(n, b.cols());
    for (std::size_t col = n; col-- > 0;) {
        for (std::size_t j = 0; j < b.cols(); ++j) {
            double acc = b(col, j);
            for (std::size_t k = col + 1; k < n; ++k) acc -= a(col, k) * x(k, j);
            x(col, j) = acc / a(col, col);
        }
    }
    return x;
}

}  // namespace

TwoLayerFixedHiddenReport two_layer_fixed_hidden(const TrainingSet& ts, std::size_t width,
                                                 std::uint64_t seed) {
    const std::size_t d = ts.dim();
    const std::size_t n = ts.size();
    if (width == 0) throw InvalidInput("two_layer_fixed_hidden: width must be positive");

    Rng rng(seed);
    Matrix w1 = random_matrix(rng, width, d);
    Vector b = rng.normal_vector(width);
    const Activation relu = Activation::relu();

    // hidden features, one column per example
    Matrix h(width, n);
    for (std::size_t i = 0; i < n; ++i) {
        Vector z = w1.apply(ts.example(i));
        for (std::size_t k = 0; k < width; ++k) z[k] = relu.apply(z[k] + b[k]);
        h.set_col(i, z);
    }

    // minimum-norm W2 with W2 h_i = x_i: W2 = X (H^T H)^{-1} H^T
    Matrix w2(d, width);
    if (n == 1) {
        const Vector h0 = h.col(0);
        const double nn = dot(h0, h0);
        if (nn <= 0.0) throw NumericError("two_layer_fixed_hidden: hidden feature vanished");
        w2 = Matrix::outer(ts.example(0), vec_scale(h0, 1.0 / nn));
    } else {
        Matrix gram = h.transpose() * h;  // n x n
        Matrix xmat = ts.stacked().transpose();  // d x n
        Matrix coeff = solve_gaussian(gram, xmat.transpose());  // n x d, solves G C = X^T
        w2 = (h * coeff).transpose();  // (k x d)^T
    }

    TwoLayerFixedHiddenReport rep;
    // package as a network: relu hidden layer with bias, linear output
    std::vector<LayerSpec> layers{
        LayerSpec::fully_connected(d, width, relu, true),
        LayerSpec::fully_connected(width, d, Activation::identity(), false),
    };
    Network net(layers, Initializer::zeros(), seed);
    std::vector<double> p(net.param_count(), 0.0);
    std::size_t off = 0;
    for (std::size_t i = 0; i < width; ++i)
        for (std::size_t j = 0; j < d; ++j) p[off++] = w1(i, j);
    for (std::size_t i = 0; i < width; ++i) p[off++] = b[i];
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < width; ++j) p[off++] = w2(i, j);
    net.set_params(std::move(p));

    rep.hidden_gram_normalized = Matrix(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const Vector hi = h.col(i), hj = h.col(j);
            rep.hidden_gram_normalized(i, j) = dot(hi, hj) / (norm2(hi) * norm2(hj));
        }

    for (std::size_t i = 0; i < n; ++i) {
        const Vector x = ts.example(i);
        Matrix j = jacobian(net, x);
        const std::vector<double> mags = eigenvalue_magnitudes(j);
        rep.top_eigenvalues.push_back(mags.empty() ? 0.0 : mags.front());
        const double nx2 = dot(x, x);
        rep.limit_predictions.push_back(nx2 / (nx2 + 1.0));
        rep.jacobians.push_back(std::move(j));
    }
    rep.net = std::move(net);
    return rep;
}

std::string Network::to_text() const {
    std::ostringstream os;
    os << "memolab-network 1\n";
    os << "layers " << layers_.size() << '\n';
    for (const LayerSpec& l : layers_) {
        switch (l.kind) {
            case LayerSpec::Kind::FullyConnected:
                os << "fc " << l.in << ' ' << l.out << ' ' << (l.bias ? 1 : 0) << ' '
                   << l.activation.name();
                break;
            case LayerSpec::Kind::Conv:
                os << "conv " << l.side << ' ' << l.in_depth << ' ' << l.out_depth << ' '
                   << l.stride << ' ' << l.activation.name();
                break;
            case LayerSpec::Kind::Upsample:
                os << "upsample " << l.side << ' ' << l.in_depth << ' ' << l.scale;
                break;
        }
        if (l.activation.kind() == Activation::Kind::LeakyRelu)
            os << ' ' << format_double(l.activation.leak());
        os << '\n';
    }
    os << "skip_every " << (skip_every_ ? *skip_every_ : 0) << '\n';
    os << "params " << params_.size() << '\n';
    for (std::size_t i = 0; i < params_.size(); ++i) {
        os << format_double(params_[i]) << ((i + 1) % 8 == 0 ? '\n' : ' ');
    }
    if (params_.size() % 8 != 0) os << '\n';
    return os.str();
}

Network Network::from_text(const std::string& text) {
    std::istringstream is(text);
    std::string magic;
    int version = 0;
    is >> magic >> version;
    if (magic != "memolab-network" || version != 1)
        throw InvalidInput("network text: unsupported header");
    std::string key;
    std::size_t count = 0;
    is >> key >> count;
    if (key != "layers") throw InvalidInput("network text: expected 'layers'");

    auto read_activation = [&](std::istringstream& line) {
        std::string name;
        line >> name;
        if (name == "leaky_relu") {
            double alpha = 0.01;
            if (line >> alpha) return Activation::leaky_relu(alpha);
            return Activation::leaky_relu();
        }
        return Activation::from_name(name);
    };

    is.ignore();
    std::vector<LayerSpec> layers;
    for (std::size_t l = 0; l < count; ++l) {
        std::string lstr;
        if (!std::getline(is, lstr)) throw InvalidInput("network text: missing layer line");
        std::istringstream line(lstr);
        std::string kind;
        line >> kind;
        if (kind == "fc") {
            std::size_t in = 0, out = 0;
            int bias = 1;
            line >> in >> out >> bias;
            layers.push_back(LayerSpec::fully_connected(in, out, read_activation(line), bias != 0));
        } else if (kind == "conv") {
            std::size_t side = 0, fi = 0, fo = 0, stride = 1;
            line >> side >> fi >> fo >> stride;
            layers.push_back(LayerSpec::conv(side, fi, fo, stride, read_activation(line)));
        } else if (kind == "upsample") {
            std::size_t side = 0, f = 0, scale = 1;
            line >> side >> f >> scale;
            layers.push_back(LayerSpec::upsample(side, f, scale));
        } else {
            throw InvalidInput("network text: unknown layer kind '" + kind + "'");
        }
    }
    std::size_t skip = 0;
    is >> key >> skip;
    if (key != "skip_every") throw InvalidInput("network text: expected 'skip_every'");
    std::size_t np = 0;
    is >> key >> np;
    if (key != "params") throw InvalidInput("network text: expected 'params'");

    Network net(std::move(layers), Initializer::zeros(), 0,
                skip > 0 ? std::optional<std::size_t>(skip) : std::nullopt);
    if (np != net.param_count()) throw InvalidInput("network text: parameter count mismatch");
    std::vector<double> p(np);
    for (std::size_t i = 0; i < np; ++i)
        if (!(is >> p[i])) throw InvalidInput("network text: not enough parameters");
    net.set_params(std::move(p));
    return net;
}

void Network::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw InvalidInput("cannot open for writing: " + path);
    out << to_text();
}

Network Network::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open for reading: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return from_text(ss.str());
}

}  // namespace memolab
