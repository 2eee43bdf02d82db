#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "memolab/activation.hpp"
#include "memolab/matrix.hpp"
#include "memolab/training_set.hpp"

namespace memolab {

/**
 * One layer of an autoencoder. Convolutions are fixed at kernel 3 with one
 * unit of zero padding and stride 1 or 2, and carry no bias; fully connected
 * layers may carry one. Upsampling is nearest neighbor and parameter-free.
 */
struct LayerSpec {
    enum class Kind { FullyConnected, Conv, Upsample };

    Kind kind = Kind::FullyConnected;
    Activation activation = Activation::identity();
    // fully connected
    std::size_t in = 0, out = 0;
    bool bias = true;
    // conv: input is in_depth x side x side, output out_depth x (side/stride)^2
    std::size_t side = 0, in_depth = 1, out_depth = 1, stride = 1;
    // upsample
    std::size_t scale = 1;

    static LayerSpec fully_connected(std::size_t in, std::size_t out, Activation act,
                                     bool bias = true);
    static LayerSpec conv(std::size_t side, std::size_t in_depth, std::size_t out_depth,
                          std::size_t stride, Activation act);
    static LayerSpec upsample(std::size_t side, std::size_t depth, std::size_t scale);

    std::size_t input_size() const;
    std::size_t output_size() const;
    std::size_t output_side() const;  // conv/upsample spatial side after the layer
    std::size_t param_count() const;
};

struct Initializer {
    enum class Kind {
        Zeros,
        Constant,
        XavierUniform,
        XavierNormal,
        KaimingUniform,
        KaimingNormal,
        FrameworkDefault,  // uniform on +-1/sqrt(fan_in) for weights and biases
    };
    Kind kind = Kind::Constant;
    double eps = 1e-3;  // value for Constant

    static Initializer zeros() { return {Kind::Zeros, 0.0}; }
    static Initializer constant(double eps) { return {Kind::Constant, eps}; }
    static Initializer xavier_uniform() { return {Kind::XavierUniform, 0.0}; }
    static Initializer xavier_normal() { return {Kind::XavierNormal, 0.0}; }
    static Initializer kaiming_uniform() { return {Kind::KaimingUniform, 0.0}; }
    static Initializer kaiming_normal() { return {Kind::KaimingNormal, 0.0}; }
    static Initializer framework_default() { return {Kind::FrameworkDefault, 0.0}; }
    static Initializer from_name(const std::string& name, double eps = 1e-3);
    std::string name() const;
};

/// Reusable forward-pass buffers for backpropagation.
struct Tape {
    std::vector<Vector> inputs;  // input to each layer
    std::vector<Vector> pre;     // pre-activation outputs
    Vector output;
};

/**
 * A layered autoencoder with deterministic seeded initialization and
 * optional identity skip connections added around every block of
 * `skip_every` layers (block input and output sizes must match).
 */
class Network {
public:
    Network() = default;
    Network(std::vector<LayerSpec> layers, Initializer init, std::uint64_t seed,
            std::optional<std::size_t> skip_every = std::nullopt);

    std::size_t input_size() const;
    std::size_t output_size() const;
    const std::vector<LayerSpec>& layers() const { return layers_; }
    std::optional<std::size_t> skip_every() const { return skip_every_; }

    const std::vector<double>& params() const { return params_; }
    void set_params(std::vector<double> p);
    std::size_t param_count() const { return params_.size(); }
    /// Flat offset of a layer's parameter block.
    std::size_t param_offset(std::size_t layer) const { return offsets_[layer]; }

    Vector forward(const Vector& x) const;
    Vector forward(const Vector& x, Tape& tape) const;

    /**
     * Reverse pass from an output seed. Returns d(seed . output)/d(input);
     * when param_grad is non-null the parameter gradient is accumulated
     * into it (must be param_count() long).
     */
    Vector backward(const Tape& tape, const Vector& output_seed,
                    std::vector<double>* param_grad) const;

    std::string to_text() const;
    static Network from_text(const std::string& text);
    void save(const std::string& path) const;
    static Network load(const std::string& path);

private:
    std::vector<LayerSpec> layers_;
    std::vector<double> params_;
    std::vector<std::size_t> offsets_;
    std::optional<std::size_t> skip_every_;

    void validate_and_index();
    void initialize(Initializer init, std::uint64_t seed);
    bool block_closes_at(std::size_t layer) const;
};

struct Optimizer {
    enum class Kind { Gd, Adam };
    Kind kind = Kind::Gd;
    double lr = 1e-1;
    double beta1 = 0.9, beta2 = 0.999, eps = 1e-8;

    static Optimizer gd(double lr) { return {Kind::Gd, lr}; }
    static Optimizer adam(double lr) { return {Kind::Adam, lr}; }
};

struct TrainReport {
    double final_loss = 0.0;
    std::size_t steps = 0;
    std::vector<double> loss_history;  // one entry per evaluated step
    bool converged = false;
    Network trained;
};

/// Sum of squared reconstruction errors over the whole set (no averaging).
double reconstruction_loss(const Network& net, const TrainingSet& ts);

/**
 * Full-batch training on the summed squared error. Stops when the loss
 * falls below stop_loss or after max_steps updates. A non-finite loss
 * aborts with NumericError.
 */
TrainReport train(const Network& net, const TrainingSet& ts, const Optimizer& opt,
                  double stop_loss, std::size_t max_steps);

/// d x d Jacobian of the network map at x via one reverse pass per output
/// coordinate.
Matrix jacobian(const Network& net, const Vector& x);

/**
 * Two-layer ReLU autoencoder with frozen random first layer and the last
 * layer set to the minimum-norm least-squares solution on the hidden
 * features. For a single example the closed form interpolates exactly; the
 * Jacobian's top eigenvalue approaches ||x||^2/(||x||^2+1) as width grows.
 */
struct TwoLayerFixedHiddenReport {
    Network net;
    std::vector<Matrix> jacobians;           // per training example
    std::vector<double> top_eigenvalues;     // |lambda_1| per example
    std::vector<double> limit_predictions;   // ||x||^2/(||x||^2+1)
    Matrix hidden_gram_normalized;           // hidden-feature orthogonality diagnostic
};

TwoLayerFixedHiddenReport two_layer_fixed_hidden(const TrainingSet& ts, std::size_t width,
                                                 std::uint64_t seed);

}  // namespace memolab
