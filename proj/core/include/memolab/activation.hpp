#pragma once

#include <string>

#include "memolab/matrix.hpp"

namespace memolab {

/**
 * Element-wise nonlinearity bundled with its derivative and the minimum
 * l2-norm pre-image. The pre-image is what ties the nonlinear autoencoder
 * back to a linear system: a trained single layer satisfies
 * A x = preimage(x) on the training examples.
 */
class Activation {
public:
    enum class Kind { Sigmoid, Tanh, LeakyRelu, Relu, Identity };

    static Activation sigmoid();
    static Activation tanh();
    static Activation leaky_relu(double alpha = 0.01);
    static Activation relu();
    static Activation identity();
    static Activation from_name(const std::string& name);

    Kind kind() const { return kind_; }
    double leak() const { return alpha_; }
    const std::string& name() const { return name_; }

    double apply(double z) const;
    double derivative(double z) const;
    /// phi^{-1}(y): minimum-norm pre-image. Throws InvalidInput when y is
    /// outside range(phi).
    double min_norm_preimage(double y) const;
    bool in_range(double y) const;
    double at_zero() const { return apply(0.0); }

    Vector apply(const Vector& z) const;
    Vector min_norm_preimage(const Vector& y) const;

private:
    Activation(Kind kind, double alpha, std::string name)
        : kind_(kind), alpha_(alpha), name_(std::move(name)) {}

    Kind kind_;
    double alpha_;
    std::string name_;
};

}  // namespace memolab
