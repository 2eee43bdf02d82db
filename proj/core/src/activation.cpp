#include "memolab/activation.hpp"

#include <cmath>

#include "memolab/errors.hpp"

namespace memolab {

Activation Activation::sigmoid() { return Activation(Kind::Sigmoid, 0.0, "sigmoid"); }
Activation Activation::tanh() { return Activation(Kind::Tanh, 0.0, "tanh"); }
Activation Activation::leaky_relu(double alpha) {
    if (!(alpha > 0.0)) throw InvalidInput("leaky_relu: slope must be positive");
    return Activation(Kind::LeakyRelu, alpha, "leaky_relu");
}
Activation Activation::relu() { return Activation(Kind::Relu, 0.0, "relu"); }
Activation Activation::identity() { return Activation(Kind::Identity, 0.0, "identity"); }

Activation Activation::from_name(const std::string& name) {
    if (name == "sigmoid") return sigmoid();
    if (name == "tanh") return tanh();
    if (name == "leaky_relu") return leaky_relu();
    if (name == "relu") return relu();
    if (name == "identity" || name == "none" || name == "linear") return identity();
    throw InvalidInput("unknown activation: " + name);
}

double Activation::apply(double z) const {
    switch (kind_) {
        case Kind::Sigmoid: return 1.0 / (1.0 + std::exp(-z));
        case Kind::Tanh: return std::tanh(z);
        case Kind::LeakyRelu: return z >= 0.0 ? z : alpha_ * z;
        case Kind::Relu: return z >= 0.0 ? z : 0.0;
        case Kind::Identity: return z;
    }
    return z;
}

double Activation::derivative(double z) const {
    switch (kind_) {
        case Kind::Sigmoid: {
            const double s = apply(z);
            return s * (1.0 - s);
        }
        case Kind::Tanh: {
            const double t = std::tanh(z);
            return 1.0 - t * t;
        }
        // the kink takes the right derivative
        case Kind::LeakyRelu: return z >= 0.0 ? 1.0 : alpha_;
        case Kind::Relu: return z >= 0.0 ? 1.0 : 0.0;
        case Kind::Identity: return 1.0;
    }
    return 1.0;
}

bool Activation::in_range(double y) const {
    switch (kind_) {
        case Kind::Sigmoid: return y > 0.0 && y < 1.0;
        case Kind::Tanh: return y > -1.0 && y < 1.0;
        case Kind::Relu: return y >= 0.0;
        case Kind::LeakyRelu:
        case Kind::Identity: return true;
    }
    return true;
}

double Activation::min_norm_preimage(double y) const {
    switch (kind_) {
        case Kind::Sigmoid:
            if (!(y > 0.0 && y < 1.0)) throw InvalidInput("sigmoid preimage: y outside (0,1)");
            return std::log(y / (1.0 - y));
        case Kind::Tanh:
            if (!(y > -1.0 && y < 1.0)) throw InvalidInput("tanh preimage: y outside (-1,1)");
            return std::atanh(y);
        case Kind::LeakyRelu:
            return y >= 0.0 ? y : y / alpha_;
        case Kind::Relu:
            // pre-images of 0 are (-inf, 0]; the minimum-norm choice is 0
            if (y < 0.0) throw InvalidInput("relu preimage: y < 0 has no pre-image");
            return y;
        case Kind::Identity:
            return y;
    }
    return y;
}

Vector Activation::apply(const Vector& z) const {
    Vector out(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) out[i] = apply(z[i]);
    return out;
}

Vector Activation::min_norm_preimage(const Vector& y) const {
    Vector out(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) out[i] = min_norm_preimage(y[i]);
    return out;
}

}  // namespace memolab
