#pragma once

#include <utility>
#include <vector>

#include "orbitvqc/rng.hpp"

namespace orbitvqc {

enum class Activation { Tanh, Identity };

// Dense layer y = act(W x + b), W row-major (out_size x in_size).
struct DenseLayer {
    int out_size = 0;
    int in_size = 0;
    std::vector<double> w;
    std::vector<double> b;
    Activation activation = Activation::Tanh;
};

// Classical post-processing head; the final layer emits a single scalar.
struct Mlp {
    std::vector<DenseLayer> layers;

    int input_size() const;
    std::size_t parameter_count() const;
    void validate() const;
};

struct MlpCache {
    std::vector<double> input;
    std::vector<std::vector<double>> pre;  // W x + b per layer
    std::vector<std::vector<double>> post; // activations per layer
};

std::pair<double, MlpCache> mlp_forward(const Mlp& mlp,
                                        const std::vector<double>& input);

struct MlpGrads {
    std::vector<std::vector<double>> w;
    std::vector<std::vector<double>> b;
    std::vector<double> input;
};

// d(output)/d(W, b, input) scaled by upstream.
MlpGrads mlp_backward(const Mlp& mlp, const MlpCache& cache, double upstream);

// Tanh layers sized input -> hidden... -> 1, weights uniform in
// [-1/sqrt(fan_in), 1/sqrt(fan_in)], biases zero.
Mlp mlp_init(const std::vector<int>& layer_sizes, Rng& rng);

} // namespace orbitvqc
