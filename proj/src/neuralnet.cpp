#include "orbitvqc/neuralnet.hpp"

#include <cmath>
#include <stdexcept>

namespace orbitvqc {

int Mlp::input_size() const {
    if (layers.empty()) {
        throw std::invalid_argument("Mlp has no layers");
    }
    return layers.front().in_size;
}

std::size_t Mlp::parameter_count() const {
    std::size_t count = 0;
    for (const DenseLayer& layer : layers) {
        count += layer.w.size() + layer.b.size();
    }
    return count;
}

void Mlp::validate() const {
    if (layers.empty()) {
        throw std::invalid_argument("Mlp has no layers");
    }
    int prev = layers.front().in_size;
    for (const DenseLayer& layer : layers) {
        if (layer.out_size < 1 || layer.in_size < 1) {
            throw std::invalid_argument("DenseLayer sizes must be positive");
        }
        if (layer.in_size != prev) {
            throw std::invalid_argument("Mlp layer dimensions do not chain");
        }
        if (layer.w.size() != static_cast<std::size_t>(layer.out_size) * layer.in_size ||
            layer.b.size() != static_cast<std::size_t>(layer.out_size)) {
            throw std::invalid_argument("DenseLayer weight/bias shape mismatch");
        }
        prev = layer.out_size;
    }
    if (layers.back().out_size != 1) {
        throw std::invalid_argument("final Mlp layer must output a single scalar");
    }
}

std::pair<double, MlpCache> mlp_forward(const Mlp& mlp,
                                        const std::vector<double>& input) {
    mlp.validate();
    if (static_cast<int>(input.size()) != mlp.input_size()) {
        throw std::invalid_argument("mlp_forward input length mismatch");
    }
    MlpCache cache;
    cache.input = input;
    cache.pre.reserve(mlp.layers.size());
    cache.post.reserve(mlp.layers.size());

    const std::vector<double>* current = &cache.input;
    for (const DenseLayer& layer : mlp.layers) {
        std::vector<double> z(layer.out_size);
        for (int r = 0; r < layer.out_size; ++r) {
            double acc = layer.b[r];
            const double* row = layer.w.data() + static_cast<std::size_t>(r) * layer.in_size;
            for (int c = 0; c < layer.in_size; ++c) {
                acc += row[c] * (*current)[c];
            }
            z[r] = acc;
        }
        std::vector<double> a(layer.out_size);
        for (int r = 0; r < layer.out_size; ++r) {
            a[r] = layer.activation == Activation::Tanh ? std::tanh(z[r]) : z[r];
        }
        cache.pre.push_back(std::move(z));
        cache.post.push_back(std::move(a));
        current = &cache.post.back();
    }
    return {cache.post.back()[0], std::move(cache)};
}

MlpGrads mlp_backward(const Mlp& mlp, const MlpCache& cache, double upstream) {
    if (cache.pre.size() != mlp.layers.size() ||
        static_cast<int>(cache.input.size()) != mlp.input_size()) {
        throw std::invalid_argument("mlp_backward cache does not match network");
    }
    const std::size_t depth = mlp.layers.size();
    MlpGrads grads;
    grads.w.resize(depth);
    grads.b.resize(depth);

    // delta for the output layer; tanh'(z) = 1 - tanh(z)^2.
    std::vector<double> delta{upstream};
    if (mlp.layers.back().activation == Activation::Tanh) {
        const double t = cache.post.back()[0];
        delta[0] *= 1.0 - t * t;
    }

    for (std::size_t l = depth; l-- > 0;) {
        const DenseLayer& layer = mlp.layers[l];
        const std::vector<double>& in =
            l == 0 ? cache.input : cache.post[l - 1];

        grads.w[l].resize(layer.w.size());
        grads.b[l] = delta;
        for (int r = 0; r < layer.out_size; ++r) {
            double* row = grads.w[l].data() + static_cast<std::size_t>(r) * layer.in_size;
            for (int c = 0; c < layer.in_size; ++c) {
                row[c] = delta[r] * in[c];
            }
        }

        std::vector<double> prev(layer.in_size, 0.0);
        for (int c = 0; c < layer.in_size; ++c) {
            double acc = 0.0;
            for (int r = 0; r < layer.out_size; ++r) {
                acc += layer.w[static_cast<std::size_t>(r) * layer.in_size + c] * delta[r];
            }
            prev[c] = acc;
        }
        if (l > 0 && mlp.layers[l - 1].activation == Activation::Tanh) {
            for (int c = 0; c < layer.in_size; ++c) {
                const double t = cache.post[l - 1][c];
                prev[c] *= 1.0 - t * t;
            }
        }
        if (l == 0) {
            grads.input = std::move(prev);
        } else {
            delta = std::move(prev);
        }
    }
    return grads;
}

Mlp mlp_init(const std::vector<int>& layer_sizes, Rng& rng) {
    if (layer_sizes.size() < 2) {
        throw std::invalid_argument("mlp_init needs an input size and at least one layer");
    }
    for (int s : layer_sizes) {
        if (s < 1) {
            throw std::invalid_argument("mlp_init sizes must be positive");
        }
    }
    if (layer_sizes.back() != 1) {
        throw std::invalid_argument("mlp_init final layer size must be 1");
    }
    Mlp mlp;
    for (std::size_t l = 1; l < layer_sizes.size(); ++l) {
        DenseLayer layer;
        layer.in_size = layer_sizes[l - 1];
        layer.out_size = layer_sizes[l];
        layer.activation = Activation::Tanh;
        const double bound = 1.0 / std::sqrt(static_cast<double>(layer.in_size));
        layer.w.resize(static_cast<std::size_t>(layer.out_size) * layer.in_size);
        for (double& v : layer.w) {
            v = rng.uniform(-bound, bound);
        }
        layer.b.assign(layer.out_size, 0.0);
        mlp.layers.push_back(std::move(layer));
    }
    mlp.validate();
    return mlp;
}

} // namespace orbitvqc
