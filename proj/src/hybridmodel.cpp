#include "orbitvqc/hybridmodel.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace orbitvqc {

namespace {

// Flat layout: circuit params, then per layer all of W then b.
std::vector<double> flatten(const HybridModel& model, bool include_head) {
    std::vector<double> flat = model.qparams.flat();
    if (include_head) {
        for (const DenseLayer& layer : model.head.layers) {
            flat.insert(flat.end(), layer.w.begin(), layer.w.end());
            flat.insert(flat.end(), layer.b.begin(), layer.b.end());
        }
    }
    return flat;
}

void unflatten(HybridModel& model, const std::vector<double>& flat,
               bool include_head) {
    std::copy(flat.begin(), flat.begin() + model.qparams.size(),
              model.qparams.flat().begin());
    if (include_head) {
        std::size_t pos = model.qparams.size();
        for (DenseLayer& layer : model.head.layers) {
            std::copy(flat.begin() + pos, flat.begin() + pos + layer.w.size(),
                      layer.w.begin());
            pos += layer.w.size();
            std::copy(flat.begin() + pos, flat.begin() + pos + layer.b.size(),
                      layer.b.begin());
            pos += layer.b.size();
        }
    }
}

} // namespace

void HybridModel::validate() const {
    cfg.validate();
    head.validate();
    if (qparams.n_layers() != cfg.n_layers || qparams.n_qubits() != cfg.n_qubits) {
        throw std::invalid_argument("HybridModel: circuit params do not match config");
    }
    if (head.input_size() != cfg.n_qubits) {
        throw std::invalid_argument("HybridModel: head input size must equal n_qubits");
    }
}

void TrainConfig::validate() const {
    if (epochs < 1) {
        throw std::invalid_argument("TrainConfig: epochs must be positive");
    }
    if (batch_size < 1) {
        throw std::invalid_argument("TrainConfig: batch_size must be positive");
    }
    if (!(learning_rate > 0.0 && learning_rate < 1.0)) {
        throw std::invalid_argument("TrainConfig: learning_rate must be in (0, 1)");
    }
}

double predict(const HybridModel& model, const std::vector<cplx>& x) {
    const StateVector encoded = amplitude_encode(x, model.cfg.n_qubits);
    const std::vector<double> expectations =
        circuit_forward(model.cfg, model.qparams, encoded);
    return mlp_forward(model.head, expectations).first;
}

double mse_cost(const std::vector<double>& predictions,
                const std::vector<int>& labels) {
    if (predictions.empty()) {
        throw std::invalid_argument("mse_cost: empty input");
    }
    if (predictions.size() != labels.size()) {
        throw std::invalid_argument("mse_cost: length mismatch");
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < predictions.size(); ++i) {
        const double d = static_cast<double>(labels[i]) - predictions[i];
        acc += d * d;
    }
    return acc / static_cast<double>(predictions.size());
}

void adam_step(std::vector<double>& params, const std::vector<double>& grads,
               AdamState& state) {
    if (params.size() != grads.size() || params.size() != state.m.size()) {
        throw std::invalid_argument("adam_step: shape mismatch");
    }
    for (double g : grads) {
        if (!std::isfinite(g)) {
            throw std::runtime_error("adam_step: non-finite gradient at t=" +
                                     std::to_string(state.t + 1));
        }
    }
    state.t += 1;
    const double bc1 = 1.0 - std::pow(state.beta1, static_cast<double>(state.t));
    const double bc2 = 1.0 - std::pow(state.beta2, static_cast<double>(state.t));
    for (std::size_t i = 0; i < params.size(); ++i) {
        state.m[i] = state.beta1 * state.m[i] + (1.0 - state.beta1) * grads[i];
        state.v[i] = state.beta2 * state.v[i] + (1.0 - state.beta2) * grads[i] * grads[i];
        const double m_hat = state.m[i] / bc1;
        const double v_hat = state.v[i] / bc2;
        params[i] -= state.learning_rate * m_hat / (std::sqrt(v_hat) + state.eps);
    }
}

std::vector<EpochRecord> fit(HybridModel& model, const Dataset& dataset,
                             const TrainConfig& cfg) {
    cfg.validate();
    model.validate();
    if (dataset.samples.empty()) {
        throw std::invalid_argument("fit: dataset is empty");
    }
    if (static_cast<std::size_t>(cfg.batch_size) > dataset.size()) {
        throw std::invalid_argument("fit: batch_size exceeds dataset size");
    }

    const std::size_t m = dataset.size();
    std::vector<double> params = flatten(model, cfg.train_head);
    AdamState adam(params.size(), cfg.learning_rate);
    Rng shuffle_rng = Rng(cfg.seed).split(0xf17);

    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::vector<EpochRecord> history;
    history.reserve(cfg.epochs);

    for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
        for (std::size_t i = m; i > 1; --i) {
            std::swap(order[i - 1], order[shuffle_rng.uniform_index(i)]);
        }
        for (std::size_t start = 0; start < m;
             start += static_cast<std::size_t>(cfg.batch_size)) {
            const std::size_t stop =
                std::min(m, start + static_cast<std::size_t>(cfg.batch_size));
            const double batch_m = static_cast<double>(stop - start);

            std::vector<double> grad(params.size(), 0.0);
            for (std::size_t k = start; k < stop; ++k) {
                const Sample& s = dataset.samples[order[k]];
                const StateVector encoded =
                    amplitude_encode(s.features, model.cfg.n_qubits);
                const std::vector<double> expectations =
                    circuit_forward(model.cfg, model.qparams, encoded);
                auto [prediction, cache] = mlp_forward(model.head, expectations);

                // dC/dy' = 2(y' - y)/batch size, chained through the head
                // into the parameter-shift circuit gradient.
                const double upstream = 2.0 * (prediction - s.label) / batch_m;
                const MlpGrads head_grads =
                    mlp_backward(model.head, cache, upstream);
                const std::vector<double> qgrad = circuit_gradient(
                    model.cfg, model.qparams, encoded, head_grads.input);

                std::size_t j = 0;
                for (double g : qgrad) {
                    grad[j++] += g;
                }
                if (cfg.train_head) {
                    for (std::size_t l = 0; l < head_grads.w.size(); ++l) {
                        for (double g : head_grads.w[l]) {
                            grad[j++] += g;
                        }
                        for (double g : head_grads.b[l]) {
                            grad[j++] += g;
                        }
                    }
                }
            }
            adam_step(params, grad, adam);
            unflatten(model, params, cfg.train_head);
        }

        // Epoch bookkeeping on the full training set.
        std::vector<double> preds(m);
        std::vector<int> labels(m);
        std::size_t correct = 0;
        for (std::size_t i = 0; i < m; ++i) {
            preds[i] = predict(model, dataset.samples[i].features);
            labels[i] = dataset.samples[i].label;
            const int predicted = preds[i] < 0.0 ? -1 : 1;
            correct += predicted == labels[i];
        }
        const double cost = mse_cost(preds, labels);
        if (!std::isfinite(cost)) {
            throw std::runtime_error("fit: non-finite cost at epoch " +
                                     std::to_string(epoch));
        }
        history.push_back({epoch, cost, static_cast<double>(correct) / m});

        const int window = cfg.early_stop_window;
        if (window > 0 && static_cast<int>(history.size()) > window) {
            const double prev = history[history.size() - 1 - window].cost;
            if (std::abs(prev - cost) < cfg.early_stop_delta) {
                break;
            }
        }
    }
    return history;
}

double evaluate_accuracy(const HybridModel& model, const Dataset& dataset) {
    if (dataset.samples.empty()) {
        throw std::invalid_argument("evaluate_accuracy: dataset is empty");
    }
    std::size_t correct = 0;
    for (const Sample& s : dataset.samples) {
        const double y = predict(model, s.features);
        const int predicted = y < 0.0 ? -1 : 1; // sign(0) counts as +1
        correct += predicted == s.label;
    }
    return static_cast<double>(correct) / static_cast<double>(dataset.size());
}

} // namespace orbitvqc
