#pragma once

#include <cstdint>
#include <vector>

#include "orbitvqc/ansatz.hpp"
#include "orbitvqc/datasets.hpp"
#include "orbitvqc/neuralnet.hpp"

namespace orbitvqc {

// Variational circuit plus classical head, trained jointly.
struct HybridModel {
    AnsatzConfig cfg;
    CircuitParams qparams;
    Mlp head;

    void validate() const;
};

struct AdamState {
    std::vector<double> m; // first moment
    std::vector<double> v; // second moment
    long t = 0;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
    double learning_rate = 0.005;

    explicit AdamState(std::size_t n_params, double lr = 0.005)
        : m(n_params, 0.0), v(n_params, 0.0), learning_rate(lr) {}
};

struct TrainConfig {
    int epochs = 150;
    int batch_size = 32;
    double learning_rate = 0.005;
    std::uint64_t seed = 0;
    bool train_head = true; // false trains the circuit only (fixed readout head)
    int early_stop_window = 10;
    double early_stop_delta = 1e-6;

    void validate() const;
};

struct EpochRecord {
    int epoch = 0;
    double cost = 0.0;
    double train_accuracy = 0.0;
};

double predict(const HybridModel& model, const std::vector<cplx>& x);

// C = (1/m) sum (y_i - y'_i)^2 for labels in {-1, +1}.
double mse_cost(const std::vector<double>& predictions,
                const std::vector<int>& labels);

// One standard Adam update with bias correction; aborts on non-finite grads.
void adam_step(std::vector<double>& params, const std::vector<double>& grads,
               AdamState& state);

// Shuffled mini-batch training; history holds one record per epoch.
std::vector<EpochRecord> fit(HybridModel& model, const Dataset& dataset,
                             const TrainConfig& cfg);

// Fraction with sign(predict) == label; sign(0) counts as +1.
double evaluate_accuracy(const HybridModel& model, const Dataset& dataset);

} // namespace orbitvqc
