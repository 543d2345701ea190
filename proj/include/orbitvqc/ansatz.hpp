#pragma once

#include <string>
#include <vector>

#include "orbitvqc/rng.hpp"
#include "orbitvqc/statevec.hpp"

namespace orbitvqc {

enum class Entangler { RingCnot, LinearCnot, RingCz };

std::string to_string(Entangler e);
Entangler entangler_from_string(const std::string& s);

struct AnsatzConfig {
    int n_qubits = 1;
    int n_layers = 1;
    Entangler entangler = Entangler::RingCnot;

    void validate() const;
};

// Trainable rotation angles, shape [n_layers][n_qubits][3] with slots
// (alpha, beta, gamma) driving (RX, RY, RZ).
class CircuitParams {
  public:
    CircuitParams(int n_layers, int n_qubits);

    static CircuitParams random(const AnsatzConfig& cfg, Rng& rng, double scale);

    double at(int layer, int qubit, int slot) const {
        return values_[index(layer, qubit, slot)];
    }
    double& at(int layer, int qubit, int slot) {
        return values_[index(layer, qubit, slot)];
    }

    const std::vector<double>& flat() const { return values_; }
    std::vector<double>& flat() { return values_; }

    int n_layers() const { return n_layers_; }
    int n_qubits() const { return n_qubits_; }
    std::size_t size() const { return values_.size(); }

  private:
    std::size_t index(int layer, int qubit, int slot) const;

    int n_layers_;
    int n_qubits_;
    std::vector<double> values_;
};

// Loads a feature vector as amplitudes: (features ++ pad), zero-filled up to
// 2^n_qubits, then normalized.
StateVector amplitude_encode(const std::vector<cplx>& features, int n_qubits,
                             const std::vector<cplx>& pad = {});

// One layer is RX(alpha) RY(beta) RZ(gamma) on every qubit followed by the
// entangler; returns [<Z_1>, ..., <Z_n>] after n_layers of that.
std::vector<double> circuit_forward(const AnsatzConfig& cfg,
                                    const CircuitParams& params,
                                    const StateVector& encoded);

// d(sum_q upstream_q <Z_q>)/dtheta for every parameter, via the parameter
// shift rule; result is flat in the same order as CircuitParams::flat().
std::vector<double> circuit_gradient(const AnsatzConfig& cfg,
                                     const CircuitParams& params,
                                     const StateVector& encoded,
                                     const std::vector<double>& upstream);

} // namespace orbitvqc
