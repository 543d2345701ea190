#include "orbitvqc/ansatz.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace orbitvqc {

namespace {

// Rotation matrices inline (exp(-i theta P / 2)) to keep the forward pass
// free of Gate1Q construction overhead.
Mat2 rx_mat(double theta) {
    const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
    return {{c, 0.0}, {0.0, -s}, {0.0, -s}, {c, 0.0}};
}

Mat2 ry_mat(double theta) {
    const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
    return {{c, 0.0}, {-s, 0.0}, {s, 0.0}, {c, 0.0}};
}

Mat2 rz_mat(double theta) {
    const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
    return {{c, -s}, {0.0, 0.0}, {0.0, 0.0}, {c, s}};
}

void apply_entangler(std::vector<cplx>& amps, const AnsatzConfig& cfg) {
    const int n = cfg.n_qubits;
    if (n < 2) {
        return;
    }
    switch (cfg.entangler) {
    case Entangler::RingCnot:
        for (int q = 1; q < n; ++q) {
            detail::apply_cnot_raw(amps, n - q, n - (q + 1));
        }
        if (n >= 3) {
            detail::apply_cnot_raw(amps, 0, n - 1);
        }
        break;
    case Entangler::LinearCnot:
        for (int q = 1; q < n; ++q) {
            detail::apply_cnot_raw(amps, n - q, n - (q + 1));
        }
        break;
    case Entangler::RingCz:
        for (int q = 1; q < n; ++q) {
            detail::apply_cz_raw(amps, n - q, n - (q + 1));
        }
        if (n >= 3) {
            detail::apply_cz_raw(amps, 0, n - 1);
        }
        break;
    }
}

// Applies layer `layer` with exactly one slot shifted by `delta`
// (shift_qubit/shift_slot are 0-based; pass shift_qubit = -1 for no shift).
void apply_layer(std::vector<cplx>& amps, const AnsatzConfig& cfg,
                 const CircuitParams& params, int layer, int shift_qubit,
                 int shift_slot, double delta) {
    const int n = cfg.n_qubits;
    for (int q = 0; q < n; ++q) {
        const int bit = n - 1 - q;
        double a = params.at(layer, q, 0);
        double b = params.at(layer, q, 1);
        double g = params.at(layer, q, 2);
        if (q == shift_qubit) {
            if (shift_slot == 0) a += delta;
            else if (shift_slot == 1) b += delta;
            else g += delta;
        }
        detail::apply_1q_raw(amps, rx_mat(a), bit);
        detail::apply_1q_raw(amps, ry_mat(b), bit);
        detail::apply_1q_raw(amps, rz_mat(g), bit);
    }
    apply_entangler(amps, cfg);
}

std::vector<double> all_expect_z(const std::vector<cplx>& amps, int n) {
    std::vector<double> out(n);
    for (int q = 0; q < n; ++q) {
        out[q] = detail::expect_z_raw(amps, n - 1 - q);
    }
    return out;
}

void check_shapes(const AnsatzConfig& cfg, const CircuitParams& params) {
    cfg.validate();
    if (params.n_layers() != cfg.n_layers || params.n_qubits() != cfg.n_qubits) {
        throw std::invalid_argument("CircuitParams shape does not match AnsatzConfig");
    }
}

} // namespace

std::string to_string(Entangler e) {
    switch (e) {
    case Entangler::RingCnot: return "ring-cnot";
    case Entangler::LinearCnot: return "linear-cnot";
    case Entangler::RingCz: return "ring-cz";
    }
    return "?";
}

Entangler entangler_from_string(const std::string& s) {
    if (s == "ring-cnot") return Entangler::RingCnot;
    if (s == "linear-cnot") return Entangler::LinearCnot;
    if (s == "ring-cz") return Entangler::RingCz;
    throw std::invalid_argument("unknown entangler: " + s);
}

void AnsatzConfig::validate() const {
    if (n_qubits < 1) {
        throw std::invalid_argument("AnsatzConfig: n_qubits must be positive");
    }
    if (n_layers < 1) {
        throw std::invalid_argument("AnsatzConfig: n_layers must be >= 1");
    }
}

CircuitParams::CircuitParams(int n_layers, int n_qubits)
    : n_layers_(n_layers), n_qubits_(n_qubits),
      values_(static_cast<std::size_t>(n_layers) * n_qubits * 3, 0.0) {
    if (n_layers < 1 || n_qubits < 1) {
        throw std::invalid_argument("CircuitParams: shape must be positive");
    }
}

CircuitParams CircuitParams::random(const AnsatzConfig& cfg, Rng& rng,
                                    double scale) {
    CircuitParams p(cfg.n_layers, cfg.n_qubits);
    for (double& v : p.values_) {
        v = rng.uniform(-scale, scale);
    }
    return p;
}

std::size_t CircuitParams::index(int layer, int qubit, int slot) const {
    return (static_cast<std::size_t>(layer) * n_qubits_ + qubit) * 3 + slot;
}

StateVector amplitude_encode(const std::vector<cplx>& features, int n_qubits,
                             const std::vector<cplx>& pad) {
    if (n_qubits < 1) {
        throw std::invalid_argument("amplitude_encode: n_qubits must be positive");
    }
    const std::size_t dim = std::size_t{1} << n_qubits;
    if (features.size() > dim) {
        throw std::invalid_argument("amplitude_encode: feature vector longer than 2^n");
    }
    if (features.size() + pad.size() > dim) {
        throw std::invalid_argument("amplitude_encode: features plus pad exceed 2^n");
    }
    std::vector<cplx> amps(dim, cplx(0.0, 0.0));
    std::size_t i = 0;
    for (const cplx& f : features) {
        amps[i++] = f;
    }
    for (const cplx& p : pad) {
        amps[i++] = p;
    }
    return StateVector(n_qubits, std::move(amps)); // normalizes, rejects zero norm
}

std::vector<double> circuit_forward(const AnsatzConfig& cfg,
                                    const CircuitParams& params,
                                    const StateVector& encoded) {
    check_shapes(cfg, params);
    if (encoded.n_qubits() != cfg.n_qubits) {
        throw std::invalid_argument("encoded state size does not match ansatz");
    }
    std::vector<cplx> amps = encoded.amps();
    for (int layer = 0; layer < cfg.n_layers; ++layer) {
        apply_layer(amps, cfg, params, layer, -1, 0, 0.0);
    }
    return all_expect_z(amps, cfg.n_qubits);
}

std::vector<double> circuit_gradient(const AnsatzConfig& cfg,
                                     const CircuitParams& params,
                                     const StateVector& encoded,
                                     const std::vector<double>& upstream) {
    check_shapes(cfg, params);
    if (encoded.n_qubits() != cfg.n_qubits) {
        throw std::invalid_argument("encoded state size does not match ansatz");
    }
    if (upstream.size() != static_cast<std::size_t>(cfg.n_qubits)) {
        throw std::invalid_argument("upstream length must equal n_qubits");
    }

    const int n = cfg.n_qubits;
    const int layers = cfg.n_layers;
    constexpr double half_pi = std::numbers::pi / 2.0;

    // States before each layer; prefix[l] has layers 0..l-1 applied.
    std::vector<std::vector<cplx>> prefix(layers);
    prefix[0] = encoded.amps();
    for (int l = 1; l < layers; ++l) {
        prefix[l] = prefix[l - 1];
        apply_layer(prefix[l], cfg, params, l - 1, -1, 0, 0.0);
    }

    auto weighted = [&](const std::vector<cplx>& amps) {
        double acc = 0.0;
        for (int q = 0; q < n; ++q) {
            acc += upstream[q] * detail::expect_z_raw(amps, n - 1 - q);
        }
        return acc;
    };

    std::vector<double> grad(params.size(), 0.0);
    std::vector<cplx> work;
    std::size_t idx = 0;
    for (int l = 0; l < layers; ++l) {
        for (int q = 0; q < n; ++q) {
            for (int slot = 0; slot < 3; ++slot, ++idx) {
                double shifted[2];
                for (int s = 0; s < 2; ++s) {
                    const double delta = s == 0 ? half_pi : -half_pi;
                    work = prefix[l];
                    apply_layer(work, cfg, params, l, q, slot, delta);
                    for (int rest = l + 1; rest < layers; ++rest) {
                        apply_layer(work, cfg, params, rest, -1, 0, 0.0);
                    }
                    shifted[s] = weighted(work);
                }
                grad[idx] = 0.5 * (shifted[0] - shifted[1]);
            }
        }
    }
    return grad;
}

} // namespace orbitvqc
