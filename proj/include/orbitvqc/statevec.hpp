#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace orbitvqc {

using cplx = std::complex<double>;

// Row-major 2x2 complex matrix.
struct Mat2 {
    cplx m00, m01, m10, m11;
};

enum class GateName { RX, RY, RZ, H, S, X, Y, Z, I, Unitary };

std::string to_string(GateName name);

// Single-qubit gate. Construction rejects non-unitary matrices.
class Gate1Q {
  public:
    Gate1Q(const Mat2& matrix, GateName name,
           std::optional<double> angle = std::nullopt);

    static Gate1Q rx(double theta);
    static Gate1Q ry(double theta);
    static Gate1Q rz(double theta);
    static Gate1Q h();
    static Gate1Q s();
    static Gate1Q x();
    static Gate1Q y();
    static Gate1Q z();
    static Gate1Q identity();
    static Gate1Q unitary(const Mat2& matrix);

    const Mat2& matrix() const { return matrix_; }
    GateName name() const { return name_; }
    std::optional<double> angle() const { return angle_; }

  private:
    Mat2 matrix_;
    GateName name_;
    std::optional<double> angle_;
};

enum class Gate2QKind { CZ, CNOT };

// Two-qubit gate on 1-based qubit indices. For CNOT, qubit_a is the control
// and qubit_b the target; CZ is symmetric.
struct Gate2Q {
    Gate2QKind kind;
    int qubit_a;
    int qubit_b;
};

// Dense amplitude vector of a pure n-qubit state. Basis index encodes
// |x_1 x_2 ... x_n> with qubit 1 as the most significant bit. Values are
// immutable once returned from an operation; share freely across threads.
class StateVector {
  public:
    // |00...0>
    explicit StateVector(int n_qubits);

    // Normalizes the given amplitudes; throws on zero norm or wrong length.
    StateVector(int n_qubits, std::vector<cplx> amplitudes);

    int n_qubits() const { return n_qubits_; }
    const std::vector<cplx>& amps() const { return amps_; }
    double norm() const;

  private:
    friend StateVector apply_1q(const StateVector&, const Gate1Q&, int);
    friend StateVector apply_2q(const StateVector&, const Gate2Q&);
    friend StateVector apply_local_operator(const StateVector&,
                                            const std::vector<Gate1Q>&);
    struct unchecked_t {};
    StateVector(unchecked_t, int n_qubits, std::vector<cplx> amplitudes);

    int n_qubits_;
    std::vector<cplx> amps_;
};

// U acting on one qubit; norm of the result is asserted, never repaired.
StateVector apply_1q(const StateVector& state, const Gate1Q& gate, int qubit);
StateVector apply_2q(const StateVector& state, const Gate2Q& gate);

// <Z_qubit>, always in [-1, 1].
double expect_z(const StateVector& state, int qubit);

// A_1 (x) ... (x) A_n, one gate per qubit.
StateVector apply_local_operator(const StateVector& state,
                                 const std::vector<Gate1Q>& ops);

// <a|b>
cplx inner_product(const StateVector& a, const StateVector& b);

inline double fidelity(const StateVector& a, const StateVector& b) {
    return std::norm(inner_product(a, b));
}

namespace detail {

// Raw kernels over bit positions counted from the least significant bit
// (bit = n_qubits - qubit for the public 1-based MSB-first convention).
// They act linearly on arbitrary, possibly unnormalized, amplitude arrays.
void apply_1q_raw(std::vector<cplx>& amps, const Mat2& u, int bit);
void apply_cz_raw(std::vector<cplx>& amps, int bit_a, int bit_b);
void apply_cnot_raw(std::vector<cplx>& amps, int bit_control, int bit_target);
double expect_z_raw(const std::vector<cplx>& amps, int bit);
double norm_of(const std::vector<cplx>& amps);
bool is_unitary(const Mat2& u, double tol);

} // namespace detail

} // namespace orbitvqc
