#include "orbitvqc/statevec.hpp"

#include <cmath>
#include <stdexcept>

namespace orbitvqc {

namespace {

constexpr double kUnitaryTol = 1e-10;
constexpr double kNormTol = 1e-10;

void check_qubit(int qubit, int n) {
    if (qubit < 1 || qubit > n) {
        throw std::out_of_range("qubit index " + std::to_string(qubit) +
                                " out of range [1, " + std::to_string(n) + "]");
    }
}

} // namespace

std::string to_string(GateName name) {
    switch (name) {
    case GateName::RX: return "RX";
    case GateName::RY: return "RY";
    case GateName::RZ: return "RZ";
    case GateName::H: return "H";
    case GateName::S: return "S";
    case GateName::X: return "X";
    case GateName::Y: return "Y";
    case GateName::Z: return "Z";
    case GateName::I: return "I";
    case GateName::Unitary: return "U";
    }
    return "?";
}

namespace detail {

bool is_unitary(const Mat2& u, double tol) {
    // Rows of U^dagger U against the identity, max-norm.
    const cplx a = std::conj(u.m00) * u.m00 + std::conj(u.m10) * u.m10;
    const cplx b = std::conj(u.m00) * u.m01 + std::conj(u.m10) * u.m11;
    const cplx c = std::conj(u.m01) * u.m00 + std::conj(u.m11) * u.m10;
    const cplx d = std::conj(u.m01) * u.m01 + std::conj(u.m11) * u.m11;
    return std::abs(a - 1.0) < tol && std::abs(b) < tol && std::abs(c) < tol &&
           std::abs(d - 1.0) < tol;
}

void apply_1q_raw(std::vector<cplx>& amps, const Mat2& u, int bit) {
    const std::size_t mask = std::size_t{1} << bit;
    const double u00r = u.m00.real(), u00i = u.m00.imag();
    const double u01r = u.m01.real(), u01i = u.m01.imag();
    const double u10r = u.m10.real(), u10i = u.m10.imag();
    const double u11r = u.m11.real(), u11i = u.m11.imag();
    const std::size_t dim = amps.size();
    for (std::size_t base = 0; base < dim; base += 2 * mask) {
        for (std::size_t i = base; i < base + mask; ++i) {
            const std::size_t j = i | mask;
            const double a0r = amps[i].real(), a0i = amps[i].imag();
            const double a1r = amps[j].real(), a1i = amps[j].imag();
            amps[i] = cplx(u00r * a0r - u00i * a0i + u01r * a1r - u01i * a1i,
                           u00r * a0i + u00i * a0r + u01r * a1i + u01i * a1r);
            amps[j] = cplx(u10r * a0r - u10i * a0i + u11r * a1r - u11i * a1i,
                           u10r * a0i + u10i * a0r + u11r * a1i + u11i * a1r);
        }
    }
}

void apply_cz_raw(std::vector<cplx>& amps, int bit_a, int bit_b) {
    const std::size_t mask = (std::size_t{1} << bit_a) | (std::size_t{1} << bit_b);
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if ((i & mask) == mask) {
            amps[i] = -amps[i];
        }
    }
}

void apply_cnot_raw(std::vector<cplx>& amps, int bit_control, int bit_target) {
    const std::size_t cmask = std::size_t{1} << bit_control;
    const std::size_t tmask = std::size_t{1} << bit_target;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if ((i & cmask) && !(i & tmask)) {
            std::swap(amps[i], amps[i | tmask]);
        }
    }
}

double expect_z_raw(const std::vector<cplx>& amps, int bit) {
    const std::size_t mask = std::size_t{1} << bit;
    double acc = 0.0;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        const double p = amps[i].real() * amps[i].real() +
                         amps[i].imag() * amps[i].imag();
        acc += (i & mask) ? -p : p;
    }
    return acc;
}

double norm_of(const std::vector<cplx>& amps) {
    double acc = 0.0;
    for (const cplx& a : amps) {
        acc += a.real() * a.real() + a.imag() * a.imag();
    }
    return std::sqrt(acc);
}

} // namespace detail

Gate1Q::Gate1Q(const Mat2& matrix, GateName name, std::optional<double> angle)
    : matrix_(matrix), name_(name), angle_(angle) {
    if (!detail::is_unitary(matrix_, kUnitaryTol)) {
        throw std::invalid_argument("Gate1Q matrix is not unitary");
    }
}

Gate1Q Gate1Q::rx(double theta) {
    const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
    return Gate1Q({{c, 0.0}, {0.0, -s}, {0.0, -s}, {c, 0.0}}, GateName::RX, theta);
}

Gate1Q Gate1Q::ry(double theta) {
    const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
    return Gate1Q({{c, 0.0}, {-s, 0.0}, {s, 0.0}, {c, 0.0}}, GateName::RY, theta);
}

Gate1Q Gate1Q::rz(double theta) {
    const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
    return Gate1Q({{c, -s}, {0.0, 0.0}, {0.0, 0.0}, {c, s}}, GateName::RZ, theta);
}

Gate1Q Gate1Q::h() {
    const double r = 1.0 / std::sqrt(2.0);
    return Gate1Q({{r, 0.0}, {r, 0.0}, {r, 0.0}, {-r, 0.0}}, GateName::H);
}

Gate1Q Gate1Q::s() {
    return Gate1Q({{1.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {0.0, 1.0}}, GateName::S);
}

Gate1Q Gate1Q::x() {
    return Gate1Q({{0.0, 0.0}, {1.0, 0.0}, {1.0, 0.0}, {0.0, 0.0}}, GateName::X);
}

Gate1Q Gate1Q::y() {
    return Gate1Q({{0.0, 0.0}, {0.0, -1.0}, {0.0, 1.0}, {0.0, 0.0}}, GateName::Y);
}

Gate1Q Gate1Q::z() {
    return Gate1Q({{1.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {-1.0, 0.0}}, GateName::Z);
}

Gate1Q Gate1Q::identity() {
    return Gate1Q({{1.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}}, GateName::I);
}

Gate1Q Gate1Q::unitary(const Mat2& matrix) {
    return Gate1Q(matrix, GateName::Unitary);
}

StateVector::StateVector(int n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits < 1) {
        throw std::invalid_argument("n_qubits must be positive");
    }
    amps_.assign(std::size_t{1} << n_qubits, cplx(0.0, 0.0));
    amps_[0] = cplx(1.0, 0.0);
}

StateVector::StateVector(int n_qubits, std::vector<cplx> amplitudes)
    : n_qubits_(n_qubits), amps_(std::move(amplitudes)) {
    if (n_qubits < 1) {
        throw std::invalid_argument("n_qubits must be positive");
    }
    if (amps_.size() != (std::size_t{1} << n_qubits)) {
        throw std::invalid_argument("amplitude count must be 2^n_qubits");
    }
    const double nrm = detail::norm_of(amps_);
    if (nrm < 1e-12) {
        throw std::invalid_argument("cannot normalize a zero-norm state");
    }
    for (cplx& a : amps_) {
        a /= nrm;
    }
}

StateVector::StateVector(unchecked_t, int n_qubits, std::vector<cplx> amplitudes)
    : n_qubits_(n_qubits), amps_(std::move(amplitudes)) {
    const double nrm = detail::norm_of(amps_);
    if (std::abs(nrm - 1.0) > kNormTol) {
        throw std::logic_error("state norm drifted beyond tolerance: " +
                               std::to_string(nrm));
    }
}

double StateVector::norm() const { return detail::norm_of(amps_); }

StateVector apply_1q(const StateVector& state, const Gate1Q& gate, int qubit) {
    check_qubit(qubit, state.n_qubits());
    std::vector<cplx> amps = state.amps();
    detail::apply_1q_raw(amps, gate.matrix(), state.n_qubits() - qubit);
    return StateVector(StateVector::unchecked_t{}, state.n_qubits(), std::move(amps));
}

StateVector apply_2q(const StateVector& state, const Gate2Q& gate) {
    const int n = state.n_qubits();
    check_qubit(gate.qubit_a, n);
    check_qubit(gate.qubit_b, n);
    if (gate.qubit_a == gate.qubit_b) {
        throw std::invalid_argument("two-qubit gate requires distinct qubits");
    }
    std::vector<cplx> amps = state.amps();
    if (gate.kind == Gate2QKind::CZ) {
        detail::apply_cz_raw(amps, n - gate.qubit_a, n - gate.qubit_b);
    } else {
        detail::apply_cnot_raw(amps, n - gate.qubit_a, n - gate.qubit_b);
    }
    return StateVector(StateVector::unchecked_t{}, n, std::move(amps));
}

double expect_z(const StateVector& state, int qubit) {
    check_qubit(qubit, state.n_qubits());
    return detail::expect_z_raw(state.amps(), state.n_qubits() - qubit);
}

StateVector apply_local_operator(const StateVector& state,
                                 const std::vector<Gate1Q>& ops) {
    const int n = state.n_qubits();
    if (static_cast<int>(ops.size()) != n) {
        throw std::invalid_argument("apply_local_operator needs exactly one gate per qubit");
    }
    std::vector<cplx> amps = state.amps();
    for (int q = 1; q <= n; ++q) {
        detail::apply_1q_raw(amps, ops[q - 1].matrix(), n - q);
    }
    return StateVector(StateVector::unchecked_t{}, n, std::move(amps));
}

cplx inner_product(const StateVector& a, const StateVector& b) {
    if (a.n_qubits() != b.n_qubits()) {
        throw std::invalid_argument("inner_product dimension mismatch");
    }
    cplx acc(0.0, 0.0);
    for (std::size_t i = 0; i < a.amps().size(); ++i) {
        acc += std::conj(a.amps()[i]) * b.amps()[i];
    }
    return acc;
}

} // namespace orbitvqc
