#include <doctest.h>

#include <cmath>
#include <cstring>
#include <numbers>

#include "oracles.hpp"
#include "orbitvqc/ansatz.hpp"
#include "orbitvqc/rng.hpp"

using namespace orbitvqc;

namespace {

constexpr double kPi = std::numbers::pi;

StateVector random_state(int n, Rng& rng) {
    std::vector<cplx> amps(std::size_t{1} << n);
    for (cplx& a : amps) {
        a = cplx(rng.normal(), rng.normal());
    }
    return StateVector(n, std::move(amps));
}

CircuitParams random_params(const AnsatzConfig& cfg, Rng& rng) {
    return CircuitParams::random(cfg, rng, kPi);
}

// Central finite differences of sum_q upstream_q <Z_q> over every parameter.
std::vector<double> fd_gradient(const AnsatzConfig& cfg, const CircuitParams& params,
                                const StateVector& encoded,
                                const std::vector<double>& upstream, double h) {
    auto weighted = [&](const CircuitParams& p) {
        const std::vector<double> z = circuit_forward(cfg, p, encoded);
        double acc = 0.0;
        for (std::size_t q = 0; q < z.size(); ++q) {
            acc += upstream[q] * z[q];
        }
        return acc;
    };
    std::vector<double> grad(params.size());
    for (std::size_t i = 0; i < params.size(); ++i) {
        CircuitParams plus = params, minus = params;
        plus.flat()[i] += h;
        minus.flat()[i] -= h;
        grad[i] = (weighted(plus) - weighted(minus)) / (2.0 * h);
    }
    return grad;
}

} // namespace

TEST_SUITE("ansatz") {

TEST_CASE("amplitude_encode basics") {
    const StateVector s00 = amplitude_encode({cplx(1, 0), cplx(0, 0), cplx(0, 0),
                                              cplx(0, 0)}, 2);
    CHECK(std::abs(s00.amps()[0] - cplx(1, 0)) < 1e-12);

    const StateVector tilted = amplitude_encode({cplx(0.6, 0), cplx(0.8, 0)}, 1);
    CHECK(tilted.amps()[0].real() == doctest::Approx(0.6));
    CHECK(tilted.amps()[1].real() == doctest::Approx(0.8));

    // The synthetic-task padding: normalize(a, b, 0, 0.25).
    const double a = 0.3, b = -0.7;
    const StateVector enc = amplitude_encode({cplx(a, 0), cplx(b, 0)}, 2,
                                             {cplx(0, 0), cplx(0.25, 0)});
    const double norm = std::sqrt(a * a + b * b + 0.25 * 0.25);
    CHECK(enc.amps()[0].real() == doctest::Approx(a / norm));
    CHECK(enc.amps()[1].real() == doctest::Approx(b / norm));
    CHECK(std::abs(enc.amps()[2]) < 1e-12);
    CHECK(enc.amps()[3].real() == doctest::Approx(0.25 / norm));
}

TEST_CASE("amplitude_encode rejects bad input") {
    CHECK_THROWS_AS(amplitude_encode(std::vector<cplx>(3, cplx(1, 0)), 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(amplitude_encode({cplx(0, 0), cplx(0, 0)}, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        amplitude_encode({cplx(1, 0)}, 1, {cplx(0, 0), cplx(0, 0)}),
        std::invalid_argument);
}

TEST_CASE("zero angles with |00> input give [1, 1]") {
    const AnsatzConfig cfg{2, 1};
    const CircuitParams params(1, 2);
    const std::vector<double> out = circuit_forward(cfg, params, StateVector(2));
    CHECK(out[0] == doctest::Approx(1.0));
    CHECK(out[1] == doctest::Approx(1.0));
}

TEST_CASE("single qubit, (pi, 0, 0) sends |0> to -i|1> and <Z> to -1") {
    const AnsatzConfig cfg{1, 1};
    CircuitParams params(1, 1);
    params.at(0, 0, 0) = kPi;
    const std::vector<double> out = circuit_forward(cfg, params, StateVector(1));
    CHECK(out[0] == doctest::Approx(-1.0));
}

TEST_CASE("single qubit closed form <Z> = cos(alpha) cos(beta)") {
    const AnsatzConfig cfg{1, 1};
    Rng rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        CircuitParams params(1, 1);
        params.at(0, 0, 0) = rng.uniform(-kPi, kPi);
        params.at(0, 0, 1) = rng.uniform(-kPi, kPi);
        params.at(0, 0, 2) = rng.uniform(-kPi, kPi);
        const std::vector<double> out =
            circuit_forward(cfg, params, StateVector(1));
        CHECK(out[0] == doctest::Approx(std::cos(params.at(0, 0, 0)) *
                                        std::cos(params.at(0, 0, 1))));
    }
}

TEST_CASE("forward agrees with the dense matrix-product oracle") {
    Rng rng(13);
    for (const Entangler ent :
         {Entangler::RingCnot, Entangler::LinearCnot, Entangler::RingCz}) {
        for (int trial = 0; trial < 8; ++trial) {
            const int n = 1 + static_cast<int>(rng.uniform_index(4));
            const int layers = 1 + static_cast<int>(rng.uniform_index(3));
            const AnsatzConfig cfg{n, layers, ent};
            const CircuitParams params = random_params(cfg, rng);
            const StateVector encoded = random_state(n, rng);
            const std::vector<double> fast = circuit_forward(cfg, params, encoded);
            const std::vector<double> slow =
                oracles::oracle_expectations(cfg, params, encoded.amps());
            for (int q = 0; q < n; ++q) {
                CHECK(fast[q] == doctest::Approx(slow[q]).epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("outputs stay within [-1, 1]") {
    Rng rng(17);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 1 + static_cast<int>(rng.uniform_index(4));
        const AnsatzConfig cfg{n, 1 + static_cast<int>(rng.uniform_index(4))};
        const std::vector<double> out = circuit_forward(
            cfg, random_params(cfg, rng), random_state(n, rng));
        for (double v : out) {
            CHECK(v >= -1.0 - 1e-12);
            CHECK(v <= 1.0 + 1e-12);
        }
    }
}

TEST_CASE("2-pi shift of any single slot leaves the outputs unchanged") {
    Rng rng(19);
    const AnsatzConfig cfg{3, 2};
    const CircuitParams params = random_params(cfg, rng);
    const StateVector encoded = random_state(3, rng);
    const std::vector<double> base = circuit_forward(cfg, params, encoded);
    for (std::size_t slot = 0; slot < params.size(); ++slot) {
        CircuitParams shifted = params;
        shifted.flat()[slot] += 2.0 * kPi;
        const std::vector<double> out = circuit_forward(cfg, shifted, encoded);
        for (int q = 0; q < 3; ++q) {
            CHECK(std::abs(out[q] - base[q]) < 1e-10);
        }
    }
}

TEST_CASE("forward is bit-identical across repeated calls") {
    Rng rng(23);
    const AnsatzConfig cfg{4, 3};
    const CircuitParams params = random_params(cfg, rng);
    const StateVector encoded = random_state(4, rng);
    const std::vector<double> a = circuit_forward(cfg, params, encoded);
    const std::vector<double> b = circuit_forward(cfg, params, encoded);
    CHECK(std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0);
}

TEST_CASE("zero upstream gives a zero gradient") {
    Rng rng(29);
    const AnsatzConfig cfg{2, 2};
    const std::vector<double> grad =
        circuit_gradient(cfg, random_params(cfg, rng), random_state(2, rng),
                         {0.0, 0.0});
    for (double g : grad) {
        CHECK(g == 0.0);
    }
}

TEST_CASE("closed-form derivative at (pi/2, 0, 0) is -1") {
    const AnsatzConfig cfg{1, 1};
    CircuitParams params(1, 1);
    params.at(0, 0, 0) = kPi / 2.0;
    const std::vector<double> grad =
        circuit_gradient(cfg, params, StateVector(1), {1.0});
    CHECK(grad[0] == doctest::Approx(-1.0)); // d/dalpha of cos(a)cos(b)
    CHECK(std::abs(grad[1]) < 1e-12);        // beta = 0 is a critical point
    CHECK(std::abs(grad[2]) < 1e-12);        // RZ does not move <Z>
}

TEST_CASE("parameter shift matches central finite differences") {
    Rng rng(31);
    for (int instance = 0; instance < 110; ++instance) {
        const int n = 1 + static_cast<int>(rng.uniform_index(4));
        const AnsatzConfig cfg{n, 1 + static_cast<int>(rng.uniform_index(3))};
        const CircuitParams params = random_params(cfg, rng);
        const StateVector encoded = random_state(n, rng);
        std::vector<double> upstream(n);
        for (double& u : upstream) {
            u = rng.uniform(-1.0, 1.0);
        }
        const std::vector<double> shift =
            circuit_gradient(cfg, params, encoded, upstream);
        const std::vector<double> fd =
            fd_gradient(cfg, params, encoded, upstream, 1e-5);
        for (std::size_t i = 0; i < shift.size(); ++i) {
            CHECK(oracles::rel_close(shift[i], fd[i], 1e-5));
        }
    }
}

TEST_CASE("shape mismatches are rejected") {
    const AnsatzConfig cfg{2, 2};
    const CircuitParams wrong(1, 2);
    CHECK_THROWS_AS(circuit_forward(cfg, wrong, StateVector(2)),
                    std::invalid_argument);
    const CircuitParams params(2, 2);
    CHECK_THROWS_AS(circuit_forward(cfg, params, StateVector(3)),
                    std::invalid_argument);
    CHECK_THROWS_AS(circuit_gradient(cfg, params, StateVector(2), {1.0}),
                    std::invalid_argument);
}

} // TEST_SUITE
