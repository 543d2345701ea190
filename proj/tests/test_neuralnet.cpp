#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "orbitvqc/neuralnet.hpp"
#include "orbitvqc/rng.hpp"

using namespace orbitvqc;

namespace {

Mlp random_mlp(const std::vector<int>& sizes, Rng& rng) {
    Mlp mlp = mlp_init(sizes, rng);
    for (DenseLayer& layer : mlp.layers) {
        for (double& b : layer.b) {
            b = rng.uniform(-0.5, 0.5);
        }
    }
    return mlp;
}

} // namespace

TEST_SUITE("neuralnet") {

TEST_CASE("zero weights give tanh(0) = 0 for any input") {
    Mlp mlp;
    mlp.layers.push_back({1, 3, {0, 0, 0}, {0}, Activation::Tanh});
    CHECK(mlp_forward(mlp, {0.4, -2.0, 7.0}).first == 0.0);
}

TEST_CASE("1x1 layer with W=1, b=0 evaluates tanh(0.5)") {
    Mlp mlp;
    mlp.layers.push_back({1, 1, {1.0}, {0.0}, Activation::Tanh});
    CHECK(mlp_forward(mlp, {0.5}).first == doctest::Approx(0.46211715726).epsilon(1e-9));
}

TEST_CASE("two-layer network matches the naive loop oracle") {
    Rng rng(3);
    for (int trial = 0; trial < 25; ++trial) {
        const Mlp mlp = random_mlp({4, 6, 1}, rng);
        std::vector<double> input(4);
        for (double& v : input) {
            v = rng.uniform(-1.0, 1.0);
        }
        CHECK(mlp_forward(mlp, input).first ==
              doctest::Approx(oracles::naive_mlp(mlp, input)).epsilon(1e-12));
    }
}

TEST_CASE("output stays strictly inside (-1, 1)") {
    Rng rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        const Mlp mlp = random_mlp({3, 8, 1}, rng);
        std::vector<double> input(3);
        for (double& v : input) {
            v = rng.uniform(-5.0, 5.0);
        }
        const double out = mlp_forward(mlp, input).first;
        CHECK(out > -1.0);
        CHECK(out < 1.0);
    }
}

TEST_CASE("zero upstream gives all-zero gradients") {
    Rng rng(7);
    const Mlp mlp = random_mlp({3, 4, 1}, rng);
    const auto [out, cache] = mlp_forward(mlp, {0.1, 0.2, 0.3});
    const MlpGrads grads = mlp_backward(mlp, cache, 0.0);
    for (const auto& layer : grads.w) {
        for (double g : layer) {
            CHECK(g == 0.0);
        }
    }
    for (double g : grads.input) {
        CHECK(g == 0.0);
    }
}

TEST_CASE("1x1 layer weight gradient matches the hand value") {
    Mlp mlp;
    mlp.layers.push_back({1, 1, {1.0}, {0.0}, Activation::Tanh});
    const auto [out, cache] = mlp_forward(mlp, {0.5});
    const MlpGrads grads = mlp_backward(mlp, cache, 1.0);
    // d out / dW = x (1 - tanh^2(x W)) = 0.5 * (1 - tanh^2(0.5))
    CHECK(grads.w[0][0] == doctest::Approx(0.393223866483).epsilon(1e-9));
    CHECK(grads.b[0][0] == doctest::Approx(1.0 - std::tanh(0.5) * std::tanh(0.5)));
}

TEST_CASE("gradients match central finite differences on random networks") {
    Rng rng(11);
    const double h = 1e-6;
    for (int trial = 0; trial < 30; ++trial) {
        const std::vector<int> sizes = trial % 3 == 0
                                           ? std::vector<int>{2, 5, 1}
                                           : std::vector<int>{3, 4, 4, 1};
        Mlp mlp = random_mlp(sizes, rng);
        std::vector<double> input(sizes[0]);
        for (double& v : input) {
            v = rng.uniform(-1.0, 1.0);
        }
        const double upstream = rng.uniform(-2.0, 2.0);
        const auto [out, cache] = mlp_forward(mlp, input);
        const MlpGrads grads = mlp_backward(mlp, cache, upstream);

        for (std::size_t l = 0; l < mlp.layers.size(); ++l) {
            for (std::size_t i = 0; i < mlp.layers[l].w.size(); ++i) {
                const double keep = mlp.layers[l].w[i];
                mlp.layers[l].w[i] = keep + h;
                const double up = mlp_forward(mlp, input).first;
                mlp.layers[l].w[i] = keep - h;
                const double down = mlp_forward(mlp, input).first;
                mlp.layers[l].w[i] = keep;
                CHECK(oracles::rel_close(grads.w[l][i],
                                         upstream * (up - down) / (2 * h), 1e-5));
            }
            for (std::size_t i = 0; i < mlp.layers[l].b.size(); ++i) {
                const double keep = mlp.layers[l].b[i];
                mlp.layers[l].b[i] = keep + h;
                const double up = mlp_forward(mlp, input).first;
                mlp.layers[l].b[i] = keep - h;
                const double down = mlp_forward(mlp, input).first;
                mlp.layers[l].b[i] = keep;
                CHECK(oracles::rel_close(grads.b[l][i],
                                         upstream * (up - down) / (2 * h), 1e-5));
            }
        }
        for (std::size_t i = 0; i < input.size(); ++i) {
            std::vector<double> probe = input;
            probe[i] = input[i] + h;
            const double up = mlp_forward(mlp, probe).first;
            probe[i] = input[i] - h;
            const double down = mlp_forward(mlp, probe).first;
            CHECK(oracles::rel_close(grads.input[i],
                                     upstream * (up - down) / (2 * h), 1e-5));
        }
    }
}

TEST_CASE("mlp_init shapes, determinism, and seed sensitivity") {
    Rng a(42), b(42), c(43);
    const Mlp m1 = mlp_init({4, 8, 1}, a);
    const Mlp m2 = mlp_init({4, 8, 1}, b);
    const Mlp m3 = mlp_init({4, 8, 1}, c);

    REQUIRE(m1.layers.size() == 2);
    CHECK(m1.layers[0].out_size == 8);
    CHECK(m1.layers[0].in_size == 4);
    CHECK(m1.layers[1].out_size == 1);
    CHECK(m1.layers[1].in_size == 8);

    const double bound0 = 1.0 / std::sqrt(4.0);
    for (double w : m1.layers[0].w) {
        CHECK(std::abs(w) <= bound0);
    }
    for (double bias : m1.layers[0].b) {
        CHECK(bias == 0.0);
    }

    CHECK(m1.layers[0].w == m2.layers[0].w);
    CHECK(m1.layers[1].w == m2.layers[1].w);
    CHECK(m1.layers[0].w != m3.layers[0].w);
}

TEST_CASE("dimension errors are rejected, not broadcast") {
    Rng rng(13);
    const Mlp mlp = mlp_init({3, 4, 1}, rng);
    CHECK_THROWS_AS(mlp_forward(mlp, {1.0, 2.0}), std::invalid_argument);

    Mlp broken = mlp;
    broken.layers[1].in_size = 5; // no longer chains with layer 0's output
    broken.layers[1].w.assign(5, 0.0);
    CHECK_THROWS_AS(mlp_forward(broken, {1.0, 2.0, 3.0}), std::invalid_argument);

    CHECK_THROWS_AS(mlp_init({}, rng), std::invalid_argument);
    CHECK_THROWS_AS(mlp_init({4, 2}, rng), std::invalid_argument);
    CHECK_THROWS_AS(mlp_init({4, 0, 1}, rng), std::invalid_argument);
}

TEST_CASE("stale cache is rejected") {
    Rng rng(17);
    const Mlp small = mlp_init({2, 1}, rng);
    const Mlp large = mlp_init({2, 3, 1}, rng);
    const auto [out, cache] = mlp_forward(small, {0.1, 0.2});
    CHECK_THROWS_AS(mlp_backward(large, cache, 1.0), std::invalid_argument);
}

} // TEST_SUITE
