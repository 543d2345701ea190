#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>

#include "oracles.hpp"
#include "orbitvqc/datasets.hpp"
#include "orbitvqc/stategen.hpp"

using namespace orbitvqc;

namespace {

std::pair<int, int> label_counts(const Dataset& ds) {
    int neg = 0, pos = 0;
    for (const Sample& s : ds.samples) {
        (s.label < 0 ? neg : pos)++;
    }
    return {neg, pos};
}

std::string sample_key(const Sample& s) {
    std::string key = std::to_string(s.label);
    for (const cplx& a : s.features) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "|%.17g,%.17g", a.real(), a.imag());
        key += buf;
    }
    return key;
}

// (x, y) recovered from a synthetic sample's provenance record.
std::pair<double, double> synthetic_point(const Sample& s) {
    double x = 0, y = 0;
    REQUIRE(std::sscanf(s.provenance.c_str(), "x=%lf,%lf", &x, &y) == 2);
    return {x, y};
}

// Best accuracy over swept linear classifiers sign(x cos t + y sin t - c).
double best_hyperplane_accuracy(const Dataset& ds) {
    double best = 0.0;
    for (int step = 0; step < 180; ++step) {
        const double t = step * std::numbers::pi / 180.0;
        std::vector<std::pair<double, int>> projected;
        projected.reserve(ds.size());
        for (const Sample& s : ds.samples) {
            const auto [x, y] = synthetic_point(s);
            projected.emplace_back(x * std::cos(t) + y * std::sin(t), s.label);
        }
        std::sort(projected.begin(), projected.end());
        // Sweep the threshold; count positives left of the cut.
        int pos_left = 0;
        int neg_left = 0;
        const int total_pos = static_cast<int>(
            std::count_if(projected.begin(), projected.end(),
                          [](const auto& p) { return p.second > 0; }));
        const int total_neg = static_cast<int>(projected.size()) - total_pos;
        for (std::size_t cut = 0; cut <= projected.size(); ++cut) {
            // Orientation A: negatives left of the cut.
            const int correct_a = neg_left + (total_pos - pos_left);
            const int correct_b = pos_left + (total_neg - neg_left);
            best = std::max(best, static_cast<double>(std::max(correct_a, correct_b)) /
                                      projected.size());
            if (cut < projected.size()) {
                (projected[cut].second > 0 ? pos_left : neg_left)++;
            }
        }
    }
    return best;
}

} // namespace

TEST_SUITE("datasets") {

TEST_CASE("graph-class dataset: class 1 negatives are all |++++>") {
    const Dataset ds = build_graph_class_dataset(1, 10, Rng(7));
    CHECK(ds.n_qubits == 4);
    const auto [neg, pos] = label_counts(ds);
    CHECK(neg == 5);
    CHECK(pos == 5);
    for (int i = 0; i < 5; ++i) {
        CHECK(ds.samples[i].label == -1);
        for (const cplx& a : ds.samples[i].features) {
            CHECK(a.real() == doctest::Approx(0.25));
        }
    }
}

TEST_CASE("graph-class dataset balance is exact") {
    const Dataset ds = build_graph_class_dataset(4, 1000, Rng(11));
    const auto [neg, pos] = label_counts(ds);
    CHECK(neg == 500);
    CHECK(pos == 500);
}

TEST_CASE("class-6 negatives have exactly 5 distinct states") {
    const Dataset ds = build_graph_class_dataset(6, 2000, Rng(13));
    std::set<std::string> distinct;
    for (const Sample& s : ds.samples) {
        if (s.label == -1) {
            distinct.insert(s.provenance);
        }
    }
    CHECK(distinct.size() == 5);
}

TEST_CASE("positives never come from the target class") {
    const GraphClassTable& table = enumerate_four_qubit_classes();
    for (int cls = 1; cls <= 6; ++cls) {
        const Dataset ds = build_graph_class_dataset(cls, 200, Rng(17));
        for (const Sample& s : ds.samples) {
            unsigned mask = 0;
            REQUIRE(std::sscanf(s.provenance.c_str(), "graph=%u", &mask) == 1);
            if (s.label == 1) {
                CHECK(table.class_of(mask) != cls);
            } else {
                CHECK(table.class_of(mask) == cls);
            }
        }
    }
}

TEST_CASE("builders reject invalid arguments") {
    CHECK_THROWS_AS(build_graph_class_dataset(7, 10, Rng(1)),
                    std::invalid_argument);
    CHECK_THROWS_AS(build_graph_class_dataset(0, 10, Rng(1)),
                    std::invalid_argument);
    CHECK_THROWS_AS(build_graph_class_dataset(1, 11, Rng(1)),
                    std::invalid_argument);
    CHECK_THROWS_AS(build_three_qubit_dataset("GHZ", "GHZ", 10, Rng(1)),
                    std::invalid_argument);
    CHECK_THROWS_AS(build_three_qubit_dataset("nope", "full-hilbert", 10, Rng(1)),
                    std::invalid_argument);
}

TEST_CASE("stabilizer dataset samples all pass the amplitude predicate") {
    const Dataset ds = build_stabilizer_dataset(3, 400, Rng(19));
    for (const Sample& s : ds.samples) {
        CHECK(stabilizer_amplitude_structure(s.features));
        CHECK(std::abs(detail::norm_of(s.features) - 1.0) < 1e-10);
    }
    const auto [neg, pos] = label_counts(ds);
    CHECK(neg == 200);
    CHECK(pos == 200);
}

TEST_CASE("stabilizer provenance replays bit-exactly") {
    const Dataset ds = build_stabilizer_dataset(5, 60, Rng(23));
    for (const Sample& s : ds.samples) {
        const std::vector<cplx> replayed = replay_provenance(s, 4);
        REQUIRE(replayed.size() == s.features.size());
        for (std::size_t i = 0; i < replayed.size(); ++i) {
            CHECK(replayed[i] == s.features[i]);
        }
    }
}

TEST_CASE("LU-orbit dataset: norms, provenance replay, and generic support") {
    const Dataset orbits = build_lu_orbit_dataset(2, 100, Opposition::OtherOrbits,
                                                  Rng(29));
    for (const Sample& s : orbits.samples) {
        CHECK(std::abs(detail::norm_of(s.features) - 1.0) < 1e-10);
        const std::vector<cplx> replayed = replay_provenance(s, 4);
        for (std::size_t i = 0; i < replayed.size(); ++i) {
            CHECK(replayed[i] == s.features[i]);
        }
    }

    const Dataset hilbert = build_lu_orbit_dataset(2, 100, Opposition::FullHilbert,
                                                   Rng(31));
    for (const Sample& s : hilbert.samples) {
        if (s.label == 1) {
            CHECK(s.provenance.empty());
            for (const cplx& a : s.features) {
                CHECK(std::abs(a) > 0.0); // Gaussian draws: all 16 nonzero
            }
        }
    }
}

TEST_CASE("three-qubit dataset layout for GHZ vs W") {
    const Dataset ds = build_three_qubit_dataset("GHZ", "W", 4, Rng(37));
    CHECK(ds.n_qubits == 3);
    REQUIRE(ds.size() == 4);
    CHECK(ds.samples[0].label == -1);
    CHECK(ds.samples[1].label == -1);
    CHECK(ds.samples[2].label == 1);
    CHECK(ds.samples[3].label == 1);
    CHECK(ds.samples[0].provenance.substr(0, 9) == "state=GHZ");
    CHECK(ds.samples[2].provenance.substr(0, 7) == "state=W");
}

TEST_CASE("LU invariants: GHZ-orbit purity 1/2, separable-orbit purity 1") {
    const Dataset ghz =
        build_three_qubit_dataset("GHZ", "full-hilbert", 40, Rng(41));
    for (const Sample& s : ghz.samples) {
        if (s.label != -1) {
            continue;
        }
        for (int q = 1; q <= 3; ++q) {
            CHECK(oracles::qubit_purity(s.features, 3, q) ==
                  doctest::Approx(0.5).epsilon(1e-9));
        }
    }
    const Dataset sep =
        build_three_qubit_dataset("separable", "full-hilbert", 40, Rng(43));
    for (const Sample& s : sep.samples) {
        if (s.label != -1) {
            continue;
        }
        for (int q = 1; q <= 3; ++q) {
            CHECK(oracles::qubit_purity(s.features, 3, q) ==
                  doctest::Approx(1.0).epsilon(1e-9));
        }
    }
}

TEST_CASE("synthetic2d labels follow the annulus rule and encode with 0.25 pad") {
    const Dataset ds = build_synthetic2d(400, Rng(47));
    CHECK(ds.n_qubits == 2);
    for (const Sample& s : ds.samples) {
        const auto [x, y] = synthetic_point(s);
        const bool inside = x * x + y * y < 0.36;
        CHECK(s.label == (inside ? -1 : 1));
        const double norm = std::sqrt(x * x + y * y + 0.0625);
        CHECK(s.features[0].real() == doctest::Approx(x / norm));
        CHECK(s.features[1].real() == doctest::Approx(y / norm));
        CHECK(std::abs(s.features[2]) == 0.0);
        CHECK(s.features[3].real() == doctest::Approx(0.25 / norm));
    }
    const auto [neg, pos] = label_counts(ds);
    CHECK(neg == 200);
    CHECK(pos == 200);
}

TEST_CASE("no hyperplane reaches 90% on the synthetic task") {
    const Dataset ds = build_synthetic2d(2000, Rng(53));
    CHECK(best_hyperplane_accuracy(ds) <= 0.90);
}

TEST_CASE("builders are deterministic per seed") {
    const Dataset a = build_stabilizer_dataset(2, 50, Rng(59));
    const Dataset b = build_stabilizer_dataset(2, 50, Rng(59));
    const Dataset c = build_stabilizer_dataset(2, 50, Rng(60));
    REQUIRE(a.size() == b.size());
    bool all_same = true;
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(sample_key(a.samples[i]) == sample_key(b.samples[i]));
        all_same = all_same && sample_key(a.samples[i]) == sample_key(c.samples[i]);
    }
    CHECK_FALSE(all_same);
}

TEST_CASE("split_even stratifies and preserves the multiset") {
    const Dataset ds = build_graph_class_dataset(3, 100, Rng(61));
    const auto [train, test] = split_even(ds, Rng(67));
    CHECK(train.size() == 50);
    CHECK(test.size() == 50);
    CHECK(label_counts(train).first == 25);
    CHECK(label_counts(test).first == 25);

    std::vector<std::string> before, after;
    for (const Sample& s : ds.samples) {
        before.push_back(sample_key(s));
    }
    for (const Sample& s : train.samples) {
        after.push_back(sample_key(s));
    }
    for (const Sample& s : test.samples) {
        after.push_back(sample_key(s));
    }
    std::sort(before.begin(), before.end());
    std::sort(after.begin(), after.end());
    CHECK(before == after);

    const auto [train2, test2] = split_even(ds, Rng(67));
    for (std::size_t i = 0; i < train.size(); ++i) {
        CHECK(sample_key(train.samples[i]) == sample_key(train2.samples[i]));
    }

    Dataset odd = ds;
    odd.samples.pop_back();
    CHECK_THROWS_AS(split_even(odd, Rng(1)), std::invalid_argument);
}

TEST_CASE("dataset files round-trip bit-identically") {
    const std::string path = "roundtrip.ds";
    const Dataset ds = build_lu_orbit_dataset(6, 30, Opposition::FullHilbert,
                                              Rng(71));
    save_dataset(ds, path);
    const Dataset back = load_dataset(path);
    CHECK(back.task == ds.task);
    CHECK(back.seed == ds.seed);
    CHECK(back.n_qubits == ds.n_qubits);
    REQUIRE(back.size() == ds.size());
    for (std::size_t i = 0; i < ds.size(); ++i) {
        CHECK(back.samples[i].label == ds.samples[i].label);
        CHECK(back.samples[i].provenance == ds.samples[i].provenance);
        for (std::size_t k = 0; k < ds.samples[i].features.size(); ++k) {
            CHECK(back.samples[i].features[k] == ds.samples[i].features[k]);
        }
    }
    std::filesystem::remove(path);
}

TEST_CASE("truncated and malformed files are rejected") {
    const std::string path = "bad.ds";
    const Dataset ds = build_graph_class_dataset(1, 10, Rng(73));
    save_dataset(ds, path);

    // Drop the last line: header now promises more samples than present.
    {
        std::ifstream in(path);
        std::vector<std::string> lines;
        std::string line;
        while (std::getline(in, line)) {
            lines.push_back(line);
        }
        in.close();
        std::ofstream out(path);
        for (std::size_t i = 0; i + 1 < lines.size(); ++i) {
            out << lines[i] << '\n';
        }
    }
    CHECK_THROWS_AS(load_dataset(path), std::runtime_error);

    {
        std::ofstream out(path);
        out << "orbitvqc-dataset v1; n_qubits=1; task=t; seed=0; m=1\n";
        out << "0;1,0,0,0\n"; // label 0 is invalid
    }
    CHECK_THROWS_AS(load_dataset(path), std::runtime_error);

    {
        std::ofstream out(path);
        out << "orbitvqc-dataset v1; n_qubits=1; task=t; seed=0; m=1\n";
        out << "1;0.5,0,0,0\n"; // not normalized
    }
    CHECK_THROWS_AS(load_dataset(path), std::runtime_error);

    {
        std::ofstream out(path);
        out << "something else\n";
    }
    CHECK_THROWS_AS(load_dataset(path), std::runtime_error);

    CHECK_THROWS_AS(load_dataset("does-not-exist.ds"), std::runtime_error);
    std::filesystem::remove(path);
}

} // TEST_SUITE
