#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "orbitvqc/rng.hpp"
#include "orbitvqc/statevec.hpp"

namespace orbitvqc {

struct Sample {
    std::vector<cplx> features; // normalized amplitudes, length 2^n
    int label = 0;              // -1 or +1
    std::string provenance;     // opaque replay record, may be empty
};

struct Dataset {
    std::vector<Sample> samples;
    std::string task;
    std::uint64_t seed = 0;
    int n_qubits = 0;

    std::size_t size() const { return samples.size(); }
};

enum class Opposition { OtherOrbits, FullHilbert };

// All builders label the target orbit -1 and the opposition +1, split
// exactly m/2 / m/2. m must be even.

// Samples drawn (with repetition) from the graph states of one class
// against the union of the other five classes.
Dataset build_graph_class_dataset(int class_id, int m, Rng rng);

// Same, with a fresh uniform local Clifford applied to every sample.
Dataset build_stabilizer_dataset(int class_id, int m, Rng rng);

// Per-qubit Haar unitaries on class members; opposition is either the other
// orbits under the same recipe or random four-qubit states.
Dataset build_lu_orbit_dataset(int class_id, int m, Opposition opposition, Rng rng);

// LU orbit of a named three-qubit state against another named orbit, or
// against random states when opposition == "full-hilbert".
Dataset build_three_qubit_dataset(const std::string& target,
                                  const std::string& opposition, int m, Rng rng);

// Concentric-annulus task on [-1,1]^2 (label -1 inside radius 0.6), already
// amplitude-encoded as normalize(x, y, 0, 0.25) for the two-qubit circuit.
Dataset build_synthetic2d(int m, Rng rng);

// 50/50 random split, stratified by label.
std::pair<Dataset, Dataset> split_even(const Dataset& ds, Rng rng);

void save_dataset(const Dataset& ds, const std::string& path);
Dataset load_dataset(const std::string& path);

// True when the amplitudes look like a stabilizer state: power-of-two
// support, uniform magnitudes, relative phases in {1, i, -1, -i}.
bool stabilizer_amplitude_structure(const std::vector<cplx>& amps,
                                    double tol = 1e-9);

// Rebuilds a sample from its provenance record; used to audit orbit
// membership. Throws if the record is absent or malformed.
std::vector<cplx> replay_provenance(const Sample& sample, int n_qubits);

} // namespace orbitvqc
