#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "orbitvqc/hybridmodel.hpp"

namespace orbitvqc {

// One row of an experiment grid: which dataset to build and how to train.
struct ExperimentSpec {
    std::string experiment; // fig2, table1, table2-3q, table3-graph, ...
    std::string row;        // class label or state name within the table
    int class_id = 0;       // 1..6 for the four-qubit tables
    std::string target;     // three-qubit target state name
    std::string opposition; // named state, "full-hilbert", or "other-orbits"
    AnsatzConfig ansatz;
    std::vector<int> hidden{8}; // hidden layer sizes; ignored if quantum_only
    bool quantum_only = false;  // fixed <Z_1> readout, circuit params only
    double init_scale = 3.14159265358979323846; // circuit angle init range
    TrainConfig train;
    int m = 2000;

    void validate() const;
};

struct MetricsRecord {
    std::string experiment;
    std::string row;
    std::uint64_t seed = 0;
    double train_accuracy = 0.0;
    double test_accuracy = 0.0;
    double final_cost = 0.0;
    int epochs_run = 0;
    double wall_seconds = 0.0;
};

const std::vector<std::string>& experiment_ids();

// Per-row accuracy floor used by `reproduce --check`.
double accuracy_threshold(const std::string& experiment);

// The default spec grid for one table at the given master seed. Each row
// derives its own seed so rows can run in any order or in parallel.
std::vector<ExperimentSpec> experiment_grid(const std::string& experiment,
                                            std::uint64_t master_seed);

Dataset build_dataset_for(const ExperimentSpec& spec);

// Fresh untrained model for a spec (deterministic in spec.train.seed).
HybridModel init_model(const ExperimentSpec& spec);

struct RowResult {
    MetricsRecord metrics;
    HybridModel model;
};

// gen + split + train + evaluate for one row.
RowResult run_row(const ExperimentSpec& spec);

// Runs the whole grid; rows execute in parallel when `parallel` is set.
std::vector<MetricsRecord> reproduce(const std::string& experiment,
                                     std::uint64_t master_seed,
                                     bool parallel = true);

std::string format_metrics_table(const std::vector<MetricsRecord>& records);
std::string metrics_csv_header();
std::string metrics_csv_line(const MetricsRecord& record);
void append_metrics(const std::string& path, const std::vector<MetricsRecord>& records);

void save_model(const HybridModel& model, const std::string& path);
HybridModel load_model(const std::string& path);

// Entry point behind tools/orbitvqc; returns the process exit code
// (0 ok, 2 argument error, 3 threshold failure in --check mode).
int cli_main(int argc, const char* const* argv);

} // namespace orbitvqc
