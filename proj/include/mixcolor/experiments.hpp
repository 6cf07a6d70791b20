#pragma once

// Experiment harness behind the CLI: phase-transition, runtime-scaling,
// robust-sample, perturbation, and design-optimization sweeps with CSV
// output. Trial seeds derive from the master seed through the documented
// 64-bit mixer, so every sweep is reproducible byte-for-byte (timing columns
// excepted).

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "mixcolor/devo.hpp"
#include "mixcolor/model.hpp"

namespace mixcolor {

struct ExperimentConfig {
    std::string mode;  // noiseless-phase | noiseless-runtime | robust-sample |
                       // robust-runtime | perturbation | devo-optimize | single-run
    int L = 2;
    int n = 10000;
    int K = 100;  // total sparsity, split evenly across components
    int d = 15, R = 3, V = 3;
    std::vector<double> m_over_k = {3.8};  // M sweep, in units of K
    int trials = 100;
    std::uint64_t seed = 1;
    std::string out;
    int jobs = 0;           // 0 = library default
    bool auto_design = false;  // pick (d, R, V, c) via the optimizer

    // robust / perturbation settings
    double sigma = 0.2;
    double delta = 1.0;
    int b = 5;
    int N = 0;              // 0 = ceil(n_coeff * log2 n)
    double n_coeff = 3.0;
    double p2_coeff = 0.3;
    std::vector<double> perturbation;  // perturbation sweep levels
    bool d_from_bins = false;          // keep d = 5 M / K across the sweep

    // runtime sweeps
    std::vector<int> K_sweep;
    std::vector<int> n_sweep;

    // devo-optimize settings
    double p_max = 1e-5;
    double theta = 2.0;
    SearchRanges ranges;
};

ExperimentConfig config_from_json(const nlohmann::json& j);

struct TrialSeeds {
    std::uint64_t model, plan, measure;
};
// model/plan/measurement sub-seeds for one trial of a sweep
TrialSeeds trial_seeds(std::uint64_t master, int trial);

// Executes the configured sweep; returns the process exit status (0 on
// completion; recovery failures are data, not errors).
int run_experiment(const ExperimentConfig& cfg, std::ostream& summary);

}  // namespace mixcolor
