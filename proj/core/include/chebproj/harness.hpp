#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "chebproj/config.hpp"
#include "chebproj/mesh_gen.hpp"
#include "chebproj/report.hpp"
#include "chebproj/weight_system.hpp"

namespace chebproj {

/// Resolved settings of one experiment run. Read from a Config (after CLI
/// overrides) by from_config, which rejects unknown keys under the sections
/// it owns; the README documents every key.
struct ExperimentConfig {
    double a = 0.0;
    double b = 1.0;
    std::vector<int> orders = {2, 3};
    int max_order = 4;  // hard cap 6
    std::string weight_preset = "constant";
    std::vector<double> weight_rates = {0.5, -0.3, 0.8, -0.2, 0.6, -0.4};
    double weight_eps = 0.2;
    std::vector<MeshFamily> families = {MeshFamily::Uniform, MeshFamily::RandomUniform};
    std::vector<int> ladder = {8, 16, 32};
    int trials = 3;
    std::uint64_t seed = 20240801;
    double geometric_ratio = 2.0;
    double graded_power = 2.0;
    double two_scale_big = 1.0;
    double two_scale_small = 0.125;
    double epsilon = 0.0;  // refinement target; 0 means (b - a) / 8
    int refine_start_n = 4;
    int verify_max_n = 32;
    bool verify_self_test = false;
    bool extremal_diagnostics = true;
    bool with_timing = false;
    std::string out_dir = "out";
    std::string prefix = "chebproj";

    static ExperimentConfig from_config(const Config& cfg);

    WeightSystem make_weights(int k) const;
    MeshSpec make_mesh_spec(MeshFamily family, int n, std::uint64_t mesh_seed) const;
    double effective_epsilon() const;
    /// out_dir, unless the CHEBPROJ_OUT_DIR environment variable overrides it.
    std::string resolved_out_dir() const;
};

/// One sweep cell, exposed for tests; exceptions from the numerics are
/// captured into the row (ok = false, error set, numeric fields zeroed).
ReportRow measure_cell(const ExperimentConfig& cfg, int k, MeshFamily family, int n,
                       int trial);

/// Number of midpoint insertions needed to drive every length below epsilon,
/// splitting the largest (leftmost on ties) interval first. This depends on
/// the lengths only; the refinement run must match it step for step.
int simulate_refinement_steps(std::vector<double> lengths, double epsilon);

/// Subcommand drivers: write CSV + JSON into the resolved output directory
/// and log progress lines. Return 0 on success, 1 when any row failed.
int run_norm_sweep(const ExperimentConfig& cfg, std::ostream& log);
int run_refinement_experiment(const ExperimentConfig& cfg, std::ostream& log);
int run_basis_dump(const ExperimentConfig& cfg, std::ostream& log);

}  // namespace chebproj
