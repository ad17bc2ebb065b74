#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "momtour/candidates.hpp"
#include "momtour/core.hpp"
#include "momtour/datagen.hpp"

namespace momtour {

enum class Method { Tournament, ErmLS, MomRiskMin };

/// How the pool center is chosen per trial.
enum class PoolCenterMode { Zero, T0, ErmPart1, Explicit };

/// Pool construction recipe at the experiment level. `Decoys` builds an
/// explicit pool of t0 plus decoys at fixed multiples of r in random
/// directions; the other strategies defer to build_pool().
struct ExperimentPool {
    PoolSpec spec;
    PoolCenterMode center_mode = PoolCenterMode::T0;
    bool decoys = false;
    std::vector<double> decoy_distances = {0.5, 1.0, 2.0, 8.0};  // multiples of r
    int decoys_per_distance = 10;
};

struct ExperimentConfig {
    ProblemSpec problem;
    TournamentConfig tournament;
    ExperimentPool pool;
    std::vector<Method> methods = {Method::Tournament, Method::ErmLS};
    int n_trials = 1;
    std::uint64_t base_seed = 0;
    std::vector<double> r_multipliers = {1.0};
    double sigma_inflate = 1.0;  // robustness knob for the assumed noise scale
    std::string output_path;

    void validate() const;
};

struct TrialResult {
    int trial = 0;
    std::string method;
    double r_used = 0.0;
    double error_l2 = 0.0;
    double excess_risk = 0.0;
    int qualifier_count = 0;
    int fallback_used = 0;
    double runtime_ms = 0.0;
    std::uint64_t seed = 0;
    std::uint64_t stream_id = 0;
};

/// Runs all trials; one RNG stream per trial (stream_id = trial index).
/// A failing method records an error row (method tag suffixed "_error")
/// instead of aborting the sweep. Results are ordered by (trial, method,
/// r_used) regardless of execution order.
std::vector<TrialResult> run_experiment(const ExperimentConfig& config, int n_threads = 1);

/// Empirical CDF of error_l2 for one method: fraction of trials at or
/// below each threshold.
std::vector<std::pair<double, double>> confidence_curve(const std::vector<TrialResult>& results,
                                                        const std::string& method,
                                                        const std::vector<double>& thresholds);

std::string results_to_csv(const std::vector<TrialResult>& results);
std::vector<TrialResult> results_from_csv(const std::string& csv);
void emit_csv(const std::vector<TrialResult>& results, const std::string& path);

struct NamedCurve {
    std::string label;
    std::vector<std::pair<double, double>> points;
};

/// Self-contained SVG line chart with axis labels and a legend.
void emit_svg_curves(const std::vector<NamedCurve>& curves, const std::string& path,
                     const std::string& x_label = "error threshold",
                     const std::string& y_label = "empirical confidence");

/// Flat key = value config text ('#' comments). Unknown keys are errors.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

const char* to_string(Method m);

/// Builds the per-trial pool (may train an ERM center on part 1).
CandidatePool make_trial_pool(const ExperimentConfig& config, const Dataset& data, double r,
                              RngSpec rng);

}  // namespace momtour
