#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "momtour/core.hpp"
#include "momtour/rng.hpp"

namespace momtour {

/// Distance-oracle state: the first sample part plus the frozen constants.
/// Immutable after construction; phi/do_decision are pure.
struct OracleState {
    MatrixXd xs_part1;
    int ell = 8;
    double beta_r = 0.0;  // decision threshold beta * r
    double alpha = 0.5;
    double beta = 2.0;
};

OracleState make_oracle(const Dataset& data, const TournamentConfig& config);

/// Block-median distance functional: Med_ell of (|<f-h, X_i>|) over the
/// first sample part. Symmetric, nonnegative, zero when f == h.
double phi(const OracleState& state, const Candidate& f, const Candidate& h);

/// 1 iff phi(f, h) >= beta*r.
bool do_decision(const OracleState& state, const Candidate& f, const Candidate& h);

struct CalibrationResult {
    double alpha = 0.0;
    double beta = 0.0;
    int ell = 1;
    double ratio = 0.0;  // beta / alpha at the chosen ell
};

/// Empirically calibrates (alpha, beta, ell): for each ell in the grid,
/// evaluates phi on a bootstrap resample of `xs` per pair (one Monte Carlo
/// draw per pair) and finds the largest alpha and smallest beta with
///   alpha * ||f-h||_{L2} <= phi <= beta * ||f-h||_{L2}
/// holding with frequency >= target_confidence over the pair sample.
/// Returns the grid entry with the smallest beta/alpha ratio.
///
/// True L2 distances use isotropy (||t_f - t_h||_2) unless `covariance`
/// is given, in which case the induced quadratic norm is used.
CalibrationResult calibrate_oracle_constants(
    const MatrixXd& xs, const std::vector<int>& ell_grid,
    const std::vector<std::pair<Candidate, Candidate>>& pair_sample, double target_confidence,
    RngSpec rng, const std::optional<MatrixXd>& covariance = std::nullopt);

}  // namespace momtour
