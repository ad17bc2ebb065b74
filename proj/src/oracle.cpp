#include "momtour/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "momtour/mom.hpp"

namespace momtour {

OracleState make_oracle(const Dataset& data, const TournamentConfig& config) {
    config.validate();
    OracleState s;
    s.xs_part1 = data.xs_part(0);
    s.ell = config.ell;
    s.beta_r = config.beta * config.r;
    s.alpha = config.alpha;
    s.beta = config.beta;
    return s;
}

namespace {

std::vector<double> abs_prediction_gaps(const MatrixXd& xs, const VectorXd& diff) {
    const VectorXd v = (xs * diff).cwiseAbs();
    return {v.data(), v.data() + v.size()};
}

}  // namespace

double phi(const OracleState& state, const Candidate& f, const Candidate& h) {
    if (f.coeffs.size() != state.xs_part1.cols() || h.coeffs.size() != state.xs_part1.cols()) {
        throw std::invalid_argument("phi: candidate dimension mismatch");
    }
    const auto v = abs_prediction_gaps(state.xs_part1, f.coeffs - h.coeffs);
    return med_of_means(v, state.ell).value;
}

bool do_decision(const OracleState& state, const Candidate& f, const Candidate& h) {
    return phi(state, f, h) >= state.beta_r;
}

CalibrationResult calibrate_oracle_constants(
    const MatrixXd& xs, const std::vector<int>& ell_grid,
    const std::vector<std::pair<Candidate, Candidate>>& pair_sample, double target_confidence,
    RngSpec rng, const std::optional<MatrixXd>& covariance) {
    if (ell_grid.empty() || pair_sample.empty()) {
        throw std::invalid_argument("calibrate_oracle_constants: empty grid or pair list");
    }
    if (!(target_confidence > 0.5 && target_confidence < 1.0)) {
        throw std::invalid_argument("calibrate_oracle_constants: target_confidence in (0.5, 1)");
    }
    const Index N = xs.rows();

    // True L2 distances; zero-distance pairs are degenerate.
    std::vector<double> dist(pair_sample.size());
    for (std::size_t p = 0; p < pair_sample.size(); ++p) {
        const VectorXd d = pair_sample[p].first.coeffs - pair_sample[p].second.coeffs;
        dist[p] = covariance ? std::sqrt(d.dot(*covariance * d)) : d.norm();
        if (!(dist[p] > 0.0)) {
            throw std::invalid_argument("calibrate_oracle_constants: pair with zero L2 distance");
        }
    }

    // One bootstrap design per pair, shared across the ell grid so the
    // grid comparison sees the same Monte Carlo noise.
    CounterRng gen(rng);
    MatrixXd gaps(N, static_cast<Index>(pair_sample.size()));
    for (std::size_t p = 0; p < pair_sample.size(); ++p) {
        const VectorXd d = pair_sample[p].first.coeffs - pair_sample[p].second.coeffs;
        for (Index i = 0; i < N; ++i) {
            const Index row = static_cast<Index>(gen.next_u64() % static_cast<std::uint64_t>(N));
            gaps(i, static_cast<Index>(p)) = std::abs(xs.row(row).dot(d));
        }
    }

    CalibrationResult best;
    best.ratio = std::numeric_limits<double>::infinity();
    for (int ell : ell_grid) {
        if (ell < 1 || static_cast<Index>(ell) > N) {
            throw std::invalid_argument("calibrate_oracle_constants: ell outside [1, N]");
        }
        std::vector<double> ratios(pair_sample.size());
        for (std::size_t p = 0; p < pair_sample.size(); ++p) {
            const auto col = gaps.col(static_cast<Index>(p));
            std::span<const double> v(col.data(), static_cast<std::size_t>(N));
            ratios[p] = med_of_means(v, ell).value / dist[p];
        }
        std::sort(ratios.begin(), ratios.end());
        const auto P = ratios.size();
        const auto allowed = static_cast<std::size_t>(
            std::floor((1.0 - target_confidence) * static_cast<double>(P)));
        const std::size_t lo = allowed / 2;
        const std::size_t hi = allowed - lo;
        const double a = ratios[lo];
        const double b = ratios[P - 1 - hi];
        if (!(a > 0.0)) continue;  // degenerate envelope at this ell
        const double ratio = b / a;
        if (ratio < best.ratio) {
            best = {a, b, ell, ratio};
        }
    }
    if (!std::isfinite(best.ratio)) {
        throw std::runtime_error("calibrate_oracle_constants: no usable envelope on the grid");
    }
    return best;
}

}  // namespace momtour
