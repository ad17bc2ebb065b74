#include "momtour/core.hpp"

#include <cmath>

namespace momtour {

Dataset::Dataset(MatrixXd xs, VectorXd ys) : xs_(std::move(xs)), ys_(std::move(ys)) {
    if (xs_.rows() != ys_.size()) {
        throw std::invalid_argument("Dataset: xs row count must equal ys length");
    }
    if (xs_.rows() == 0 || xs_.rows() % 3 != 0) {
        throw std::invalid_argument("Dataset: sample size must be positive and divisible by 3");
    }
    if (!xs_.allFinite() || !ys_.allFinite()) {
        throw std::invalid_argument("Dataset: entries must be finite");
    }
}

BlockPartition make_block_partition(Index n_available, int n_blocks) {
    if (n_blocks <= 0) {
        throw std::invalid_argument("make_block_partition: n_blocks must be positive");
    }
    if (static_cast<Index>(n_blocks) > n_available) {
        throw std::invalid_argument("make_block_partition: n_blocks exceeds available samples");
    }
    BlockPartition p;
    p.n_blocks = n_blocks;
    p.block_size = n_available / n_blocks;
    p.n_used = p.block_size * n_blocks;
    return p;
}

int choose_block_count(Index N, double r, double sigma, double theta) {
    if (N <= 0 || r <= 0.0 || sigma <= 0.0) {
        throw std::invalid_argument("choose_block_count: N, r, sigma must be positive");
    }
    if (theta <= 0.0 || theta >= 1.0) {
        throw std::invalid_argument("choose_block_count: theta must lie in (0,1)");
    }
    const double ratio = r / sigma;
    const double raw = theta * static_cast<double>(N) * std::min(1.0, ratio * ratio);
    auto n = static_cast<Index>(std::llround(raw));
    if (n < 1) n = 1;
    if (n > N) n = N;
    return static_cast<int>(n);
}

void TournamentConfig::validate() const {
    if (!(r > 0.0) || !(sigma > 0.0)) {
        throw std::invalid_argument("TournamentConfig: r and sigma must be positive");
    }
    if (!(alpha > 0.0 && alpha < 1.0 && beta > 1.0)) {
        throw std::invalid_argument("TournamentConfig: need 0 < alpha < 1 < beta");
    }
    if (!(theta > 0.0 && theta <= tau && tau < 0.25)) {
        throw std::invalid_argument("TournamentConfig: need 0 < theta <= tau < 1/4");
    }
    if (ell < 1) {
        throw std::invalid_argument("TournamentConfig: ell must be >= 1");
    }
}

}  // namespace momtour
