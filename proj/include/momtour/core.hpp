#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "momtour/rng.hpp"

namespace momtour {

using Eigen::MatrixXd;
using Eigen::VectorXd;
using Index = Eigen::Index;

/// Labeled sample of size 3N. The three parts are the fixed index ranges
/// [0,N), [N,2N), [2N,3N); they are never reshuffled after construction.
class Dataset {
  public:
    /// Validates: rows(xs) == len(ys), divisible by 3, all entries finite.
    Dataset(MatrixXd xs, VectorXd ys);

    const MatrixXd& xs() const { return xs_; }
    const VectorXd& ys() const { return ys_; }
    Index n_dim() const { return xs_.cols(); }

    /// Per-part sample size N.
    Index part_size() const { return xs_.rows() / 3; }

    /// Covariate rows of part p (0, 1 or 2), as a view.
    auto xs_part(int p) const { return xs_.middleRows(p * part_size(), part_size()); }
    auto ys_part(int p) const { return ys_.segment(p * part_size(), part_size()); }

  private:
    MatrixXd xs_;
    VectorXd ys_;
};

/// Consecutive, disjoint, equal-length index blocks over [0, n_used).
/// Indices in [n_used, n_available) are discarded.
struct BlockPartition {
    int n_blocks = 0;
    Index block_size = 0;
    Index n_used = 0;

    /// Half-open index range of block j.
    std::pair<Index, Index> block(int j) const {
        return {static_cast<Index>(j) * block_size, static_cast<Index>(j + 1) * block_size};
    }
};

BlockPartition make_block_partition(Index n_available, int n_blocks);

/// Number of blocks for the competitive rounds:
/// max(1, round(theta * N * min{1, (r/sigma)^2})), capped at N.
int choose_block_count(Index N, double r, double sigma, double theta);

/// One linear predictor x -> <coeffs, x>.
struct Candidate {
    VectorXd coeffs;
    int id = 0;
};

/// Ordered, nonempty set of candidates; ids are 0..K-1 in list order and
/// fix all downstream tie-breaks.
struct CandidatePool {
    std::vector<Candidate> candidates;
    std::string provenance;

    int size() const { return static_cast<int>(candidates.size()); }
};

enum class TieBreak { MinMomRisk, LowestId };
enum class Fallback { CopelandScore, Fail };

/// Tunables of the tournament. Defaults: theta=0.1, tau=0.2, ell=8,
/// alpha=0.5, beta=2.0; alpha/beta/ell are recalibratable, see
/// calibrate_oracle_constants().
struct TournamentConfig {
    double r = 0.1;        // target accuracy
    double sigma = 1.0;    // a-priori noise scale bound
    double alpha = 0.5;    // lower isomorphy constant, in (0,1)
    double beta = 2.0;     // upper isomorphy constant, > 1
    int ell = 8;           // oracle block size
    double theta = 0.1;    // block-count factor, in (0, tau]
    double tau = 0.2;      // in (0, 1/4)
    TieBreak tie_break = TieBreak::MinMomRisk;
    Fallback fallback = Fallback::CopelandScore;

    void validate() const;
};

}  // namespace momtour
