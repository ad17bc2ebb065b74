#pragma once

#include "momtour/core.hpp"

namespace momtour {

/// Which of the three dataset parts a baseline trains on.
struct PartsSelector {
    bool part1 = true;
    bool part2 = true;
    bool part3 = true;

    static PartsSelector all() { return {true, true, true}; }
    static PartsSelector only(int p) {
        PartsSelector s{false, false, false};
        if (p == 0) s.part1 = true;
        if (p == 1) s.part2 = true;
        if (p == 2) s.part3 = true;
        return s;
    }
};

/// Thrown when the selected design is numerically rank deficient.
struct RankDeficientError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Exact least-squares solution of the normal equations over the selected
/// rows. Rejects Gram matrices with condition number beyond the threshold.
Candidate erm_least_squares(const Dataset& data, PartsSelector parts,
                            double cond_threshold = 1e12);

/// Pool candidate minimizing Med_ell of squared residuals over parts 2-3;
/// lowest id breaks ties.
Candidate mom_risk_minimizer(const CandidatePool& pool, const Dataset& data, int ell);

}  // namespace momtour
