#include "momtour/baselines.hpp"

#include <limits>
#include <span>

#include "momtour/mom.hpp"

namespace momtour {

Candidate erm_least_squares(const Dataset& data, PartsSelector parts, double cond_threshold) {
    const Index N = data.part_size();
    std::vector<int> selected;
    if (parts.part1) selected.push_back(0);
    if (parts.part2) selected.push_back(1);
    if (parts.part3) selected.push_back(2);
    if (selected.empty()) {
        throw std::invalid_argument("erm_least_squares: no parts selected");
    }
    const Index rows = N * static_cast<Index>(selected.size());
    if (rows < data.n_dim()) {
        throw std::invalid_argument("erm_least_squares: fewer rows than unknowns");
    }
    MatrixXd x(rows, data.n_dim());
    VectorXd y(rows);
    Index at = 0;
    for (int p : selected) {
        x.middleRows(at, N) = data.xs_part(p);
        y.segment(at, N) = data.ys_part(p);
        at += N;
    }
    const MatrixXd gram = x.transpose() * x;
    Eigen::SelfAdjointEigenSolver<MatrixXd> eig(gram);
    const double lo = eig.eigenvalues().minCoeff();
    const double hi = eig.eigenvalues().maxCoeff();
    if (!(lo > 0.0) || hi / lo > cond_threshold) {
        throw RankDeficientError("erm_least_squares: Gram matrix singular or ill-conditioned");
    }
    Candidate c;
    c.coeffs = gram.ldlt().solve(x.transpose() * y);
    c.id = -1;
    return c;
}

Candidate mom_risk_minimizer(const CandidatePool& pool, const Dataset& data, int ell) {
    if (pool.candidates.empty()) {
        throw std::invalid_argument("mom_risk_minimizer: empty pool");
    }
    const Index N = data.part_size();
    MatrixXd x(2 * N, data.n_dim());
    VectorXd y(2 * N);
    x.topRows(N) = data.xs_part(1);
    x.bottomRows(N) = data.xs_part(2);
    y.head(N) = data.ys_part(1);
    y.tail(N) = data.ys_part(2);

    const Candidate* best = nullptr;
    double best_risk = std::numeric_limits<double>::infinity();
    for (const auto& c : pool.candidates) {
        const VectorXd sq = ((x * c.coeffs) - y).array().square();
        std::span<const double> v(sq.data(), static_cast<std::size_t>(sq.size()));
        const double risk = med_of_means(v, ell).value;
        if (risk < best_risk) {
            best = &c;
            best_risk = risk;
        }
    }
    return *best;
}

}  // namespace momtour
