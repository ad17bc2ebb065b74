#include "momtour/theory.hpp"

#include <cmath>

namespace momtour {

RatePrediction rate_full_space(int n_dim, Index N, double sigma) {
    if (n_dim < 1 || !(sigma > 0.0)) {
        throw std::invalid_argument("rate_full_space: need positive n_dim and sigma");
    }
    if (N < n_dim) {
        throw OutOfRegimeError("rate_full_space: requires N >= n_dim");
    }
    RatePrediction p;
    p.r_star = sigma * std::sqrt(static_cast<double>(n_dim) / static_cast<double>(N));
    p.confidence_exponent = static_cast<double>(n_dim);
    p.regime = RateRegime::FullSpaceRn;
    return p;
}

double mean_width_sparse_intersection(double s, int n_dim) {
    if (!(s >= 1.0) || s > static_cast<double>(n_dim)) {
        throw OutOfRegimeError("mean_width_sparse_intersection: need 1 <= s <= n_dim");
    }
    return std::sqrt(s * std::log(M_E * static_cast<double>(n_dim) / s));
}

RatePrediction rate_l1_ball(double rho, double sigma, Index N, int n_dim, double c1, double c2) {
    if (!(rho > 0.0) || !(sigma > 0.0) || N < 1 || n_dim < 1 || !(c1 > 0.0) || !(c2 > 0.0)) {
        throw std::invalid_argument("rate_l1_ball: all inputs must be positive");
    }
    const double n = static_cast<double>(n_dim);
    const double Nd = static_cast<double>(N);

    const bool m_small = Nd <= c1 * n * n * sigma * sigma / (rho * rho);
    double vm2;
    if (m_small) {
        const double arg = 2.0 * c1 * n * sigma / (std::sqrt(Nd) * rho);
        if (!(arg > 1.0)) {
            throw OutOfRegimeError("rate_l1_ball: multiplier branch log argument <= 1");
        }
        vm2 = (rho * sigma / std::sqrt(Nd)) * std::sqrt(std::log(arg));
    } else {
        vm2 = sigma * sigma * n / Nd;
    }

    const bool q_small = Nd <= c2 * n;
    const double vq2 = q_small ? (rho * rho / Nd) * std::log(2.0 * c2 * n / Nd) : 0.0;

    RatePrediction p;
    p.v_m = std::sqrt(vm2);
    p.v_q = std::sqrt(vq2);
    p.r_star = std::max(p.v_q, p.v_m);
    p.regime = (m_small && q_small)    ? RateRegime::L1BallSmallN
               : (!m_small && !q_small) ? RateRegime::L1BallLargeN
                                        : RateRegime::L1BallWidthRegimes;
    p.confidence_exponent =
        Nd * std::min(1.0, (p.r_star * p.r_star) / (sigma * sigma));
    return p;
}

double predicted_confidence(Index N, double r, double sigma, double c0) {
    if (N < 1 || !(r > 0.0) || !(sigma > 0.0) || !(c0 > 0.0)) {
        throw std::invalid_argument("predicted_confidence: all inputs must be positive");
    }
    const double ratio = r / sigma;
    return 1.0 - std::exp(-c0 * static_cast<double>(N) * std::min(1.0, ratio * ratio));
}

}  // namespace momtour
