#pragma once

#include "momtour/core.hpp"

namespace momtour {

enum class RateRegime { FullSpaceRn, L1BallSmallN, L1BallLargeN, L1BallWidthRegimes };

/// Predicted accuracy scale and confidence exponent for a problem class.
/// The exponent is reported up to the unknown absolute constant.
struct RatePrediction {
    double r_star = 0.0;
    double confidence_exponent = 0.0;
    RateRegime regime = RateRegime::FullSpaceRn;
    double v_q = 0.0;  // L1-ball quadratic component (when applicable)
    double v_m = 0.0;  // L1-ball multiplier component (when applicable)
};

struct OutOfRegimeError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Full-space linear regression: r_star = sigma * sqrt(n_dim / N),
/// confidence exponent n_dim. Requires N >= n_dim.
RatePrediction rate_full_space(int n_dim, Index N, double sigma);

/// Gaussian mean width of sqrt(s) B_1^n intersected with B_2^n,
/// implemented as sqrt(s * ln(e * n_dim / s)) (absolute constant 1).
/// Requires 1 <= s <= n_dim.
double mean_width_sparse_intersection(double s, int n_dim);

/// L1-ball (radius rho) rate: r_star = max(v_Q, v_M) with the two-branch
/// closed forms; errors out when the small-N multiplier branch leaves its
/// validity range (log argument <= 1).
RatePrediction rate_l1_ball(double rho, double sigma, Index N, int n_dim, double c1, double c2);

/// 1 - exp(-c0 * N * min{1, r^2 / sigma^2}).
double predicted_confidence(Index N, double r, double sigma, double c0);

}  // namespace momtour
