#pragma once

#include <optional>
#include <span>
#include <vector>

#include "momtour/core.hpp"

namespace momtour {

/// Result of a median-of-means evaluation. `value` is always one of the
/// block means; with an even block count it is the lower of the two middle
/// order statistics.
struct MomEstimate {
    double value = 0.0;
    std::vector<double> block_means;
    std::optional<double> delta;         // set by the delta-parametrized form
    std::optional<double> bound_radius;  // deviation radius, when a variance is known
};

/// Median of block means with block size ell; uses floor(len/ell) blocks
/// and discards the trailing remainder.
MomEstimate med_of_means(std::span<const double> values, int ell);

/// Delta-parametrized mean estimator: ceil(ln(1/delta)) blocks. Requires
/// N >= 4 and delta in [e^{1-N/2}, 1). When `variance` is supplied the
/// deviation radius is recorded on the estimate.
MomEstimate mom_mean_estimator(std::span<const double> values, double delta,
                               std::optional<double> variance = std::nullopt);

/// Sub-Gaussian deviation radius of the delta-parametrized estimator:
/// 2e * sqrt(2*variance) * sqrt((1 + ln(1/delta)) / N).
double deviation_radius(double variance, Index N, double delta);

}  // namespace momtour
