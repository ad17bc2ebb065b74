#include "momtour/mom.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace momtour {

namespace {

// Lower median: for even counts, the smaller of the two middle values.
double lower_median(std::vector<double> v) {
    const auto mid = (v.size() - 1) / 2;
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
    return v[mid];
}

MomEstimate mom_with_blocks(std::span<const double> values, int n_blocks) {
    const auto part = make_block_partition(static_cast<Index>(values.size()), n_blocks);
    MomEstimate est;
    est.block_means.reserve(static_cast<std::size_t>(part.n_blocks));
    for (int j = 0; j < part.n_blocks; ++j) {
        auto [lo, hi] = part.block(j);
        double sum = 0.0;
        for (Index i = lo; i < hi; ++i) sum += values[static_cast<std::size_t>(i)];
        est.block_means.push_back(sum / static_cast<double>(part.block_size));
    }
    est.value = lower_median(est.block_means);
    return est;
}

}  // namespace

MomEstimate med_of_means(std::span<const double> values, int ell) {
    if (values.empty()) {
        throw std::invalid_argument("med_of_means: empty input");
    }
    if (ell < 1 || static_cast<std::size_t>(ell) > values.size()) {
        throw std::invalid_argument("med_of_means: need 1 <= ell <= length");
    }
    // Med_ell uses blocks of cardinality exactly ell; the remainder after
    // floor(len/ell) full blocks is discarded.
    const auto n_blocks = values.size() / static_cast<std::size_t>(ell);
    return mom_with_blocks(values.first(n_blocks * static_cast<std::size_t>(ell)),
                           static_cast<int>(n_blocks));
}

MomEstimate mom_mean_estimator(std::span<const double> values, double delta,
                               std::optional<double> variance) {
    const auto N = static_cast<Index>(values.size());
    if (N < 4) {
        throw std::invalid_argument("mom_mean_estimator: need N >= 4");
    }
    const double lo = std::exp(1.0 - static_cast<double>(N) / 2.0);
    if (!(delta >= lo && delta < 1.0)) {
        throw std::invalid_argument("mom_mean_estimator: delta outside [e^{1-N/2}, 1)");
    }
    const int n_blocks = static_cast<int>(std::ceil(std::log(1.0 / delta)));
    auto est = mom_with_blocks(values, std::max(1, n_blocks));
    est.delta = delta;
    if (variance) {
        est.bound_radius = deviation_radius(*variance, N, delta);
    }
    return est;
}

double deviation_radius(double variance, Index N, double delta) {
    if (!(variance > 0.0)) {
        throw std::invalid_argument("deviation_radius: variance must be positive");
    }
    if (N < 1 || !(delta > 0.0 && delta < 1.0)) {
        throw std::invalid_argument("deviation_radius: need N >= 1 and delta in (0,1)");
    }
    return 2.0 * M_E * std::sqrt(2.0 * variance) *
           std::sqrt((1.0 + std::log(1.0 / delta)) / static_cast<double>(N));
}

}  // namespace momtour
