#pragma once

#include <iosfwd>

#include "momtour/core.hpp"
#include "momtour/rng.hpp"

namespace momtour {

enum class DesignKind { GaussianIso, Rademacher, StudentTIso };
enum class NoiseKind { None, Gaussian, StudentT, SymmetrizedPareto };

/// Synthetic linear-regression problem with known ground truth t0 and
/// known noise scale sigma. All designs are normalized to isotropy
/// (E<t,X>^2 = ||t||^2); all noise laws are symmetric with variance
/// sigma^2 when finite.
struct ProblemSpec {
    int n_dim = 1;
    Index N_per_part = 0;
    DesignKind design = DesignKind::GaussianIso;
    double design_dof = 5.0;  // StudentTIso only; must be > 2
    NoiseKind noise = NoiseKind::None;
    double noise_dof = 5.0;   // StudentT only; must be > 2
    double noise_tail = 2.5;  // SymmetrizedPareto only; must be > 2
    double sigma = 1.0;
    VectorXd t0;

    void validate() const;
};

/// Draws 3*N_per_part i.i.d. rows, Y_i = <t0, X_i> + W_i. Bit-identical
/// output under identical (spec, rng).
Dataset generate(const ProblemSpec& spec, RngSpec rng);

/// ||t_hat - t0||_2; under isotropy this is the L2(mu) prediction distance.
double true_l2_error(const Candidate& t_hat, const ProblemSpec& spec);

/// ||t_hat - t0||_2^2; exact excess risk under independent noise.
double true_excess_risk(const Candidate& t_hat, const ProblemSpec& spec);

/// CSV export with header x_0..x_{d-1},y.
void dataset_to_csv(const Dataset& data, std::ostream& os);

}  // namespace momtour
