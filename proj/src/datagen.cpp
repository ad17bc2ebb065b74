#include "momtour/datagen.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace momtour {

void ProblemSpec::validate() const {
    if (n_dim < 1 || N_per_part < 1) {
        throw std::invalid_argument("ProblemSpec: need positive n_dim and N_per_part");
    }
    if (t0.size() != n_dim) {
        throw std::invalid_argument("ProblemSpec: t0 dimension mismatch");
    }
    if (design == DesignKind::StudentTIso && !(design_dof > 2.0)) {
        throw std::invalid_argument("ProblemSpec: StudentTIso needs dof > 2");
    }
    if (noise == NoiseKind::StudentT && !(noise_dof > 2.0)) {
        throw std::invalid_argument("ProblemSpec: StudentT noise needs dof > 2");
    }
    if (noise == NoiseKind::SymmetrizedPareto && !(noise_tail > 2.0)) {
        throw std::invalid_argument("ProblemSpec: SymmetrizedPareto needs tail index > 2");
    }
    if (noise != NoiseKind::None && !(sigma > 0.0)) {
        throw std::invalid_argument("ProblemSpec: sigma must be positive");
    }
}

namespace {

double design_component(const ProblemSpec& spec, CounterRng& gen) {
    switch (spec.design) {
        case DesignKind::GaussianIso:
            return gen.gaussian();
        case DesignKind::Rademacher:
            return gen.rademacher();
        case DesignKind::StudentTIso:
            // Scaled to unit variance so the design stays isotropic.
            return gen.student_t(spec.design_dof) *
                   std::sqrt((spec.design_dof - 2.0) / spec.design_dof);
    }
    return 0.0;
}

double noise_draw(const ProblemSpec& spec, CounterRng& gen) {
    switch (spec.noise) {
        case NoiseKind::None:
            return 0.0;
        case NoiseKind::Gaussian:
            return spec.sigma * gen.gaussian();
        case NoiseKind::StudentT:
            return spec.sigma * std::sqrt((spec.noise_dof - 2.0) / spec.noise_dof) *
                   gen.student_t(spec.noise_dof);
        case NoiseKind::SymmetrizedPareto: {
            // Random sign times Pareto(tail), scaled to variance sigma^2:
            // E P^2 = a/(a-2) for scale 1, so multiply by sqrt((a-2)/a).
            const double a = spec.noise_tail;
            return spec.sigma * gen.rademacher() * std::sqrt((a - 2.0) / a) * gen.pareto(a);
        }
    }
    return 0.0;
}

}  // namespace

Dataset generate(const ProblemSpec& spec, RngSpec rng) {
    spec.validate();
    CounterRng gen(rng);
    const Index total = 3 * spec.N_per_part;
    MatrixXd xs(total, spec.n_dim);
    VectorXd ys(total);
    for (Index i = 0; i < total; ++i) {
        for (int d = 0; d < spec.n_dim; ++d) {
            xs(i, d) = design_component(spec, gen);
        }
        ys[i] = xs.row(i).dot(spec.t0) + noise_draw(spec, gen);
    }
    return Dataset(std::move(xs), std::move(ys));
}

double true_l2_error(const Candidate& t_hat, const ProblemSpec& spec) {
    if (t_hat.coeffs.size() != spec.t0.size()) {
        throw std::invalid_argument("true_l2_error: dimension mismatch");
    }
    return (t_hat.coeffs - spec.t0).norm();
}

double true_excess_risk(const Candidate& t_hat, const ProblemSpec& spec) {
    const double e = true_l2_error(t_hat, spec);
    return e * e;
}

void dataset_to_csv(const Dataset& data, std::ostream& os) {
    for (Index d = 0; d < data.n_dim(); ++d) os << 'x' << '_' << d << ',';
    os << "y\n";
    char buf[40];
    for (Index i = 0; i < data.xs().rows(); ++i) {
        for (Index d = 0; d < data.n_dim(); ++d) {
            std::snprintf(buf, sizeof(buf), "%.17g,", data.xs()(i, d));
            os << buf;
        }
        std::snprintf(buf, sizeof(buf), "%.17g\n", data.ys()[i]);
        os << buf;
    }
}

}  // namespace momtour
