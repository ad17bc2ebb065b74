#include "momtour/candidates.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace momtour {

namespace {

double ball_norm(const VectorXd& v, BallNorm norm) {
    return norm == BallNorm::L2 ? v.norm() : v.template lpNorm<1>();
}

void append(CandidatePool& pool, VectorXd coeffs) {
    Candidate c;
    c.coeffs = std::move(coeffs);
    c.id = pool.size();
    pool.candidates.push_back(std::move(c));
}

void grid_net(CandidatePool& pool, const PoolSpec& spec, int n_dim) {
    if (n_dim > 3) {
        throw std::invalid_argument("build_pool: GridNet supports n_dim <= 3 only");
    }
    if (!(spec.mesh > 0.0) || spec.mesh > spec.radius) {
        throw std::invalid_argument("build_pool: GridNet needs 0 < mesh <= radius");
    }
    const int half = static_cast<int>(std::floor(spec.radius / spec.mesh + 1e-12));
    const double tol = spec.radius * (1.0 + 1e-12);
    std::vector<int> z(static_cast<std::size_t>(n_dim), -half);
    while (true) {
        VectorXd offset(n_dim);
        for (int d = 0; d < n_dim; ++d) offset[d] = z[static_cast<std::size_t>(d)] * spec.mesh;
        if (ball_norm(offset, spec.norm) <= tol) {
            const VectorXd point = spec.center + offset;
            if (!(spec.include_center && offset.isZero(0.0))) {
                append(pool, point);
            }
        }
        int d = n_dim - 1;
        while (d >= 0 && ++z[static_cast<std::size_t>(d)] > half) {
            z[static_cast<std::size_t>(d)] = -half;
            --d;
        }
        if (d < 0) break;
    }
}

VectorXd gaussian_vector(CounterRng& gen, int n_dim) {
    VectorXd g(n_dim);
    for (int d = 0; d < n_dim; ++d) g[d] = gen.gaussian();
    return g;
}

VectorXd uniform_in_ball(CounterRng& gen, int n_dim, double radius, BallNorm norm) {
    if (norm == BallNorm::L2) {
        VectorXd g = gaussian_vector(gen, n_dim);
        const double nrm = g.norm();
        if (nrm == 0.0) return VectorXd::Zero(n_dim);
        const double scale = radius * std::pow(gen.uniform01(), 1.0 / n_dim) / nrm;
        return scale * g;
    }
    // Uniform in the L1 ball: signed exponentials plus one extra
    // exponential in the normalizer.
    VectorXd e(n_dim);
    double total = -std::log(gen.uniform01_open());
    for (int d = 0; d < n_dim; ++d) {
        const double mag = -std::log(gen.uniform01_open());
        e[d] = gen.rademacher() * mag;
        total += mag;
    }
    return (radius / total) * e;
}

}  // namespace

CandidatePool build_pool(const PoolSpec& spec, int n_dim, RngSpec rng) {
    if (n_dim < 1) {
        throw std::invalid_argument("build_pool: n_dim must be positive");
    }
    VectorXd center = spec.center.size() == 0 ? VectorXd::Zero(n_dim) : spec.center;
    if (center.size() != n_dim) {
        throw std::invalid_argument("build_pool: center dimension mismatch");
    }
    CandidatePool pool;
    if (spec.include_center) append(pool, center);

    CounterRng gen(rng);
    switch (spec.strategy) {
        case PoolStrategy::GridNet: {
            PoolSpec s = spec;
            s.center = center;
            grid_net(pool, s, n_dim);
            pool.provenance = "gridnet";
            break;
        }
        case PoolStrategy::RandomBall: {
            if (spec.count < 1) throw std::invalid_argument("build_pool: count must be >= 1");
            for (int i = 0; i < spec.count; ++i) {
                append(pool, center + uniform_in_ball(gen, n_dim, spec.radius, spec.norm));
            }
            pool.provenance = "randomball";
            break;
        }
        case PoolStrategy::SeededPerturbation: {
            if (spec.count < 1) throw std::invalid_argument("build_pool: count must be >= 1");
            for (int i = 0; i < spec.count; ++i) {
                append(pool, center + spec.radius * gaussian_vector(gen, n_dim));
            }
            pool.provenance = "seeded_perturbation";
            break;
        }
        case PoolStrategy::Explicit: {
            for (const auto& v : spec.explicit_coeffs) {
                if (v.size() != n_dim) {
                    throw std::invalid_argument("build_pool: explicit coefficient dimension mismatch");
                }
                append(pool, v);
            }
            pool.provenance = "explicit";
            break;
        }
    }
    if (pool.candidates.empty()) {
        throw std::invalid_argument("build_pool: empty pool");
    }
    return pool;
}

std::vector<std::size_t> greedy_packing(const std::vector<VectorXd>& points, double eps) {
    if (!(eps > 0.0)) {
        throw std::invalid_argument("greedy_packing: eps must be positive");
    }
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < points.size(); ++i) {
        bool separated = true;
        for (std::size_t k : kept) {
            if ((points[i] - points[k]).norm() < eps) {
                separated = false;
                break;
            }
        }
        if (separated) kept.push_back(i);
    }
    return kept;
}

std::size_t greedy_packing_count(const std::vector<VectorXd>& points, double eps) {
    return greedy_packing(points, eps).size();
}

std::string pool_to_text(const CandidatePool& pool) {
    std::ostringstream os;
    char buf[40];
    for (const auto& c : pool.candidates) {
        os << c.id;
        for (Index d = 0; d < c.coeffs.size(); ++d) {
            std::snprintf(buf, sizeof(buf), " %.17g", c.coeffs[d]);
            os << buf;
        }
        os << '\n';
    }
    return os.str();
}

CandidatePool pool_from_text(const std::string& text) {
    CandidatePool pool;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        Candidate c;
        ls >> c.id;
        std::vector<double> vals;
        double v;
        while (ls >> v) vals.push_back(v);
        c.coeffs = Eigen::Map<VectorXd>(vals.data(), static_cast<Index>(vals.size()));
        pool.candidates.push_back(std::move(c));
    }
    pool.provenance = "deserialized";
    return pool;
}

}  // namespace momtour
