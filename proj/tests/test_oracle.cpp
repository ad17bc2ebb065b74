#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "momtour/datagen.hpp"
#include "momtour/oracle.hpp"

using namespace momtour;

namespace {

MatrixXd gaussian_design(Index rows, int d, RngSpec rng) {
    CounterRng g(rng);
    MatrixXd xs(rows, d);
    for (Index i = 0; i < rows; ++i) {
        for (int j = 0; j < d; ++j) xs(i, j) = g.gaussian();
    }
    return xs;
}

OracleState state_on(MatrixXd xs, int ell, double beta_r) {
    OracleState s;
    s.xs_part1 = std::move(xs);
    s.ell = ell;
    s.beta_r = beta_r;
    return s;
}

}  // namespace

TEST_CASE("phi: zero at equal candidates, symmetric, dimension-checked") {
    const auto s = state_on(gaussian_design(64, 3, {1, 0}), 8, 1.0);
    const Candidate f{VectorXd::Constant(3, 0.5), 0};
    const Candidate h{VectorXd::Constant(3, -1.0), 1};
    CHECK(phi(s, f, f) == 0.0);
    CHECK(phi(s, f, h) == phi(s, h, f));
    CHECK(phi(s, f, h) > 0.0);
    CHECK_THROWS_AS(phi(s, Candidate{VectorXd::Zero(2), 0}, f), std::invalid_argument);
}

TEST_CASE("phi: concentrates near sqrt(2/pi) at unit distance on Gaussian designs") {
    // Monte Carlo oracle: E|<u, X>| = sqrt(2/pi) for unit u and standard
    // normal X; Med_8 of 1024 draws should land within +-0.15 in >= 99%
    // of trials. 300 trials here; 0 misses expected, allow 1%.
    const double target = std::sqrt(2.0 / M_PI);
    int misses = 0;
    const int trials = 300;
    for (int t = 0; t < trials; ++t) {
        const auto s = state_on(gaussian_design(1024, 4, {100, static_cast<std::uint64_t>(t)}),
                                8, 1.0);
        VectorXd u = VectorXd::Zero(4);
        u[1] = 1.0;
        const Candidate f{VectorXd::Zero(4), 0};
        const Candidate h{u, 1};
        if (std::abs(phi(s, f, h) - target) > 0.15) ++misses;
    }
    CHECK(static_cast<double>(misses) / trials <= 0.01);
}

TEST_CASE("do_decision: >= comparison exactly at the threshold") {
    auto s = state_on(gaussian_design(64, 2, {2, 0}), 4, 0.0);
    const Candidate f{VectorXd::Zero(2), 0};
    const Candidate h{VectorXd::Constant(2, 0.7), 1};
    const double p = phi(s, f, h);
    REQUIRE(p > 0.0);
    s.beta_r = p;  // boundary: phi == beta*r
    CHECK(do_decision(s, f, h));
    s.beta_r = std::nextafter(p, 2 * p);  // phi = beta*r - eps
    CHECK_FALSE(do_decision(s, f, h));
    CHECK_FALSE(do_decision(s, f, f));  // phi = 0 < beta_r
}

TEST_CASE("do_decision: monotone in the threshold (1 can only flip to 0)") {
    const auto xs = gaussian_design(256, 3, {3, 0});
    CounterRng g({4, 0});
    for (int rep = 0; rep < 50; ++rep) {
        VectorXd a(3), b(3);
        for (int d = 0; d < 3; ++d) {
            a[d] = g.gaussian();
            b[d] = g.gaussian();
        }
        bool prev = true;
        for (double beta_r : {0.01, 0.1, 0.5, 1.0, 3.0, 10.0}) {
            const bool now = do_decision(state_on(xs, 8, beta_r), {a, 0}, {b, 1});
            if (!prev) CHECK_FALSE(now);
            prev = now;
        }
    }
}

TEST_CASE("make_oracle: freezes part 1 and beta*r from the config") {
    ProblemSpec spec;
    spec.n_dim = 2;
    spec.N_per_part = 30;
    spec.t0 = VectorXd::Zero(2);
    spec.noise = NoiseKind::None;
    const auto data = generate(spec, {8, 0});
    TournamentConfig cfg;
    cfg.r = 0.25;
    cfg.beta = 2.0;
    const auto s = make_oracle(data, cfg);
    CHECK(s.xs_part1.rows() == 30);
    CHECK((s.xs_part1 - data.xs_part(0)).cwiseAbs().maxCoeff() == 0.0);
    CHECK(s.beta_r == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(s.ell == cfg.ell);
    CHECK(s.alpha == cfg.alpha);
    CHECK(s.beta == cfg.beta);
}

TEST_CASE("calibrate_oracle_constants: input validation") {
    const auto xs = gaussian_design(128, 2, {5, 0});
    const Candidate f{VectorXd::Zero(2), 0};
    const Candidate h{VectorXd::Ones(2), 1};
    std::vector<std::pair<Candidate, Candidate>> pairs{{f, h}};
    CHECK_THROWS_AS(calibrate_oracle_constants(xs, {}, pairs, 0.99, {0, 0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(calibrate_oracle_constants(xs, {4}, {}, 0.99, {0, 0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(calibrate_oracle_constants(xs, {4}, {{f, f}}, 0.99, {0, 0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(calibrate_oracle_constants(xs, {4}, pairs, 0.4, {0, 0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(calibrate_oracle_constants(xs, {4}, pairs, 1.0, {0, 0}),
                    std::invalid_argument);
}

TEST_CASE("calibrate_oracle_constants: envelope straddles sqrt(2/pi) on Gaussian data") {
    const auto xs = gaussian_design(1024, 3, {6, 0});
    CounterRng g({7, 0});
    std::vector<std::pair<Candidate, Candidate>> pairs;
    for (int i = 0; i < 200; ++i) {
        VectorXd dir(3);
        for (int d = 0; d < 3; ++d) dir[d] = g.gaussian();
        dir /= dir.norm();
        pairs.push_back({Candidate{VectorXd::Zero(3), 0}, Candidate{dir, 1}});
    }
    const double half_normal = std::sqrt(2.0 / M_PI);
    for (int ell : {2, 8}) {
        const auto res = calibrate_oracle_constants(xs, {ell}, pairs, 0.99, {8, 0});
        CHECK(res.ell == ell);
        CHECK(res.alpha > 0.0);
        CHECK(res.alpha < half_normal);
        CHECK(res.beta > half_normal);
        CHECK(res.ratio == doctest::Approx(res.beta / res.alpha).epsilon(1e-15));
    }
}

TEST_CASE("calibrate_oracle_constants: ratio improves with block size; best grid entry wins") {
    const auto xs = gaussian_design(1024, 4, {9, 0});
    CounterRng g({10, 0});
    std::vector<std::pair<Candidate, Candidate>> pairs;
    for (int i = 0; i < 300; ++i) {
        VectorXd dir(4);
        for (int d = 0; d < 4; ++d) dir[d] = g.gaussian();
        dir *= (0.5 + g.uniform01()) / dir.norm();
        pairs.push_back({Candidate{VectorXd::Zero(4), 0}, Candidate{dir, 1}});
    }
    std::vector<double> ratios;
    for (int ell : {1, 2, 4, 8, 16}) {
        ratios.push_back(calibrate_oracle_constants(xs, {ell}, pairs, 0.99, {11, 0}).ratio);
    }
    // Monte Carlo oracle: larger blocks average out more, so the envelope
    // tightens along the grid (small bootstrap slack between neighbors).
    for (std::size_t i = 1; i < ratios.size(); ++i) CHECK(ratios[i] <= ratios[i - 1] * 1.05);
    CHECK(ratios.back() < ratios.front());

    const auto joint = calibrate_oracle_constants(xs, {1, 2, 4, 8, 16}, pairs, 0.99, {11, 0});
    const double best = *std::min_element(ratios.begin(), ratios.end());
    CHECK(joint.ratio == doctest::Approx(best).epsilon(1e-12));
}

TEST_CASE("calibrate_oracle_constants: explicit covariance changes the reference norm") {
    // Design with coordinate variances (1, 4): the isotropy-based distance
    // understates the true L2 distance along e2, so calibrating with the
    // correct covariance yields an envelope centered differently.
    CounterRng g({12, 0});
    MatrixXd xs(1024, 2);
    for (Index i = 0; i < xs.rows(); ++i) {
        xs(i, 0) = g.gaussian();
        xs(i, 1) = 2.0 * g.gaussian();
    }
    std::vector<std::pair<Candidate, Candidate>> pairs;
    VectorXd e2(2);
    e2 << 0.0, 1.0;
    for (int i = 0; i < 100; ++i) {
        pairs.push_back({Candidate{VectorXd::Zero(2), 0},
                         Candidate{(0.5 + 0.01 * i) * e2, 1}});
    }
    MatrixXd cov = MatrixXd::Zero(2, 2);
    cov(0, 0) = 1.0;
    cov(1, 1) = 4.0;
    const auto iso = calibrate_oracle_constants(xs, {8}, pairs, 0.95, {13, 0});
    const auto adj = calibrate_oracle_constants(xs, {8}, pairs, 0.95, {13, 0}, cov);
    // Under the correct norm phi/||.|| centers at sqrt(2/pi); under the
    // isotropy norm it centers at 2*sqrt(2/pi).
    CHECK(adj.beta < std::sqrt(2.0 / M_PI) * 1.5);
    CHECK(iso.alpha > std::sqrt(2.0 / M_PI));
}
