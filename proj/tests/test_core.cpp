#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "momtour/core.hpp"
#include "momtour/rng.hpp"

using namespace momtour;

TEST_CASE("make_block_partition: exact divisibility") {
    const auto p = make_block_partition(12, 3);
    CHECK(p.block_size == 4);
    CHECK(p.n_used == 12);
    CHECK(p.block(0) == std::pair<Index, Index>{0, 4});
    CHECK(p.block(1) == std::pair<Index, Index>{4, 8});
    CHECK(p.block(2) == std::pair<Index, Index>{8, 12});
}

TEST_CASE("make_block_partition: trailing remainder discarded") {
    const auto p = make_block_partition(13, 3);
    CHECK(p.block_size == 4);
    CHECK(p.n_used == 12);
}

TEST_CASE("make_block_partition: singleton blocks") {
    const auto p = make_block_partition(7, 7);
    CHECK(p.block_size == 1);
    CHECK(p.n_blocks == 7);
}

TEST_CASE("make_block_partition: invalid arguments") {
    CHECK_THROWS_AS(make_block_partition(10, 0), std::invalid_argument);
    CHECK_THROWS_AS(make_block_partition(10, 11), std::invalid_argument);
}

TEST_CASE("partition blocks are disjoint and cover [0, n_used)") {
    for (Index n_avail : {5, 17, 100, 101}) {
        for (int k = 1; k <= static_cast<int>(n_avail); k += 3) {
            const auto p = make_block_partition(n_avail, k);
            std::vector<int> hits(static_cast<std::size_t>(p.n_used), 0);
            for (int j = 0; j < p.n_blocks; ++j) {
                auto [lo, hi] = p.block(j);
                CHECK(hi - lo == p.block_size);
                for (Index i = lo; i < hi; ++i) ++hits[static_cast<std::size_t>(i)];
            }
            for (int h : hits) CHECK(h == 1);
        }
    }
}

TEST_CASE("choose_block_count: examples") {
    CHECK(choose_block_count(1000, 1.0, 1.0, 0.1) == 100);
    CHECK(choose_block_count(1000, 0.1, 1.0, 0.1) == 1);
    // 0.2 * 2000 * 0.25 = 100
    CHECK(choose_block_count(2000, 0.5, 1.0, 0.2) == 100);
}

TEST_CASE("choose_block_count: monotone in theta and ratio, capped at N") {
    int prev = 0;
    for (double theta : {0.01, 0.05, 0.1, 0.2, 0.5}) {
        const int n = choose_block_count(500, 1.0, 1.0, theta);
        CHECK(n >= prev);
        CHECK(n <= 500);
        prev = n;
    }
    prev = 0;
    for (double r : {0.01, 0.1, 0.5, 1.0, 3.0}) {
        const int n = choose_block_count(500, r, 1.0, 0.2);
        CHECK(n >= prev);
        CHECK(n <= 500);
        prev = n;
    }
    CHECK(choose_block_count(10, 100.0, 1.0, 0.99) == 10);
}

TEST_CASE("choose_block_count: invalid arguments") {
    CHECK_THROWS_AS(choose_block_count(0, 1.0, 1.0, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(choose_block_count(10, -1.0, 1.0, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(choose_block_count(10, 1.0, 0.0, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(choose_block_count(10, 1.0, 1.0, 1.5), std::invalid_argument);
}

TEST_CASE("Dataset validation") {
    MatrixXd xs = MatrixXd::Random(6, 2);
    VectorXd ys = VectorXd::Random(6);
    CHECK_NOTHROW(Dataset(xs, ys));
    CHECK_THROWS_AS(Dataset(MatrixXd::Random(5, 2), VectorXd::Random(5)), std::invalid_argument);
    CHECK_THROWS_AS(Dataset(xs, VectorXd::Random(5)), std::invalid_argument);
    MatrixXd bad = xs;
    bad(1, 1) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(Dataset(bad, ys), std::invalid_argument);
}

TEST_CASE("Dataset parts are the fixed thirds") {
    MatrixXd xs(6, 1);
    xs << 0, 1, 2, 3, 4, 5;
    VectorXd ys(6);
    ys << 10, 11, 12, 13, 14, 15;
    Dataset d(xs, ys);
    CHECK(d.part_size() == 2);
    CHECK(d.xs_part(1)(0, 0) == 2);
    CHECK(d.ys_part(2)[1] == 15);
}

TEST_CASE("TournamentConfig validation") {
    TournamentConfig c;
    CHECK_NOTHROW(c.validate());
    c.alpha = 1.5;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = {};
    c.theta = 0.3;  // > tau
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = {};
    c.tau = 0.25;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}

TEST_CASE("CounterRng: deterministic and stream-separated") {
    CounterRng a({42, 7});
    CounterRng b({42, 7});
    CounterRng c({42, 8});
    bool diverged = false;
    for (int i = 0; i < 100; ++i) {
        const auto va = a.next_u64();
        CHECK(va == b.next_u64());
        if (va != c.next_u64()) diverged = true;
    }
    CHECK(diverged);
}

TEST_CASE("CounterRng: rough uniformity and gaussian moments") {
    CounterRng g({123, 0});
    double sum = 0, sumsq = 0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double u = g.uniform01();
        sum += u;
        sumsq += u * u;
    }
    CHECK(sum / n == doctest::Approx(0.5).epsilon(0.01));
    CHECK(sumsq / n == doctest::Approx(1.0 / 3).epsilon(0.01));

    double gs = 0, gss = 0;
    for (int i = 0; i < n; ++i) {
        const double z = g.gaussian();
        gs += z;
        gss += z * z;
    }
    CHECK(std::abs(gs / n) < 0.02);
    CHECK(gss / n == doctest::Approx(1.0).epsilon(0.02));
}
