#pragma once

#include <string>
#include <vector>

#include "momtour/core.hpp"
#include "momtour/rng.hpp"

namespace momtour {

enum class PoolStrategy { GridNet, RandomBall, SeededPerturbation, Explicit };
enum class BallNorm { L2, L1 };

/// Recipe for a finite candidate pool.
struct PoolSpec {
    PoolStrategy strategy = PoolStrategy::RandomBall;
    VectorXd center;
    double radius = 1.0;
    double mesh = 0.5;  // GridNet lattice spacing
    int count = 1;      // RandomBall / SeededPerturbation size
    BallNorm norm = BallNorm::L2;
    bool include_center = false;
    std::vector<VectorXd> explicit_coeffs;  // Explicit pass-through
};

/// Builds a pool per the spec'd strategy. GridNet is restricted to
/// n_dim <= 3. Deterministic under the RngSpec; ids are assigned in
/// generation order, with the exact center prepended as id 0 when
/// include_center is set.
CandidatePool build_pool(const PoolSpec& spec, int n_dim, RngSpec rng);

/// Greedy sequential packing: keeps a point iff its Euclidean distance to
/// every kept point is >= eps. The kept set is eps-separated and maximal
/// for the scan order; its size lower-bounds the true packing number.
std::vector<std::size_t> greedy_packing(const std::vector<VectorXd>& points, double eps);
std::size_t greedy_packing_count(const std::vector<VectorXd>& points, double eps);

/// Text format: one candidate per line, id then coefficients.
std::string pool_to_text(const CandidatePool& pool);
CandidatePool pool_from_text(const std::string& text);

}  // namespace momtour
