#include "momtour/tournament.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "momtour/mom.hpp"

namespace momtour {

namespace {

void check_block(std::pair<Index, Index> block, Index n_rows, const char* who) {
    if (block.second <= block.first || block.first < 0 || block.second > n_rows) {
        throw std::invalid_argument(std::string(who) + ": empty or out-of-range block");
    }
}

double mom_risk(const Candidate& c, const Eigen::Ref<const MatrixXd>& xs,
                const Eigen::Ref<const VectorXd>& ys, int ell) {
    const VectorXd sq = ((xs * c.coeffs) - ys).array().square();
    std::span<const double> v(sq.data(), static_cast<std::size_t>(sq.size()));
    return med_of_means(v, ell).value;
}

}  // namespace

double block_stat_b(const Candidate& f, const Candidate& h, std::pair<Index, Index> block,
                    const Eigen::Ref<const MatrixXd>& xs2,
                    const Eigen::Ref<const VectorXd>& ys2) {
    check_block(block, xs2.rows(), "block_stat_b");
    const Index m = block.second - block.first;
    const auto x = xs2.middleRows(block.first, m);
    const auto y = ys2.segment(block.first, m);
    const VectorXd rf = (x * f.coeffs) - y;
    const VectorXd rh = (x * h.coeffs) - y;
    return (rf.squaredNorm() - rh.squaredNorm()) / static_cast<double>(m);
}

MatchRecord play_match(const Candidate& f, const Candidate& h, const BlockPartition& partition,
                       const Eigen::Ref<const MatrixXd>& xs2, const Eigen::Ref<const VectorXd>& ys2,
                       const OracleState& oracle, std::optional<bool> forced_do) {
    MatchRecord rec;
    rec.f_id = f.id;
    rec.h_id = h.id;
    rec.n_blocks = partition.n_blocks;
    const bool play = forced_do ? *forced_do : do_decision(oracle, f, h);
    if (!play) {
        rec.outcome = MatchOutcome::Abandoned;
        return rec;
    }
    for (int j = 0; j < partition.n_blocks; ++j) {
        const double b = block_stat_b(f, h, partition.block(j), xs2, ys2);
        // Smaller block loss takes the block; exact zero counts for neither.
        if (b < 0.0) {
            ++rec.blocks_won_f;
        } else if (b > 0.0) {
            ++rec.blocks_won_h;
        }
    }
    const double half = static_cast<double>(partition.n_blocks) / 2.0;
    if (rec.blocks_won_f > half) {
        rec.outcome = MatchOutcome::FWins;
    } else if (rec.blocks_won_h > half) {
        rec.outcome = MatchOutcome::HWins;
    } else {
        rec.outcome = MatchOutcome::Draw;
    }
    return rec;
}

QualifierSet preliminary_round(const CandidatePool& pool, const BlockPartition& partition,
                               const Eigen::Ref<const MatrixXd>& xs2,
                               const Eigen::Ref<const VectorXd>& ys2, const OracleState& oracle,
                               int n_threads) {
    if (pool.candidates.empty()) {
        throw std::invalid_argument("preliminary_round: empty pool");
    }
    const int K = pool.size();
    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(static_cast<std::size_t>(K) * (K - 1) / 2);
    for (int i = 0; i < K; ++i) {
        for (int j = i + 1; j < K; ++j) pairs.emplace_back(i, j);
    }

    QualifierSet out;
    out.round_log.resize(pairs.size());
    auto worker = [&](std::size_t begin, std::size_t end) {
        for (std::size_t p = begin; p < end; ++p) {
            out.round_log[p] = play_match(pool.candidates[static_cast<std::size_t>(pairs[p].first)],
                                          pool.candidates[static_cast<std::size_t>(pairs[p].second)],
                                          partition, xs2, ys2, oracle);
        }
    };
    if (n_threads <= 1 || pairs.size() < 2) {
        worker(0, pairs.size());
    } else {
        std::vector<std::thread> threads;
        const std::size_t chunk = (pairs.size() + n_threads - 1) / n_threads;
        for (int t = 0; t < n_threads; ++t) {
            const std::size_t b = std::min(pairs.size(), static_cast<std::size_t>(t) * chunk);
            const std::size_t e = std::min(pairs.size(), b + chunk);
            if (b < e) threads.emplace_back(worker, b, e);
        }
        for (auto& th : threads) th.join();
    }

    std::vector<bool> lost(static_cast<std::size_t>(K), false);
    for (const auto& rec : out.round_log) {
        if (rec.outcome == MatchOutcome::FWins) lost[static_cast<std::size_t>(rec.h_id)] = true;
        if (rec.outcome == MatchOutcome::HWins) lost[static_cast<std::size_t>(rec.f_id)] = true;
    }
    for (int i = 0; i < K; ++i) {
        if (!lost[static_cast<std::size_t>(i)]) out.ids.push_back(pool.candidates[static_cast<std::size_t>(i)].id);
    }
    return out;
}

double psi_block_stat(const Candidate& f, const Candidate& h, std::pair<Index, Index> block,
                      const Eigen::Ref<const MatrixXd>& xs3,
                      const Eigen::Ref<const VectorXd>& ys3) {
    check_block(block, xs3.rows(), "psi_block_stat");
    const Index m = block.second - block.first;
    const auto x = xs3.middleRows(block.first, m);
    const auto y = ys3.segment(block.first, m);
    const VectorXd pf = x * f.coeffs;
    const VectorXd gap = (x * h.coeffs) - pf;
    return 2.0 * gap.dot(pf - y) / static_cast<double>(m);
}

bool home_match(const Candidate& home, const Candidate& away, const BlockPartition& partition,
                const Eigen::Ref<const MatrixXd>& xs3, const Eigen::Ref<const VectorXd>& ys3,
                double r1) {
    if (home.id == away.id) {
        throw std::invalid_argument("home_match: home and away must differ");
    }
    const double threshold = -r1 * r1 / 10.0;
    int good = 0;
    for (int j = 0; j < partition.n_blocks; ++j) {
        if (psi_block_stat(home, away, partition.block(j), xs3, ys3) >= threshold) ++good;
    }
    return static_cast<double>(good) > static_cast<double>(partition.n_blocks) / 2.0;
}

namespace {

const Candidate& by_id(const CandidatePool& pool, int id) {
    for (const auto& c : pool.candidates) {
        if (c.id == id) return c;
    }
    throw std::invalid_argument("champions_league: qualifier id not in pool");
}

int break_tie(const std::vector<int>& ids, const CandidatePool& pool,
              const Eigen::Ref<const MatrixXd>& xs3, const Eigen::Ref<const VectorXd>& ys3,
              const TournamentConfig& config) {
    if (config.tie_break == TieBreak::LowestId) {
        return *std::min_element(ids.begin(), ids.end());
    }
    int best = ids.front();
    double best_risk = std::numeric_limits<double>::infinity();
    for (int id : ids) {
        const double risk = mom_risk(by_id(pool, id), xs3, ys3, config.ell);
        if (risk < best_risk || (risk == best_risk && id < best)) {
            best = id;
            best_risk = risk;
        }
    }
    return best;
}

}  // namespace

ChampionResult champions_league(const QualifierSet& qualifiers, const CandidatePool& pool,
                                const BlockPartition& partition,
                                const Eigen::Ref<const MatrixXd>& xs3,
                                const Eigen::Ref<const VectorXd>& ys3,
                                const TournamentConfig& config) {
    if (qualifiers.ids.empty()) {
        throw std::runtime_error("champions_league: empty qualifier set");
    }
    ChampionResult res;
    if (qualifiers.ids.size() == 1) {
        res.winner_id = qualifiers.ids.front();
        return res;
    }
    const double r1 = 2.0 * (config.beta / config.alpha) * config.r;
    const double threshold = -r1 * r1 / 10.0;

    std::vector<int> home_losses(qualifiers.ids.size(), 0);
    std::vector<int> all_winners;
    for (std::size_t fi = 0; fi < qualifiers.ids.size(); ++fi) {
        const auto& f = by_id(pool, qualifiers.ids[fi]);
        bool won_all = true;
        for (std::size_t hi = 0; hi < qualifiers.ids.size(); ++hi) {
            if (hi == fi) continue;
            const auto& h = by_id(pool, qualifiers.ids[hi]);
            MatchRecord rec;
            rec.f_id = f.id;
            rec.h_id = h.id;
            rec.n_blocks = partition.n_blocks;
            for (int j = 0; j < partition.n_blocks; ++j) {
                if (psi_block_stat(f, h, partition.block(j), xs3, ys3) >= threshold) {
                    ++rec.blocks_won_f;
                } else {
                    ++rec.blocks_won_h;
                }
            }
            const bool win = static_cast<double>(rec.blocks_won_f) >
                             static_cast<double>(partition.n_blocks) / 2.0;
            rec.outcome = win ? MatchOutcome::FWins : MatchOutcome::HWins;
            res.home_match_log.push_back(rec);
            if (!win) {
                won_all = false;
                ++home_losses[fi];
            }
        }
        if (won_all) all_winners.push_back(f.id);
    }

    if (!all_winners.empty()) {
        res.winner_id = break_tie(all_winners, pool, xs3, ys3, config);
        return res;
    }
    if (config.fallback == Fallback::Fail) {
        throw std::runtime_error("champions_league: no qualifier won all home matches");
    }
    // Copeland fallback: fewest home-match losses, then the configured tie-break.
    const int min_losses = *std::min_element(home_losses.begin(), home_losses.end());
    std::vector<int> contenders;
    for (std::size_t i = 0; i < qualifiers.ids.size(); ++i) {
        if (home_losses[i] == min_losses) contenders.push_back(qualifiers.ids[i]);
    }
    res.winner_id = break_tie(contenders, pool, xs3, ys3, config);
    res.fallback_used = true;
    return res;
}

TournamentOutput run_tournament(const Dataset& data, const CandidatePool& pool,
                                const TournamentConfig& config, int n_threads) {
    config.validate();
    if (pool.candidates.empty()) {
        throw std::invalid_argument("run_tournament: empty pool");
    }
    const Index N = data.part_size();
    TournamentOutput out;
    if (pool.size() == 1) {
        out.champion = pool.candidates.front();
        out.qualifiers.ids = {pool.candidates.front().id};
        out.result.winner_id = pool.candidates.front().id;
        return out;
    }
    const OracleState oracle = make_oracle(data, config);
    const int n = choose_block_count(N, config.r, config.sigma, config.theta);
    const BlockPartition partition = make_block_partition(N, n);
    out.n_blocks = n;

    out.qualifiers =
        preliminary_round(pool, partition, data.xs_part(1), data.ys_part(1), oracle, n_threads);

    QualifierSet league = out.qualifiers;
    if (league.ids.empty()) {
        // Finite pools can produce an empty H; fall back to a Copeland
        // round over the full pool and flag it.
        out.empty_qualifier_fallback = true;
        for (const auto& c : pool.candidates) league.ids.push_back(c.id);
    }
    TournamentConfig cfg = config;
    if (out.empty_qualifier_fallback) cfg.fallback = Fallback::CopelandScore;
    out.result =
        champions_league(league, pool, partition, data.xs_part(2), data.ys_part(2), cfg);
    out.champion = by_id(pool, out.result.winner_id);
    return out;
}

const char* to_string(MatchOutcome o) {
    switch (o) {
        case MatchOutcome::FWins: return "FWins";
        case MatchOutcome::HWins: return "HWins";
        case MatchOutcome::Draw: return "Draw";
        case MatchOutcome::Abandoned: return "Abandoned";
    }
    return "?";
}

namespace {

MatchOutcome outcome_from_string(const std::string& s) {
    if (s == "FWins") return MatchOutcome::FWins;
    if (s == "HWins") return MatchOutcome::HWins;
    if (s == "Draw") return MatchOutcome::Draw;
    if (s == "Abandoned") return MatchOutcome::Abandoned;
    throw std::invalid_argument("match_log_from_text: unknown outcome " + s);
}

}  // namespace

std::string match_log_to_text(const std::vector<MatchRecord>& log) {
    std::ostringstream os;
    for (const auto& r : log) {
        os << r.f_id << ',' << r.h_id << ',' << to_string(r.outcome) << ',' << r.blocks_won_f
           << ',' << r.blocks_won_h << '\n';
    }
    return os.str();
}

std::vector<MatchRecord> match_log_from_text(const std::string& text) {
    std::vector<MatchRecord> log;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        MatchRecord r;
        std::string field;
        std::getline(ls, field, ',');
        r.f_id = std::stoi(field);
        std::getline(ls, field, ',');
        r.h_id = std::stoi(field);
        std::getline(ls, field, ',');
        r.outcome = outcome_from_string(field);
        std::getline(ls, field, ',');
        r.blocks_won_f = std::stoi(field);
        std::getline(ls, field, ',');
        r.blocks_won_h = std::stoi(field);
        log.push_back(r);
    }
    return log;
}

}  // namespace momtour
