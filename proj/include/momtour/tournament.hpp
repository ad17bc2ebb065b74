#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "momtour/core.hpp"
#include "momtour/oracle.hpp"

namespace momtour {

enum class MatchOutcome { FWins, HWins, Draw, Abandoned };

/// Outcome of one pairwise match with per-block tallies. An abandoned
/// match (distance oracle said 0) has both tallies zero.
struct MatchRecord {
    int f_id = 0;
    int h_id = 0;
    MatchOutcome outcome = MatchOutcome::Draw;
    int blocks_won_f = 0;
    int blocks_won_h = 0;
    int n_blocks = 0;
};

/// Candidates that lost no preliminary-round match, ordered by id, plus
/// the full match log.
struct QualifierSet {
    std::vector<int> ids;
    std::vector<MatchRecord> round_log;
};

struct ChampionResult {
    int winner_id = -1;
    std::vector<MatchRecord> home_match_log;
    bool fallback_used = false;
};

/// Per-block squared-loss gap
///   B_{f,h}(j) = (1/m) sum_{i in I_j} ((f(X_i)-Y_i)^2 - (h(X_i)-Y_i)^2).
/// Antisymmetric in (f, h). Positive values mean f carries the larger
/// loss on the block, i.e. h takes the block.
double block_stat_b(const Candidate& f, const Candidate& h, std::pair<Index, Index> block,
                    const Eigen::Ref<const MatrixXd>& xs2, const Eigen::Ref<const VectorXd>& ys2);

/// Plays one preliminary-round match over the given blocks of the second
/// sample part. Abandoned (no blocks played) when the distance oracle
/// says 0. Otherwise the candidate with the strictly smaller loss takes
/// each block (exact ties count for neither) and a strict majority of
/// blocks wins the match; anything else is a draw. `forced_do` is a test
/// hook overriding the oracle.
MatchRecord play_match(const Candidate& f, const Candidate& h, const BlockPartition& partition,
                       const Eigen::Ref<const MatrixXd>& xs2, const Eigen::Ref<const VectorXd>& ys2,
                       const OracleState& oracle,
                       std::optional<bool> forced_do = std::nullopt);

/// Plays every unordered pair once and returns the zero-loss candidates.
/// Matches are independent; with n_threads > 1 they are evaluated in
/// parallel and merged in (min_id, max_id) order.
QualifierSet preliminary_round(const CandidatePool& pool, const BlockPartition& partition,
                               const Eigen::Ref<const MatrixXd>& xs2,
                               const Eigen::Ref<const VectorXd>& ys2, const OracleState& oracle,
                               int n_threads = 1);

/// Champions-league block statistic on the third sample part:
///   (2/m) sum_{i in I_j} (h(X_i) - f(X_i)) (f(X_i) - Y_i).
double psi_block_stat(const Candidate& f, const Candidate& h, std::pair<Index, Index> block,
                      const Eigen::Ref<const MatrixXd>& xs3, const Eigen::Ref<const VectorXd>& ys3);

/// 1 iff the psi block statistic of the home side is >= -r1^2/10 on
/// strictly more than half of the blocks.
bool home_match(const Candidate& home, const Candidate& away, const BlockPartition& partition,
                const Eigen::Ref<const MatrixXd>& xs3, const Eigen::Ref<const VectorXd>& ys3,
                double r1);

/// Runs every qualifier's home matches with r1 = 2*(beta/alpha)*r and
/// returns a qualifier that won them all, tie-broken per config. When no
/// all-winner exists the configured fallback applies (Copeland: fewest
/// home losses, then tie-break).
ChampionResult champions_league(const QualifierSet& qualifiers, const CandidatePool& pool,
                                const BlockPartition& partition,
                                const Eigen::Ref<const MatrixXd>& xs3,
                                const Eigen::Ref<const VectorXd>& ys3,
                                const TournamentConfig& config);

struct TournamentOutput {
    Candidate champion;
    QualifierSet qualifiers;
    ChampionResult result;
    int n_blocks = 0;
    bool empty_qualifier_fallback = false;  // flagged engineering deviation
};

/// Full three-stage tournament: oracle on part 1, preliminary round on
/// part 2, champions league on part 3, with the same block count
/// n = choose_block_count(N, r, sigma, theta) in both rounds.
TournamentOutput run_tournament(const Dataset& data, const CandidatePool& pool,
                                const TournamentConfig& config, int n_threads = 1);

/// Line-oriented match log: f_id,h_id,outcome,blocks_f,blocks_h.
std::string match_log_to_text(const std::vector<MatchRecord>& log);
std::vector<MatchRecord> match_log_from_text(const std::string& text);

const char* to_string(MatchOutcome o);

}  // namespace momtour
