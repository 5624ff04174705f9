#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "powerwise/ingest.hpp"
#include "powerwise/power_rating.hpp"

namespace powerwise {

enum class CommonOpponentMode { percentage, numeric };

CommonOpponentMode parse_co_mode(std::string_view text);
std::string to_string(CommonOpponentMode m);

struct ComparisonConfig {
    bool skip_singular_common_opponent = true;
    CommonOpponentMode common_opponent_mode = CommonOpponentMode::percentage;
};

enum class Verdict { a_wins, b_wins, inconclusive };

enum class DecidingStep { head_to_head, common_opponents, power_rating, unresolved };

std::string to_string(DecidingStep s);
DecidingStep parse_deciding_step(std::string_view text);

/// Win-loss record with ties kept as half wins.
struct Record {
    int half_wins = 0;
    int games = 0;

    double wins() const { return half_wins / 2.0; }
    double losses() const { return games - wins(); }
    double percentage() const { return games ? half_wins / (2.0 * games) : 0.0; }
    std::string str() const;  // "2-1", "1.5-0.5"

    bool operator==(const Record&) const = default;
};

struct HeadToHead {
    Verdict verdict = Verdict::inconclusive;
    Record a;  // a's record against b
    Record b;
};

struct CommonOpponentsEvidence {
    Verdict verdict = Verdict::inconclusive;
    std::vector<Team> common;  // distinct common opponents, sorted
    Record a;                  // a's record against `common`
    Record b;
    bool skipped_singular = false;
};

struct PairwiseOutcome {
    Team team_a;  // team_a < team_b
    Team team_b;
    std::optional<Team> winner;
    DecidingStep deciding_step = DecidingStep::unresolved;
    HeadToHead h2h;
    CommonOpponentsEvidence co;
    std::optional<double> rating_difference;  // team_a - team_b, when comparable

    std::string evidence() const;
};

/// Compares a's and b's win counts in the games they played against each other.
HeadToHead head_to_head(const SeasonDataset& dataset, std::string_view a, std::string_view b);

/// Records against the distinct opponents both teams played (excluding each
/// other). Percentage mode awards the strictly higher win percentage; numeric
/// mode awards the strictly better wins-minus-losses. Inconclusive with no
/// common opponents, equal records, or (when configured) exactly one.
CommonOpponentsEvidence common_opponents(const SeasonDataset& dataset, std::string_view a,
                                         std::string_view b, const ComparisonConfig& config = {});

/// Head-to-head, then common opponents, then the strictly higher power rating.
/// Equal ratings or teams in different schedule components leave the pair
/// unresolved. Argument order does not matter: the outcome is keyed by the
/// lexicographically smaller team.
PairwiseOutcome compare(const SeasonDataset& dataset, const PowerRatingTable& ratings,
                        std::string_view a, std::string_view b, const ComparisonConfig& config = {});

struct TeamTally {
    int points = 0;
    std::array<int, 3> wins_by_step{};       // head_to_head, common_opponents, power_rating
    std::array<int, 4> decided_by_step{};    // all comparisons involving the team
};

struct PowerwiseTable {
    int season = 0;
    std::vector<Team> teams;
    std::map<Team, int> points;
    std::map<Team, TeamTally> tallies;
    std::vector<PairwiseOutcome> outcomes;  // (team_a, team_b) ascending
    std::array<int, 4> decisiveness{};      // indexed by DecidingStep

    /// Outcome for an unordered pair; throws if either team is absent.
    const PairwiseOutcome& outcome(std::string_view a, std::string_view b) const;
    int unresolved() const { return decisiveness[3]; }
};

/// Every unordered pair compared once; each win is one Powerwise point.
PowerwiseTable run_tournament(const SeasonDataset& dataset, const PowerRatingTable& ratings,
                              const ComparisonConfig& config = {});

struct DecisivenessReport {
    std::size_t pairs = 0;
    double head_to_head_pct = 0.0;
    double common_opponents_pct = 0.0;
    double power_rating_pct = 0.0;
    double unresolved_pct = 0.0;
};

DecisivenessReport decisiveness_report(const PowerwiseTable& table);

}  // namespace powerwise
