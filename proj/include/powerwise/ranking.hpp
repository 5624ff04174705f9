#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "powerwise/ingest.hpp"

namespace powerwise {

struct RankingEntry {
    int rank = 0;         // position of the first team of its shared-rank group
    Team team;
    double value = 0.0;   // Powerwise points, RPI or power rating depending on the producer
    int tie_group = 0;    // 0 when the team's value is unique; 1.. per group of equal values
    std::vector<std::string> audit;

    bool operator==(const RankingEntry&) const = default;
};

/// One tie-break decision: `group` (in entry order at decision time) split into
/// ordered `levels`. Replaying every step from the value-sorted order
/// reproduces the final ordering.
struct TieBreakStep {
    std::string rule;  // "two-team", "mini-round-robin", "power-rating"
    std::vector<Team> group;
    std::vector<std::vector<Team>> levels;

    bool operator==(const TieBreakStep&) const = default;
};

struct RankingList {
    int season = 0;
    std::vector<RankingEntry> entries;
    std::vector<TieBreakStep> audit_log;

    int rank_of(std::string_view team) const;  // throws if absent
    bool contains(std::string_view team) const;
    std::vector<Team> teams_in_order() const;
};

/// Sorts teams by value descending; equal values share a rank (competition
/// ranking, e.g. 1, 2, 2, 4) and a tie group. Ties are ordered by team name.
RankingList rank_by_value(int season, const std::map<Team, double>& values);

/// Assigns tie groups from equal values in an already ordered entry list.
void assign_tie_groups(std::vector<RankingEntry>& entries);

}  // namespace powerwise
