#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "powerwise/ingest.hpp"
#include "powerwise/ranking.hpp"

namespace powerwise {

struct SelectionResult {
    int season = 0;
    std::set<Team> auto_qualifiers;
    std::vector<Team> at_large;  // in ranking order
    std::pair<int, int> bubble_window{0, 0};  // ranks of the first and last pick; {0,0} if none
};

/// Takes the top `bid_count` teams of the ranking that are not automatic
/// qualifiers. Throws ComputationError ("unresolved bubble tie") when the last
/// pick shares its rank with an eligible team left out, and ValidationError for
/// a negative bid count, unknown auto-qualifiers or too few eligible teams.
SelectionResult select_at_large(const RankingList& ranking, const std::set<Team>& auto_qualifiers,
                                int bid_count);

struct SelectionDiff {
    std::vector<Team> only_mine;
    std::vector<Team> only_official;
    struct Shift {
        Team team;
        int mine_position = 0;      // 1-based position in the at-large list
        int official_position = 0;
        int delta = 0;              // official_position - mine_position
    };
    std::vector<Shift> shared;

    bool empty() const { return only_mine.empty() && only_official.empty(); }
};

SelectionDiff diff_selections(const SelectionResult& mine, const std::vector<Team>& official);

}  // namespace powerwise
