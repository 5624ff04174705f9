#include "powerwise/selection.hpp"

#include <algorithm>

#include "powerwise/error.hpp"

namespace powerwise {

SelectionResult select_at_large(const RankingList& ranking, const std::set<Team>& auto_qualifiers,
                                int bid_count) {
    if (bid_count < 0) throw ValidationError("bid count must be >= 0");
    for (const auto& t : auto_qualifiers) {
        if (!ranking.contains(t)) {
            throw ValidationError("automatic qualifier '" + t + "' is not in the ranking");
        }
    }

    SelectionResult out;
    out.season = ranking.season;
    out.auto_qualifiers = auto_qualifiers;
    if (bid_count == 0) return out;

    std::vector<const RankingEntry*> eligible;
    for (const auto& e : ranking.entries) {
        if (!auto_qualifiers.count(e.team)) eligible.push_back(&e);
    }
    if (eligible.size() < static_cast<std::size_t>(bid_count)) {
        throw ValidationError("only " + std::to_string(eligible.size()) +
                              " eligible teams for " + std::to_string(bid_count) + " bids");
    }
    const std::size_t cut = static_cast<std::size_t>(bid_count);
    if (cut < eligible.size() && eligible[cut]->rank == eligible[cut - 1]->rank) {
        throw ComputationError("unresolved bubble tie: '" + eligible[cut - 1]->team + "' and '" +
                               eligible[cut]->team + "' share rank " +
                               std::to_string(eligible[cut]->rank) + " at the cutoff");
    }
    for (std::size_t i = 0; i < cut; ++i) out.at_large.push_back(eligible[i]->team);
    out.bubble_window = {eligible.front()->rank, eligible[cut - 1]->rank};
    return out;
}

SelectionDiff diff_selections(const SelectionResult& mine, const std::vector<Team>& official) {
    SelectionDiff diff;
    auto position = [](const std::vector<Team>& list, const Team& t) -> int {
        const auto it = std::find(list.begin(), list.end(), t);
        return it == list.end() ? 0 : static_cast<int>(it - list.begin()) + 1;
    };
    for (const auto& t : mine.at_large) {
        const int theirs = position(official, t);
        if (theirs == 0) {
            diff.only_mine.push_back(t);
        } else {
            const int ours = position(mine.at_large, t);
            diff.shared.push_back({t, ours, theirs, theirs - ours});
        }
    }
    for (const auto& t : official) {
        if (position(mine.at_large, t) == 0) diff.only_official.push_back(t);
    }
    return diff;
}

}  // namespace powerwise
