#include "powerwise/ranking.hpp"

#include <algorithm>

#include "powerwise/error.hpp"

namespace powerwise {

int RankingList::rank_of(std::string_view team) const {
    for (const auto& e : entries) {
        if (e.team == team) return e.rank;
    }
    throw ValidationError("team '" + std::string(team) + "' is not in the ranking");
}

bool RankingList::contains(std::string_view team) const {
    return std::any_of(entries.begin(), entries.end(), [&](const auto& e) { return e.team == team; });
}

std::vector<Team> RankingList::teams_in_order() const {
    std::vector<Team> out;
    out.reserve(entries.size());
    for (const auto& e : entries) out.push_back(e.team);
    return out;
}

void assign_tie_groups(std::vector<RankingEntry>& entries) {
    int next = 0;
    for (std::size_t i = 0; i < entries.size();) {
        std::size_t j = i + 1;
        while (j < entries.size() && entries[j].value == entries[i].value) ++j;
        const int id = j - i > 1 ? ++next : 0;
        for (std::size_t k = i; k < j; ++k) entries[k].tie_group = id;
        i = j;
    }
}

RankingList rank_by_value(int season, const std::map<Team, double>& values) {
    RankingList list;
    list.season = season;
    for (const auto& [team, v] : values) list.entries.push_back({0, team, v, 0, {}});
    std::stable_sort(list.entries.begin(), list.entries.end(),
                     [](const auto& a, const auto& b) { return a.value > b.value; });
    for (std::size_t i = 0; i < list.entries.size(); ++i) {
        const bool shared = i > 0 && list.entries[i].value == list.entries[i - 1].value;
        list.entries[i].rank = shared ? list.entries[i - 1].rank : static_cast<int>(i + 1);
    }
    assign_tie_groups(list.entries);
    return list;
}

}  // namespace powerwise
