#include "powerwise/tiebreak.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>

#include "powerwise/error.hpp"
#include "text_util.hpp"

namespace powerwise {

namespace {

using Levels = std::vector<std::vector<Team>>;

class Resolver {
  public:
    Resolver(const SeasonDataset& ds, const PowerRatingTable& ratings, const ComparisonConfig& config,
             const TieBreakConfig& tiebreak)
        : ds_(ds), ratings_(ratings), config_(config), tiebreak_(tiebreak) {}

    Levels resolve(const std::vector<Team>& group) {
        if (group.size() == 1) return {group};
        if (group.size() == 2) return two_team(group);
        for (const auto rule : tiebreak_.multi_team_ladder) {
            if (rule == MultiTeamRule::mini_round_robin) {
                if (auto levels = mini_round_robin(group)) {
                    Levels out;
                    for (const auto& level : *levels) {
                        for (auto& sub : resolve(level)) out.push_back(std::move(sub));
                    }
                    return out;
                }
            } else if (auto levels = by_rating(group)) {
                return *levels;
            }
        }
        note("unseparated", group, {group}, [](const Team&) { return std::string("shared rank"); });
        return {group};
    }

    std::vector<TieBreakStep> log;
    std::map<Team, std::vector<std::string>> audit;

  private:
    template <typename Detail>
    void note(const std::string& rule, const std::vector<Team>& group, const Levels& levels,
              Detail detail) {
        log.push_back({rule, group, levels});
        const std::string members = "{" + detail::join(group, ", ") + "}";
        for (const auto& t : group) audit[t].push_back(rule + " " + members + ": " + detail(t));
    }

    Levels two_team(const std::vector<Team>& group) {
        const auto outcome = compare(ds_, ratings_, group[0], group[1], config_);
        const std::string step = to_string(outcome.deciding_step);
        if (!outcome.winner) {
            note("two-team", group, {group}, [&](const Team&) { return "unresolved, shared rank"; });
            return {group};
        }
        const Team& w = *outcome.winner;
        const Team& l = w == group[0] ? group[1] : group[0];
        Levels levels{{w}, {l}};
        note("two-team", group, levels, [&](const Team& t) {
            return (t == w ? "beat " + l : "lost to " + w) + " by " + step;
        });
        return levels;
    }

    std::optional<Levels> mini_round_robin(const std::vector<Team>& group) {
        std::map<Team, int> wins;
        for (const auto& t : group) wins[t] = 0;
        for (std::size_t i = 0; i < group.size(); ++i) {
            for (std::size_t j = i + 1; j < group.size(); ++j) {
                const auto outcome = compare(ds_, ratings_, group[i], group[j], config_);
                if (outcome.winner) ++wins[*outcome.winner];
            }
        }
        std::map<int, std::vector<Team>, std::greater<>> by_wins;
        for (const auto& t : group) by_wins[wins[t]].push_back(t);
        if (by_wins.size() < 2) return std::nullopt;
        Levels levels;
        for (auto& [w, teams] : by_wins) levels.push_back(std::move(teams));
        note("mini-round-robin", group, levels,
             [&](const Team& t) { return std::to_string(wins[t]) + " wins"; });
        return levels;
    }

    std::optional<Levels> by_rating(const std::vector<Team>& group) {
        std::map<double, std::vector<Team>, std::greater<>> by_value;
        for (const auto& t : group) by_value[ratings_.rating(t)].push_back(t);
        if (by_value.size() < 2) return std::nullopt;
        Levels levels;
        for (auto& [v, teams] : by_value) levels.push_back(std::move(teams));
        note("power-rating", group, levels,
             [&](const Team& t) { return "rating " + detail::fixed(ratings_.rating(t), 4); });
        return levels;
    }

    const SeasonDataset& ds_;
    const PowerRatingTable& ratings_;
    const ComparisonConfig& config_;
    const TieBreakConfig& tiebreak_;
};

std::vector<Team> points_order(const RankingList& list) {
    std::vector<std::pair<double, Team>> keyed;
    for (const auto& e : list.entries) keyed.emplace_back(-e.value, e.team);
    std::sort(keyed.begin(), keyed.end());
    std::vector<Team> out;
    for (auto& [v, t] : keyed) out.push_back(std::move(t));
    return out;
}

}  // namespace

RankingList break_ties(const PowerwiseTable& table, const SeasonDataset& dataset,
                       const PowerRatingTable& ratings, const ComparisonConfig& config,
                       const TieBreakConfig& tiebreak) {
    if (table.teams != dataset.teams) {
        throw ValidationError("pairwise table and dataset cover different teams");
    }
    for (const auto& t : dataset.teams) ratings.rating(t);

    std::map<int, std::vector<Team>, std::greater<>> by_points;
    for (const auto& [team, pts] : table.points) by_points[pts].push_back(team);

    Resolver resolver(dataset, ratings, config, tiebreak);
    RankingList list;
    list.season = table.season;
    int position = 0;
    for (const auto& [pts, group] : by_points) {
        for (const auto& level : resolver.resolve(group)) {
            const int rank = position + 1;
            for (const auto& t : level) {
                list.entries.push_back({rank, t, static_cast<double>(pts), 0, resolver.audit[t]});
                ++position;
            }
        }
    }
    assign_tie_groups(list.entries);
    list.audit_log = std::move(resolver.log);
    return list;
}

std::vector<Team> replay_tiebreaks(const RankingList& list) {
    auto order = points_order(list);
    for (const auto& step : list.audit_log) {
        std::vector<std::size_t> pos;
        for (const auto& t : step.group) {
            const auto it = std::find(order.begin(), order.end(), t);
            if (it == order.end()) throw ValidationError("audit names unknown team '" + t + "'");
            pos.push_back(static_cast<std::size_t>(it - order.begin()));
        }
        std::sort(pos.begin(), pos.end());
        if (pos.back() - pos.front() + 1 != pos.size()) {
            throw ValidationError("audit step group is not contiguous");
        }
        std::size_t k = pos.front();
        for (const auto& level : step.levels) {
            for (const auto& t : level) order[k++] = t;
        }
    }
    return order;
}

}  // namespace powerwise
