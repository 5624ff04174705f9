#include "powerwise/rpi.hpp"

#include <cmath>

#include "powerwise/error.hpp"
#include "text_util.hpp"

namespace powerwise {

namespace {

// Win credit is kept in half-wins so ties stay exact.
struct Tally {
    long half_wins = 0;
    long games = 0;
};

int half_wins_for(const GameRecord& g, const Team& team) {
    const int own = g.home_team == team ? g.home_score : g.away_score;
    const int other = g.home_team == team ? g.away_score : g.home_score;
    return own > other ? 2 : own == other ? 1 : 0;
}

}  // namespace

void RpiConfig::validate() const {
    for (double w : {w_wp, w_owp, w_oowp}) {
        if (!(w >= 0.0) || !std::isfinite(w)) throw ValidationError("RPI weights must be nonnegative");
    }
    if (std::abs(w_wp + w_owp + w_oowp - 1.0) > 1e-12) {
        throw ValidationError("RPI weights must sum to 1");
    }
}

RpiConfig parse_rpi_weights(std::string_view text, RpiConfig base) {
    const auto fields = detail::split_fields(text, ',');
    if (fields.size() != 3) throw ValidationError("RPI weights must be three comma-separated numbers");
    double w[3];
    for (int i = 0; i < 3; ++i) {
        const auto v = detail::parse_double(fields[i]);
        if (!v) throw ValidationError("invalid RPI weight '" + fields[i] + "'");
        w[i] = *v;
    }
    base.w_wp = w[0];
    base.w_owp = w[1];
    base.w_oowp = w[2];
    base.validate();
    return base;
}

RpiTable compute_rpi(const SeasonDataset& dataset, const RpiConfig& config) {
    config.validate();
    RpiTable table;
    table.season = dataset.season;
    table.config = config;

    std::map<Team, Tally> total;
    std::map<Team, std::map<Team, Tally>> versus;
    for (const auto& team : dataset.teams) {
        const auto& entries = dataset.opponents_of.at(team);
        if (entries.empty()) throw ValidationError("team '" + team + "' has no games");
        auto& rec = total[team];
        for (const auto& e : entries) {
            const int hw = half_wins_for(dataset.games[e.game], team);
            rec.half_wins += hw;
            ++rec.games;
            auto& v = versus[team][e.opponent];
            v.half_wins += hw;
            ++v.games;
        }
        table.wp[team] = static_cast<double>(rec.half_wins) / (2.0 * static_cast<double>(rec.games));
    }

    for (const auto& team : dataset.teams) {
        double sum = 0.0;
        long counted = 0;
        for (const auto& e : dataset.opponents_of.at(team)) {
            Tally r = total[e.opponent];
            if (config.exclude_games_vs_self_in_owp) {
                const auto& v = versus[e.opponent][team];
                r.half_wins -= v.half_wins;
                r.games -= v.games;
            }
            if (r.games == 0) continue;
            sum += static_cast<double>(r.half_wins) / (2.0 * static_cast<double>(r.games));
            ++counted;
        }
        table.owp[team] = counted ? sum / static_cast<double>(counted) : 0.0;
    }

    for (const auto& team : dataset.teams) {
        const auto& entries = dataset.opponents_of.at(team);
        double sum = 0.0;
        for (const auto& e : entries) sum += table.owp[e.opponent];
        table.oowp[team] = sum / static_cast<double>(entries.size());
        table.rpi[team] = config.w_wp * table.wp[team] + config.w_owp * table.owp[team] +
                          config.w_oowp * table.oowp[team];
    }
    return table;
}

ScheduleSwapResult schedule_swap_experiment(const SeasonDataset& dataset, const Team& team,
                                            const std::vector<GameRecord>& replacement,
                                            const RpiConfig& config, const SeasonWindow& window) {
    if (!dataset.has_team(team)) throw ValidationError("unknown team '" + team + "'");
    if (replacement.empty()) throw ValidationError("replacement schedule for '" + team + "' is empty");
    for (const auto& g : replacement) {
        if (!g.involves(team)) {
            throw ValidationError("replacement game " + to_iso(g.date) + " " + g.home_team + " vs " +
                                  g.away_team + " does not involve '" + team + "'");
        }
    }
    std::vector<GameRecord> games;
    for (const auto& g : dataset.games) {
        if (!g.involves(team)) games.push_back(g);
    }
    games.insert(games.end(), replacement.begin(), replacement.end());
    const auto swapped = build_season(std::move(games), dataset.season, window);

    ScheduleSwapResult out;
    out.before = compute_rpi(dataset, config);
    out.after = compute_rpi(swapped, config);
    out.rank_before = out.before.ranking().rank_of(team);
    out.rank_after = out.after.ranking().rank_of(team);
    out.rank_change = out.rank_before - out.rank_after;
    return out;
}

std::vector<GameRecord> losing_schedule(const SeasonDataset& dataset, const Team& team,
                                        const std::vector<Team>& opponents, int margin) {
    if (margin < 1) throw ValidationError("losing margin must be >= 1");
    std::vector<Date> dates;
    for (const auto& e : dataset.opponents_of.at(team)) dates.push_back(dataset.games[e.game].date);
    if (dates.empty()) throw ValidationError("team '" + team + "' has no games");
    std::vector<GameRecord> out;
    for (std::size_t i = 0; i < opponents.size(); ++i) {
        if (opponents[i] == team) throw ValidationError("team cannot be scheduled against itself");
        GameRecord g;
        g.season = dataset.season;
        g.date = dates[i % dates.size()];
        g.home_team = opponents[i];
        g.away_team = team;
        g.home_score = margin;
        g.away_score = 0;
        if (i >= dates.size()) g.game_index = static_cast<int>(i);
        out.push_back(std::move(g));
    }
    return out;
}

}  // namespace powerwise
