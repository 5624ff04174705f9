#pragma once

#include <map>
#include <string>
#include <vector>

#include "powerwise/ingest.hpp"
#include "powerwise/ranking.hpp"

namespace powerwise {

struct RpiConfig {
    double w_wp = 0.25;
    double w_owp = 0.50;
    double w_oowp = 0.25;
    bool exclude_games_vs_self_in_owp = true;

    void validate() const;
};

/// Parses "a,b,c" into RPI weights (validated).
RpiConfig parse_rpi_weights(std::string_view text, RpiConfig base = {});

struct RpiTable {
    int season = 0;
    std::map<Team, double> rpi;
    std::map<Team, double> wp;
    std::map<Team, double> owp;
    std::map<Team, double> oowp;
    RpiConfig config;

    RankingList ranking() const { return rank_by_value(season, rpi); }
};

/// Win percentage (ties count half), opponents' win percentage and opponents'
/// opponents' win percentage, blended by the configured weights.
///
/// OWP averages over a team's games, so an opponent met twice counts twice.
/// With `exclude_games_vs_self_in_owp` the opponent's percentage leaves out its
/// games against the rated team; an opponent with no other games contributes
/// nothing. OOWP is the game-weighted mean of the opponents' OWP.
RpiTable compute_rpi(const SeasonDataset& dataset, const RpiConfig& config = {});

struct ScheduleSwapResult {
    RpiTable before;
    RpiTable after;
    int rank_before = 0;
    int rank_after = 0;
    int rank_change = 0;  // rank_before - rank_after; positive means the team moved up
};

/// Replaces every game of `team` with `replacement` and recomputes RPI.
/// Throws ValidationError if a replacement game does not involve the team.
ScheduleSwapResult schedule_swap_experiment(const SeasonDataset& dataset, const Team& team,
                                            const std::vector<GameRecord>& replacement,
                                            const RpiConfig& config = {},
                                            const SeasonWindow& window = {});

/// A schedule in which `team` loses once to each opponent by `margin` goals,
/// reusing the dates of the team's current games in order (cycling when the
/// new schedule is longer). All games are played at the opponent's venue.
std::vector<GameRecord> losing_schedule(const SeasonDataset& dataset, const Team& team,
                                        const std::vector<Team>& opponents, int margin = 10);

}  // namespace powerwise
