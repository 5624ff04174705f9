#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "powerwise/ingest.hpp"
#include "powerwise/pairwise.hpp"
#include "powerwise/power_rating.hpp"
#include "powerwise/ranking.hpp"
#include "powerwise/rpi.hpp"
#include "powerwise/tiebreak.hpp"

namespace powerwise {

enum class RankingMethod { rpi, power_rating, powerwise };

/// Accepts "rpi", "pr" / "power_rating", "pwr" / "powerwise".
RankingMethod parse_method(std::string_view text);
std::string to_string(RankingMethod m);

struct MethodConfigs {
    SolverConfig solver;
    RpiConfig rpi;
    ComparisonConfig comparison;
    TieBreakConfig tiebreak;
};

/// Full ranking of a season under one method.
RankingList rank_season(const SeasonDataset& dataset, RankingMethod method,
                        const MethodConfigs& configs = {});

/// Copy of the dataset with one game's scores swapped.
SeasonDataset flip_game(const SeasonDataset& dataset, const GameRef& game);
SeasonDataset flip_game(const SeasonDataset& dataset, std::size_t game_index);

struct RankChange {
    Team team;
    int old_rank = 0;
    int new_rank = 0;

    bool operator==(const RankChange&) const = default;
};

struct PerturbationReport {
    GameRecord flipped_game;  // as played, before the flip
    RankingMethod method = RankingMethod::rpi;
    int top_k = 15;
    RankingList before;
    RankingList after;
    std::vector<RankChange> rank_changes;  // teams in either top-k whose rank moved
    int n_changed = 0;
};

PerturbationReport perturbation_experiment(const SeasonDataset& dataset, const GameRef& game,
                                           RankingMethod method, const MethodConfigs& configs = {},
                                           int top_k = 15);

struct TauResult {
    double tau = 0.0;      // tau-b
    double p_value = 1.0;  // two-sided, normal approximation
    std::size_t n = 0;
    long long concordant = 0;
    long long discordant = 0;
    long long tied_x = 0;  // pairs tied in x (including joint ties)
    long long tied_y = 0;
    long long tied_both = 0;
};

/// Tau-b between two paired samples in O(n log n) (merge-sort inversion
/// count). Throws ValidationError when the sizes differ, n < 2, or either
/// sample is constant.
TauResult kendall_tau_b(std::span<const double> x, std::span<const double> y);

/// Tau-b between the ranks two lists assign to their common teams. With a
/// window, only teams whose rank in `x` lies in [first, last] take part.
TauResult kendall_tau(const RankingList& x, const RankingList& y,
                      std::optional<std::pair<int, int>> window = std::nullopt);

struct RegressionSample {
    int group = 0;  // 0 = group a, 1 = group b
    Team team;
    Team opponent;
    Date date;
    double strength = 0.0;  // opponent strength
    double margin = 0.0;    // team minus opponent goals, capped when requested
};

struct LineFit {
    std::size_t n = 0;
    double slope = 0.0;
    double intercept = 0.0;
    double x_mean = 0.0;
    double sxx = 0.0;
    double residual_se = 0.0;  // sqrt(SSE / (n - 2))
    double x_min = 0.0;
    double x_max = 0.0;

    double at(double x) const { return intercept + slope * x; }
    double mean_se(double x) const;  // standard error of the fitted mean at x
};

/// Ordinary least squares y = intercept + slope * x. Needs n >= 3 and two
/// distinct x values.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

struct BandPoint {
    double x = 0.0;
    double fit_a = 0.0, lower_a = 0.0, upper_a = 0.0;
    double fit_b = 0.0, lower_b = 0.0, upper_b = 0.0;
};

struct RegressionReport {
    LineFit a;
    LineFit b;
    std::vector<BandPoint> confidence_band;  // 95% band of the mean response
    double common_low = 0.0;                 // shared strength range of both groups
    double common_high = 0.0;
    double group_offset = 0.0;  // mean gap a - b over the shared range
    double offset_se = 0.0;
    double t_statistic = 0.0;
    double degrees_of_freedom = 0.0;  // Welch-Satterthwaite
    double p_value = 1.0;             // two-sided
    std::size_t n_points = 0;
    std::vector<RegressionSample> samples;
};

std::map<Team, double> strengths_from(const PowerRatingTable& table);
std::map<Team, double> strengths_from(const RpiTable& table);

/// One sample per game of a group team: (opponent strength, the team's signed
/// margin). Each group gets its own OLS line; the offset is the mean vertical
/// gap between the lines over the strength range both groups cover, tested
/// with a two-sided Welch t-test.
RegressionReport strength_regression(const SeasonDataset& dataset,
                                     const std::map<Team, double>& strength,
                                     const std::vector<Team>& group_a,
                                     const std::vector<Team>& group_b,
                                     std::optional<int> goal_cap = std::nullopt,
                                     std::size_t band_points = 50);

/// Same fit over samples already collected (e.g. pooled across seasons).
RegressionReport regress_samples(std::vector<RegressionSample> samples, std::size_t band_points = 50);

/// The samples strength_regression would fit.
std::vector<RegressionSample> regression_samples(const SeasonDataset& dataset,
                                                 const std::map<Team, double>& strength,
                                                 const std::vector<Team>& group_a,
                                                 const std::vector<Team>& group_b,
                                                 std::optional<int> goal_cap = std::nullopt);

}  // namespace powerwise
