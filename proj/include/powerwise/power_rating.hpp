#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "powerwise/ingest.hpp"

namespace powerwise {

enum class Anchor { mean_zero, top_team_at_100 };

Anchor parse_anchor(std::string_view text);
std::string to_string(Anchor a);

struct SolverConfig {
    int goal_cap = 7;
    std::optional<double> hfa;  // nullopt: estimate from the season's non-neutral games
    double convergence_tol = 1e-9;
    int max_iterations = 10000;
    Anchor anchor = Anchor::mean_zero;
    double display_offset = 0.0;

    /// Throws ValidationError when a field is out of range.
    void validate() const;
};

struct PowerRatingTable {
    int season = 0;
    std::map<Team, double> ratings;  // goal scale
    std::map<Team, int> component;
    std::map<Team, int> games_played;
    int component_count = 0;
    double hfa_used = 0.0;
    int iterations = 0;
    bool converged = false;
    double final_max_change = 0.0;
    double final_mean_abs_error = 0.0;
    SolverConfig config;
    std::vector<std::string> warnings;

    double rating(std::string_view team) const;  // throws if absent
    bool has_team(std::string_view team) const;
};

/// Home-minus-away margin clamped to [-goal_cap, +goal_cap].
double capped_margin(int home_score, int away_score, int goal_cap);

struct HfaEstimate {
    double hfa = 0.0;
    std::size_t games = 0;  // non-neutral games averaged
    std::optional<std::string> warning;
};

/// Mean capped home-minus-away margin over the season's non-neutral games.
/// Returns 0 with a warning when every game is neutral.
HfaEstimate estimate_hfa(const SeasonDataset& dataset, int goal_cap);

/// Solves for ratings such that, for every game, rating(home) - rating(away)
/// approximates the capped margin less the home-field advantage, in the least
/// squares sense. The solve is a Gauss-Seidel sweep in lexicographic team
/// order: each team's rating becomes the mean over its games of its adjusted
/// margin plus the opponent's current rating. Ratings are re-anchored per
/// connected component after every sweep. Iteration stops once the largest
/// change in a sweep is at most `convergence_tol`; hitting `max_iterations`
/// returns the table with `converged == false`.
PowerRatingTable solve_power_ratings(const SeasonDataset& dataset, const SolverConfig& config = {});

/// ratings[a] - ratings[b]; the estimated neutral-site margin of a over b.
/// Throws ValidationError when the teams lie in different components.
double rating_difference(const PowerRatingTable& table, std::string_view a, std::string_view b);

/// Per-team mean residual of the rating equations:
/// mean over the team's games of (adjusted margin + opponent rating - own rating).
/// Zero for every team at the exact solution.
std::map<Team, double> rating_residuals(const SeasonDataset& dataset, const PowerRatingTable& table);

}  // namespace powerwise
