#include "powerwise/power_rating.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "powerwise/error.hpp"
#include "text_util.hpp"

namespace powerwise {

namespace {

struct Edge {
    std::size_t opponent;
    double margin;  // adjusted, from the owning team's perspective
};

std::vector<std::vector<Edge>> build_edges(const SeasonDataset& ds, int goal_cap, double hfa) {
    std::vector<std::vector<Edge>> edges(ds.teams.size());
    for (const auto& g : ds.games) {
        const auto h = ds.team_index(g.home_team);
        const auto a = ds.team_index(g.away_team);
        double m = capped_margin(g.home_score, g.away_score, goal_cap);
        if (!g.neutral_site) m -= hfa;
        edges[h].push_back({a, m});
        edges[a].push_back({h, -m});
    }
    return edges;
}

void center_components(std::vector<double>& r, const std::vector<int>& comp, int n_comp) {
    std::vector<double> sum(n_comp, 0.0);
    std::vector<int> count(n_comp, 0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        sum[comp[i]] += r[i];
        ++count[comp[i]];
    }
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= sum[comp[i]] / count[comp[i]];
}

}  // namespace

Anchor parse_anchor(std::string_view text) {
    if (text == "mean-zero") return Anchor::mean_zero;
    if (text == "top-team-at-100") return Anchor::top_team_at_100;
    throw ValidationError("unknown anchor '" + std::string(text) +
                          "' (expected mean-zero or top-team-at-100)");
}

std::string to_string(Anchor a) {
    return a == Anchor::mean_zero ? "mean-zero" : "top-team-at-100";
}

void SolverConfig::validate() const {
    if (goal_cap < 0) throw ValidationError("goal cap must be >= 0");
    if (!(convergence_tol > 0)) throw ValidationError("convergence tolerance must be > 0");
    if (max_iterations < 1) throw ValidationError("max iterations must be >= 1");
    if (hfa && !std::isfinite(*hfa)) throw ValidationError("home-field advantage must be finite");
    if (!std::isfinite(display_offset)) throw ValidationError("display offset must be finite");
}

double PowerRatingTable::rating(std::string_view team) const {
    const auto it = ratings.find(std::string(team));
    if (it == ratings.end()) {
        throw ValidationError("team '" + std::string(team) + "' has no power rating");
    }
    return it->second;
}

bool PowerRatingTable::has_team(std::string_view team) const {
    return ratings.count(std::string(team)) > 0;
}

double capped_margin(int home_score, int away_score, int goal_cap) {
    const int diff = home_score - away_score;
    return static_cast<double>(std::clamp(diff, -goal_cap, goal_cap));
}

HfaEstimate estimate_hfa(const SeasonDataset& dataset, int goal_cap) {
    HfaEstimate est;
    double sum = 0.0;
    for (const auto& g : dataset.games) {
        if (g.neutral_site) continue;
        sum += capped_margin(g.home_score, g.away_score, goal_cap);
        ++est.games;
    }
    if (est.games == 0) {
        est.warning = "no non-neutral games; home-field advantage set to 0";
        return est;
    }
    est.hfa = sum / static_cast<double>(est.games);
    return est;
}

PowerRatingTable solve_power_ratings(const SeasonDataset& dataset, const SolverConfig& config) {
    config.validate();
    if (dataset.teams.empty()) throw ValidationError("empty season");

    PowerRatingTable table;
    table.season = dataset.season;
    table.config = config;
    table.component_count = dataset.component_count;

    if (config.hfa) {
        table.hfa_used = *config.hfa;
    } else {
        const auto est = estimate_hfa(dataset, config.goal_cap);
        table.hfa_used = est.hfa;
        if (est.warning) table.warnings.push_back(*est.warning);
    }

    const std::size_t n = dataset.teams.size();
    const auto edges = build_edges(dataset, config.goal_cap, table.hfa_used);
    std::vector<int> comp(n);
    for (std::size_t i = 0; i < n; ++i) comp[i] = dataset.component.at(dataset.teams[i]);

    std::vector<double> r(n, 0.0);
    std::vector<double> prev(n, 0.0);
    double max_change = std::numeric_limits<double>::infinity();
    int it = 0;
    while (it < config.max_iterations) {
        ++it;
        prev = r;
        for (std::size_t i = 0; i < n; ++i) {
            double acc = 0.0;
            for (const auto& e : edges[i]) acc += e.margin + r[e.opponent];
            r[i] = acc / static_cast<double>(edges[i].size());
        }
        center_components(r, comp, dataset.component_count);
        max_change = 0.0;
        for (std::size_t i = 0; i < n; ++i) max_change = std::max(max_change, std::abs(r[i] - prev[i]));
        if (max_change <= config.convergence_tol) break;
    }
    table.iterations = it;
    table.final_max_change = max_change;
    table.converged = max_change <= config.convergence_tol;
    if (!table.converged) {
        table.warnings.push_back("power ratings did not converge after " + std::to_string(it) +
                                 " iterations (last change " + detail::shortest(max_change) + ")");
    }

    double err = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (const auto& e : edges[i]) acc += e.margin + r[e.opponent] - r[i];
        err += std::abs(acc / static_cast<double>(edges[i].size()));
    }
    table.final_mean_abs_error = err / static_cast<double>(n);

    if (config.anchor == Anchor::top_team_at_100) {
        std::vector<double> top(dataset.component_count, -std::numeric_limits<double>::infinity());
        for (std::size_t i = 0; i < n; ++i) top[comp[i]] = std::max(top[comp[i]], r[i]);
        for (std::size_t i = 0; i < n; ++i) r[i] += 100.0 - top[comp[i]];
    }
    for (std::size_t i = 0; i < n; ++i) {
        const auto& t = dataset.teams[i];
        table.ratings[t] = r[i] + config.display_offset;
        table.component[t] = comp[i];
        table.games_played[t] = static_cast<int>(edges[i].size());
    }
    return table;
}

double rating_difference(const PowerRatingTable& table, std::string_view a, std::string_view b) {
    const double ra = table.rating(a);
    const double rb = table.rating(b);
    const int ca = table.component.at(std::string(a));
    const int cb = table.component.at(std::string(b));
    if (ca != cb) {
        throw ValidationError("cannot compare '" + std::string(a) + "' (component " +
                              std::to_string(ca) + ") with '" + std::string(b) + "' (component " +
                              std::to_string(cb) + "): no schedule path connects them");
    }
    return ra - rb;
}

std::map<Team, double> rating_residuals(const SeasonDataset& dataset, const PowerRatingTable& table) {
    const auto edges = build_edges(dataset, table.config.goal_cap, table.hfa_used);
    std::map<Team, double> out;
    for (std::size_t i = 0; i < dataset.teams.size(); ++i) {
        const double own = table.rating(dataset.teams[i]);
        double acc = 0.0;
        for (const auto& e : edges[i]) acc += e.margin + table.rating(dataset.teams[e.opponent]) - own;
        out[dataset.teams[i]] = acc / static_cast<double>(edges[i].size());
    }
    return out;
}

}  // namespace powerwise
