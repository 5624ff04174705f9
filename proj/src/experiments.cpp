#include "powerwise/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include <boost/math/distributions/students_t.hpp>

#include "powerwise/error.hpp"
#include "powerwise/pipeline.hpp"

namespace powerwise {

RankingMethod parse_method(std::string_view text) {
    if (text == "rpi") return RankingMethod::rpi;
    if (text == "pr" || text == "power_rating") return RankingMethod::power_rating;
    if (text == "pwr" || text == "powerwise") return RankingMethod::powerwise;
    throw ValidationError("unknown ranking method '" + std::string(text) +
                          "' (expected rpi, pr or pwr)");
}

std::string to_string(RankingMethod m) {
    switch (m) {
        case RankingMethod::rpi: return "rpi";
        case RankingMethod::power_rating: return "pr";
        case RankingMethod::powerwise: return "pwr";
    }
    return "rpi";
}

RankingList rank_season(const SeasonDataset& dataset, RankingMethod method,
                        const MethodConfigs& configs) {
    switch (method) {
        case RankingMethod::rpi: return compute_rpi(dataset, configs.rpi).ranking();
        case RankingMethod::power_rating:
            return rank_by_value(dataset.season, solve_power_ratings(dataset, configs.solver).ratings);
        case RankingMethod::powerwise:
            return run_powerwise(dataset, configs.solver, configs.comparison, configs.tiebreak).ranking;
    }
    throw ValidationError("unknown ranking method");
}

SeasonDataset flip_game(const SeasonDataset& dataset, std::size_t game_index) {
    if (game_index >= dataset.games.size()) {
        throw ValidationError("game index " + std::to_string(game_index) + " out of range");
    }
    SeasonDataset out = dataset;
    auto& g = out.games[game_index];
    std::swap(g.home_score, g.away_score);
    return out;
}

SeasonDataset flip_game(const SeasonDataset& dataset, const GameRef& game) {
    return flip_game(dataset, find_game(dataset, game));
}

PerturbationReport perturbation_experiment(const SeasonDataset& dataset, const GameRef& game,
                                           RankingMethod method, const MethodConfigs& configs,
                                           int top_k) {
    if (top_k < 1) throw ValidationError("top-k must be >= 1");
    const auto idx = find_game(dataset, game);

    PerturbationReport report;
    report.flipped_game = dataset.games[idx];
    report.method = method;
    report.top_k = top_k;
    report.before = rank_season(dataset, method, configs);
    report.after = rank_season(flip_game(dataset, idx), method, configs);

    std::set<Team> watched;
    for (const auto* list : {&report.before, &report.after}) {
        for (const auto& e : list->entries) {
            if (e.rank <= top_k) watched.insert(e.team);
        }
    }
    for (const auto& e : report.before.entries) {
        if (!watched.count(e.team)) continue;
        const int now = report.after.rank_of(e.team);
        if (now != e.rank) report.rank_changes.push_back({e.team, e.rank, now});
    }
    report.n_changed = static_cast<int>(report.rank_changes.size());
    return report;
}

namespace {

// Sizes of runs of equal values in a sorted sequence, summarised the way the
// tie corrections need them.
struct TieSums {
    long long pairs = 0;  // sum t(t-1)/2
    double v0 = 0.0;      // sum t(t-1)(t-2)
    double v1 = 0.0;      // sum t(t-1)(2t+5)
};

template <typename Eq>
TieSums tie_sums(std::size_t n, Eq equal_to_prev) {
    TieSums s;
    std::size_t run = 1;
    auto flush = [&] {
        const double t = static_cast<double>(run);
        s.pairs += static_cast<long long>(run) * static_cast<long long>(run - 1) / 2;
        s.v0 += t * (t - 1) * (t - 2);
        s.v1 += t * (t - 1) * (2 * t + 5);
        run = 1;
    };
    for (std::size_t i = 1; i < n; ++i) {
        if (equal_to_prev(i)) {
            ++run;
        } else {
            flush();
        }
    }
    flush();
    return s;
}

long long merge_count(std::vector<double>& v, std::vector<double>& buf, std::size_t lo, std::size_t hi) {
    if (hi - lo < 2) return 0;
    const std::size_t mid = lo + (hi - lo) / 2;
    long long inv = merge_count(v, buf, lo, mid) + merge_count(v, buf, mid, hi);
    std::size_t i = lo, j = mid, k = lo;
    while (i < mid && j < hi) {
        if (v[j] < v[i]) {
            inv += static_cast<long long>(mid - i);
            buf[k++] = v[j++];
        } else {
            buf[k++] = v[i++];
        }
    }
    while (i < mid) buf[k++] = v[i++];
    while (j < hi) buf[k++] = v[j++];
    std::copy(buf.begin() + static_cast<std::ptrdiff_t>(lo), buf.begin() + static_cast<std::ptrdiff_t>(hi),
              v.begin() + static_cast<std::ptrdiff_t>(lo));
    return inv;
}

}  // namespace

TauResult kendall_tau_b(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw ValidationError("kendall tau: samples differ in length");
    const std::size_t n = x.size();
    if (n < 2) throw ValidationError("kendall tau: need at least two common teams");

    std::vector<std::pair<double, double>> p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = {x[i], y[i]};
    std::sort(p.begin(), p.end());

    const auto tx = tie_sums(n, [&](std::size_t i) { return p[i].first == p[i - 1].first; });
    const auto txy = tie_sums(n, [&](std::size_t i) { return p[i] == p[i - 1]; });

    std::vector<double> ys(n);
    for (std::size_t i = 0; i < n; ++i) ys[i] = p[i].second;
    std::vector<double> buf(n);
    const long long discordant = merge_count(ys, buf, 0, n);  // leaves ys sorted
    const auto ty = tie_sums(n, [&](std::size_t i) { return ys[i] == ys[i - 1]; });

    const long long n0 = static_cast<long long>(n) * static_cast<long long>(n - 1) / 2;
    TauResult r;
    r.n = n;
    r.tied_x = tx.pairs;
    r.tied_y = ty.pairs;
    r.tied_both = txy.pairs;
    r.discordant = discordant;
    r.concordant = n0 - tx.pairs - ty.pairs + txy.pairs - discordant;

    const double denom = std::sqrt(static_cast<double>(n0 - tx.pairs) * static_cast<double>(n0 - ty.pairs));
    if (denom == 0.0) throw ValidationError("kendall tau: a ranking is constant over the common teams");
    const double s = static_cast<double>(r.concordant - r.discordant);
    r.tau = std::clamp(s / denom, -1.0, 1.0);

    const double nd = static_cast<double>(n);
    const double m = nd * (nd - 1);
    double var = (m * (2 * nd + 5) - tx.v1 - ty.v1) / 18.0 +
                 2.0 * static_cast<double>(tx.pairs) * static_cast<double>(ty.pairs) / m;
    if (n > 2) var += tx.v0 * ty.v0 / (9.0 * m * (nd - 2));
    r.p_value = var > 0 ? std::erfc(std::abs(s) / std::sqrt(var) / std::sqrt(2.0)) : 1.0;
    return r;
}

TauResult kendall_tau(const RankingList& x, const RankingList& y,
                      std::optional<std::pair<int, int>> window) {
    std::map<Team, int> y_rank;
    for (const auto& e : y.entries) y_rank[e.team] = e.rank;
    std::vector<double> xs, ys;
    bool any_common = false;
    for (const auto& e : x.entries) {
        const auto it = y_rank.find(e.team);
        if (it == y_rank.end()) continue;
        any_common = true;
        if (window && (e.rank < window->first || e.rank > window->second)) continue;
        xs.push_back(e.rank);
        ys.push_back(it->second);
    }
    if (!any_common) throw ValidationError("kendall tau: rankings share no teams");
    return kendall_tau_b(xs, ys);
}

double LineFit::mean_se(double x) const {
    const double d = x - x_mean;
    return residual_se * std::sqrt(1.0 / static_cast<double>(n) + d * d / sxx);
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw ValidationError("regression: x and y differ in length");
    if (x.size() < 3) throw ValidationError("regression: need at least 3 points");
    LineFit f;
    f.n = x.size();
    const double nd = static_cast<double>(f.n);
    f.x_mean = std::accumulate(x.begin(), x.end(), 0.0) / nd;
    const double y_mean = std::accumulate(y.begin(), y.end(), 0.0) / nd;
    double sxy = 0.0;
    for (std::size_t i = 0; i < f.n; ++i) {
        f.sxx += (x[i] - f.x_mean) * (x[i] - f.x_mean);
        sxy += (x[i] - f.x_mean) * (y[i] - y_mean);
    }
    if (!(f.sxx > 0.0)) throw ComputationError("regression: all strengths are identical");
    f.slope = sxy / f.sxx;
    f.intercept = y_mean - f.slope * f.x_mean;
    double sse = 0.0;
    for (std::size_t i = 0; i < f.n; ++i) {
        const double r = y[i] - f.at(x[i]);
        sse += r * r;
    }
    f.residual_se = std::sqrt(sse / (nd - 2));
    const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
    f.x_min = *lo;
    f.x_max = *hi;
    return f;
}

std::map<Team, double> strengths_from(const PowerRatingTable& table) { return table.ratings; }
std::map<Team, double> strengths_from(const RpiTable& table) { return table.rpi; }

std::vector<RegressionSample> regression_samples(const SeasonDataset& dataset,
                                                 const std::map<Team, double>& strength,
                                                 const std::vector<Team>& group_a,
                                                 const std::vector<Team>& group_b,
                                                 std::optional<int> goal_cap) {
    if (goal_cap && *goal_cap < 0) throw ValidationError("goal cap must be >= 0");
    const std::set<Team> a(group_a.begin(), group_a.end());
    for (const auto& t : group_b) {
        if (a.count(t)) throw ValidationError("team '" + t + "' is in both groups");
    }
    std::vector<RegressionSample> out;
    int group = 0;
    for (const auto* members : {&group_a, &group_b}) {
        for (const auto& team : *members) {
            dataset.team_index(team);
            for (const auto& e : dataset.opponents_of.at(team)) {
                const auto& g = dataset.games[e.game];
                const auto it = strength.find(e.opponent);
                if (it == strength.end()) {
                    throw ValidationError("no strength value for '" + e.opponent + "'");
                }
                int margin = g.home_team == team ? g.home_score - g.away_score
                                                 : g.away_score - g.home_score;
                if (goal_cap) margin = std::clamp(margin, -*goal_cap, *goal_cap);
                out.push_back({group, team, e.opponent, g.date, it->second, static_cast<double>(margin)});
            }
        }
        ++group;
    }
    return out;
}

RegressionReport regress_samples(std::vector<RegressionSample> samples, std::size_t band_points) {
    std::vector<double> xa, ya, xb, yb;
    for (const auto& s : samples) {
        (s.group == 0 ? xa : xb).push_back(s.strength);
        (s.group == 0 ? ya : yb).push_back(s.margin);
    }
    if (xa.size() < 3 || xb.size() < 3) {
        throw ValidationError("regression: each group needs at least 3 samples (got " +
                              std::to_string(xa.size()) + " and " + std::to_string(xb.size()) + ")");
    }
    RegressionReport r;
    r.a = fit_line(xa, ya);
    r.b = fit_line(xb, yb);
    r.n_points = samples.size();
    r.samples = std::move(samples);

    r.common_low = std::max(r.a.x_min, r.b.x_min);
    r.common_high = std::min(r.a.x_max, r.b.x_max);
    if (r.common_low > r.common_high) {
        throw ComputationError("regression: the groups' opponent strengths do not overlap");
    }
    // The mean of the gap between two lines over an interval is the gap at its midpoint.
    const double mid = 0.5 * (r.common_low + r.common_high);
    r.group_offset = r.a.at(mid) - r.b.at(mid);
    const double va = std::pow(r.a.mean_se(mid), 2);
    const double vb = std::pow(r.b.mean_se(mid), 2);
    r.offset_se = std::sqrt(va + vb);
    const double dfa = static_cast<double>(r.a.n) - 2;
    const double dfb = static_cast<double>(r.b.n) - 2;
    if (r.offset_se > 0.0) {
        r.t_statistic = r.group_offset / r.offset_se;
        r.degrees_of_freedom = (va + vb) * (va + vb) / (va * va / dfa + vb * vb / dfb);
        const boost::math::students_t dist(r.degrees_of_freedom);
        r.p_value = 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(r.t_statistic)));
    } else {
        r.degrees_of_freedom = dfa + dfb;
        r.t_statistic = r.group_offset == 0.0 ? 0.0 : std::copysign(INFINITY, r.group_offset);
        r.p_value = r.group_offset == 0.0 ? 1.0 : 0.0;
    }

    const double ta = boost::math::quantile(boost::math::students_t(dfa), 0.975);
    const double tb = boost::math::quantile(boost::math::students_t(dfb), 0.975);
    const double lo = std::min(r.a.x_min, r.b.x_min);
    const double hi = std::max(r.a.x_max, r.b.x_max);
    band_points = std::max<std::size_t>(band_points, 2);
    for (std::size_t i = 0; i < band_points; ++i) {
        BandPoint p;
        p.x = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(band_points - 1);
        p.fit_a = r.a.at(p.x);
        p.fit_b = r.b.at(p.x);
        const double ha = ta * r.a.mean_se(p.x);
        const double hb = tb * r.b.mean_se(p.x);
        p.lower_a = p.fit_a - ha;
        p.upper_a = p.fit_a + ha;
        p.lower_b = p.fit_b - hb;
        p.upper_b = p.fit_b + hb;
        r.confidence_band.push_back(p);
    }
    return r;
}

RegressionReport strength_regression(const SeasonDataset& dataset,
                                     const std::map<Team, double>& strength,
                                     const std::vector<Team>& group_a,
                                     const std::vector<Team>& group_b, std::optional<int> goal_cap,
                                     std::size_t band_points) {
    return regress_samples(regression_samples(dataset, strength, group_a, group_b, goal_cap),
                           band_points);
}

}  // namespace powerwise
