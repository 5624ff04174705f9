#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "powerwise/error.hpp"
#include "powerwise/experiments.hpp"
#include "support/oracles.hpp"

using namespace powerwise;

namespace {

SeasonDataset season_of(const std::vector<GameRecord>& games) { return build_season(games, 2024); }

SeasonDataset random_season(std::uint64_t seed, int teams, double p = 0.5) {
    std::mt19937_64 rng(seed);
    league::Options o;
    o.teams = teams;
    o.pair_probability = p;
    o.allow_ties = false;
    return season_of(league::generate(rng, o));
}

RankingList list_of(const std::vector<double>& values) {
    std::map<Team, double> m;
    for (std::size_t i = 0; i < values.size(); ++i) m[league::name(static_cast<int>(i))] = values[i];
    return rank_by_value(2024, m);
}

}  // namespace

TEST(FlipGame, SwapsScoresAndIsInvolution) {
    league::Builder b;
    b.add("Delaware", "Lafayette", 12, 11).add("Lafayette", "Army", 3, 9);
    const auto ds = season_of(b.games());
    const auto flipped = flip_game(ds, parse_game_ref("2024-01-01,Lafayette,Delaware"));
    const auto idx = find_game(flipped, parse_game_ref("2024-01-01,Delaware,Lafayette"));
    EXPECT_EQ(flipped.games[idx].home_score, 11);
    EXPECT_EQ(flipped.games[idx].away_score, 12);
    int differing = 0;
    for (std::size_t i = 0; i < ds.games.size(); ++i) differing += !(ds.games[i] == flipped.games[i]);
    EXPECT_EQ(differing, 1);
    EXPECT_EQ(flip_game(flipped, idx), ds);
    EXPECT_EQ(ds.games[0].home_score, 12);
    EXPECT_THROW(flip_game(ds, parse_game_ref("2024-03-01,Delaware,Army")), ValidationError);
}

TEST(Perturbation, DisconnectedFlipLeavesRatingsTopUnchanged) {
    auto games = random_season(60, 40, 0.3).games;
    league::Builder iso;
    iso.add("Iso1", "Iso2", 5, 4, true);
    games.insert(games.end(), iso.games().begin(), iso.games().end());
    const auto ds = season_of(games);
    const auto r = perturbation_experiment(ds, parse_game_ref("2024-01-01,Iso1,Iso2"), RankingMethod::power_rating);
    EXPECT_EQ(r.n_changed, 0);
    EXPECT_TRUE(r.rank_changes.empty());
}

TEST(Perturbation, MatchesFullRerank) {
    for (auto method : {RankingMethod::rpi, RankingMethod::power_rating, RankingMethod::powerwise}) {
        const auto ds = random_season(61, 10, 0.7);
        const auto before = rank_season(ds, method);
        const auto order = before.teams_in_order();
        std::size_t gi = ds.games.size();
        for (std::size_t i = 0; i < ds.games.size(); ++i) {
            if (ds.games[i].involves(order[8]) && ds.games[i].involves(order[9])) gi = i;
        }
        if (gi == ds.games.size()) gi = 0;
        const auto& g = ds.games[gi];
        const GameRef ref{g.date, g.home_team, g.away_team, g.game_index};
        const auto r = perturbation_experiment(ds, ref, method, {}, 15);
        const auto after = rank_season(flip_game(ds, gi), method);
        int expected = 0;
        for (const auto& t : ds.teams) {
            if (before.rank_of(t) != after.rank_of(t) && (before.rank_of(t) <= 15 || after.rank_of(t) <= 15)) {
                ++expected;
            }
        }
        EXPECT_EQ(r.n_changed, expected);
        EXPECT_EQ(r.n_changed, static_cast<int>(r.rank_changes.size()));
        for (const auto& c : r.rank_changes) {
            EXPECT_NE(c.old_rank, c.new_rank);
            EXPECT_EQ(c.old_rank, before.rank_of(c.team));
            EXPECT_EQ(c.new_rank, after.rank_of(c.team));
        }
    }
}

TEST(KendallTau, IdenticalAndReversed) {
    std::vector<double> x{1, 2, 3, 4, 5, 6};
    std::vector<double> y(x.rbegin(), x.rend());
    EXPECT_EQ(kendall_tau_b(x, x).tau, 1.0);
    EXPECT_EQ(kendall_tau_b(x, y).tau, -1.0);
    const auto l = list_of({5, 4, 3, 2, 1});
    EXPECT_EQ(kendall_tau(l, l).tau, 1.0);
    EXPECT_EQ(kendall_tau(l, list_of({1, 2, 3, 4, 5})).tau, -1.0);
}

TEST(KendallTau, MatchesBruteForceWithTies) {
    std::mt19937_64 rng(70);
    for (int trial = 0; trial < 50; ++trial) {
        std::uniform_int_distribution<int> n_dist(2, 60);
        const int n = n_dist(rng);
        std::uniform_int_distribution<int> v(0, std::max(1, n / 3));
        std::vector<double> x(n), y(n);
        for (int i = 0; i < n; ++i) {
            x[i] = v(rng);
            y[i] = v(rng);
        }
        if (std::all_of(x.begin(), x.end(), [&](double a) { return a == x[0]; })) x[0] += 1;
        if (std::all_of(y.begin(), y.end(), [&](double a) { return a == y[0]; })) y[0] += 1;
        const auto fast = kendall_tau_b(x, y);
        const auto slow = oracle::brute_tau(x, y);
        EXPECT_EQ(fast.concordant, slow.concordant);
        EXPECT_EQ(fast.discordant, slow.discordant);
        EXPECT_EQ(fast.tied_x, slow.tied_x);
        EXPECT_EQ(fast.tied_y, slow.tied_y);
        EXPECT_NEAR(fast.tau, slow.tau, 1e-12);
        EXPECT_GE(fast.p_value, 0.0);
        EXPECT_LE(fast.p_value, 1.0);
    }
}

TEST(KendallTau, PValueMatchesReference) {
    // Reference values from the standard tie-corrected normal approximation
    // (as in scipy.stats.kendalltau(method="asymptotic")).
    const std::vector<double> x{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    const std::vector<double> y{2, 1, 4, 3, 6, 5, 8, 7, 10, 9};
    const auto r = kendall_tau_b(x, y);
    EXPECT_NEAR(r.tau, 0.7777777777777778, 1e-12);
    EXPECT_NEAR(r.p_value, 0.001745118699528905, 1e-9);

    const auto t = kendall_tau_b(std::vector<double>{1, 1, 2, 3, 4, 4, 5}, std::vector<double>{2, 1, 1, 3, 5, 4, 4});
    EXPECT_NEAR(t.tau, 0.6842105263157894, 1e-12);
    EXPECT_NEAR(t.p_value, 0.041136383569940586, 1e-9);
}

TEST(KendallTau, SymmetricAndRelabelInvariant) {
    const auto a = list_of({9, 8, 8, 6, 5, 4, 3});
    const auto b = list_of({7, 9, 8, 8, 2, 4, 1});
    EXPECT_DOUBLE_EQ(kendall_tau(a, b).tau, kendall_tau(b, a).tau);
}

TEST(KendallTau, WindowUsesFirstRanking) {
    const auto a = list_of({10, 9, 8, 7, 6, 5, 4, 3});
    const auto b = list_of({10, 9, 7, 8, 5, 6, 4, 3});
    const auto w = kendall_tau(a, b, std::pair{3, 6});
    EXPECT_EQ(w.n, 4u);
    std::vector<double> xs{3, 4, 5, 6}, ys{4, 3, 6, 5};
    EXPECT_DOUBLE_EQ(w.tau, oracle::brute_tau(xs, ys).tau);
}

TEST(KendallTau, Errors) {
    std::vector<double> a{1, 2}, b{1, 2, 3};
    EXPECT_THROW(kendall_tau_b(a, b), ValidationError);
    EXPECT_THROW(kendall_tau(rank_by_value(2024, {{"A", 1}, {"B", 2}}), rank_by_value(2024, {{"C", 1}, {"D", 2}})),
                 ValidationError);
}

TEST(Regression, FitMatchesClosedForm) {
    std::mt19937_64 rng(80);
    std::normal_distribution<double> noise(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> x, y;
        for (int i = 0; i < 30; ++i) {
            x.push_back(i * 0.37 - 4 + noise(rng));
            y.push_back(1.5 - 0.8 * x.back() + noise(rng));
        }
        const auto fit = fit_line(x, y);
        const auto ref = oracle::ols(x, y);
        EXPECT_NEAR(fit.slope, ref.slope, 1e-9);
        EXPECT_NEAR(fit.intercept, ref.intercept, 1e-9);
    }
    std::vector<double> two{1, 2}, flat{1, 1, 1};
    EXPECT_THROW(fit_line(two, two), ValidationError);
    EXPECT_THROW(fit_line(flat, std::vector<double>{1, 2, 3}), ComputationError);
}

namespace {

std::vector<RegressionSample> synthetic_samples(double shift, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, 1.5);
    std::uniform_real_distribution<double> strength(-5.0, 5.0);
    std::vector<RegressionSample> out;
    for (int g = 0; g < 2; ++g) {
        for (int i = 0; i < 80; ++i) {
            RegressionSample s;
            s.group = g;
            s.team = g ? "B" : "A";
            s.opponent = "O";
            s.strength = strength(rng);
            s.margin = 3.0 - 0.6 * s.strength + (g == 0 ? shift : 0.0) + noise(rng);
            out.push_back(s);
        }
    }
    return out;
}

}  // namespace

TEST(Regression, ShiftedGroupOffset) {
    const auto samples = synthetic_samples(2.0, 81);
    const auto r = regress_samples(samples);
    EXPECT_NEAR(r.group_offset, 2.0, 0.5);
    EXPECT_LT(r.p_value, 1e-6);
    EXPECT_EQ(r.n_points, samples.size());

    std::vector<double> xa, ya;
    for (const auto& s : samples) {
        if (s.group == 0) {
            xa.push_back(s.strength);
            ya.push_back(s.margin);
        }
    }
    const auto ref = oracle::ols(xa, ya);
    EXPECT_NEAR(r.a.slope, ref.slope, 1e-9);
    EXPECT_NEAR(r.a.intercept, ref.intercept, 1e-9);
    for (const auto& p : r.confidence_band) {
        EXPECT_LE(p.lower_a, p.fit_a);
        EXPECT_LE(p.fit_a, p.upper_a);
        EXPECT_LE(p.lower_b, p.fit_b);
        EXPECT_LE(p.fit_b, p.upper_b);
    }
}

TEST(Regression, IdenticalGroupsNoOffset) {
    const auto samples = synthetic_samples(0.0, 82);
    std::vector<RegressionSample> cloned;
    for (const auto& s : samples) {
        if (s.group != 0) continue;
        cloned.push_back(s);
        auto c = s;
        c.group = 1;
        cloned.push_back(c);
    }
    const auto r = regress_samples(cloned);
    EXPECT_NEAR(r.group_offset, 0.0, 1e-12);
    EXPECT_NEAR(r.p_value, 1.0, 1e-9);
}

TEST(Regression, SwappingGroupsFlipsSign) {
    auto samples = synthetic_samples(1.0, 83);
    const auto r = regress_samples(samples);
    for (auto& s : samples) s.group = 1 - s.group;
    const auto swapped = regress_samples(samples);
    EXPECT_NEAR(r.group_offset, -swapped.group_offset, 1e-12);
    EXPECT_NEAR(r.p_value, swapped.p_value, 1e-12);
}

TEST(Regression, FromSeason) {
    const auto ds = random_season(84, 12, 1.0);
    std::map<Team, double> strength;
    for (std::size_t i = 0; i < ds.teams.size(); ++i) strength[ds.teams[i]] = -static_cast<double>(i);
    const std::vector<Team> a{"T00", "T01"}, b{"T10", "T11"};
    const auto r = strength_regression(ds, strength, a, b);
    EXPECT_EQ(r.n_points, ds.games_played("T00") + ds.games_played("T01") + ds.games_played("T10") +
                              ds.games_played("T11"));
    EXPECT_GT(r.group_offset, 0.0);
    const auto capped = regression_samples(ds, strength, a, b, 3);
    for (const auto& s : capped) EXPECT_LE(std::abs(s.margin), 3.0);
    EXPECT_THROW(strength_regression(ds, strength, a, a), ValidationError);
    EXPECT_THROW(strength_regression(ds, strength, {"T00"}, {"Nobody"}), ValidationError);
}

TEST(Methods, Parse) {
    EXPECT_EQ(parse_method("pwr"), RankingMethod::powerwise);
    EXPECT_EQ(parse_method("pr"), RankingMethod::power_rating);
    EXPECT_EQ(parse_method("power_rating"), RankingMethod::power_rating);
    EXPECT_THROW(parse_method("elo"), ValidationError);
}
