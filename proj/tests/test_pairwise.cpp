#include <gtest/gtest.h>

#include <random>

#include "powerwise/error.hpp"
#include "powerwise/pairwise.hpp"
#include "powerwise/power_rating.hpp"
#include "support/oracles.hpp"

using namespace powerwise;

namespace {

SeasonDataset season_of(const std::vector<GameRecord>& games) { return build_season(games, 2024); }

// Yale beats Brown; Yale and Delaware share two opponents (Yale 2-0, Delaware
// 1-1); Yale and Richmond share no opponent and never met.
std::vector<GameRecord> yale_fixture(bool delaware_sweeps = false) {
    league::Builder b;
    b.add("Yale", "Brown", 12, 8)
        .add("Yale", "Army", 10, 6)
        .add("Navy", "Yale", 7, 9)
        .add("Delaware", "Army", 11, 10)
        .add("Navy", "Delaware", delaware_sweeps ? 5 : 8, delaware_sweeps ? 6 : 7)
        .add("Brown", "Vermont", 9, 5)
        .add("Vermont", "Richmond", 11, 8);
    return b.games();
}

// Yale loses twice to Princeton in close games; Canisius loses once, badly.
std::vector<GameRecord> canisius_fixture() {
    league::Builder b;
    b.add("Princeton", "Yale", 10, 9, true).add("Yale", "Princeton", 11, 12, true).add("Princeton", "Canisius", 14, 6, true);
    return b.games();
}

}  // namespace

TEST(HeadToHead, YaleOverBrown) {
    const auto ds = season_of(yale_fixture());
    const auto h = head_to_head(ds, "Yale", "Brown");
    EXPECT_EQ(h.verdict, Verdict::a_wins);
    EXPECT_EQ(h.a.str(), "1-0");
    EXPECT_EQ(head_to_head(ds, "Brown", "Yale").verdict, Verdict::b_wins);
}

TEST(HeadToHead, NoMeetingsOrSplit) {
    EXPECT_EQ(head_to_head(season_of(yale_fixture()), "Yale", "Richmond").verdict, Verdict::inconclusive);
    league::Builder b;
    b.add("A", "B", 3, 2).add("B", "A", 3, 2);
    EXPECT_EQ(head_to_head(season_of(b.games()), "A", "B").verdict, Verdict::inconclusive);
}

TEST(HeadToHead, TieGameIsHalfWin) {
    league::Builder b;
    b.add("A", "B", 3, 3).add("A", "B", 4, 2);
    const auto h = head_to_head(season_of(b.games()), "A", "B");
    EXPECT_EQ(h.verdict, Verdict::a_wins);
    EXPECT_EQ(h.a.str(), "1.5-0.5");
}

TEST(CommonOpponents, YaleOverDelaware) {
    const auto co = common_opponents(season_of(yale_fixture()), "Yale", "Delaware");
    EXPECT_EQ(co.verdict, Verdict::a_wins);
    EXPECT_EQ(co.common, (std::vector<Team>{"Army", "Navy"}));
    EXPECT_EQ(co.a.str(), "2-0");
    EXPECT_EQ(co.b.str(), "1-1");
}

TEST(CommonOpponents, EqualPercentagesTie) {
    const auto co = common_opponents(season_of(yale_fixture(true)), "Yale", "Delaware");
    EXPECT_EQ(co.verdict, Verdict::inconclusive);
    EXPECT_EQ(co.b.str(), "2-0");
}

TEST(CommonOpponents, ExcludesEachOther) {
    league::Builder b;
    b.add("A", "B", 3, 2).add("A", "C", 3, 2).add("B", "C", 3, 2).add("A", "D", 3, 2).add("D", "B", 3, 2);
    const auto co = common_opponents(season_of(b.games()), "A", "B");
    EXPECT_EQ(co.common, (std::vector<Team>{"C", "D"}));
    EXPECT_EQ(co.verdict, Verdict::a_wins);
}

TEST(CommonOpponents, PercentageVersusNumeric) {
    const auto ds = season_of(canisius_fixture());
    ComparisonConfig pct;
    EXPECT_EQ(common_opponents(ds, "Yale", "Canisius", pct).verdict, Verdict::inconclusive);
    EXPECT_TRUE(common_opponents(ds, "Yale", "Canisius", pct).skipped_singular);
    pct.skip_singular_common_opponent = false;
    EXPECT_EQ(common_opponents(ds, "Yale", "Canisius", pct).verdict, Verdict::inconclusive);

    ComparisonConfig num;
    num.common_opponent_mode = CommonOpponentMode::numeric;
    num.skip_singular_common_opponent = false;
    EXPECT_EQ(common_opponents(ds, "Yale", "Canisius", num).verdict, Verdict::b_wins);
}

TEST(CommonOpponents, PercentageComparesRatiosNotCounts) {
    // A 4-1 (0.800, +3) against B 2-0 (1.000, +2).
    league::Builder b;
    b.add("A", "X", 3, 1).add("A", "X", 3, 1).add("A", "Y", 3, 1).add("A", "Y", 3, 1).add("Y", "A", 3, 1);
    b.add("B", "X", 3, 1).add("Y", "B", 1, 3);
    const auto ds = season_of(b.games());
    EXPECT_EQ(common_opponents(ds, "A", "B").verdict, Verdict::b_wins);
    ComparisonConfig num;
    num.common_opponent_mode = CommonOpponentMode::numeric;
    EXPECT_EQ(common_opponents(ds, "A", "B", num).verdict, Verdict::a_wins);
}

TEST(Compare, YaleCases) {
    const auto ds = season_of(yale_fixture());
    const auto pr = solve_power_ratings(ds);
    EXPECT_EQ(compare(ds, pr, "Yale", "Brown").deciding_step, DecidingStep::head_to_head);
    EXPECT_EQ(compare(ds, pr, "Yale", "Delaware").deciding_step, DecidingStep::common_opponents);
    const auto r = compare(ds, pr, "Yale", "Richmond");
    EXPECT_EQ(r.deciding_step, DecidingStep::power_rating);
    EXPECT_EQ(r.winner, "Yale");
    EXPECT_EQ(r.team_a, "Richmond");
    ASSERT_TRUE(r.rating_difference);
    EXPECT_LT(*r.rating_difference, 0.0);
}

TEST(Compare, CanisiusPercentageFallsToRatings) {
    const auto ds = season_of(canisius_fixture());
    const auto pr = solve_power_ratings(ds);
    const auto pct = compare(ds, pr, "Yale", "Canisius");
    EXPECT_EQ(pct.deciding_step, DecidingStep::power_rating);
    EXPECT_EQ(pct.winner, "Yale");
    ComparisonConfig num;
    num.common_opponent_mode = CommonOpponentMode::numeric;
    num.skip_singular_common_opponent = false;
    const auto n = compare(ds, pr, "Yale", "Canisius", num);
    EXPECT_EQ(n.deciding_step, DecidingStep::common_opponents);
    EXPECT_EQ(n.winner, "Canisius");
}

TEST(Compare, ClonedTeamsUnresolved) {
    league::Builder b;
    b.add("A", "X", 5, 3, true).add("B", "X", 5, 3, true);
    const auto ds = season_of(b.games());
    const auto r = compare(ds, solve_power_ratings(ds), "A", "B");
    EXPECT_EQ(r.deciding_step, DecidingStep::unresolved);
    EXPECT_FALSE(r.winner);
}

TEST(Compare, CrossComponentUnresolved) {
    league::Builder b;
    b.add("A", "B", 5, 3).add("C", "D", 5, 3);
    const auto ds = season_of(b.games());
    const auto r = compare(ds, solve_power_ratings(ds), "A", "C");
    EXPECT_EQ(r.deciding_step, DecidingStep::unresolved);
    EXPECT_FALSE(r.rating_difference);
}

TEST(Compare, OrderInvariantAndErrors) {
    std::mt19937_64 rng(40);
    league::Options o;
    o.teams = 9;
    o.pair_probability = 0.4;
    const auto ds = season_of(league::generate(rng, o));
    const auto pr = solve_power_ratings(ds);
    for (const auto& a : ds.teams) {
        for (const auto& b : ds.teams) {
            if (a == b) continue;
            const auto x = compare(ds, pr, a, b);
            const auto y = compare(ds, pr, b, a);
            EXPECT_EQ(x.winner, y.winner);
            EXPECT_EQ(x.deciding_step, y.deciding_step);
        }
    }
    EXPECT_THROW(compare(ds, pr, "T00", "T00"), ValidationError);
    EXPECT_THROW(compare(ds, pr, "T00", "Nobody"), ValidationError);
    PowerRatingTable partial = pr;
    partial.ratings.erase("T01");
    EXPECT_THROW(compare(ds, partial, "T00", "T01"), Error);
}

TEST(Tournament, ThreeTeamsPointsByRatings) {
    league::Builder b;
    b.add("A", "B", 6, 5, true).add("B", "C", 6, 5, true);
    const auto ds = season_of(b.games());
    const auto table = run_tournament(ds, solve_power_ratings(ds));
    EXPECT_EQ(table.points.at("A"), 2);
    EXPECT_EQ(table.points.at("B"), 1);
    EXPECT_EQ(table.points.at("C"), 0);
    EXPECT_EQ(table.outcome("C", "A").deciding_step, DecidingStep::power_rating);
}

TEST(Tournament, CycleWithFourthTeam) {
    league::Builder b;
    b.add("A", "B", 6, 5, true).add("B", "C", 6, 5, true).add("C", "A", 6, 5, true);
    b.add("A", "D", 9, 1, true);
    const auto ds = season_of(b.games());
    const auto table = run_tournament(ds, solve_power_ratings(ds));
    EXPECT_EQ(table.points.at("A") + table.points.at("B") + table.points.at("C") + table.points.at("D"), 6);
    EXPECT_EQ(table.outcome("A", "B").deciding_step, DecidingStep::head_to_head);
}

TEST(Tournament, HandshakeAndBounds) {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 30; ++trial) {
        league::Options o;
        o.teams = 3 + trial % 10;
        o.pair_probability = 0.5;
        o.allow_ties = false;
        const auto ds = season_of(league::generate(rng, o));
        const auto table = run_tournament(ds, solve_power_ratings(ds));
        const int n = static_cast<int>(ds.teams.size());
        int sum = 0;
        for (const auto& [t, p] : table.points) {
            EXPECT_GE(p, 0);
            EXPECT_LE(p, n - 1);
            sum += p;
        }
        EXPECT_EQ(static_cast<std::size_t>(n * (n - 1) / 2), table.outcomes.size());
        EXPECT_EQ(sum + table.unresolved(), n * (n - 1) / 2);
        for (const auto& oc : table.outcomes) {
            if (oc.deciding_step == DecidingStep::head_to_head) {
                EXPECT_NE(oc.h2h.a.half_wins, oc.h2h.b.half_wins);
            }
        }
    }
}

TEST(Tournament, RatingShiftChangesNothing) {
    std::mt19937_64 rng(42);
    league::Options o;
    o.teams = 10;
    o.pair_probability = 0.3;
    const auto ds = season_of(league::generate(rng, o));
    const auto pr = solve_power_ratings(ds);
    auto shifted = pr;
    for (auto& [t, r] : shifted.ratings) r += 100.0;
    const auto a = run_tournament(ds, pr);
    const auto b = run_tournament(ds, shifted);
    EXPECT_EQ(a.points, b.points);
    for (std::size_t i = 0; i < a.outcomes.size(); ++i) {
        EXPECT_EQ(a.outcomes[i].winner, b.outcomes[i].winner);
        EXPECT_EQ(a.outcomes[i].deciding_step, b.outcomes[i].deciding_step);
    }
}

TEST(Decisiveness, AllByRatings) {
    league::Builder b;
    b.add("A", "B", 3, 1, true).add("C", "D", 3, 1, true).add("B", "C", 4, 1, true);
    // A-C, A-D, B-D share no opponents or meetings.
    const auto ds = season_of(b.games());
    const auto table = run_tournament(ds, solve_power_ratings(ds));
    const auto rep = decisiveness_report(table);
    EXPECT_EQ(rep.pairs, 6u);
    EXPECT_NEAR(rep.head_to_head_pct + rep.common_opponents_pct + rep.power_rating_pct + rep.unresolved_pct, 100.0,
                1e-12);
    EXPECT_NEAR(rep.head_to_head_pct, 50.0, 1e-12);
    EXPECT_NEAR(rep.power_rating_pct, 50.0, 1e-12);
}

TEST(Decisiveness, ThreeCycleByHand) {
    league::Builder b;
    b.add("A", "B", 6, 5, true).add("B", "C", 6, 5, true).add("C", "A", 6, 5, true);
    const auto ds = season_of(b.games());
    const auto table = run_tournament(ds, solve_power_ratings(ds));
    const auto rep = decisiveness_report(table);
    EXPECT_EQ(rep.head_to_head_pct, 100.0);
    for (const auto& [t, p] : table.points) EXPECT_EQ(p, 1);
}

TEST(Decisiveness, EmptyTableRejected) {
    EXPECT_THROW(decisiveness_report(PowerwiseTable{}), Error);
}

TEST(Modes, Parse) {
    EXPECT_EQ(parse_co_mode("numeric"), CommonOpponentMode::numeric);
    EXPECT_THROW(parse_co_mode("ratio"), ValidationError);
    EXPECT_EQ(parse_deciding_step(to_string(DecidingStep::common_opponents)), DecidingStep::common_opponents);
}
