#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "powerwise/error.hpp"
#include "powerwise/ingest.hpp"
#include "support/oracles.hpp"

using namespace powerwise;

namespace {

std::vector<GameRecord> parse(const std::string& text, GameFormat fmt = GameFormat::csv) {
    std::istringstream in(text);
    return parse_games(in, fmt);
}

const std::string kHeader = "season,date,home,away,home_score,away_score,neutral\n";

}  // namespace

TEST(ParseGames, MapsFields) {
    const auto games = parse(kHeader + "2024,2024-02-10,Yale,Brown,12,8,0\n");
    ASSERT_EQ(games.size(), 1u);
    const auto& g = games[0];
    EXPECT_EQ(g.season, 2024);
    EXPECT_EQ(g.date, (Date{2024, 2, 10}));
    EXPECT_EQ(g.home_team, "Yale");
    EXPECT_EQ(g.away_team, "Brown");
    EXPECT_EQ(g.home_score, 12);
    EXPECT_EQ(g.away_score, 8);
    EXPECT_FALSE(g.neutral_site);
    EXPECT_FALSE(g.game_index.has_value());
    EXPECT_EQ(g.row, 2u);
}

TEST(ParseGames, HeaderOnlyIsEmpty) {
    EXPECT_TRUE(parse(kHeader).empty());
}

TEST(ParseGames, NegativeScoreNamesRowAndField) {
    try {
        parse(kHeader + "2024,2024-02-10,Yale,Brown,12,8,0\n2024,2024-02-11,Yale,Brown,-3,8,0\n");
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.row(), 3u);
        EXPECT_EQ(e.field(), "home_score");
        EXPECT_NE(std::string(e.what()).find("row 3"), std::string::npos);
    }
}

TEST(ParseGames, RejectsMalformedFields) {
    EXPECT_THROW(parse(kHeader + "2024,2024-02-30,Yale,Brown,1,0,0\n"), ParseError);
    EXPECT_THROW(parse(kHeader + "2024,2024-02-10,Yale,Brown,x,0,0\n"), ParseError);
    EXPECT_THROW(parse(kHeader + "2024,2024-02-10,Yale,Brown,1,0,2\n"), ParseError);
    EXPECT_THROW(parse(kHeader + "2024,2024-02-10,Yale,Yale,1,0,0\n"), ParseError);
    EXPECT_THROW(parse(kHeader + "2024,2024-02-10,Yale,Brown,1,0\n"), ParseError);
    EXPECT_THROW(parse("season,date\n"), ValidationError);
}

TEST(ParseGames, CommentsQuotesAndGameIndex) {
    const auto games = parse(
        "# exported 2024\n"
        "season,date,home,away,home_score,away_score,neutral,game_index\n"
        "\n"
        "2024,2024-03-01,\"Mount St. Mary's\", Army ,5,4,1,2\n");
    ASSERT_EQ(games.size(), 1u);
    EXPECT_EQ(games[0].home_team, "Mount St. Mary's");
    EXPECT_EQ(games[0].away_team, "Army");
    EXPECT_TRUE(games[0].neutral_site);
    EXPECT_EQ(games[0].game_index, 2);
}

TEST(ParseGames, TsvFormat) {
    const auto games = parse("season\tdate\thome\taway\thome_score\taway_score\tneutral\n"
                             "2024\t2024-02-10\tYale\tBrown\t12\t8\t0\n",
                             GameFormat::tsv);
    ASSERT_EQ(games.size(), 1u);
    EXPECT_EQ(games[0].home_team, "Yale");
}

TEST(ParseGames, UnknownFormatTag) {
    EXPECT_EQ(parse_format("csv"), GameFormat::csv);
    EXPECT_EQ(parse_format("tsv"), GameFormat::tsv);
    EXPECT_THROW(parse_format("xlsx"), ValidationError);
}

TEST(ParseGames, RoundTripRandom) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        league::Options o;
        o.teams = 4 + trial % 6;
        o.max_games_per_pair = 2;
        auto games = league::generate(rng, o);
        if (trial % 2) {
            for (auto& g : games) g.game_index.reset();
            games.erase(std::unique(games.begin(), games.end()), games.end());
        }
        for (auto fmt : {GameFormat::csv, GameFormat::tsv}) {
            std::ostringstream out;
            serialize_games(out, games, fmt);
            std::istringstream in(out.str());
            EXPECT_EQ(parse_games(in, fmt), games);
        }
    }
}

TEST(ParseGames, RoundTripQuotedNames) {
    std::vector<GameRecord> games{league::game("St. John's, NY", "Quote \"Q\" U", 3, 2)};
    std::ostringstream out;
    serialize_games(out, games);
    std::istringstream in(out.str());
    EXPECT_EQ(parse_games(in), games);
}

TEST(BuildSeason, IndexesTeamsAndOpponents) {
    const auto ds = build_season({league::game("A", "B", 3, 1), league::game("B", "C", 2, 2, false, {2024, 3, 1})}, 2024);
    EXPECT_EQ(ds.teams, (std::vector<Team>{"A", "B", "C"}));
    EXPECT_EQ(ds.opponents_of.at("B").size(), 2u);
    for (const auto& [team, entries] : ds.opponents_of) {
        for (const auto& e : entries) {
            const auto& back = ds.opponents_of.at(e.opponent);
            EXPECT_TRUE(std::any_of(back.begin(), back.end(),
                                    [&](const OpponentEntry& b) { return b.opponent == team && b.game == e.game; }));
        }
    }
    EXPECT_EQ(ds.component_count, 1);
    ASSERT_EQ(ds.warnings.size(), 1u);
    EXPECT_NE(ds.warnings[0].find("tied"), std::string::npos);
}

TEST(BuildSeason, DuplicateRowsCollapse) {
    const auto g = league::game("A", "B", 3, 1);
    const auto ds = build_season({g, g}, 2024);
    EXPECT_EQ(ds.games.size(), 1u);
    ASSERT_EQ(ds.warnings.size(), 1u);
    EXPECT_NE(ds.warnings[0].find("duplicate"), std::string::npos);
}

TEST(BuildSeason, GameIndexKeepsRepeatedGames) {
    auto g1 = league::game("A", "B", 3, 1);
    auto g2 = g1;
    g1.game_index = 1;
    g2.game_index = 2;
    const auto ds = build_season({g1, g2}, 2024);
    EXPECT_EQ(ds.games.size(), 2u);
    EXPECT_TRUE(ds.warnings.empty());
}

TEST(BuildSeason, Errors) {
    EXPECT_THROW(build_season({}, 2024), ValidationError);
    try {
        build_season({}, 2024);
    } catch (const ValidationError& e) {
        EXPECT_NE(std::string(e.what()).find("empty season"), std::string::npos);
    }
    EXPECT_THROW(build_season({league::game("A", "B", 1, 0, false, {2023, 2, 1}, 2023)}, 2024), ValidationError);
    EXPECT_THROW(build_season({league::game("A", "B", 1, 0, false, {2024, 8, 1})}, 2024), ValidationError);
    EXPECT_THROW(build_season({league::game("A", "A", 1, 0)}, 2024), ValidationError);
}

TEST(BuildSeason, CustomWindow) {
    const auto g = league::game("A", "B", 1, 0, false, {2024, 8, 1});
    EXPECT_NO_THROW(build_season({g}, 2024, SeasonWindow{8, 1, 12, 31}));
}

TEST(BuildSeason, OrderIndependent) {
    std::mt19937_64 rng(5);
    league::Options o;
    o.teams = 9;
    o.pair_probability = 0.5;
    auto games = league::generate(rng, o);
    const auto ref = build_season(games, 2024);
    for (int i = 0; i < 10; ++i) {
        std::shuffle(games.begin(), games.end(), rng);
        EXPECT_EQ(build_season(games, 2024), ref);
    }
}

TEST(BuildSeason, DisconnectedComponents) {
    const auto ds = build_season({league::game("A", "B", 1, 0), league::game("C", "D", 1, 0)}, 2024);
    EXPECT_EQ(ds.component_count, 2);
    EXPECT_EQ(ds.component.at("A"), ds.component.at("B"));
    EXPECT_NE(ds.component.at("A"), ds.component.at("C"));
}

TEST(Aliases, AppliedBeforeIndexing) {
    std::istringstream in("alias,canonical\nUNC,North Carolina\n# note\nJHU,Johns Hopkins\n");
    const auto aliases = parse_aliases(in);
    std::vector<GameRecord> games{league::game("UNC", "JHU", 9, 10)};
    apply_aliases(games, aliases);
    EXPECT_EQ(games[0].home_team, "North Carolina");
    EXPECT_EQ(games[0].away_team, "Johns Hopkins");
}

TEST(TeamList, SkipsCommentsAndBlanks) {
    std::istringstream in("# AQs\nYale\n\n  Duke  \n");
    EXPECT_EQ(parse_team_list(in), (std::vector<Team>{"Yale", "Duke"}));
}

TEST(GameRef, FindsEitherOrder) {
    const auto ds = build_season({league::game("Delaware", "Lafayette", 12, 11, false, {2024, 2, 17})}, 2024);
    EXPECT_EQ(find_game(ds, parse_game_ref("2024-02-17,Lafayette,Delaware")), 0u);
    EXPECT_EQ(find_game(ds, parse_game_ref("2024-02-17,Delaware,Lafayette")), 0u);
    EXPECT_THROW(find_game(ds, parse_game_ref("2024-02-18,Delaware,Lafayette")), ValidationError);
    EXPECT_THROW(parse_game_ref("2024-02-17,Delaware"), ValidationError);
}
