#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "powerwise/error.hpp"
#include "powerwise/pipeline.hpp"
#include "powerwise/report.hpp"
#include "support/oracles.hpp"

using namespace powerwise;
namespace fs = std::filesystem;

namespace {

PowerwiseResult sample_result(std::uint64_t seed = 90) {
    std::mt19937_64 rng(seed);
    league::Options o;
    o.teams = 12;
    o.pair_probability = 0.3;
    return run_powerwise(build_season(league::generate(rng, o), 2024));
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

TEST(RenderRanking, SingleRowText) {
    const auto list = rank_by_value(2024, {{"Yale", 3}});
    const auto text = render_ranking(list, DocFormat::text);
    EXPECT_NE(text.find("Yale"), std::string::npos);
    EXPECT_EQ(text.find('*'), text.rfind('*'));  // only the legend, no marked rows
}

TEST(RenderRanking, TieGroupMarked) {
    const auto list = rank_by_value(2024, {{"A", 3}, {"B", 2}, {"C", 2}});
    const auto text = render_ranking(list, DocFormat::text);
    std::istringstream lines(text);
    std::string line;
    int marked = 0;
    while (std::getline(lines, line)) {
        if ((line.find(" B ") != std::string::npos || line.find(" C ") != std::string::npos) &&
            line.find('*') != std::string::npos) {
            ++marked;
        }
    }
    EXPECT_EQ(marked, 2);
    const auto svg = render_ranking(list, DocFormat::svg);
    EXPECT_NE(svg.find("font-weight=\"bold\""), std::string::npos);
}

TEST(RenderRanking, CsvRoundTrip) {
    const auto r = sample_result();
    const auto csv = render_ranking(r.ranking, DocFormat::csv);
    EXPECT_EQ(csv.rfind("rank,team,points,tie_group,audit\n", 0), 0u);
    std::istringstream in(csv);
    const auto back = parse_ranking_csv(in, 2024);
    EXPECT_EQ(back.entries, r.ranking.entries);
}

TEST(RenderRanking, DeterministicBytes) {
    const auto a = sample_result(91);
    const auto b = sample_result(91);
    for (auto f : {DocFormat::text, DocFormat::csv, DocFormat::svg}) {
        EXPECT_EQ(render_ranking(a.ranking, f), render_ranking(b.ranking, f));
    }
    EXPECT_EQ(pairwise_csv(a.table), pairwise_csv(b.table));
    EXPECT_EQ(ratings_csv(a.ratings), ratings_csv(b.ratings));
}

TEST(RenderRanking, FormatErrors) {
    EXPECT_EQ(parse_doc_format("svg"), DocFormat::svg);
    EXPECT_THROW(parse_doc_format("pdf"), ValidationError);
    EXPECT_THROW(render_ranking(RankingList{}, DocFormat::text), ValidationError);
}

TEST(Exports, Headers) {
    const auto r = sample_result();
    EXPECT_EQ(ratings_csv(r.ratings).rfind("team,rating,component,games_played\n", 0), 0u);
    EXPECT_EQ(pairwise_csv(r.table).rfind("team_a,team_b,winner,deciding_step,evidence\n", 0), 0u);
    EXPECT_EQ(points_csv(r.table).rfind("team,points,h2h_wins,co_wins,pr_wins\n", 0), 0u);
    const auto ds = build_season(std::vector<GameRecord>{league::game("A", "B", 2, 1)}, 2024);
    EXPECT_EQ(rpi_csv(compute_rpi(ds)).rfind("team,rpi,wp,owp,oowp,rank\n", 0), 0u);
    const auto json = solver_summary_json(r.ratings);
    EXPECT_NE(json.find("\"iterations\""), std::string::npos);
    EXPECT_NE(json.find("\"hfa_used\""), std::string::npos);
    EXPECT_NE(json.find("\"converged\""), std::string::npos);
}

TEST(ReportWriter, WritesIndexLast) {
    const fs::path root = fs::temp_directory_path() / "powerwise_report_test";
    fs::remove_all(root);
    ReportWriter w(root, "Test");
    w.emit("Ratings", "ratings/a.csv", "x\n");
    w.emit("Plot", "experiments/b.svg", "<svg/>\n");
    EXPECT_FALSE(fs::exists(root / "report.txt"));
    w.finish();
    const auto index = slurp(root / "report.txt");
    EXPECT_NE(index.find("ratings/a.csv"), std::string::npos);
    EXPECT_NE(index.find("experiments/b.svg"), std::string::npos);
    EXPECT_EQ(index.find("generated"), std::string::npos);
    EXPECT_EQ(slurp(root / "ratings/a.csv"), "x\n");
    EXPECT_EQ(w.emitted_files().size(), 2u);
    fs::remove_all(root);
}
