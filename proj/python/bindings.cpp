#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "powerwise/cli.hpp"
#include "powerwise/error.hpp"
#include "powerwise/experiments.hpp"
#include "powerwise/ingest.hpp"
#include "powerwise/pipeline.hpp"
#include "powerwise/rpi.hpp"
#include "powerwise/selection.hpp"

namespace py = pybind11;
using namespace powerwise;

namespace {

py::list ranking_rows(const RankingList& list) {
    py::list rows;
    for (const auto& e : list.entries) {
        py::dict d;
        d["rank"] = e.rank;
        d["team"] = e.team;
        d["value"] = e.value;
        d["tie_group"] = e.tie_group;
        d["audit"] = e.audit;
        rows.append(d);
    }
    return rows;
}

py::dict game_dict(const GameRecord& g) {
    py::dict d;
    d["season"] = g.season;
    d["date"] = to_iso(g.date);
    d["home"] = g.home_team;
    d["away"] = g.away_team;
    d["home_score"] = g.home_score;
    d["away_score"] = g.away_score;
    d["neutral"] = g.neutral_site;
    d["game_index"] = g.game_index;
    return d;
}

SolverConfig solver_config(int goal_cap, std::optional<double> hfa, double tol, int max_iter) {
    SolverConfig c;
    c.goal_cap = goal_cap;
    c.hfa = hfa;
    c.convergence_tol = tol;
    c.max_iterations = max_iter;
    c.validate();
    return c;
}

ComparisonConfig comparison_config(const std::string& co_mode, bool skip_singular) {
    ComparisonConfig c;
    c.common_opponent_mode = parse_co_mode(co_mode);
    c.skip_singular_common_opponent = skip_singular;
    return c;
}

SeasonDataset load_season(const std::string& path, std::optional<int> season,
                          std::optional<std::string> aliases) {
    auto games = parse_games_file(path);
    if (aliases) apply_aliases(games, parse_aliases_file(*aliases));
    if (!season) {
        const auto seasons = seasons_in(games);
        if (seasons.size() != 1) throw ValidationError("file holds " + std::to_string(seasons.size()) +
                                                       " seasons; pass season=");
        season = seasons.front();
    }
    std::erase_if(games, [&](const GameRecord& g) { return g.season != *season; });
    return build_season(std::move(games), *season);
}

}  // namespace

PYBIND11_MODULE(_powerwise, m) {
    m.doc() = "Team ratings, pairwise comparison rankings and selection experiments.";

    py::register_exception<ComputationError>(m, "ComputationError", PyExc_RuntimeError);
    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);

    py::class_<SeasonDataset>(m, "Season")
        .def_readonly("season", &SeasonDataset::season)
        .def_readonly("teams", &SeasonDataset::teams)
        .def_readonly("warnings", &SeasonDataset::warnings)
        .def_readonly("component_count", &SeasonDataset::component_count)
        .def_property_readonly("games", [](const SeasonDataset& s) {
            py::list out;
            for (const auto& g : s.games) out.append(game_dict(g));
            return out;
        })
        .def("__len__", [](const SeasonDataset& s) { return s.games.size(); })
        .def("__repr__", [](const SeasonDataset& s) {
            return "<Season " + std::to_string(s.season) + ": " + std::to_string(s.teams.size()) + " teams, " +
                   std::to_string(s.games.size()) + " games>";
        });

    m.def("load_season", &load_season, py::arg("path"), py::arg("season") = py::none(),
          py::arg("aliases") = py::none(), "Reads a game log and builds one season.");

    m.def(
        "parse_games",
        [](const std::string& text, const std::string& format) {
            std::istringstream in(text);
            py::list out;
            for (const auto& g : parse_games(in, parse_format(format))) out.append(game_dict(g));
            return out;
        },
        py::arg("text"), py::arg("format") = "csv");

    m.def(
        "solve",
        [](const SeasonDataset& s, int goal_cap, std::optional<double> hfa, double tol, int max_iter) {
            const auto t = solve_power_ratings(s, solver_config(goal_cap, hfa, tol, max_iter));
            py::dict d;
            d["ratings"] = t.ratings;
            d["component"] = t.component;
            d["hfa_used"] = t.hfa_used;
            d["iterations"] = t.iterations;
            d["converged"] = t.converged;
            d["final_max_change"] = t.final_max_change;
            return d;
        },
        py::arg("season"), py::arg("goal_cap") = 7, py::arg("hfa") = py::none(), py::arg("tol") = 1e-9,
        py::arg("max_iter") = 10000);

    m.def(
        "rpi",
        [](const SeasonDataset& s, std::tuple<double, double, double> weights) {
            RpiConfig c;
            std::tie(c.w_wp, c.w_owp, c.w_oowp) = weights;
            c.validate();
            const auto t = compute_rpi(s, c);
            py::dict d;
            d["rpi"] = t.rpi;
            d["wp"] = t.wp;
            d["owp"] = t.owp;
            d["oowp"] = t.oowp;
            return d;
        },
        py::arg("season"), py::arg("weights") = std::make_tuple(0.25, 0.5, 0.25));

    m.def(
        "compare",
        [](const SeasonDataset& s, const std::string& a, const std::string& b, const std::string& co_mode,
           bool skip_singular) {
            const auto o = compare(s, solve_power_ratings(s), a, b, comparison_config(co_mode, skip_singular));
            py::dict d;
            d["team_a"] = o.team_a;
            d["team_b"] = o.team_b;
            d["winner"] = o.winner;
            d["deciding_step"] = to_string(o.deciding_step);
            d["evidence"] = o.evidence();
            return d;
        },
        py::arg("season"), py::arg("a"), py::arg("b"), py::arg("co_mode") = "percentage",
        py::arg("skip_singular") = true);

    m.def(
        "powerwise",
        [](const SeasonDataset& s, const std::string& co_mode, bool skip_singular) {
            const auto r = run_powerwise(s, {}, comparison_config(co_mode, skip_singular));
            py::dict d;
            d["ranking"] = ranking_rows(r.ranking);
            d["points"] = r.table.points;
            const auto rep = decisiveness_report(r.table);
            py::dict dec;
            dec["pairs"] = rep.pairs;
            dec["head_to_head_pct"] = rep.head_to_head_pct;
            dec["common_opponents_pct"] = rep.common_opponents_pct;
            dec["power_rating_pct"] = rep.power_rating_pct;
            dec["unresolved_pct"] = rep.unresolved_pct;
            d["decisiveness"] = dec;
            return d;
        },
        py::arg("season"), py::arg("co_mode") = "percentage", py::arg("skip_singular") = true,
        "Power ratings, the pairwise tournament and tie-breaking.");

    m.def(
        "rank",
        [](const SeasonDataset& s, const std::string& method) { return ranking_rows(rank_season(s, parse_method(method))); },
        py::arg("season"), py::arg("method") = "pwr");

    m.def(
        "select",
        [](const SeasonDataset& s, const std::vector<std::string>& aq, int bids, const std::string& method,
           std::optional<std::vector<std::string>> official) {
            const auto sel = select_at_large(rank_season(s, parse_method(method)), {aq.begin(), aq.end()}, bids);
            py::dict d;
            d["at_large"] = sel.at_large;
            d["bubble_window"] = sel.bubble_window;
            if (official) {
                const auto diff = diff_selections(sel, *official);
                d["only_mine"] = diff.only_mine;
                d["only_official"] = diff.only_official;
            }
            return d;
        },
        py::arg("season"), py::arg("aq"), py::arg("bids"), py::arg("method") = "pwr",
        py::arg("official") = py::none());

    m.def(
        "perturb",
        [](const SeasonDataset& s, const std::string& game, const std::string& method, int top_k) {
            const auto r = perturbation_experiment(s, parse_game_ref(game), parse_method(method), {}, top_k);
            py::list changes;
            for (const auto& c : r.rank_changes) changes.append(py::make_tuple(c.team, c.old_rank, c.new_rank));
            py::dict d;
            d["flipped_game"] = game_dict(r.flipped_game);
            d["n_changed"] = r.n_changed;
            d["rank_changes"] = changes;
            return d;
        },
        py::arg("season"), py::arg("game"), py::arg("method") = "rpi", py::arg("top_k") = 15,
        "Flips one game (\"YYYY-MM-DD,TeamA,TeamB\") and counts top-k rank changes.");

    m.def(
        "kendall_tau",
        [](const std::vector<double>& x, const std::vector<double>& y) {
            const auto t = kendall_tau_b(x, y);
            py::dict d;
            d["tau"] = t.tau;
            d["p_value"] = t.p_value;
            d["n"] = t.n;
            d["concordant"] = t.concordant;
            d["discordant"] = t.discordant;
            return d;
        },
        py::arg("x"), py::arg("y"));

    m.def(
        "regression",
        [](const SeasonDataset& s, const std::vector<std::string>& group_a, const std::vector<std::string>& group_b,
           std::optional<int> goal_cap) {
            const auto r = strength_regression(s, strengths_from(solve_power_ratings(s)), group_a, group_b, goal_cap);
            py::dict d;
            d["group_offset"] = r.group_offset;
            d["offset_se"] = r.offset_se;
            d["t_statistic"] = r.t_statistic;
            d["degrees_of_freedom"] = r.degrees_of_freedom;
            d["p_value"] = r.p_value;
            d["n_points"] = r.n_points;
            d["slope_a"] = r.a.slope;
            d["slope_b"] = r.b.slope;
            return d;
        },
        py::arg("season"), py::arg("group_a"), py::arg("group_b"), py::arg("goal_cap") = py::none());

    m.def(
        "run_cli",
        [](std::vector<std::string> args) {
            args.insert(args.begin(), "powerwise");
            std::ostringstream out, err;
            const int code = run_cli(args, out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Runs the command line; returns (exit_code, stdout, stderr).");
}
