#include "powerwise/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "powerwise/error.hpp"
#include "powerwise/experiments.hpp"
#include "powerwise/ingest.hpp"
#include "powerwise/pipeline.hpp"
#include "powerwise/report.hpp"
#include "powerwise/rpi.hpp"
#include "powerwise/selection.hpp"
#include "text_util.hpp"

namespace powerwise {

namespace {

struct RunConfig {
    std::string games;
    std::string aliases;
    std::optional<int> season;
    std::string season_start = "01-01";
    std::string season_end = "05-31";
    std::string out_dir = "out";
    bool timestamp = false;
    int verbosity = 0;

    int goal_cap = 7;
    std::string hfa = "estimate";
    double tol = 1e-9;
    int max_iter = 10000;
    std::string anchor = "mean-zero";
    double display_offset = 0.0;
    bool strict = false;

    std::string rpi_weights = "0.25,0.50,0.25";
    bool rpi_include_self_games = false;

    bool skip_singular_co = true;
    std::string co_mode = "percentage";

    // subcommand-specific
    std::string team;
    std::string swap_team;
    std::string swap_schedule;
    std::string swap_opponents;
    std::string aq;
    std::string official;
    int bids = 0;
    std::string flip;
    std::string method = "rpi";
    int top_k = 15;
    std::string x = "pwr";
    std::string y = "rpi";
    std::string x_file;
    std::string y_file;
    std::string window;
    std::string group_a;
    std::string group_b;
    std::string strength = "pr";
    std::string format = "text";
};

SeasonWindow parse_window(const RunConfig& rc) {
    auto md = [](const std::string& s, const char* flag) {
        const auto f = detail::split_fields(s, '-');
        const auto m = f.size() == 2 ? detail::parse_int(f[0]) : std::nullopt;
        const auto d = f.size() == 2 ? detail::parse_int(f[1]) : std::nullopt;
        if (!m || !d || *m < 1 || *m > 12 || *d < 1 || *d > 31) {
            throw ValidationError(std::string(flag) + " must be MM-DD, got '" + s + "'");
        }
        return std::make_pair(static_cast<int>(*m), static_cast<int>(*d));
    };
    const auto [fm, fd] = md(rc.season_start, "--season-start");
    const auto [lm, ld] = md(rc.season_end, "--season-end");
    return {fm, fd, lm, ld};
}

MethodConfigs method_configs(const RunConfig& rc) {
    MethodConfigs c;
    c.solver.goal_cap = rc.goal_cap;
    if (rc.hfa != "estimate") {
        const auto v = detail::parse_double(rc.hfa);
        if (!v) throw ValidationError("--hfa must be a number or 'estimate', got '" + rc.hfa + "'");
        c.solver.hfa = *v;
    }
    c.solver.convergence_tol = rc.tol;
    c.solver.max_iterations = rc.max_iter;
    c.solver.anchor = parse_anchor(rc.anchor);
    c.solver.display_offset = rc.display_offset;
    c.solver.validate();
    c.rpi.exclude_games_vs_self_in_owp = !rc.rpi_include_self_games;
    c.rpi = parse_rpi_weights(rc.rpi_weights, c.rpi);
    c.comparison.skip_singular_common_opponent = rc.skip_singular_co;
    c.comparison.common_opponent_mode = parse_co_mode(rc.co_mode);
    return c;
}

class Session {
  public:
    Session(const RunConfig& rc, std::ostream& out, std::ostream& err)
        : rc_(rc), out_(out), err_(err), configs_(method_configs(rc)) {}

    const SeasonDataset& dataset() {
        if (dataset_) return *dataset_;
        auto games = parse_games_file(rc_.games);
        if (!rc_.aliases.empty()) apply_aliases(games, parse_aliases_file(rc_.aliases));
        const auto seasons = seasons_in(games);
        int season = 0;
        if (rc_.season) {
            season = *rc_.season;
            std::erase_if(games, [&](const GameRecord& g) { return g.season != season; });
        } else if (seasons.size() > 1) {
            throw ValidationError(rc_.games + " holds several seasons; choose one with --season");
        } else if (!seasons.empty()) {
            season = seasons.front();
        }
        dataset_ = build_season(std::move(games), season, parse_window(rc_));
        for (const auto& w : dataset_->warnings) err_ << "warning: " << w << '\n';
        if (rc_.verbosity > 0) {
            err_ << "season " << dataset_->season << ": " << dataset_->teams.size() << " teams, "
                 << dataset_->games.size() << " games\n";
        }
        return *dataset_;
    }

    PowerRatingTable solve() {
        auto table = solve_power_ratings(dataset(), configs_.solver);
        for (const auto& w : table.warnings) err_ << "warning: " << w << '\n';
        if (!table.converged && rc_.strict) {
            throw ComputationError("power ratings did not converge within " +
                                   std::to_string(configs_.solver.max_iterations) + " iterations");
        }
        if (rc_.verbosity > 0) {
            err_ << "power ratings: " << table.iterations << " sweeps, hfa "
                 << detail::fixed(table.hfa_used, 4) << '\n';
        }
        return table;
    }

    PowerwiseResult powerwise() {
        PowerwiseResult r;
        r.ratings = solve();
        r.table = run_tournament(dataset(), r.ratings, configs_.comparison);
        r.ranking = break_ties(r.table, dataset(), r.ratings, configs_.comparison, configs_.tiebreak);
        return r;
    }

    RankingList ranking(RankingMethod m) {
        switch (m) {
            case RankingMethod::rpi: return compute_rpi(dataset(), configs_.rpi).ranking();
            case RankingMethod::power_rating: return rank_by_value(dataset().season, solve().ratings);
            case RankingMethod::powerwise: return powerwise().ranking;
        }
        throw ValidationError("unknown method");
    }

    ReportWriter writer(const std::string& title) {
        return ReportWriter(rc_.out_dir, title + " " + std::to_string(dataset().season));
    }

    void finish(ReportWriter& w) {
        w.finish(rc_.timestamp);
        if (rc_.verbosity > 0) {
            for (const auto& f : w.emitted_files()) err_ << "wrote " << f.string() << '\n';
        }
    }

    const RunConfig& rc_;
    std::ostream& out_;
    std::ostream& err_;
    MethodConfigs configs_;

  private:
    std::optional<SeasonDataset> dataset_;
};

void write_ratings(ReportWriter& w, const PowerRatingTable& t) {
    w.emit("Power ratings", "ratings/ratings.csv", ratings_csv(t));
    w.emit("Solver summary", "ratings/solver.json", solver_summary_json(t));
}

void write_pairwise(ReportWriter& w, const PowerwiseTable& t) {
    w.emit("Pairwise outcomes", "pairwise/pairwise.csv", pairwise_csv(t));
    w.emit("Powerwise points", "pairwise/points.csv", points_csv(t));
    w.emit("Decisiveness", "pairwise/decisiveness.txt", decisiveness_text(t));
}

int cmd_rank(Session& s) {
    const auto r = s.powerwise();
    auto w = s.writer("Powerwise ranking");
    write_ratings(w, r.ratings);
    write_pairwise(w, r.table);
    const std::string title = "Powerwise ranking " + std::to_string(r.ranking.season);
    w.emit("Ranking (csv)", "ratings/ranking.csv", render_ranking(r.ranking, DocFormat::csv));
    w.emit("Ranking (text)", "ratings/ranking.txt", render_ranking(r.ranking, DocFormat::text, title));
    w.emit("Ranking (svg)", "ratings/ranking.svg", render_ranking(r.ranking, DocFormat::svg, title));
    s.finish(w);
    s.out_ << render_ranking(r.ranking, parse_doc_format(s.rc_.format), title);
    return kExitOk;
}

int cmd_rpi(Session& s) {
    const auto& ds = s.dataset();
    auto w = s.writer("RPI");
    const auto table = compute_rpi(ds, s.configs_.rpi);
    w.emit("RPI", "ratings/rpi.csv", rpi_csv(table));

    const bool swapping = !s.rc_.swap_team.empty();
    if (swapping) {
        std::vector<GameRecord> replacement;
        if (!s.rc_.swap_schedule.empty()) {
            replacement = parse_games_file(s.rc_.swap_schedule);
        } else if (!s.rc_.swap_opponents.empty()) {
            replacement = losing_schedule(ds, s.rc_.swap_team, parse_team_list_file(s.rc_.swap_opponents));
        } else {
            throw ValidationError("--swap-team needs --swap-schedule or --swap-opponents");
        }
        const auto r = schedule_swap_experiment(ds, s.rc_.swap_team, replacement, s.configs_.rpi,
                                                parse_window(s.rc_));
        w.emit("RPI after schedule swap", "experiments/schedule_swap_rpi.csv", rpi_csv(r.after));
        const auto& t = s.rc_.swap_team;
        std::ostringstream summary;
        summary << "{\n  \"team\": \"" << t << "\",\n  \"rpi_before\": " << detail::shortest(r.before.rpi.at(t))
                << ",\n  \"rpi_after\": " << detail::shortest(r.after.rpi.at(t))
                << ",\n  \"rank_before\": " << r.rank_before << ",\n  \"rank_after\": " << r.rank_after
                << ",\n  \"rank_change\": " << r.rank_change << "\n}\n";
        w.emit("Schedule swap summary", "experiments/schedule_swap.json", summary.str());
        s.out_ << t << ": RPI " << detail::fixed(r.before.rpi.at(t), 4) << " (rank " << r.rank_before
               << ") -> " << detail::fixed(r.after.rpi.at(t), 4) << " (rank " << r.rank_after << ")\n";
    }
    s.finish(w);
    if (!swapping) s.out_ << rpi_csv(table);
    return kExitOk;
}

int cmd_pairwise(Session& s) {
    const auto ratings = s.solve();
    const auto table = run_tournament(s.dataset(), ratings, s.configs_.comparison);
    auto w = s.writer("Pairwise comparisons");
    write_ratings(w, ratings);
    write_pairwise(w, table);
    s.finish(w);
    s.out_ << decisiveness_text(table);
    if (!s.rc_.team.empty()) s.out_ << '\n' << team_decomposition_text(table, s.rc_.team);
    return kExitOk;
}

int cmd_select(Session& s) {
    const auto r = s.powerwise();
    const auto aq_list = s.rc_.aq.empty() ? std::vector<Team>{} : parse_team_list_file(s.rc_.aq);
    const auto sel = select_at_large(r.ranking, {aq_list.begin(), aq_list.end()}, s.rc_.bids);
    std::optional<std::vector<Team>> official;
    std::optional<SelectionDiff> diff;
    if (!s.rc_.official.empty()) {
        official = parse_team_list_file(s.rc_.official);
        diff = diff_selections(sel, *official);
    }
    auto w = s.writer("At-large selection");
    w.emit("Ranking", "ratings/ranking.csv", render_ranking(r.ranking, DocFormat::csv));
    const auto text = selection_text(sel, official ? &*official : nullptr, diff ? &*diff : nullptr);
    w.emit("Selection (text)", "experiments/selection.txt", text);
    w.emit("Selection (csv)", "experiments/selection.csv", selection_csv(sel, official ? &*official : nullptr));
    s.finish(w);
    s.out_ << text;
    return kExitOk;
}

int cmd_perturb(Session& s) {
    const auto method = parse_method(s.rc_.method);
    const auto report = perturbation_experiment(s.dataset(), parse_game_ref(s.rc_.flip), method,
                                                s.configs_, s.rc_.top_k);
    auto w = s.writer("Perturbation experiment");
    const std::string stem = "experiments/perturb_" + to_string(method);
    w.emit("Rank changes", stem + ".csv", perturbation_csv(report));
    w.emit("Summary", stem + ".json", perturbation_json(report));
    w.emit("Side by side", stem + ".txt", perturbation_text(report));
    w.emit("Plot", stem + ".svg", perturbation_svg(report));
    s.finish(w);
    s.out_ << perturbation_text(report);
    return kExitOk;
}

RankingList ranking_from_file(const std::string& path, int season) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open '" + path + "'");
    std::string first;
    while (std::getline(in, first) && detail::is_skippable(first)) {}
    in.clear();
    in.seekg(0);
    if (detail::trim(first).rfind("rank,team", 0) == 0) return parse_ranking_csv(in, season);
    const auto teams = parse_team_list(in);
    std::map<Team, double> values;
    for (std::size_t i = 0; i < teams.size(); ++i) {
        if (!values.emplace(teams[i], -static_cast<double>(i)).second) {
            throw ValidationError(path + ": team '" + teams[i] + "' listed twice");
        }
    }
    return rank_by_value(season, values);
}

std::optional<std::pair<int, int>> parse_rank_window(const std::string& text) {
    if (text.empty()) return std::nullopt;
    const auto f = detail::split_fields(text, '-');
    const auto lo = f.size() == 2 ? detail::parse_int(f[0]) : std::nullopt;
    const auto hi = f.size() == 2 ? detail::parse_int(f[1]) : std::nullopt;
    if (!lo || !hi || *lo < 1 || *hi < *lo) {
        throw ValidationError("--window must be FIRST-LAST ranks, got '" + text + "'");
    }
    return std::make_pair(static_cast<int>(*lo), static_cast<int>(*hi));
}

int cmd_tau(Session& s) {
    const int season = s.dataset().season;
    const auto x = s.rc_.x_file.empty() ? s.ranking(parse_method(s.rc_.x)) : ranking_from_file(s.rc_.x_file, season);
    const auto y = s.rc_.y_file.empty() ? s.ranking(parse_method(s.rc_.y)) : ranking_from_file(s.rc_.y_file, season);
    const auto window = parse_rank_window(s.rc_.window);
    const auto full = kendall_tau(x, y);
    std::optional<TauResult> win;
    if (window) win = kendall_tau(x, y, window);
    const std::string xl = s.rc_.x_file.empty() ? s.rc_.x : s.rc_.x_file;
    const std::string yl = s.rc_.y_file.empty() ? s.rc_.y : s.rc_.y_file;

    auto w = s.writer("Kendall tau");
    w.emit("Paired ranks", "experiments/tau_points.csv", tau_points_csv(x, y));
    const auto json = tau_json(full, win ? &*win : nullptr, window);
    w.emit("Summary", "experiments/tau.json", json);
    w.emit("Plot", "experiments/tau.svg", tau_svg(x, y, xl, yl));
    s.finish(w);
    s.out_ << json;
    return kExitOk;
}

int cmd_regress(Session& s, std::optional<int> regression_cap) {
    const auto& ds = s.dataset();
    std::map<Team, double> strength;
    if (s.rc_.strength == "pr") {
        strength = strengths_from(s.solve());
    } else if (s.rc_.strength == "rpi") {
        strength = strengths_from(compute_rpi(ds, s.configs_.rpi));
    } else {
        throw ValidationError("--strength must be pr or rpi");
    }
    const auto report = strength_regression(ds, strength, parse_team_list_file(s.rc_.group_a),
                                            parse_team_list_file(s.rc_.group_b), regression_cap);
    auto w = s.writer("Score vs opponent strength");
    w.emit("Samples", "experiments/regression_samples.csv", regression_samples_csv(report));
    w.emit("Confidence band", "experiments/regression_band.csv", regression_band_csv(report));
    const auto json = regression_json(report);
    w.emit("Summary", "experiments/regression.json", json);
    w.emit("Plot", "experiments/regression.svg",
           regression_svg(report, s.rc_.strength == "pr" ? "opponent power rating" : "opponent RPI"));
    s.finish(w);
    s.out_ << json;
    return kExitOk;
}

void add_common(CLI::App* sub, RunConfig& rc) {
    sub->add_option("--games", rc.games, "Game CSV (season,date,home,away,home_score,away_score,neutral[,game_index])")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--aliases", rc.aliases, "Alias map CSV (alias,canonical)")->check(CLI::ExistingFile);
    sub->add_option("--season", rc.season, "Season to use when the file holds several");
    sub->add_option("--season-start", rc.season_start, "First day of the season window (MM-DD)");
    sub->add_option("--season-end", rc.season_end, "Last day of the season window (MM-DD)");
    sub->add_option("--out", rc.out_dir, "Output directory")->envname("POWERWISE_OUT");
    sub->add_flag("--timestamp", rc.timestamp, "Add a generation timestamp to report.txt");
    sub->add_flag("-v,--verbose", rc.verbosity, "Progress diagnostics on stderr");

    sub->add_option("--goal-cap", rc.goal_cap, "Cap on a game's goal margin")->check(CLI::NonNegativeNumber);
    sub->add_option("--hfa", rc.hfa, "Home-field advantage in goals, or 'estimate'");
    sub->add_option("--tol", rc.tol, "Convergence tolerance (max rating change per sweep)");
    sub->add_option("--max-iter", rc.max_iter, "Maximum solver sweeps")->check(CLI::PositiveNumber);
    sub->add_option("--anchor", rc.anchor, "Rating anchor")->check(CLI::IsMember({"mean-zero", "top-team-at-100"}));
    sub->add_option("--display-offset", rc.display_offset, "Constant added to every displayed rating");
    sub->add_flag("--strict", rc.strict, "Fail (exit 2) when the solver does not converge");

    sub->add_option("--rpi-weights", rc.rpi_weights, "RPI weights for WP,OWP,OOWP");
    sub->add_flag("--rpi-include-self-games", rc.rpi_include_self_games,
                  "Keep games against the rated team in opponents' win percentage");

    sub->add_flag("--skip-singular-co,!--no-skip-singular-co", rc.skip_singular_co,
                  "Ignore common-opponent records built on a single opponent (default on)");
    sub->add_option("--co-mode", rc.co_mode, "Common-opponent comparison")
        ->check(CLI::IsMember({"percentage", "numeric"}));
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig rc;
    CLI::App app{"Powerwise team ratings, pairwise rankings and selection experiments", "powerwise"};
    app.option_defaults()->always_capture_default();
    app.require_subcommand(1);

    auto* rank = app.add_subcommand("rank", "Power ratings, pairwise tournament and tie-broken ranking");
    add_common(rank, rc);
    rank->add_option("--format", rc.format, "Ranking printed to stdout")->check(CLI::IsMember({"text", "csv", "svg"}));

    auto* rpi = app.add_subcommand("rpi", "Ratings Percentage Index, optionally with a schedule swap");
    add_common(rpi, rc);
    rpi->add_option("--swap-team", rc.swap_team, "Team whose schedule is replaced");
    rpi->add_option("--swap-schedule", rc.swap_schedule, "Replacement games (game CSV)")->check(CLI::ExistingFile);
    rpi->add_option("--swap-opponents", rc.swap_opponents, "Replacement opponents, one per line; the team loses each")
        ->check(CLI::ExistingFile);

    auto* pairwise = app.add_subcommand("pairwise", "Pairwise comparison table and decisiveness");
    add_common(pairwise, rc);
    pairwise->add_option("--team", rc.team, "Print the deciding-step breakdown for one team");

    auto* select = app.add_subcommand("select", "At-large picks from the Powerwise ranking");
    add_common(select, rc);
    select->add_option("--bids", rc.bids, "Number of at-large bids")->required()->check(CLI::NonNegativeNumber);
    select->add_option("--aq", rc.aq, "Automatic qualifiers, one per line")->check(CLI::ExistingFile);
    select->add_option("--official", rc.official, "Official at-large picks, one per line")->check(CLI::ExistingFile);

    auto* perturb = app.add_subcommand("perturb", "Flip one game and report rank changes");
    add_common(perturb, rc);
    perturb->add_option("--flip", rc.flip, "Game to flip: YYYY-MM-DD,TeamA,TeamB[,game_index]")->required();
    perturb->add_option("--method", rc.method, "Ranking method")->check(CLI::IsMember({"rpi", "pr", "pwr"}));
    perturb->add_option("--top-k", rc.top_k, "Ranks watched for changes")->check(CLI::PositiveNumber);

    auto* tau = app.add_subcommand("tau", "Kendall tau-b between two rankings");
    add_common(tau, rc);
    tau->add_option("--x", rc.x, "First ranking method")->check(CLI::IsMember({"rpi", "pr", "pwr"}));
    tau->add_option("--y", rc.y, "Second ranking method")->check(CLI::IsMember({"rpi", "pr", "pwr"}));
    tau->add_option("--x-file", rc.x_file, "First ranking from a file (ordered team list or ranking CSV)")
        ->check(CLI::ExistingFile);
    tau->add_option("--y-file", rc.y_file, "Second ranking from a file")->check(CLI::ExistingFile);
    tau->add_option("--window", rc.window, "Also report tau for teams the first ranking places in FIRST-LAST");

    auto* regress = app.add_subcommand("regress", "Game margin vs opponent strength for two groups");
    add_common(regress, rc);
    regress->add_option("--group-a", rc.group_a, "First group, one team per line")->required()->check(CLI::ExistingFile);
    regress->add_option("--group-b", rc.group_b, "Second group, one team per line")->required()->check(CLI::ExistingFile);
    regress->add_option("--strength", rc.strength, "Opponent strength measure")->check(CLI::IsMember({"pr", "rpi"}));

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        if (const auto* sub = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front()) {
            err << sub->help();
        } else {
            err << app.help();
        }
        return kExitValidation;
    }

    try {
        Session session(rc, out, err);
        if (*rank) return cmd_rank(session);
        if (*rpi) return cmd_rpi(session);
        if (*pairwise) return cmd_pairwise(session);
        if (*select) return cmd_select(session);
        if (*perturb) return cmd_perturb(session);
        if (*tau) return cmd_tau(session);
        if (*regress) {
            std::optional<int> cap;
            if (regress->count("--goal-cap") > 0) cap = rc.goal_cap;
            return cmd_regress(session, cap);
        }
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const ComputationError& e) {
        err << "error: " << e.what() << '\n';
        return kExitComputation;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitComputation;
    }
    return kExitValidation;
}

}  // namespace powerwise
