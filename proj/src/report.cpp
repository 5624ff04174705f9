#include "powerwise/report.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>
#include <istream>
#include <sstream>

#include <json.hpp>

#include "powerwise/error.hpp"
#include "powerwise/svg.hpp"
#include "text_util.hpp"

namespace powerwise {

namespace {

using nlohmann::json;

constexpr std::string_view kAuditSep = " | ";

std::string pad_right(std::string s, std::size_t w) {
    if (s.size() < w) s.append(w - s.size(), ' ');
    return s;
}

std::string pad_left(std::string s, std::size_t w) {
    if (s.size() < w) s.insert(0, w - s.size(), ' ');
    return s;
}

std::string csv(std::string_view field) { return detail::quote_field(field, ','); }

std::size_t name_width(const std::vector<Team>& teams, std::size_t floor = 4) {
    std::size_t w = floor;
    for (const auto& t : teams) w = std::max(w, t.size());
    return w;
}

std::vector<std::string> split_audit(const std::string& field) {
    std::vector<std::string> out;
    if (field.empty()) return out;
    std::size_t start = 0;
    while (true) {
        const auto pos = field.find(kAuditSep, start);
        out.push_back(field.substr(start, pos - start));
        if (pos == std::string::npos) break;
        start = pos + kAuditSep.size();
    }
    return out;
}

}  // namespace

DocFormat parse_doc_format(std::string_view text) {
    if (text == "text") return DocFormat::text;
    if (text == "csv") return DocFormat::csv;
    if (text == "svg") return DocFormat::svg;
    throw ValidationError("unknown output format '" + std::string(text) + "' (expected text, csv or svg)");
}

std::string render_ranking(const RankingList& list, DocFormat format, std::string_view title) {
    if (list.entries.empty()) throw ValidationError("cannot render an empty ranking");
    std::ostringstream o;
    switch (format) {
        case DocFormat::csv:
            o << "rank,team,points,tie_group,audit\n";
            for (const auto& e : list.entries) {
                o << e.rank << ',' << csv(e.team) << ',' << detail::shortest(e.value) << ','
                  << e.tie_group << ',' << csv(detail::join(e.audit, kAuditSep)) << '\n';
            }
            break;
        case DocFormat::text: {
            const auto w = name_width(list.teams_in_order());
            if (!title.empty()) o << title << "\n\n";
            o << "Rank  " << pad_right("Team", w) << "  " << pad_left("Points", 8) << "  Tie\n";
            o << "----  " << std::string(w, '-') << "  " << std::string(8, '-') << "  ---\n";
            for (const auto& e : list.entries) {
                o << pad_left(std::to_string(e.rank), 4) << "  " << pad_right(e.team, w) << "  "
                  << pad_left(detail::shortest(e.value), 8) << "  "
                  << (e.tie_group ? "*" + std::to_string(e.tie_group) : "") << '\n';
            }
            o << "\n* teams with equal values; order inside a group comes from the tie-breakers\n";
            break;
        }
        case DocFormat::svg: {
            std::vector<svg::Bar> bars;
            for (const auto& e : list.entries) {
                bars.push_back({std::to_string(e.rank) + ". " + e.team, e.value, e.tie_group != 0});
            }
            const std::string t = title.empty() ? "Ranking " + std::to_string(list.season)
                                                : std::string(title);
            return svg::render_bars(t, bars);
        }
    }
    return o.str();
}

RankingList parse_ranking_csv(std::istream& in, int season) {
    RankingList list;
    list.season = season;
    std::string line;
    std::size_t row = 0;
    bool header = false;
    while (std::getline(in, line)) {
        ++row;
        if (detail::is_skippable(line)) continue;
        const auto f = detail::split_fields(line, ',');
        if (!header) {
            if (f.size() != 5 || f[0] != "rank" || f[1] != "team") {
                throw ParseError(row, "header", "expected 'rank,team,points,tie_group,audit'");
            }
            header = true;
            continue;
        }
        if (f.size() != 5) throw ParseError(row, "row", "expected 5 fields");
        RankingEntry e;
        const auto rank = detail::parse_int(f[0]);
        const auto value = detail::parse_double(f[2]);
        const auto group = detail::parse_int(f[3]);
        if (!rank) throw ParseError(row, "rank", "not an integer");
        if (!value) throw ParseError(row, "points", "not a number");
        if (!group) throw ParseError(row, "tie_group", "not an integer");
        e.rank = static_cast<int>(*rank);
        e.team = f[1];
        e.value = *value;
        e.tie_group = static_cast<int>(*group);
        e.audit = split_audit(f[4]);
        list.entries.push_back(std::move(e));
    }
    return list;
}

std::string ratings_csv(const PowerRatingTable& table) {
    std::vector<std::pair<double, Team>> order;
    for (const auto& [t, r] : table.ratings) order.emplace_back(-r, t);
    std::sort(order.begin(), order.end());
    std::ostringstream o;
    o << "team,rating,component,games_played\n";
    for (const auto& [neg, t] : order) {
        o << csv(t) << ',' << detail::fixed(-neg, 6) << ',' << table.component.at(t) << ','
          << table.games_played.at(t) << '\n';
    }
    return o.str();
}

std::string solver_summary_json(const PowerRatingTable& table) {
    json j;
    j["season"] = table.season;
    j["iterations"] = table.iterations;
    j["converged"] = table.converged;
    j["hfa_used"] = table.hfa_used;
    j["final_max_change"] = table.final_max_change;
    j["final_mean_abs_error"] = table.final_mean_abs_error;
    j["components"] = table.component_count;
    j["config"] = {{"goal_cap", table.config.goal_cap},
                   {"hfa", table.config.hfa ? json(*table.config.hfa) : json("estimate")},
                   {"convergence_tol", table.config.convergence_tol},
                   {"max_iterations", table.config.max_iterations},
                   {"anchor", to_string(table.config.anchor)},
                   {"display_offset", table.config.display_offset}};
    j["warnings"] = table.warnings;
    return j.dump(2) + "\n";
}

std::string rpi_csv(const RpiTable& table) {
    const auto ranking = table.ranking();
    std::ostringstream o;
    o << "team,rpi,wp,owp,oowp,rank\n";
    for (const auto& e : ranking.entries) {
        const auto& t = e.team;
        o << csv(t) << ',' << detail::fixed(table.rpi.at(t), 6) << ',' << detail::fixed(table.wp.at(t), 6)
          << ',' << detail::fixed(table.owp.at(t), 6) << ',' << detail::fixed(table.oowp.at(t), 6) << ','
          << e.rank << '\n';
    }
    return o.str();
}

std::string pairwise_csv(const PowerwiseTable& table) {
    std::ostringstream o;
    o << "team_a,team_b,winner,deciding_step,evidence\n";
    for (const auto& p : table.outcomes) {
        o << csv(p.team_a) << ',' << csv(p.team_b) << ',' << csv(p.winner.value_or("")) << ','
          << to_string(p.deciding_step) << ',' << csv(p.evidence()) << '\n';
    }
    return o.str();
}

std::string points_csv(const PowerwiseTable& table) {
    std::vector<std::pair<int, Team>> order;
    for (const auto& [t, pts] : table.points) order.emplace_back(-pts, t);
    std::sort(order.begin(), order.end());
    std::ostringstream o;
    o << "team,points,h2h_wins,co_wins,pr_wins\n";
    for (const auto& [neg, t] : order) {
        const auto& tally = table.tallies.at(t);
        o << csv(t) << ',' << -neg << ',' << tally.wins_by_step[0] << ',' << tally.wins_by_step[1] << ','
          << tally.wins_by_step[2] << '\n';
    }
    return o.str();
}

std::string decisiveness_text(const PowerwiseTable& table) {
    const auto r = decisiveness_report(table);
    std::ostringstream o;
    o << "Pairs compared:          " << r.pairs << '\n'
      << "Decided head-to-head:    " << table.decisiveness[0] << "  (" << detail::fixed(r.head_to_head_pct, 1) << "%)\n"
      << "Decided by common opp.:  " << table.decisiveness[1] << "  (" << detail::fixed(r.common_opponents_pct, 1) << "%)\n"
      << "Decided by power rating: " << table.decisiveness[2] << "  (" << detail::fixed(r.power_rating_pct, 1) << "%)\n"
      << "Unresolved:              " << table.decisiveness[3] << "  (" << detail::fixed(r.unresolved_pct, 1) << "%)\n";
    return o.str();
}

std::string team_decomposition_text(const PowerwiseTable& table, std::string_view team) {
    const auto it = table.tallies.find(std::string(team));
    if (it == table.tallies.end()) throw ValidationError("unknown team '" + std::string(team) + "'");
    const auto& t = it->second;
    std::ostringstream o;
    o << team << ": " << t.points << " Powerwise points\n"
      << "  comparisons decided by head-to-head:    " << t.decided_by_step[0] << " (won " << t.wins_by_step[0] << ")\n"
      << "  comparisons decided by common opponents: " << t.decided_by_step[1] << " (won " << t.wins_by_step[1] << ")\n"
      << "  comparisons decided by power rating:    " << t.decided_by_step[2] << " (won " << t.wins_by_step[2] << ")\n"
      << "  unresolved comparisons:                 " << t.decided_by_step[3] << '\n';
    return o.str();
}

std::string selection_text(const SelectionResult& mine, const std::vector<Team>* official,
                           const SelectionDiff* diff) {
    std::vector<Team> names = mine.at_large;
    if (official) names.insert(names.end(), official->begin(), official->end());
    const auto w = name_width(names, 9);
    std::ostringstream o;
    o << "At-large picks, season " << mine.season << " (ranks " << mine.bubble_window.first << "-"
      << mine.bubble_window.second << ")\n\n";
    o << " #  " << pad_right("Powerwise", w);
    if (official) o << "  Official";
    o << '\n';
    const std::size_t rows = std::max(mine.at_large.size(), official ? official->size() : 0);
    for (std::size_t i = 0; i < rows; ++i) {
        o << pad_left(std::to_string(i + 1), 2) << "  "
          << pad_right(i < mine.at_large.size() ? mine.at_large[i] : "", w);
        if (official) o << "  " << (i < official->size() ? (*official)[i] : "");
        o << '\n';
    }
    if (diff) {
        o << "\nOnly Powerwise: " << (diff->only_mine.empty() ? "-" : detail::join(diff->only_mine, ", "))
          << "\nOnly official:  "
          << (diff->only_official.empty() ? "-" : detail::join(diff->only_official, ", ")) << '\n';
        for (const auto& s : diff->shared) {
            if (s.delta != 0) {
                o << "  " << s.team << ": Powerwise #" << s.mine_position << ", official #"
                  << s.official_position << '\n';
            }
        }
    }
    return o.str();
}

std::string selection_csv(const SelectionResult& mine, const std::vector<Team>* official) {
    std::ostringstream o;
    o << "team,powerwise_position,official_position,status\n";
    auto pos = [](const std::vector<Team>& l, const Team& t) {
        const auto it = std::find(l.begin(), l.end(), t);
        return it == l.end() ? 0 : static_cast<int>(it - l.begin()) + 1;
    };
    for (const auto& t : mine.at_large) {
        const int theirs = official ? pos(*official, t) : 0;
        o << csv(t) << ',' << pos(mine.at_large, t) << ',' << (theirs ? std::to_string(theirs) : "")
          << ',' << (!official ? "picked" : theirs ? "both" : "only_powerwise") << '\n';
    }
    if (official) {
        for (const auto& t : *official) {
            if (pos(mine.at_large, t) == 0) {
                o << csv(t) << ",," << pos(*official, t) << ",only_official\n";
            }
        }
    }
    return o.str();
}

std::string perturbation_csv(const PerturbationReport& report) {
    std::ostringstream o;
    o << "team,old_rank,new_rank,old_value,new_value\n";
    std::map<Team, double> after;
    for (const auto& e : report.after.entries) after[e.team] = e.value;
    for (const auto& e : report.before.entries) {
        const int now = report.after.rank_of(e.team);
        if (e.rank > report.top_k && now > report.top_k) continue;
        o << csv(e.team) << ',' << e.rank << ',' << now << ',' << detail::shortest(e.value) << ','
          << detail::shortest(after.at(e.team)) << '\n';
    }
    return o.str();
}

std::string perturbation_json(const PerturbationReport& report) {
    const auto& g = report.flipped_game;
    json j;
    j["method"] = to_string(report.method);
    j["top_k"] = report.top_k;
    j["flipped_game"] = {{"date", to_iso(g.date)},     {"home", g.home_team},
                         {"away", g.away_team},        {"home_score", g.home_score},
                         {"away_score", g.away_score}, {"neutral", g.neutral_site}};
    j["n_changed"] = report.n_changed;
    j["rank_changes"] = json::array();
    for (const auto& c : report.rank_changes) {
        j["rank_changes"].push_back({{"team", c.team}, {"old_rank", c.old_rank}, {"new_rank", c.new_rank}});
    }
    return j.dump(2) + "\n";
}

std::string perturbation_text(const PerturbationReport& report) {
    const auto& g = report.flipped_game;
    std::ostringstream o;
    o << "Flipped " << to_iso(g.date) << ' ' << g.home_team << ' ' << g.home_score << '-'
      << g.away_score << ' ' << g.away_team << " -> " << g.away_score << '-' << g.home_score
      << "\nMethod " << to_string(report.method) << ", top " << report.top_k << ": "
      << report.n_changed << " rank change(s)\n\n";
    std::vector<Team> names;
    for (const auto& e : report.before.entries) names.push_back(e.team);
    const auto w = name_width(names);
    o << "Rank  " << pad_right("Before", w) << "  " << "After\n";
    for (std::size_t i = 0; i < std::min<std::size_t>(report.top_k, report.before.entries.size()); ++i) {
        const auto& b = report.before.entries[i];
        const auto& a = report.after.entries[i];
        const bool moved_b = b.rank != report.after.rank_of(b.team);
        const bool moved_a = a.rank != report.before.rank_of(a.team);
        o << pad_left(std::to_string(i + 1), 4) << "  " << pad_right(b.team + (moved_b ? " *" : ""), w + 2)
          << "  " << a.team << (moved_a ? " *" : "") << '\n';
    }
    return o.str();
}

std::string perturbation_svg(const PerturbationReport& report) {
    svg::Plot plot;
    plot.title = "Rank before vs after flip (" + to_string(report.method) + ")";
    plot.x_label = "rank before";
    plot.y_label = "rank after";
    plot.invert_y = true;
    svg::Series same{"unchanged", "#1f77b4", {}, false};
    svg::Series moved{"changed", "#d62728", {}, false};
    for (const auto& e : report.before.entries) {
        const int now = report.after.rank_of(e.team);
        if (e.rank > report.top_k && now > report.top_k) continue;
        (now == e.rank ? same : moved).points.emplace_back(e.rank, now);
    }
    plot.series = {same, moved};
    return svg::render(plot);
}

std::string tau_points_csv(const RankingList& x, const RankingList& y) {
    std::ostringstream o;
    o << "team,rank_x,rank_y\n";
    for (const auto& e : x.entries) {
        if (!y.contains(e.team)) continue;
        o << csv(e.team) << ',' << e.rank << ',' << y.rank_of(e.team) << '\n';
    }
    return o.str();
}

std::string tau_json(const TauResult& full, const TauResult* windowed,
                     std::optional<std::pair<int, int>> window) {
    auto one = [](const TauResult& t) {
        return json{{"tau", t.tau},
                    {"p_value", t.p_value},
                    {"n", t.n},
                    {"concordant", t.concordant},
                    {"discordant", t.discordant},
                    {"tied_x", t.tied_x},
                    {"tied_y", t.tied_y}};
    };
    json j;
    j["full"] = one(full);
    if (windowed && window) {
        j["window"] = one(*windowed);
        j["window"]["first_rank"] = window->first;
        j["window"]["last_rank"] = window->second;
    }
    return j.dump(2) + "\n";
}

std::string tau_svg(const RankingList& x, const RankingList& y, std::string_view x_label,
                    std::string_view y_label) {
    svg::Plot plot;
    plot.title = "Rank agreement";
    plot.x_label = std::string(x_label) + " rank";
    plot.y_label = std::string(y_label) + " rank";
    plot.invert_y = true;
    svg::Series s{"", "#1f77b4", {}, false};
    for (const auto& e : x.entries) {
        if (y.contains(e.team)) s.points.emplace_back(e.rank, y.rank_of(e.team));
    }
    plot.series.push_back(std::move(s));
    return svg::render(plot);
}

std::string regression_samples_csv(const RegressionReport& report) {
    std::ostringstream o;
    o << "group,team,opponent,date,strength,margin\n";
    for (const auto& s : report.samples) {
        o << (s.group == 0 ? "a" : "b") << ',' << csv(s.team) << ',' << csv(s.opponent) << ','
          << to_iso(s.date) << ',' << detail::shortest(s.strength) << ',' << detail::shortest(s.margin)
          << '\n';
    }
    return o.str();
}

std::string regression_band_csv(const RegressionReport& report) {
    std::ostringstream o;
    o << "x,fit_a,lower_a,upper_a,fit_b,lower_b,upper_b\n";
    for (const auto& p : report.confidence_band) {
        o << detail::fixed(p.x, 6) << ',' << detail::fixed(p.fit_a, 6) << ',' << detail::fixed(p.lower_a, 6)
          << ',' << detail::fixed(p.upper_a, 6) << ',' << detail::fixed(p.fit_b, 6) << ','
          << detail::fixed(p.lower_b, 6) << ',' << detail::fixed(p.upper_b, 6) << '\n';
    }
    return o.str();
}

std::string regression_json(const RegressionReport& report) {
    auto fit = [](const LineFit& f) {
        return json{{"n", f.n},
                    {"slope", f.slope},
                    {"intercept", f.intercept},
                    {"residual_se", f.residual_se},
                    {"x_min", f.x_min},
                    {"x_max", f.x_max}};
    };
    json j;
    j["group_a"] = fit(report.a);
    j["group_b"] = fit(report.b);
    j["common_range"] = {report.common_low, report.common_high};
    j["group_offset"] = report.group_offset;
    j["offset_se"] = report.offset_se;
    j["t_statistic"] = report.t_statistic;
    j["degrees_of_freedom"] = report.degrees_of_freedom;
    j["p_value"] = report.p_value;
    j["n_points"] = report.n_points;
    return j.dump(2) + "\n";
}

std::string regression_svg(const RegressionReport& report, std::string_view x_label) {
    svg::Plot plot;
    plot.title = "Game margin vs opponent strength";
    plot.x_label = std::string(x_label);
    plot.y_label = "goal margin";
    svg::Band ba{"#1f77b4", {}, {}, {}};
    svg::Band bb{"#d62728", {}, {}, {}};
    svg::Series la{"", "#1f77b4", {}, true};
    svg::Series lb{"", "#d62728", {}, true};
    for (const auto& p : report.confidence_band) {
        ba.x.push_back(p.x);
        ba.lower.push_back(p.lower_a);
        ba.upper.push_back(p.upper_a);
        bb.x.push_back(p.x);
        bb.lower.push_back(p.lower_b);
        bb.upper.push_back(p.upper_b);
        la.points.emplace_back(p.x, p.fit_a);
        lb.points.emplace_back(p.x, p.fit_b);
    }
    svg::Series pa{"group a", "#1f77b4", {}, false};
    svg::Series pb{"group b", "#d62728", {}, false};
    for (const auto& s : report.samples) (s.group == 0 ? pa : pb).points.emplace_back(s.strength, s.margin);
    plot.bands = {ba, bb};
    plot.series = {pa, pb, la, lb};
    return svg::render(plot);
}

ReportWriter::ReportWriter(std::filesystem::path root, std::string title)
    : root_(std::move(root)), title_(std::move(title)) {}

void ReportWriter::emit(const std::string& heading, const std::filesystem::path& relative,
                        std::string_view content) {
    const auto path = root_ / relative;
    std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write '" + path.string() + "'");
    out << content;
    if (!out) throw ValidationError("failed writing '" + path.string() + "'");
    sections_.emplace_back(heading, relative);
    files_.push_back(path);
}

void ReportWriter::finish(bool with_timestamp) {
    std::ostringstream o;
    o << title_ << '\n' << std::string(title_.size(), '=') << '\n';
    if (with_timestamp) {
        const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
        char buf[32];
        std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
        o << "generated " << buf << '\n';
    }
    o << '\n';
    for (const auto& [heading, rel] : sections_) o << pad_right(heading, 28) << rel.generic_string() << '\n';
    std::filesystem::create_directories(root_);
    std::ofstream out(root_ / "report.txt", std::ios::binary);
    if (!out) throw ValidationError("cannot write '" + (root_ / "report.txt").string() + "'");
    out << o.str();
}

}  // namespace powerwise
