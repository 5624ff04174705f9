#include "powerwise/ingest.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <queue>
#include <set>

#include "powerwise/error.hpp"
#include "text_util.hpp"

namespace powerwise {

namespace {

constexpr std::string_view kColumns[] = {"season",     "date",       "home",    "away",
                                         "home_score", "away_score", "neutral", "game_index"};

char delimiter(GameFormat f) { return f == GameFormat::tsv ? '\t' : ','; }

std::ifstream open_or_throw(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open '" + path + "'");
    return in;
}

std::string describe(const GameRecord& g) {
    return to_iso(g.date) + " " + g.home_team + " " + std::to_string(g.home_score) + "-" +
           std::to_string(g.away_score) + " " + g.away_team;
}

int parse_score(const std::string& text, std::size_t row, const char* field) {
    const auto v = detail::parse_int(text);
    if (!v) throw ParseError(row, field, "not an integer: '" + text + "'");
    if (*v < 0) throw ParseError(row, field, "negative score " + text);
    if (*v > 1000) throw ParseError(row, field, "implausible score " + text);
    return static_cast<int>(*v);
}

}  // namespace

GameFormat parse_format(std::string_view tag) {
    if (tag == "csv") return GameFormat::csv;
    if (tag == "tsv") return GameFormat::tsv;
    throw ValidationError("unknown game file format '" + std::string(tag) + "'");
}

std::vector<GameRecord> parse_games(std::istream& source, GameFormat format) {
    const char delim = delimiter(format);
    std::vector<GameRecord> games;
    std::string line;
    std::size_t row = 0;
    std::size_t columns = 0;

    while (std::getline(source, line)) {
        ++row;
        if (row == 1) detail::strip_bom(line);
        if (detail::is_skippable(line)) continue;
        auto fields = detail::split_fields(line, delim);

        if (columns == 0) {
            if (fields.size() != 7 && fields.size() != 8) {
                throw ParseError(row, "header", "expected 7 or 8 columns, got " +
                                                    std::to_string(fields.size()));
            }
            for (std::size_t i = 0; i < fields.size(); ++i) {
                if (fields[i] != kColumns[i]) {
                    throw ParseError(row, "header", "expected column '" +
                                                        std::string(kColumns[i]) + "', got '" +
                                                        fields[i] + "'");
                }
            }
            columns = fields.size();
            continue;
        }

        if (fields.size() != columns) {
            throw ParseError(row, "row", "expected " + std::to_string(columns) + " fields, got " +
                                             std::to_string(fields.size()));
        }

        GameRecord g;
        g.row = row;
        const auto season = detail::parse_int(fields[0]);
        if (!season || *season < 1 || *season > 9999) {
            throw ParseError(row, "season", "invalid season '" + fields[0] + "'");
        }
        g.season = static_cast<int>(*season);
        try {
            g.date = parse_iso_date(fields[1]);
        } catch (const ValidationError& e) {
            throw ParseError(row, "date", e.what());
        }
        g.home_team = fields[2];
        g.away_team = fields[3];
        if (g.home_team.empty()) throw ParseError(row, "home", "empty team name");
        if (g.away_team.empty()) throw ParseError(row, "away", "empty team name");
        if (g.home_team == g.away_team) {
            throw ParseError(row, "away", "team '" + g.away_team + "' cannot play itself");
        }
        g.home_score = parse_score(fields[4], row, "home_score");
        g.away_score = parse_score(fields[5], row, "away_score");
        if (fields[6] == "0") {
            g.neutral_site = false;
        } else if (fields[6] == "1") {
            g.neutral_site = true;
        } else {
            throw ParseError(row, "neutral", "expected 0 or 1, got '" + fields[6] + "'");
        }
        if (columns == 8 && !fields[7].empty()) {
            const auto idx = detail::parse_int(fields[7]);
            if (!idx) throw ParseError(row, "game_index", "not an integer: '" + fields[7] + "'");
            g.game_index = static_cast<int>(*idx);
        }
        games.push_back(std::move(g));
    }
    return games;
}

std::vector<GameRecord> parse_games_file(const std::string& path) {
    auto in = open_or_throw(path);
    const bool tsv = path.size() >= 4 && path.compare(path.size() - 4, 4, ".tsv") == 0;
    return parse_games(in, tsv ? GameFormat::tsv : GameFormat::csv);
}

void serialize_games(std::ostream& out, const std::vector<GameRecord>& games, GameFormat format) {
    const char delim = delimiter(format);
    const bool with_index =
        std::any_of(games.begin(), games.end(), [](const auto& g) { return g.game_index.has_value(); });
    const std::size_t columns = with_index ? 8 : 7;
    for (std::size_t i = 0; i < columns; ++i) {
        if (i) out << delim;
        out << kColumns[i];
    }
    out << '\n';
    for (const auto& g : games) {
        out << g.season << delim << to_iso(g.date) << delim << detail::quote_field(g.home_team, delim)
            << delim << detail::quote_field(g.away_team, delim) << delim << g.home_score << delim
            << g.away_score << delim << (g.neutral_site ? 1 : 0);
        if (with_index) {
            out << delim;
            if (g.game_index) out << *g.game_index;
        }
        out << '\n';
    }
}

AliasMap parse_aliases(std::istream& source) {
    AliasMap aliases;
    std::string line;
    std::size_t row = 0;
    bool header = false;
    while (std::getline(source, line)) {
        ++row;
        if (row == 1) detail::strip_bom(line);
        if (detail::is_skippable(line)) continue;
        const auto fields = detail::split_fields(line, ',');
        if (!header) {
            if (fields.size() != 2 || fields[0] != "alias" || fields[1] != "canonical") {
                throw ParseError(row, "header", "expected 'alias,canonical'");
            }
            header = true;
            continue;
        }
        if (fields.size() != 2) throw ParseError(row, "row", "expected 2 fields");
        if (fields[0].empty()) throw ParseError(row, "alias", "empty alias");
        if (fields[1].empty()) throw ParseError(row, "canonical", "empty canonical name");
        const auto [it, inserted] = aliases.emplace(fields[0], fields[1]);
        if (!inserted && it->second != fields[1]) {
            throw ParseError(row, "alias", "'" + fields[0] + "' mapped twice");
        }
    }
    return aliases;
}

AliasMap parse_aliases_file(const std::string& path) {
    auto in = open_or_throw(path);
    return parse_aliases(in);
}

void apply_aliases(std::vector<GameRecord>& games, const AliasMap& aliases) {
    auto resolve = [&](Team& t) {
        if (const auto it = aliases.find(t); it != aliases.end()) t = it->second;
    };
    for (auto& g : games) {
        resolve(g.home_team);
        resolve(g.away_team);
    }
}

std::vector<Team> parse_team_list(std::istream& source) {
    std::vector<Team> teams;
    std::string line;
    bool first = true;
    while (std::getline(source, line)) {
        if (first) detail::strip_bom(line);
        first = false;
        if (detail::is_skippable(line)) continue;
        teams.emplace_back(detail::trim(line));
    }
    return teams;
}

std::vector<Team> parse_team_list_file(const std::string& path) {
    auto in = open_or_throw(path);
    return parse_team_list(in);
}

bool SeasonDataset::has_team(std::string_view team) const {
    return std::binary_search(teams.begin(), teams.end(), team);
}

std::size_t SeasonDataset::team_index(std::string_view team) const {
    const auto it = std::lower_bound(teams.begin(), teams.end(), team);
    if (it == teams.end() || *it != team) {
        throw ValidationError("unknown team '" + std::string(team) + "'");
    }
    return static_cast<std::size_t>(it - teams.begin());
}

std::size_t SeasonDataset::games_played(std::string_view team) const {
    const auto it = opponents_of.find(std::string(team));
    return it == opponents_of.end() ? 0 : it->second.size();
}

SeasonDataset build_season(std::vector<GameRecord> games, int season, const SeasonWindow& window) {
    if (games.empty()) throw ValidationError("empty season");

    SeasonDataset ds;
    ds.season = season;

    const auto first = std::make_pair(window.first_month, window.first_day);
    const auto last = std::make_pair(window.last_month, window.last_day);
    for (const auto& g : games) {
        const std::string where = g.row ? " (row " + std::to_string(g.row) + ")" : "";
        if (g.season != season) {
            throw ValidationError("game " + describe(g) + where + " belongs to season " +
                                  std::to_string(g.season) + ", not " + std::to_string(season));
        }
        if (g.home_team.empty() || g.away_team.empty()) {
            throw ValidationError("game" + where + " has an empty team name");
        }
        if (g.home_team == g.away_team) {
            throw ValidationError("game " + describe(g) + where + " pits a team against itself");
        }
        if (g.home_score < 0 || g.away_score < 0) {
            throw ValidationError("game " + describe(g) + where + " has a negative score");
        }
        const auto md = std::make_pair(g.date.month, g.date.day);
        if (g.date.year != season || md < first || md > last) {
            throw ValidationError("game " + describe(g) + where + " falls outside the " +
                                  std::to_string(season) + " season window");
        }
    }

    std::sort(games.begin(), games.end());
    for (std::size_t i = 0; i < games.size(); ++i) {
        if (i > 0 && games[i] == ds.games.back()) {
            ds.warnings.push_back("duplicate game dropped: " + describe(games[i]));
            continue;
        }
        if (games[i].is_tie()) ds.warnings.push_back("tied score: " + describe(games[i]));
        ds.games.push_back(std::move(games[i]));
    }
    for (auto& g : ds.games) g.row = 0;

    std::set<Team> names;
    for (const auto& g : ds.games) {
        names.insert(g.home_team);
        names.insert(g.away_team);
    }
    ds.teams.assign(names.begin(), names.end());

    for (const auto& t : ds.teams) ds.opponents_of[t];
    for (std::size_t i = 0; i < ds.games.size(); ++i) {
        const auto& g = ds.games[i];
        ds.opponents_of[g.home_team].push_back({g.away_team, i});
        ds.opponents_of[g.away_team].push_back({g.home_team, i});
    }

    for (const auto& start : ds.teams) {
        if (ds.component.count(start)) continue;
        const int id = ds.component_count++;
        std::queue<Team> frontier;
        frontier.push(start);
        ds.component[start] = id;
        while (!frontier.empty()) {
            const Team t = frontier.front();
            frontier.pop();
            for (const auto& e : ds.opponents_of[t]) {
                if (ds.component.emplace(e.opponent, id).second) frontier.push(e.opponent);
            }
        }
    }
    if (ds.component_count > 1) {
        ds.warnings.push_back("schedule splits into " + std::to_string(ds.component_count) +
                              " disconnected components; ratings are comparable only within one");
    }
    std::sort(ds.warnings.begin(), ds.warnings.end());
    return ds;
}

std::vector<int> seasons_in(const std::vector<GameRecord>& games) {
    std::set<int> s;
    for (const auto& g : games) s.insert(g.season);
    return {s.begin(), s.end()};
}

GameRef parse_game_ref(std::string_view text) {
    const auto fields = detail::split_fields(text, ',');
    if (fields.size() != 3 && fields.size() != 4) {
        throw ValidationError("game reference must be 'YYYY-MM-DD,TeamA,TeamB[,game_index]', got '" +
                              std::string(text) + "'");
    }
    GameRef ref;
    ref.date = parse_iso_date(fields[0]);
    ref.team_a = fields[1];
    ref.team_b = fields[2];
    if (fields.size() == 4) {
        const auto idx = detail::parse_int(fields[3]);
        if (!idx) throw ValidationError("invalid game index '" + fields[3] + "'");
        ref.game_index = static_cast<int>(*idx);
    }
    return ref;
}

std::size_t find_game(const SeasonDataset& dataset, const GameRef& ref) {
    std::vector<std::size_t> hits;
    for (std::size_t i = 0; i < dataset.games.size(); ++i) {
        const auto& g = dataset.games[i];
        if (g.date != ref.date) continue;
        const bool teams_match = (g.home_team == ref.team_a && g.away_team == ref.team_b) ||
                                 (g.home_team == ref.team_b && g.away_team == ref.team_a);
        if (!teams_match) continue;
        if (ref.game_index && g.game_index != ref.game_index) continue;
        hits.push_back(i);
    }
    const std::string what = to_iso(ref.date) + " " + ref.team_a + " vs " + ref.team_b;
    if (hits.empty()) throw ValidationError("no game " + what + " in season");
    if (hits.size() > 1) throw ValidationError("game " + what + " is ambiguous; add a game index");
    return hits.front();
}

}  // namespace powerwise
