#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "powerwise/date.hpp"

namespace powerwise {

using Team = std::string;

// One played game. `row` is the 1-based source line the record was read from
// (0 for records built in code); it is carried for diagnostics only and does
// not take part in comparisons.
struct GameRecord {
    int season = 0;
    Date date;
    Team home_team;
    Team away_team;
    int home_score = 0;
    int away_score = 0;
    bool neutral_site = false;
    std::optional<int> game_index;
    std::size_t row = 0;

    auto key() const {
        return std::tie(season, date, home_team, away_team, home_score, away_score, neutral_site,
                        game_index);
    }
    bool operator==(const GameRecord& o) const { return key() == o.key(); }
    auto operator<=>(const GameRecord& o) const { return key() <=> o.key(); }

    bool involves(std::string_view team) const { return home_team == team || away_team == team; }
    bool is_tie() const { return home_score == away_score; }
};

enum class GameFormat { csv, tsv };

/// Maps a format tag ("csv", "tsv") to a GameFormat. Throws on unknown tags.
GameFormat parse_format(std::string_view tag);

/// Reads game rows in the declared format. The first non-comment line must be
/// the header `season,date,home,away,home_score,away_score,neutral[,game_index]`.
/// Lines starting with `#` and blank lines are ignored.
std::vector<GameRecord> parse_games(std::istream& source, GameFormat format = GameFormat::csv);
std::vector<GameRecord> parse_games_file(const std::string& path);

/// Writes games in the same layout parse_games reads. The game_index column is
/// emitted only when at least one game carries one.
void serialize_games(std::ostream& out, const std::vector<GameRecord>& games,
                     GameFormat format = GameFormat::csv);

using AliasMap = std::map<std::string, std::string>;

/// Reads an `alias,canonical` CSV.
AliasMap parse_aliases(std::istream& source);
AliasMap parse_aliases_file(const std::string& path);
void apply_aliases(std::vector<GameRecord>& games, const AliasMap& aliases);

/// One team per line, `#` comments and blank lines ignored. Used for
/// auto-qualifier lists, official picks and group files.
std::vector<Team> parse_team_list(std::istream& source);
std::vector<Team> parse_team_list_file(const std::string& path);

struct SeasonWindow {
    int first_month = 1;
    int first_day = 1;
    int last_month = 5;
    int last_day = 31;
};

struct OpponentEntry {
    Team opponent;
    std::size_t game;  // index into SeasonDataset::games

    bool operator==(const OpponentEntry&) const = default;
};

struct SeasonDataset {
    int season = 0;
    std::vector<Team> teams;        // lexicographic
    std::vector<GameRecord> games;  // canonical order
    std::map<Team, std::vector<OpponentEntry>> opponents_of;
    std::map<Team, int> component;  // connected component of the opponent graph
    int component_count = 0;
    std::vector<std::string> warnings;

    bool has_team(std::string_view team) const;
    std::size_t team_index(std::string_view team) const;  // throws if absent
    std::size_t games_played(std::string_view team) const;

    bool operator==(const SeasonDataset& o) const {
        return season == o.season && teams == o.teams && games == o.games &&
               opponents_of == o.opponents_of && component == o.component &&
               component_count == o.component_count && warnings == o.warnings;
    }
};

/// Validates and indexes a season. Exact duplicate games collapse into one with
/// a warning; tied scores are kept with a warning. Throws ValidationError for an
/// empty season, a game from another season, a self-game, negative scores or a
/// date outside the window.
SeasonDataset build_season(std::vector<GameRecord> games, int season,
                           const SeasonWindow& window = {});

/// Distinct seasons present in a list of games, ascending.
std::vector<int> seasons_in(const std::vector<GameRecord>& games);

/// Identifies a game by date and the two teams (in either home/away order).
struct GameRef {
    Date date;
    Team team_a;
    Team team_b;
    std::optional<int> game_index;
};

/// Parses "YYYY-MM-DD,TeamA,TeamB[,game_index]".
GameRef parse_game_ref(std::string_view text);

/// Index into dataset.games of the referenced game. Throws ValidationError if
/// missing or ambiguous.
std::size_t find_game(const SeasonDataset& dataset, const GameRef& ref);

}  // namespace powerwise
