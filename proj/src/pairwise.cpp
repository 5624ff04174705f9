#include "powerwise/pairwise.hpp"

#include <algorithm>

#include "powerwise/error.hpp"
#include "text_util.hpp"

namespace powerwise {

namespace {

using VersusMap = std::map<Team, Record>;

VersusMap records_vs(const SeasonDataset& ds, const Team& team) {
    VersusMap out;
    for (const auto& e : ds.opponents_of.at(team)) {
        const auto& g = ds.games[e.game];
        const int own = g.home_team == team ? g.home_score : g.away_score;
        const int other = g.home_team == team ? g.away_score : g.home_score;
        auto& r = out[e.opponent];
        r.half_wins += own > other ? 2 : own == other ? 1 : 0;
        ++r.games;
    }
    return out;
}

Record lookup(const VersusMap& m, const Team& opponent) {
    const auto it = m.find(opponent);
    return it == m.end() ? Record{} : it->second;
}

HeadToHead h2h_from(const VersusMap& a_vs, const VersusMap& b_vs, const Team& a, const Team& b) {
    HeadToHead out;
    out.a = lookup(a_vs, b);
    out.b = lookup(b_vs, a);
    if (out.a.half_wins > out.b.half_wins) {
        out.verdict = Verdict::a_wins;
    } else if (out.b.half_wins > out.a.half_wins) {
        out.verdict = Verdict::b_wins;
    }
    return out;
}

CommonOpponentsEvidence co_from(const VersusMap& a_vs, const VersusMap& b_vs, const Team& a,
                                const Team& b, const ComparisonConfig& config) {
    CommonOpponentsEvidence out;
    for (const auto& [opp, rec] : a_vs) {
        if (opp == b) continue;
        const auto it = b_vs.find(opp);
        if (it == b_vs.end() || opp == a) continue;
        out.common.push_back(opp);
        out.a.half_wins += rec.half_wins;
        out.a.games += rec.games;
        out.b.half_wins += it->second.half_wins;
        out.b.games += it->second.games;
    }
    if (out.common.empty()) return out;
    if (config.skip_singular_common_opponent && out.common.size() == 1) {
        out.skipped_singular = true;
        return out;
    }
    // Both comparisons stay in integers: percentages by cross-multiplication,
    // wins-minus-losses as 2*half_wins - 2*games (both doubled).
    long lhs = 0;
    long rhs = 0;
    if (config.common_opponent_mode == CommonOpponentMode::percentage) {
        lhs = static_cast<long>(out.a.half_wins) * out.b.games;
        rhs = static_cast<long>(out.b.half_wins) * out.a.games;
    } else {
        lhs = 2L * out.a.half_wins - 2L * out.a.games;
        rhs = 2L * out.b.half_wins - 2L * out.b.games;
    }
    if (lhs > rhs) {
        out.verdict = Verdict::a_wins;
    } else if (rhs > lhs) {
        out.verdict = Verdict::b_wins;
    }
    return out;
}

PairwiseOutcome decide(const Team& a, const Team& b, const VersusMap& a_vs, const VersusMap& b_vs,
                       const PowerRatingTable& ratings, const ComparisonConfig& config) {
    PairwiseOutcome out;
    out.team_a = a;
    out.team_b = b;
    out.h2h = h2h_from(a_vs, b_vs, a, b);
    out.co = co_from(a_vs, b_vs, a, b, config);

    const double ra = ratings.rating(a);
    const double rb = ratings.rating(b);
    if (ratings.component.at(a) == ratings.component.at(b)) out.rating_difference = ra - rb;

    auto settle = [&](Verdict v, DecidingStep step) {
        out.winner = v == Verdict::a_wins ? a : b;
        out.deciding_step = step;
    };
    if (out.h2h.verdict != Verdict::inconclusive) {
        settle(out.h2h.verdict, DecidingStep::head_to_head);
    } else if (out.co.verdict != Verdict::inconclusive) {
        settle(out.co.verdict, DecidingStep::common_opponents);
    } else if (out.rating_difference && *out.rating_difference != 0.0) {
        settle(*out.rating_difference > 0.0 ? Verdict::a_wins : Verdict::b_wins,
               DecidingStep::power_rating);
    }
    return out;
}

void check_pair(const SeasonDataset& ds, std::string_view a, std::string_view b) {
    if (a == b) throw ValidationError("cannot compare team '" + std::string(a) + "' with itself");
    ds.team_index(a);
    ds.team_index(b);
}

}  // namespace

CommonOpponentMode parse_co_mode(std::string_view text) {
    if (text == "percentage") return CommonOpponentMode::percentage;
    if (text == "numeric") return CommonOpponentMode::numeric;
    throw ValidationError("unknown common-opponent mode '" + std::string(text) +
                          "' (expected percentage or numeric)");
}

std::string to_string(CommonOpponentMode m) {
    return m == CommonOpponentMode::percentage ? "percentage" : "numeric";
}

std::string to_string(DecidingStep s) {
    switch (s) {
        case DecidingStep::head_to_head: return "head_to_head";
        case DecidingStep::common_opponents: return "common_opponents";
        case DecidingStep::power_rating: return "power_rating";
        case DecidingStep::unresolved: return "unresolved";
    }
    return "unresolved";
}

DecidingStep parse_deciding_step(std::string_view text) {
    for (auto s : {DecidingStep::head_to_head, DecidingStep::common_opponents,
                   DecidingStep::power_rating, DecidingStep::unresolved}) {
        if (to_string(s) == text) return s;
    }
    throw ValidationError("unknown deciding step '" + std::string(text) + "'");
}

std::string Record::str() const {
    return detail::shortest(wins()) + "-" + detail::shortest(losses());
}

std::string PairwiseOutcome::evidence() const {
    std::string out = "h2h " + h2h.a.str() + " vs " + h2h.b.str() + "; co ";
    if (co.common.empty()) {
        out += "none";
    } else {
        out += co.a.str() + " (" + detail::fixed(co.a.percentage(), 3) + ") vs " + co.b.str() + " (" +
               detail::fixed(co.b.percentage(), 3) + ") over " + std::to_string(co.common.size());
        if (co.skipped_singular) out += " [singular skipped]";
    }
    out += "; pr ";
    out += rating_difference ? (*rating_difference >= 0 ? "+" : "") + detail::fixed(*rating_difference, 4)
                             : std::string("incomparable");
    return out;
}

HeadToHead head_to_head(const SeasonDataset& dataset, std::string_view a, std::string_view b) {
    check_pair(dataset, a, b);
    const Team ta(a), tb(b);
    return h2h_from(records_vs(dataset, ta), records_vs(dataset, tb), ta, tb);
}

CommonOpponentsEvidence common_opponents(const SeasonDataset& dataset, std::string_view a,
                                         std::string_view b, const ComparisonConfig& config) {
    check_pair(dataset, a, b);
    const Team ta(a), tb(b);
    return co_from(records_vs(dataset, ta), records_vs(dataset, tb), ta, tb, config);
}

PairwiseOutcome compare(const SeasonDataset& dataset, const PowerRatingTable& ratings,
                        std::string_view a, std::string_view b, const ComparisonConfig& config) {
    check_pair(dataset, a, b);
    Team lo(std::min(a, b));
    Team hi(std::max(a, b));
    ratings.rating(lo);
    ratings.rating(hi);
    return decide(lo, hi, records_vs(dataset, lo), records_vs(dataset, hi), ratings, config);
}

const PairwiseOutcome& PowerwiseTable::outcome(std::string_view a, std::string_view b) const {
    const std::string_view lo = std::min(a, b);
    const std::string_view hi = std::max(a, b);
    const auto it = std::lower_bound(outcomes.begin(), outcomes.end(), std::make_pair(lo, hi),
                                     [](const PairwiseOutcome& o, const auto& key) {
                                         return std::make_pair(std::string_view(o.team_a),
                                                               std::string_view(o.team_b)) < key;
                                     });
    if (it == outcomes.end() || it->team_a != lo || it->team_b != hi) {
        throw ValidationError("no pairwise outcome for '" + std::string(a) + "' vs '" +
                              std::string(b) + "'");
    }
    return *it;
}

PowerwiseTable run_tournament(const SeasonDataset& dataset, const PowerRatingTable& ratings,
                              const ComparisonConfig& config) {
    PowerwiseTable table;
    table.season = dataset.season;
    table.teams = dataset.teams;

    std::vector<VersusMap> vs;
    vs.reserve(dataset.teams.size());
    for (const auto& t : dataset.teams) {
        ratings.rating(t);
        vs.push_back(records_vs(dataset, t));
        table.points[t] = 0;
        table.tallies[t] = {};
    }

    const std::size_t n = dataset.teams.size();
    table.outcomes.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const auto& a = dataset.teams[i];
            const auto& b = dataset.teams[j];
            auto outcome = decide(a, b, vs[i], vs[j], ratings, config);
            const auto step = static_cast<std::size_t>(outcome.deciding_step);
            ++table.decisiveness[step];
            ++table.tallies[a].decided_by_step[step];
            ++table.tallies[b].decided_by_step[step];
            if (outcome.winner) {
                auto& tally = table.tallies[*outcome.winner];
                ++tally.points;
                ++tally.wins_by_step[step];
                ++table.points[*outcome.winner];
            }
            table.outcomes.push_back(std::move(outcome));
        }
    }
    return table;
}

DecisivenessReport decisiveness_report(const PowerwiseTable& table) {
    DecisivenessReport r;
    for (int c : table.decisiveness) r.pairs += static_cast<std::size_t>(c);
    if (r.pairs == 0) throw ValidationError("pairwise table is empty");
    const double total = static_cast<double>(r.pairs);
    r.head_to_head_pct = 100.0 * table.decisiveness[0] / total;
    r.common_opponents_pct = 100.0 * table.decisiveness[1] / total;
    r.power_rating_pct = 100.0 * table.decisiveness[2] / total;
    r.unresolved_pct = 100.0 * table.decisiveness[3] / total;
    return r;
}

}  // namespace powerwise
