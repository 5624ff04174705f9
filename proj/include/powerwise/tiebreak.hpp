#pragma once

#include <vector>

#include "powerwise/ingest.hpp"
#include "powerwise/pairwise.hpp"
#include "powerwise/power_rating.hpp"
#include "powerwise/ranking.hpp"

namespace powerwise {

enum class MultiTeamRule { mini_round_robin, power_rating };

/// Ladder applied to ties of three or more teams. Two-team ties always use the
/// pair's own comparison (head-to-head, common opponents, power rating).
///
/// The default ladder (mini round-robin, then power rating) is a
/// reconstruction from the textual description of the committee procedure,
/// not a transcription of it; supply a different ladder to swap it out.
struct TieBreakConfig {
    std::vector<MultiTeamRule> multi_team_ladder{MultiTeamRule::mini_round_robin,
                                                 MultiTeamRule::power_rating};
};

/// Orders teams by Powerwise points and resolves equal-point groups.
///
/// Two tied teams: the pair's comparison decides; an unresolved pair shares a
/// rank. Three or more: each ladder rule is tried in turn. The mini
/// round-robin counts pairwise wins inside the group; if that yields at least
/// two distinct totals the group splits by total and every sub-group is
/// resolved again from the top (two-team rule for pairs). The power-rating
/// rule orders by rating; exactly equal ratings share a rank. A group no rule
/// separates shares a rank.
RankingList break_ties(const PowerwiseTable& table, const SeasonDataset& dataset,
                       const PowerRatingTable& ratings, const ComparisonConfig& config = {},
                       const TieBreakConfig& tiebreak = {});

/// Rebuilds the final team order from the points order and the audit log.
std::vector<Team> replay_tiebreaks(const RankingList& list);

}  // namespace powerwise
