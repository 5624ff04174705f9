#pragma once

#include "powerwise/ingest.hpp"
#include "powerwise/pairwise.hpp"
#include "powerwise/power_rating.hpp"
#include "powerwise/ranking.hpp"
#include "powerwise/tiebreak.hpp"

namespace powerwise {

struct PowerwiseResult {
    PowerRatingTable ratings;
    PowerwiseTable table;
    RankingList ranking;
};

/// Power ratings, the pairwise tournament and tie-breaking in one call.
PowerwiseResult run_powerwise(const SeasonDataset& dataset, const SolverConfig& solver = {},
                              const ComparisonConfig& comparison = {},
                              const TieBreakConfig& tiebreak = {});

}  // namespace powerwise
