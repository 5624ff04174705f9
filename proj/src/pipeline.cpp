#include "powerwise/pipeline.hpp"

namespace powerwise {

PowerwiseResult run_powerwise(const SeasonDataset& dataset, const SolverConfig& solver,
                              const ComparisonConfig& comparison, const TieBreakConfig& tiebreak) {
    PowerwiseResult r;
    r.ratings = solve_power_ratings(dataset, solver);
    r.table = run_tournament(dataset, r.ratings, comparison);
    r.ranking = break_ties(r.table, dataset, r.ratings, comparison, tiebreak);
    return r;
}

}  // namespace powerwise
