#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "powerwise/experiments.hpp"
#include "powerwise/pairwise.hpp"
#include "powerwise/power_rating.hpp"
#include "powerwise/ranking.hpp"
#include "powerwise/rpi.hpp"
#include "powerwise/selection.hpp"

namespace powerwise {

enum class DocFormat { text, csv, svg };

DocFormat parse_doc_format(std::string_view text);

/// Ranking as an aligned table, `rank,team,points,tie_group,audit` CSV, or a
/// bar chart. Teams in a tie group are marked with `*` (bold in SVG).
std::string render_ranking(const RankingList& list, DocFormat format, std::string_view title = {});

/// Reads the CSV form of render_ranking back.
RankingList parse_ranking_csv(std::istream& in, int season = 0);

std::string ratings_csv(const PowerRatingTable& table);       // team,rating,component,games_played
std::string solver_summary_json(const PowerRatingTable& table);
std::string rpi_csv(const RpiTable& table);                   // team,rpi,wp,owp,oowp,rank
std::string pairwise_csv(const PowerwiseTable& table);        // team_a,team_b,winner,deciding_step,evidence
std::string points_csv(const PowerwiseTable& table);          // team,points,h2h_wins,co_wins,pr_wins
std::string decisiveness_text(const PowerwiseTable& table);
std::string team_decomposition_text(const PowerwiseTable& table, std::string_view team);

std::string selection_text(const SelectionResult& mine, const std::vector<Team>* official,
                           const SelectionDiff* diff);
std::string selection_csv(const SelectionResult& mine, const std::vector<Team>* official);

std::string perturbation_csv(const PerturbationReport& report);   // team,old_rank,new_rank,...
std::string perturbation_json(const PerturbationReport& report);
std::string perturbation_text(const PerturbationReport& report);
std::string perturbation_svg(const PerturbationReport& report);

std::string tau_points_csv(const RankingList& x, const RankingList& y);
std::string tau_json(const TauResult& full, const TauResult* windowed,
                     std::optional<std::pair<int, int>> window);
std::string tau_svg(const RankingList& x, const RankingList& y, std::string_view x_label,
                    std::string_view y_label);

std::string regression_samples_csv(const RegressionReport& report);
std::string regression_band_csv(const RegressionReport& report);
std::string regression_json(const RegressionReport& report);
std::string regression_svg(const RegressionReport& report, std::string_view x_label);

/// Collects emitted files under one output directory and writes the
/// `report.txt` index last.
class ReportWriter {
  public:
    ReportWriter(std::filesystem::path root, std::string title);

    /// Writes `content` to `root/relative` (creating directories) and lists it
    /// under `heading` in the index.
    void emit(const std::string& heading, const std::filesystem::path& relative,
              std::string_view content);

    /// Writes report.txt. A timestamp line is added only when requested.
    void finish(bool with_timestamp = false);

    const std::vector<std::filesystem::path>& emitted_files() const { return files_; }

  private:
    std::filesystem::path root_;
    std::string title_;
    std::vector<std::pair<std::string, std::filesystem::path>> sections_;
    std::vector<std::filesystem::path> files_;
};

}  // namespace powerwise
