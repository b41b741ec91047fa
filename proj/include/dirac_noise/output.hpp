#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "dirac_noise/scenario.hpp"

namespace dirac_noise {

inline constexpr const char* kTrajectoryCsvHeader =
    "t,negativity,discord_1,discord_2,purity,min_eigenvalue,trace_deviation";

// One row per sample, 12 significant digits.
void write_trajectory_csv(std::ostream& out, const TrajectoryRecord& traj);

nlohmann::json config_to_json(const ScenarioConfig& config);
ScenarioConfig config_from_json(const nlohmann::json& j);

// Keys: death_intervals, revival_count, min_negativity, max_negativity,
// residual_discord_in_death (null when there is no death interval),
// final_purity, config.
nlohmann::json report_to_json(const FeatureReport& report, const ScenarioConfig& config);
FeatureReport report_from_json(const nlohmann::json& j);

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  std::string color = "#1f77b4";
  bool dashed = false;
};

// Minimal standalone SVG line chart: axes, ticks, one polyline per series.
std::string render_line_chart(const std::string& title, const std::string& x_label,
                              const std::string& y_label, const std::vector<PlotSeries>& series);

// Writes trajectory.csv, report.json and (if config.emit_plots) negativity.svg
// and discord.svg into dir. Throws IoError naming the path on failure.
std::vector<std::filesystem::path> emit_outputs(const TrajectoryRecord& traj,
                                                const FeatureReport& report,
                                                const ScenarioConfig& config,
                                                const std::filesystem::path& dir);

// One subdirectory per grid point plus index.csv in dir.
std::vector<std::filesystem::path> emit_sweep(const std::vector<SweepPoint>& points,
                                              const ScenarioConfig& base,
                                              const std::filesystem::path& dir);

}  // namespace dirac_noise
