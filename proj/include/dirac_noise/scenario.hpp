#pragma once

#include <chrono>
#include <filesystem>
#include <iosfwd>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dirac_noise/correlations.hpp"
#include "dirac_noise/dirac_model.hpp"
#include "dirac_noise/noise_channel.hpp"

namespace dirac_noise {

// Energies, rates and times are expressed in units of the momentum p (p = 1).
struct ScenarioConfig {
  double m_over_p = 1.0;
  double E_over_p = 1.0;
  double kappa = 1.0;
  double mu = 1.0;
  double theta = std::numbers::pi / 4;
  double gamma_over_p = 0.5;
  std::string initial_state = "a";
  std::optional<ComplexMatrix> custom_state;  // required when initial_state == "custom"
  double t_max = 20.0;
  double dt = 0.01;
  std::filesystem::path outputs = "out";
  bool emit_plots = false;
  double eps_dead = 1e-6;
  double eps_alive = 1e-2;

  DiracParams dirac_params() const;
  NoiseParams noise_params() const;
};

// Throws UsageError on a malformed configuration.
void validate(const ScenarioConfig& config);

// Parsed key=value file. A comma-separated m_over_p value selects sweep mode.
struct ConfigFile {
  ScenarioConfig config;
  std::vector<double> m_over_p_grid;
};

ConfigFile parse_config(std::istream& in);
ConfigFile load_config(const std::filesystem::path& path);

inline constexpr std::string_view kInitialStateNames = "a, b, c, d, cat, werner, custom";

// Named initial state on the |a>,|b>,|c>,|d> basis. "custom" requires a matrix.
DensityMatrix initial_state(std::string_view name,
                            const std::optional<ComplexMatrix>& custom = std::nullopt);

struct TrajectoryRecord {
  ScenarioConfig config;
  std::vector<CorrelationSample> samples;
  std::chrono::duration<double> wall_time{0.0};
};

// Sample times k*dt for k = 0..floor(t_max/dt).
std::vector<double> sample_times(double t_max, double dt);

// Reference implementation: one sample after another.
TrajectoryRecord run_trajectory_serial(const ScenarioConfig& config);
// OpenMP over time samples; bitwise identical to the serial runner.
TrajectoryRecord run_trajectory(const ScenarioConfig& config);

struct FeatureReport {
  std::vector<std::pair<double, double>> death_intervals;
  int revival_count = 0;
  double min_negativity = 0.0;
  double max_negativity = 0.0;
  // +inf when there is no death interval.
  double residual_discord_in_death = std::numeric_limits<double>::infinity();
  double final_purity = 1.0;

  friend bool operator==(const FeatureReport&, const FeatureReport&) = default;
};

inline constexpr double kDefaultEpsDead = 1e-6;
inline constexpr double kDefaultEpsAlive = 1e-2;

// Death intervals are maximal runs of >= 2 consecutive samples with N < eps_dead.
// A revival is a death interval followed, before the next one, by N > eps_alive.
FeatureReport detect_features(const TrajectoryRecord& traj, double eps_dead = kDefaultEpsDead,
                              double eps_alive = kDefaultEpsAlive);

struct SweepPoint {
  double m_over_p = 0.0;
  TrajectoryRecord record;
  FeatureReport report;
};

// One trajectory per grid value; grid points run concurrently when parallel.
std::vector<SweepPoint> run_sweep(const ScenarioConfig& base, const std::vector<double>& grid,
                                  bool parallel = true);

}  // namespace dirac_noise
