#include "dirac_noise/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <istream>
#include <sstream>

#include "dirac_noise/errors.hpp"

namespace dirac_noise {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

double parse_real(const std::string& text, const std::string& key) {
  double value = 0.0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
    throw UsageError("config key '" + key + "': expected a finite number, got '" + text + "'");
  }
  return value;
}

bool parse_bool(const std::string& text, const std::string& key) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw UsageError("config key '" + key + "': expected true/false, got '" + text + "'");
}

// 16 comma-separated entries, row-major; each "re" or "re:im".
ComplexMatrix parse_custom_matrix(const std::string& text) {
  const auto entries = split(text, ',');
  if (entries.size() != 16) {
    throw UsageError("config key 'custom_rho': expected 16 entries, got " +
                     std::to_string(entries.size()));
  }
  ComplexMatrix m(4);
  for (std::size_t k = 0; k < 16; ++k) {
    const auto parts = split(entries[k], ':');
    if (parts.size() > 2) throw UsageError("config key 'custom_rho': bad entry '" + entries[k] + "'");
    const double re = parse_real(parts[0], "custom_rho");
    const double im = parts.size() == 2 ? parse_real(parts[1], "custom_rho") : 0.0;
    m(k / 4, k % 4) = Complex(re, im);
  }
  return m;
}

void check_sample(const CorrelationSample& s, double hermiticity) {
  const double t = s.t;
  char buf[96];
  auto fail = [&](const char* name) { throw InvariantViolation(name, t, buf); };
  if (!(hermiticity <= kHermiticityTol)) {
    std::snprintf(buf, sizeof buf, "hermiticity defect %.3e", hermiticity);
    fail("hermiticity");
  }
  if (!(std::abs(s.trace_deviation) <= kTraceTol)) {
    std::snprintf(buf, sizeof buf, "|Tr rho - 1| = %.3e", std::abs(s.trace_deviation));
    fail("trace preservation");
  }
  if (!(s.min_eigenvalue >= -kPositivityTol)) {
    std::snprintf(buf, sizeof buf, "min eigenvalue %.3e", s.min_eigenvalue);
    fail("positivity");
  }
  if (!(s.purity >= 0.25 - kPurityTol && s.purity <= 1.0 + kPurityTol)) {
    std::snprintf(buf, sizeof buf, "purity %.12g", s.purity);
    fail("purity range");
  }
  if (!(s.negativity >= 0.0 && s.negativity <= 1.0 + 1e-9)) {
    std::snprintf(buf, sizeof buf, "negativity %.12g", s.negativity);
    fail("negativity range");
  }
  if (!(s.discord_1 >= 0.0 && s.discord_1 <= 0.5 + 1e-9 && s.discord_2 >= 0.0 &&
        s.discord_2 <= 0.5 + 1e-9)) {
    std::snprintf(buf, sizeof buf, "discord (%.12g, %.12g)", s.discord_1, s.discord_2);
    fail("discord range");
  }
  const double half_n = 0.5 * s.negativity;
  if (!(half_n * half_n <= s.discord_1 + 1e-9)) {
    std::snprintf(buf, sizeof buf, "(N/2)^2 = %.6e > D1 = %.6e", half_n * half_n, s.discord_1);
    fail("negativity-discord hierarchy");
  }
}

struct TrajectoryKernel {
  DensityMatrix rho0;
  Propagator propagator;
  NoiseParams noise;

  explicit TrajectoryKernel(const ScenarioConfig& config)
      : rho0(initial_state(config.initial_state, config.custom_state)),
        propagator(config.dirac_params()),
        noise(config.noise_params()) {}

  CorrelationSample operator()(double t) const {
    const DensityMatrix rho = t == 0.0 ? rho0 : evolve_noisy(rho0, propagator, noise, t);
    const CorrelationSample s = measure(rho, t);
    check_sample(s, hermiticity_defect(rho.matrix()));
    return s;
  }
};

}  // namespace

DiracParams ScenarioConfig::dirac_params() const {
  DiracParams p;
  p.m = m_over_p;
  p.p = 1.0;
  p.kappa = kappa;
  p.mu = mu;
  p.E_field = E_over_p;
  p.theta = theta;
  return p;
}

NoiseParams ScenarioConfig::noise_params() const { return NoiseParams{gamma_over_p}; }

void validate(const ScenarioConfig& config) {
  if (!(config.t_max > 0.0) || !std::isfinite(config.t_max)) {
    throw UsageError("t_max must be a positive finite number");
  }
  if (!(config.dt > 0.0) || !std::isfinite(config.dt)) throw UsageError("dt must be positive");
  if (config.dt > config.t_max) throw UsageError("dt must not exceed t_max");
  if (!(config.eps_dead >= 0.0) || !(config.eps_alive >= config.eps_dead)) {
    throw UsageError("thresholds must satisfy 0 <= eps_dead <= eps_alive");
  }
  try {
    validate(config.dirac_params());
    validate(config.noise_params());
    (void)initial_state(config.initial_state, config.custom_state);
  } catch (const InvalidInput& e) {
    throw UsageError(e.what());
  }
}

ConfigFile parse_config(std::istream& in) {
  ConfigFile file;
  ScenarioConfig& c = file.config;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw UsageError("config line " + std::to_string(line_no) + ": expected key=value");
    }
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const std::string value = trim(std::string_view(body).substr(eq + 1));

    if (key == "m_over_p") {
      file.m_over_p_grid.clear();
      for (const auto& item : split(value, ',')) file.m_over_p_grid.push_back(parse_real(item, key));
      c.m_over_p = file.m_over_p_grid.front();
    } else if (key == "E_over_p") {
      c.E_over_p = parse_real(value, key);
    } else if (key == "kappa") {
      c.kappa = parse_real(value, key);
    } else if (key == "mu") {
      c.mu = parse_real(value, key);
    } else if (key == "theta") {
      c.theta = parse_real(value, key);
    } else if (key == "gamma_over_p") {
      c.gamma_over_p = parse_real(value, key);
    } else if (key == "initial_state") {
      c.initial_state = value;
    } else if (key == "custom_rho") {
      c.custom_state = parse_custom_matrix(value);
    } else if (key == "t_max") {
      c.t_max = parse_real(value, key);
    } else if (key == "dt") {
      c.dt = parse_real(value, key);
    } else if (key == "outputs") {
      c.outputs = value;
    } else if (key == "emit_plots") {
      c.emit_plots = parse_bool(value, key);
    } else if (key == "eps_dead") {
      c.eps_dead = parse_real(value, key);
    } else if (key == "eps_alive") {
      c.eps_alive = parse_real(value, key);
    } else {
      throw UsageError("config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
  }
  if (file.m_over_p_grid.empty()) file.m_over_p_grid.push_back(c.m_over_p);
  for (double m : file.m_over_p_grid) {
    ScenarioConfig probe = c;
    probe.m_over_p = m;
    validate(probe);
  }
  return file;
}

ConfigFile load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file '" + path.string() + "'");
  return parse_config(in);
}

DensityMatrix initial_state(std::string_view name, const std::optional<ComplexMatrix>& custom) {
  if (name == "a") return DensityMatrix::pure({1.0, 0.0, 0.0, 0.0});
  if (name == "b") return DensityMatrix::pure({0.0, 1.0, 0.0, 0.0});
  if (name == "c") return DensityMatrix::pure({0.0, 0.0, 1.0, 0.0});
  if (name == "d") return DensityMatrix::pure({0.0, 0.0, 0.0, 1.0});
  if (name == "cat") return DensityMatrix::pure({1.0, 0.0, 0.0, 1.0});
  if (name == "werner") return DensityMatrix::pure({0.0, 1.0, 1.0, 0.0});
  if (name == "custom") {
    if (!custom.has_value()) throw UsageError("initial_state 'custom' requires custom_rho");
    if (custom->dim() != 4) throw UsageError("custom_rho must be 4x4");
    return DensityMatrix(*custom);
  }
  throw UsageError("unknown initial state '" + std::string(name) +
                   "'; valid names: " + std::string(kInitialStateNames));
}

std::vector<double> sample_times(double t_max, double dt) {
  const auto steps = static_cast<std::size_t>(std::floor(t_max / dt + 1e-9));
  std::vector<double> times(steps + 1);
  for (std::size_t k = 0; k <= steps; ++k) times[k] = static_cast<double>(k) * dt;
  return times;
}

TrajectoryRecord run_trajectory_serial(const ScenarioConfig& config) {
  validate(config);
  const auto start = std::chrono::steady_clock::now();
  const TrajectoryKernel kernel(config);
  TrajectoryRecord record;
  record.config = config;
  for (double t : sample_times(config.t_max, config.dt)) record.samples.push_back(kernel(t));
  record.wall_time = std::chrono::steady_clock::now() - start;
  return record;
}

TrajectoryRecord run_trajectory(const ScenarioConfig& config) {
  validate(config);
  const auto start = std::chrono::steady_clock::now();
  const TrajectoryKernel kernel(config);
  const std::vector<double> times = sample_times(config.t_max, config.dt);
  const auto n = static_cast<std::ptrdiff_t>(times.size());

  TrajectoryRecord record;
  record.config = config;
  record.samples.resize(times.size());
  std::vector<std::exception_ptr> errors(times.size());

#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    try {
      record.samples[k] = kernel(times[k]);
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }
  // Report the earliest failure, as the serial runner would.
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  record.wall_time = std::chrono::steady_clock::now() - start;
  return record;
}

FeatureReport detect_features(const TrajectoryRecord& traj, double eps_dead, double eps_alive) {
  FeatureReport report;
  const auto& s = traj.samples;
  if (s.empty()) return report;

  report.min_negativity = s.front().negativity;
  report.max_negativity = s.front().negativity;
  for (const auto& sample : s) {
    report.min_negativity = std::min(report.min_negativity, sample.negativity);
    report.max_negativity = std::max(report.max_negativity, sample.negativity);
  }
  report.final_purity = s.back().purity;

  // [first, last] sample indices of each death run.
  std::vector<std::pair<std::size_t, std::size_t>> runs;
  for (std::size_t i = 0; i < s.size();) {
    if (s[i].negativity < eps_dead) {
      std::size_t j = i;
      while (j + 1 < s.size() && s[j + 1].negativity < eps_dead) ++j;
      if (j > i) runs.emplace_back(i, j);
      i = j + 1;
    } else {
      ++i;
    }
  }

  for (std::size_t r = 0; r < runs.size(); ++r) {
    const auto [first, last] = runs[r];
    report.death_intervals.emplace_back(s[first].t, s[last].t);
    for (std::size_t i = first; i <= last; ++i) {
      report.residual_discord_in_death = std::min(report.residual_discord_in_death, s[i].discord_1);
    }
    const std::size_t stop = r + 1 < runs.size() ? runs[r + 1].first : s.size();
    for (std::size_t i = last + 1; i < stop; ++i) {
      if (s[i].negativity > eps_alive) {
        ++report.revival_count;
        break;
      }
    }
  }
  return report;
}

std::vector<SweepPoint> run_sweep(const ScenarioConfig& base, const std::vector<double>& grid,
                                  bool parallel) {
  std::vector<SweepPoint> points(grid.size());
  std::vector<std::exception_ptr> errors(grid.size());
  const auto n = static_cast<std::ptrdiff_t>(grid.size());

#pragma omp parallel for schedule(dynamic) if (parallel)
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    try {
      ScenarioConfig config = base;
      config.m_over_p = grid[k];
      points[k].m_over_p = grid[k];
      points[k].record = run_trajectory_serial(config);
      points[k].report = detect_features(points[k].record, config.eps_dead, config.eps_alive);
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return points;
}

}  // namespace dirac_noise
