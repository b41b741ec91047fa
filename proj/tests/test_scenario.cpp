#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <sstream>

#include "dirac_noise/errors.hpp"
#include "dirac_noise/scenario.hpp"
#include "test_support.hpp"

using namespace dirac_noise;
using namespace dirac_noise::testing;
using Catch::Approx;

namespace {

ScenarioConfig short_config(const std::string& state, double m = 1.0) {
  ScenarioConfig c;
  c.initial_state = state;
  c.m_over_p = m;
  c.t_max = 3.0;
  c.dt = 0.05;
  return c;
}

TrajectoryRecord synthetic(double t_max, double dt, double (*f)(double)) {
  TrajectoryRecord traj;
  traj.config.t_max = t_max;
  traj.config.dt = dt;
  for (double t : sample_times(t_max, dt)) {
    CorrelationSample s;
    s.t = t;
    s.negativity = f(t);
    s.discord_1 = 0.01 + 0.001 * t;
    s.purity = 1.0 - 0.01 * t;
    traj.samples.push_back(s);
  }
  return traj;
}

ConfigFile parse(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

bool same_samples(const TrajectoryRecord& a, const TrajectoryRecord& b) {
  if (a.samples.size() != b.samples.size()) return false;
  for (std::size_t k = 0; k < a.samples.size(); ++k) {
    const auto& x = a.samples[k];
    const auto& y = b.samples[k];
    if (x.t != y.t || x.negativity != y.negativity || x.discord_1 != y.discord_1 ||
        x.discord_2 != y.discord_2 || x.purity != y.purity || x.min_eigenvalue != y.min_eigenvalue ||
        x.trace_deviation != y.trace_deviation)
      return false;
  }
  return true;
}

}  // namespace

TEST_CASE("named initial states", "[scenario]") {
  CHECK(initial_state("a").matrix() == ComplexMatrix::diagonal({1.0, 0.0, 0.0, 0.0}));
  CHECK(initial_state("d").matrix() == ComplexMatrix::diagonal({0.0, 0.0, 0.0, 1.0}));

  const auto cat = initial_state("cat");
  const auto werner = initial_state("werner");
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      const bool cat_entry = (i == 0 || i == 3) && (j == 0 || j == 3);
      const bool werner_entry = (i == 1 || i == 2) && (j == 1 || j == 2);
      CHECK(std::abs(cat(i, j) - (cat_entry ? 0.5 : 0.0)) < 1e-15);
      CHECK(std::abs(werner(i, j) - (werner_entry ? 0.5 : 0.0)) < 1e-15);
    }

  const ComplexMatrix mixed = 0.25 * ComplexMatrix::identity(4);
  CHECK(initial_state("custom", mixed).matrix() == mixed);
  CHECK_THROWS_AS(initial_state("custom"), UsageError);
  CHECK_THROWS_AS(initial_state("custom", ComplexMatrix::identity(4)), InvalidInput);
  try {
    initial_state("bell");
    FAIL("expected UsageError");
  } catch (const UsageError& e) {
    CHECK(std::string(e.what()).find("werner") != std::string::npos);
  }
}

TEST_CASE("sample_times", "[scenario]") {
  CHECK(sample_times(1.0, 1.0) == std::vector<double>{0.0, 1.0});
  const auto ts = sample_times(20.0, 0.01);
  CHECK(ts.size() == 2001);
  CHECK(ts.front() == 0.0);
  CHECK(ts.back() == Approx(20.0));
  for (std::size_t k = 1; k < ts.size(); ++k) CHECK(ts[k] > ts[k - 1]);
}

TEST_CASE("config validation", "[scenario]") {
  ScenarioConfig c;
  CHECK_NOTHROW(validate(c));
  c.dt = 0.0;
  CHECK_THROWS_AS(validate(c), UsageError);
  c = ScenarioConfig{};
  c.dt = 30.0;
  CHECK_THROWS_AS(validate(c), UsageError);
  c = ScenarioConfig{};
  c.t_max = -1;
  CHECK_THROWS_AS(validate(c), UsageError);
  c = ScenarioConfig{};
  c.m_over_p = -1;
  CHECK_THROWS_AS(validate(c), UsageError);
  c = ScenarioConfig{};
  c.gamma_over_p = -0.5;
  CHECK_THROWS_AS(validate(c), UsageError);
  c = ScenarioConfig{};
  c.initial_state = "zzz";
  CHECK_THROWS_AS(validate(c), UsageError);
  c = ScenarioConfig{};
  c.eps_alive = 1e-9;
  CHECK_THROWS_AS(validate(c), UsageError);
}

TEST_CASE("parse_config", "[scenario]") {
  const ConfigFile f = parse(
      "# leading comment\n"
      "m_over_p = 1\n"
      "E_over_p=2   # trailing comment\n"
      "kappa=0.5\nmu=0.25\ntheta=0.7\ngamma_over_p=0.1\n"
      "initial_state = werner\n"
      "t_max=5\ndt=0.5\noutputs=/tmp/x\nemit_plots=true\neps_dead=1e-7\neps_alive=0.05\n\n");
  CHECK(f.m_over_p_grid == std::vector<double>{1.0});
  const ScenarioConfig& c = f.config;
  CHECK(c.E_over_p == 2.0);
  CHECK(c.kappa == 0.5);
  CHECK(c.mu == 0.25);
  CHECK(c.theta == 0.7);
  CHECK(c.gamma_over_p == 0.1);
  CHECK(c.initial_state == "werner");
  CHECK(c.t_max == 5.0);
  CHECK(c.dt == 0.5);
  CHECK(c.outputs == "/tmp/x");
  CHECK(c.emit_plots);
  CHECK(c.eps_dead == 1e-7);
  CHECK(c.eps_alive == 0.05);

  const DiracParams q = c.dirac_params();
  CHECK(q.p == 1.0);
  CHECK(q.E_field == 2.0);
  CHECK(c.noise_params().gamma_rate == 0.1);

  const ConfigFile sweep = parse("m_over_p = 0, 0.5,1\n");
  CHECK(sweep.m_over_p_grid == std::vector<double>{0.0, 0.5, 1.0});

  const ConfigFile custom = parse(
      "initial_state=custom\n"
      "custom_rho=0.5,0,0,0.5:0, 0,0,0,0, 0,0,0,0, 0.5,0,0,0.5\n");
  REQUIRE(custom.config.custom_state.has_value());
  CHECK((*custom.config.custom_state)(0, 3) == Complex(0.5));

  const ConfigFile imag = parse(
      "initial_state=custom\n"
      "custom_rho=0.5,0:-0.5,0,0, 0:0.5,0.5,0,0, 0,0,0,0, 0,0,0,0\n");
  CHECK((*imag.config.custom_state)(0, 1) == Complex(0.0, -0.5));
}

TEST_CASE("parse_config errors", "[scenario]") {
  CHECK_THROWS_AS(parse("bogus=1\n"), UsageError);
  CHECK_THROWS_AS(parse("m_over_p\n"), UsageError);
  CHECK_THROWS_AS(parse("dt=abc\n"), UsageError);
  CHECK_THROWS_AS(parse("dt=nan\n"), UsageError);
  CHECK_THROWS_AS(parse("emit_plots=maybe\n"), UsageError);
  CHECK_THROWS_AS(parse("m_over_p=1,-2\n"), UsageError);
  CHECK_THROWS_AS(parse("initial_state=custom\n"), UsageError);
  CHECK_THROWS_AS(parse("initial_state=custom\ncustom_rho=1,0,0\n"), UsageError);
  CHECK_THROWS_AS(parse("initial_state=custom\ncustom_rho=1,0,0,0,0,0,0,0,0,0,0,0,0,0,0,1\n"),
                  UsageError);
  CHECK_THROWS_AS(load_config("/nonexistent/dir/config.txt"), UsageError);
}

TEST_CASE("trajectory basics", "[scenario]") {
  ScenarioConfig c = short_config("a");
  const TrajectoryRecord traj = run_trajectory(c);
  REQUIRE(traj.samples.size() == 61);
  const auto& first = traj.samples.front();
  CHECK(first.t == 0.0);
  CHECK(first.negativity == 0.0);
  CHECK(first.discord_1 == 0.0);
  CHECK(first.discord_2 == 0.0);
  CHECK(first.purity == 1.0);
  CHECK(traj.wall_time.count() >= 0.0);

  c.gamma_over_p = 0.0;
  for (const auto& s : run_trajectory(c).samples) CHECK(s.purity == Approx(1.0).epsilon(1e-10));

  c = short_config("a");
  c.t_max = c.dt;
  CHECK(run_trajectory(c).samples.size() == 2);
}

TEST_CASE("trajectory samples satisfy the invariants", "[scenario][property]") {
  for (const char* state : {"a", "b", "cat", "werner"}) {
    for (double m : {0.0, 1.0, 10.0}) {
      const TrajectoryRecord traj = run_trajectory(short_config(state, m));
      for (const auto& s : traj.samples) {
        CHECK(std::abs(s.trace_deviation) <= 1e-10);
        CHECK(s.min_eigenvalue >= -1e-9);
        CHECK(s.purity >= 0.25 - 1e-9);
        CHECK(s.purity <= 1 + 1e-9);
        CHECK((s.negativity / 2) * (s.negativity / 2) <= s.discord_1 + 1e-9);
      }
    }
  }
}

TEST_CASE("parallel runner is bitwise identical to the serial reference", "[scenario]") {
  for (const char* state : {"a", "cat", "werner"}) {
    const ScenarioConfig c = short_config(state);
    const TrajectoryRecord serial = run_trajectory_serial(c);
    const TrajectoryRecord parallel = run_trajectory(c);
    CHECK(same_samples(serial, parallel));
    CHECK(same_samples(parallel, run_trajectory(c)));
  }
}

TEST_CASE("sweep matches independent trajectories", "[scenario]") {
  const ScenarioConfig base = short_config("cat");
  const std::vector<double> grid = {0.0, 0.5, 1.0};
  const auto parallel = run_sweep(base, grid, true);
  const auto serial = run_sweep(base, grid, false);
  REQUIRE(parallel.size() == grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    CHECK(parallel[k].m_over_p == grid[k]);
    CHECK(same_samples(parallel[k].record, serial[k].record));
    CHECK(parallel[k].report == serial[k].report);
    ScenarioConfig single = base;
    single.m_over_p = grid[k];
    CHECK(same_samples(parallel[k].record, run_trajectory_serial(single)));
  }
}

TEST_CASE("invalid configs abort the runner", "[scenario]") {
  ScenarioConfig c = short_config("a");
  c.dt = -1;
  CHECK_THROWS_AS(run_trajectory(c), UsageError);
  CHECK_THROWS_AS(run_trajectory_serial(c), UsageError);
}

TEST_CASE("detect_features on synthetic traces", "[scenario]") {
  const auto zero = synthetic(5.0, 0.01, [](double) { return 0.0; });
  const FeatureReport flat = detect_features(zero);
  REQUIRE(flat.death_intervals.size() == 1);
  CHECK(flat.death_intervals[0].first == 0.0);
  CHECK(flat.death_intervals[0].second == Approx(5.0));
  CHECK(flat.revival_count == 0);
  CHECK(flat.residual_discord_in_death == Approx(0.01));
  CHECK(flat.max_negativity == 0.0);

  const auto sine = synthetic(7.0, 0.01, [](double t) { return std::abs(std::sin(t)); });
  const FeatureReport osc = detect_features(sine, 1e-6, 1e-2);
  // On this grid only t = 0 falls below 1e-6, so the zero set is probed with a wider threshold.
  const FeatureReport wide = detect_features(sine, 2e-2, 5e-2);
  REQUIRE(wide.death_intervals.size() == 3);
  CHECK(wide.death_intervals[0].first == 0.0);
  CHECK(wide.death_intervals[1].first < std::numbers::pi);
  CHECK(wide.death_intervals[1].second > std::numbers::pi);
  CHECK(wide.revival_count >= 1);
  CHECK(wide.max_negativity == Approx(1.0).epsilon(1e-3));
  CHECK(osc.min_negativity == 0.0);

  const auto alive = synthetic(2.0, 0.1, [](double) { return 0.3; });
  const FeatureReport none = detect_features(alive);
  CHECK(none.death_intervals.empty());
  CHECK(none.revival_count == 0);
  CHECK(std::isinf(none.residual_discord_in_death));
  CHECK(none.final_purity == Approx(0.98));

  // A single isolated sub-threshold sample is not a death interval.
  const auto blip = synthetic(1.0, 0.1, [](double t) { return std::abs(t - 0.5) < 1e-9 ? 0.0 : 0.2; });
  CHECK(detect_features(blip).death_intervals.empty());
}
