#include "dirac_noise/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

#include "dirac_noise/correlations.hpp"
#include "dirac_noise/dirac_model.hpp"
#include "dirac_noise/errors.hpp"
#include "dirac_noise/ion_map.hpp"
#include "dirac_noise/noise_channel.hpp"
#include "dirac_noise/output.hpp"
#include "dirac_noise/scenario.hpp"

namespace dirac_noise::acceptance {

namespace {

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

// m/p, E/p, kappa, mu grid at p = 1, theta = pi/4.
std::vector<DiracParams> parameter_grid() {
  std::vector<DiracParams> grid;
  for (double m : {0.0, 0.5, 1.0, 10.0})
    for (double e : {0.5, 1.0, 2.0})
      for (double k : {0.5, 1.0})
        for (double mu : {0.5, 1.0}) {
          DiracParams p;
          p.m = m, p.p = 1.0, p.E_field = e, p.kappa = k, p.mu = mu;
          grid.push_back(p);
        }
  return grid;
}

ScenarioConfig reference_config(double m_over_p, const std::string& initial) {
  ScenarioConfig c;
  c.m_over_p = m_over_p;
  c.E_over_p = 1.0;
  c.kappa = 1.0;
  c.mu = 1.0;
  c.gamma_over_p = 0.5;
  c.initial_state = initial;
  c.t_max = 20.0;
  c.dt = 0.01;
  return c;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

struct Context {
  // Trajectories produced by criteria 7 and 8, reused by 4 and 9.
  std::vector<TrajectoryRecord> runs;
};

CriterionResult spectrum_oracle(Context&) {
  double worst = 0.0;
  for (const DiracParams& p : parameter_grid()) {
    std::vector<double> closed;
    for (int n = 0; n < 2; ++n)
      for (int s = 0; s < 2; ++s) closed.push_back(eigenvalue_closed_form(p, n, s));
    std::sort(closed.begin(), closed.end());
    const auto numeric = hermitian_eigenvalues(build_dirac_hamiltonian(p));
    for (int k = 0; k < 4; ++k) {
      worst = std::max(worst, std::abs(closed[k] - numeric[k]) / std::abs(numeric[k]));
    }
  }
  DiracParams anchor;
  anchor.p = 1, anchor.kappa = 1, anchor.mu = 1, anchor.E_field = 1;
  const double s5 = std::sqrt(5.0);
  const std::vector<double> expect0 = {-s5, -1.0, 1.0, s5};
  const double hi = std::sqrt(4 + 2 * std::sqrt(2.0)), lo = std::sqrt(4 - 2 * std::sqrt(2.0));
  const std::vector<double> expect1 = {-hi, -lo, lo, hi};
  double anchor_err = 0.0;
  anchor.m = 0.0;
  auto v0 = hermitian_eigenvalues(build_dirac_hamiltonian(anchor));
  anchor.m = 1.0;
  auto v1 = hermitian_eigenvalues(build_dirac_hamiltonian(anchor));
  for (int k = 0; k < 4; ++k) {
    anchor_err = std::max(anchor_err, std::abs(v0[k] - expect0[k]) / std::abs(expect0[k]));
    anchor_err = std::max(anchor_err, std::abs(v1[k] - expect1[k]) / std::abs(expect1[k]));
  }
  const bool ok = worst <= 1e-10 && anchor_err <= 1e-10;
  return {1, "spectrum oracle", ok,
          "max rel err grid " + sci(worst) + ", anchors " + sci(anchor_err) + " (tol 1e-10)"};
}

CriterionResult projector_suite(Context&) {
  double worst = 0.0;
  int checked = 0;
  const ComplexMatrix id = ComplexMatrix::identity(4);
  for (const DiracParams& p : parameter_grid()) {
    SpectralData sd;
    try {
      sd = eigenprojectors(p);
    } catch (const DegenerateSpectrum&) {
      continue;
    }
    ++checked;
    const ComplexMatrix h = build_dirac_hamiltonian(p);
    ComplexMatrix sum(4);
    for (int a = 0; a < 4; ++a) {
      const ComplexMatrix& pa = sd.projectors[a];
      sum += pa;
      worst = std::max(worst, std::abs(pa.trace() - 1.0));
      worst = std::max(worst, max_abs_diff(h * pa, sd.lambdas[a] * pa));
      worst = std::max(worst, std::abs((h * pa).trace() - sd.lambdas[a]));
      for (int b = 0; b < 4; ++b) {
        const ComplexMatrix expected = a == b ? pa : ComplexMatrix(4);
        worst = std::max(worst, max_abs_diff(pa * sd.projectors[b], expected));
      }
    }
    worst = std::max(worst, max_abs_diff(sum, id));
  }
  const bool ok = worst <= 1e-10 && checked > 0;
  return {2, "projector suite", ok,
          std::to_string(checked) + " nondegenerate points, max defect " + sci(worst) +
              " (tol 1e-10)"};
}

CriterionResult ion_equivalence(Context&) {
  double worst = 0.0;
  for (const DiracParams& p : parameter_grid()) {
    worst = std::max(worst, max_abs_diff(assemble_ion_hamiltonian(dirac_to_ion(p), p.p),
                                         build_dirac_hamiltonian(p)));
  }
  return {3, "ion-map equivalence", worst <= 1e-12,
          "max entry diff " + sci(worst) + " (tol 1e-12)"};
}

CriterionResult channel_cptp(Context& ctx) {
  double completeness = 0.0;
  for (double gamma : {0.0, 0.1, 0.5, 1.0, 3.0})
    for (double t : {0.0, 0.01, 0.5, 1.0, 2.0 * std::log(2.0), 5.0, 20.0, 100.0})
      completeness = std::max(completeness, completeness_defect(build_kraus_set({gamma}, t)));

  double trace_dev = 0.0, min_eig = 0.0, purity_lo = 1.0, purity_hi = 0.0;
  std::size_t samples = 0;
  for (const auto& run : ctx.runs) {
    for (const auto& s : run.samples) {
      ++samples;
      trace_dev = std::max(trace_dev, std::abs(s.trace_deviation));
      min_eig = std::min(min_eig, s.min_eigenvalue);
      purity_lo = std::min(purity_lo, s.purity);
      purity_hi = std::max(purity_hi, s.purity);
    }
  }
  const bool ok = completeness <= 1e-12 && trace_dev <= 1e-10 && min_eig >= -1e-9 &&
                  purity_lo >= 0.25 - 1e-9 && purity_hi <= 1.0 + 1e-9 && samples > 0;
  return {4, "channel CPTP", ok,
          "sum K^dag K defect " + sci(completeness) + ", " + std::to_string(samples) +
              " samples: max |Tr-1| " + sci(trace_dev) + ", min eig " + sci(min_eig) +
              ", purity in [" + std::to_string(purity_lo) + ", " + std::to_string(purity_hi) + "]"};
}

CriterionResult noiseless_limit(Context&) {
  double worst = 0.0;
  for (double m : {0.0, 1.0, 10.0}) {
    const DiracParams params = reference_config(m, "a").dirac_params();
    const SpectralData sd = eigenprojectors(params);
    const Propagator prop(params);
    for (const char* name : {"a", "cat", "werner"}) {
      const DensityMatrix rho0 = initial_state(name);
      for (double t : {0.5, 1.0, 5.0, 20.0}) {
        const DensityMatrix noisy = evolve_noisy(rho0, prop, NoiseParams{0.0}, t);
        const DensityMatrix reference = evolve_projector_sum(rho0, sd, t);
        worst = std::max(worst, max_abs_diff(noisy.matrix(), reference.matrix()));
      }
    }
  }
  return {5, "noiseless limit", worst <= 1e-10, "max entry diff " + sci(worst) + " (tol 1e-10)"};
}

CriterionResult measure_anchors(Context&) {
  const double r = 1.0 / std::sqrt(2.0);
  const DensityMatrix bell = DensityMatrix::pure({r, 0.0, 0.0, r});
  const DensityMatrix mixed(0.25 * ComplexMatrix::identity(4));
  const DensityMatrix product = DensityMatrix::pure({0.6, 0.8, 0.0, 0.0});  // |0> (x) (0.6|0>+0.8|1>)
  const DensityMatrix product2 = DensityMatrix::pure({0.5, Complex(0, 0.5), 0.5, Complex(0, 0.5)});
  const DensityMatrix isotropic(0.5 * bell.matrix() + 0.5 * 0.25 * ComplexMatrix::identity(4));

  double err = 0.0;
  err = std::max(err, std::abs(negativity(bell) - 1.0));
  err = std::max(err, std::abs(geometric_discord(bell, 1) - 0.5));
  err = std::max(err, std::abs(geometric_discord(bell, 2) - 0.5));
  for (const DensityMatrix* zero : {&mixed, &product, &product2}) {
    err = std::max(err, std::abs(negativity(*zero)));
    err = std::max(err, std::abs(geometric_discord(*zero, 1)));
    err = std::max(err, std::abs(geometric_discord(*zero, 2)));
  }
  err = std::max(err, std::abs(negativity(isotropic) - 0.25));
  return {6, "measure anchors", err <= 1e-10, "max err " + sci(err) + " (tol 1e-10)"};
}

CriterionResult death_revival_features(Context& ctx) {
  const TrajectoryRecord traj = run_trajectory(reference_config(1.0, "a"));
  ctx.runs.push_back(traj);
  const FeatureReport rep = detect_features(traj, 1e-6, 1e-2);

  int long_deaths = 0;
  int revived = 0;
  double min_discord = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < rep.death_intervals.size(); ++k) {
    const auto [start, end] = rep.death_intervals[k];
    for (const auto& s : traj.samples) {
      if (s.t >= start && s.t <= end) min_discord = std::min(min_discord, s.discord_1);
    }
    if (end - start < 0.1 - 1e-9) continue;
    ++long_deaths;
    const double next = k + 1 < rep.death_intervals.size()
                            ? rep.death_intervals[k + 1].first
                            : std::numeric_limits<double>::infinity();
    for (const auto& s : traj.samples) {
      if (s.t > end && s.t < next && s.negativity > 1e-2) {
        ++revived;
        break;
      }
    }
  }
  const bool ok = long_deaths >= 1 && revived >= 1 &&
                  (rep.death_intervals.empty() || min_discord > 1e-4);
  return {7, "sudden death and revival (initial a)", ok,
          std::to_string(rep.death_intervals.size()) + " death intervals (" +
              std::to_string(long_deaths) + " spanning >= 0.1/p, " + std::to_string(revived) +
              " revived), min N " + sci(rep.min_negativity) + ", min D1 in death " +
              (std::isfinite(min_discord) ? sci(min_discord) : std::string("n/a"))};
}

CriterionResult persistent_entanglement_features(Context& ctx) {
  bool ok = true;
  std::ostringstream detail;
  for (const char* name : {"cat", "werner"}) {
    for (double m : {0.0, 1.0}) {
      const TrajectoryRecord traj = run_trajectory(reference_config(m, name));
      ctx.runs.push_back(traj);
      const FeatureReport rep = detect_features(traj);
      const double initial = traj.samples.front().negativity;
      const double last = traj.samples.back().negativity;
      const bool pass = rep.min_negativity > 1e-3 &&
                        rep.max_negativity - rep.min_negativity > 0.05 && last < initial;
      ok = ok && pass;
      detail << name << "(m/p=" << m << "): min N " << sci(rep.min_negativity) << ", range "
             << sci(rep.max_negativity - rep.min_negativity) << ", final " << sci(last)
             << (pass ? "" : " [fail]") << "; ";
    }
  }
  return {8, "no sudden death (cat, werner)", ok, detail.str()};
}

CriterionResult hierarchy(Context& ctx) {
  for (double m : {0.0, 10.0}) ctx.runs.push_back(run_trajectory(reference_config(m, "a")));
  double worst = -std::numeric_limits<double>::infinity();
  std::size_t samples = 0;
  for (const auto& run : ctx.runs) {
    for (const auto& s : run.samples) {
      ++samples;
      worst = std::max(worst, 0.25 * s.negativity * s.negativity - s.discord_1);
    }
  }
  return {9, "negativity-discord hierarchy", worst <= 1e-9 && samples > 0,
          std::to_string(samples) + " samples, max (N/2)^2 - D1 = " + sci(worst) + " (tol 1e-9)"};
}

CriterionResult schmidt_states(Context&) {
  double err = 0.0;
  for (int k = 0; k <= 4; ++k) {
    const double chi = k * std::numbers::pi / 16;
    const DensityMatrix rho = DensityMatrix::pure({std::cos(chi), 0.0, 0.0, std::sin(chi)});
    const double s2 = std::sin(2 * chi);
    err = std::max(err, std::abs(negativity(rho) - std::abs(s2)));
    err = std::max(err, std::abs(geometric_discord(rho, 1) - 0.5 * s2 * s2));
  }
  return {10, "pure-state formulas", err <= 1e-10, "max err " + sci(err) + " (tol 1e-10)"};
}

CriterionResult determinism(Context&, std::chrono::steady_clock::time_point suite_start) {
  const auto stamp = std::chrono::steady_clock::now().time_since_epoch().count();
  const auto root = std::filesystem::temp_directory_path() /
                    ("dirac_noise_selftest_" + std::to_string(stamp));
  ScenarioConfig config = reference_config(1.0, "a");
  config.emit_plots = true;

  std::string csv[2];
  bool report_roundtrip = true;
  for (int k = 0; k < 2; ++k) {
    const auto dir = root / ("run" + std::to_string(k));
    const TrajectoryRecord traj = run_trajectory(config);
    const FeatureReport rep = detect_features(traj, config.eps_dead, config.eps_alive);
    emit_outputs(traj, rep, config, dir);
    csv[k] = read_file(dir / "trajectory.csv");
    const auto parsed = nlohmann::json::parse(read_file(dir / "report.json"));
    report_roundtrip = report_roundtrip && report_from_json(parsed) == rep;
  }
  std::ostringstream serial_csv;
  write_trajectory_csv(serial_csv, run_trajectory_serial(config));
  const bool serial_match = serial_csv.str() == csv[0];
  std::error_code ec;
  std::filesystem::remove_all(root, ec);

  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - suite_start).count();
  const bool ok = !csv[0].empty() && csv[0] == csv[1] && serial_match && report_roundtrip &&
                  elapsed < 60.0;
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "csv identical: %s, serial==parallel: %s, report round-trip: %s, suite time %.2f s "
                "(limit 60 s)",
                csv[0] == csv[1] ? "yes" : "no", serial_match ? "yes" : "no",
                report_roundtrip ? "yes" : "no", elapsed);
  return {11, "determinism and serialization", ok, buf};
}

}  // namespace

std::vector<CriterionResult> run_all(std::ostream& log) {
  const auto suite_start = std::chrono::steady_clock::now();
  Context ctx;
  using Criterion = std::function<CriterionResult(Context&)>;
  const std::pair<int, Criterion> criteria[] = {
      {1, spectrum_oracle},
      {2, projector_suite},
      {3, ion_equivalence},
      {5, noiseless_limit},
      {6, measure_anchors},
      {7, death_revival_features},
      {8, persistent_entanglement_features},
      {9, hierarchy},
      // Needs the trajectories collected above.
      {4, channel_cptp},
      {10, schmidt_states},
      {11, [suite_start](Context& c) { return determinism(c, suite_start); }},
  };

  std::vector<CriterionResult> results;
  for (const auto& [id, run] : criteria) {
    CriterionResult r;
    try {
      r = run(ctx);
    } catch (const std::exception& e) {
      r = {id, "criterion " + std::to_string(id), false, std::string("exception: ") + e.what()};
    }
    results.push_back(r);
  }
  std::sort(results.begin(), results.end(),
            [](const CriterionResult& a, const CriterionResult& b) { return a.id < b.id; });
  for (const auto& r : results) {
    log << (r.passed ? "[PASS] " : "[FAIL] ") << r.id << ". " << r.name << ": " << r.detail
        << '\n';
  }
  return results;
}

bool all_passed(const std::vector<CriterionResult>& results) {
  return std::all_of(results.begin(), results.end(),
                     [](const CriterionResult& r) { return r.passed; });
}

}  // namespace dirac_noise::acceptance
