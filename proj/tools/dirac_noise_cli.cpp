// Command-line front end: simulate, plan, selftest.

#include <cstdio>
#include <iostream>

#include "CLI11.hpp"

#include "dirac_noise/acceptance.hpp"
#include "dirac_noise/dirac_model.hpp"
#include "dirac_noise/errors.hpp"
#include "dirac_noise/ion_map.hpp"
#include "dirac_noise/output.hpp"
#include "dirac_noise/scenario.hpp"

namespace {

namespace dn = dirac_noise;

enum ExitCode { kOk = 0, kUsage = 1, kInvariant = 2, kIo = 3 };

int simulate(const std::string& config_path, const std::string& out_override, bool plots) {
  dn::ConfigFile file = dn::load_config(config_path);
  dn::ScenarioConfig& config = file.config;
  if (!out_override.empty()) config.outputs = out_override;
  if (plots) config.emit_plots = true;

  if (file.m_over_p_grid.size() > 1) {
    const auto points = dn::run_sweep(config, file.m_over_p_grid);
    const auto files = dn::emit_sweep(points, config, config.outputs);
    for (const auto& point : points) {
      std::printf("m/p=%-8g samples=%zu death_intervals=%zu revivals=%d min_N=%.6g max_N=%.6g\n",
                  point.m_over_p, point.record.samples.size(),
                  point.report.death_intervals.size(), point.report.revival_count,
                  point.report.min_negativity, point.report.max_negativity);
    }
    std::printf("wrote %zu files under %s\n", files.size(), config.outputs.string().c_str());
    return kOk;
  }

  const dn::TrajectoryRecord traj = dn::run_trajectory(config);
  const dn::FeatureReport report = dn::detect_features(traj, config.eps_dead, config.eps_alive);
  const auto files = dn::emit_outputs(traj, report, config, config.outputs);
  std::printf("samples=%zu wall_time=%.3fs death_intervals=%zu revivals=%d min_N=%.6g max_N=%.6g "
              "final_purity=%.6g\n",
              traj.samples.size(), traj.wall_time.count(), report.death_intervals.size(),
              report.revival_count, report.min_negativity, report.max_negativity,
              report.final_purity);
  for (const auto& f : files) std::printf("wrote %s\n", f.string().c_str());
  return kOk;
}

int plan(const std::string& config_path) {
  const dn::ConfigFile file = dn::load_config(config_path);
  for (double m : file.m_over_p_grid) {
    dn::ScenarioConfig config = file.config;
    config.m_over_p = m;
    const dn::DiracParams params = config.dirac_params();
    const dn::IonParams ion = dn::dirac_to_ion(params);
    std::printf("Dirac: m=%g p=%g kappa=%g mu=%g E=%g theta=%.12g\n", params.m, params.p,
                params.kappa, params.mu, params.E_field, params.theta);
    std::printf("Ion:   delta=%.12g eta*Delta*Omega=%.12g\n", ion.delta, ion.eta_delta_omega);
    std::printf("       Omega1=(%.12g, %.12g, %.12g)\n", ion.omega1[0], ion.omega1[1], ion.omega1[2]);
    std::printf("       Omega2=(%.12g, %.12g, %.12g)\n", ion.omega2[0], ion.omega2[1], ion.omega2[2]);
    std::printf("g2=%.12g\n", dn::compute_g2(params));
    if (dn::is_closed_form_configuration(params)) {
      for (int n = 0; n < 2; ++n)
        for (int s = 0; s < 2; ++s)
          std::printf("lambda_{%d,%d}=%.12g\n", n, s, dn::eigenvalue_closed_form(params, n, s));
    }
  }
  return kOk;
}

int selftest() {
  const auto results = dn::acceptance::run_all(std::cout);
  return dn::acceptance::all_passed(results) ? kOk : kInvariant;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-qubit Dirac dynamics under local dephasing: negativity and geometric discord"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  bool plots = false;

  auto* sim = app.add_subcommand("simulate", "Run a trajectory (or an m/p sweep) and write outputs");
  sim->add_option("--config", config_path, "key=value config file")->required();
  sim->add_option("--out", out_dir, "output directory (default from config, else ./out)");
  sim->add_flag("--plots", plots, "also write negativity.svg and discord.svg");

  std::string plan_config;
  auto* pl = app.add_subcommand("plan", "Print the trapped-ion parameters for a config");
  pl->add_option("--config", plan_config, "key=value config file")->required();

  auto* st = app.add_subcommand("selftest", "Run the acceptance suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (sim->parsed()) return simulate(config_path, out_dir, plots);
    if (pl->parsed()) return plan(plan_config);
    if (st->parsed()) return selftest();
  } catch (const dn::UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const dn::InvalidInput& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const dn::IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kIo;
  } catch (const dn::InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << '\n';
    return kInvariant;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvariant;
  }
  return kUsage;
}
