#include "dirac_noise/output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include "dirac_noise/errors.hpp"

namespace dirac_noise {

namespace {

std::string fmt12(double x) {
  if (x == 0.0) x = 0.0;  // drop the sign of negative zero
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string fmt4(double x) {
  if (x == 0.0) x = 0.0;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

void ensure_directory(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw IoError("cannot create output directory '" + dir.string() + "'");
  }
}

nlohmann::json matrix_to_json(const ComplexMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < m.dim(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(row);
  }
  return rows;
}

ComplexMatrix matrix_from_json(const nlohmann::json& rows) {
  ComplexMatrix m(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows.size(); ++j)
      m(i, j) = Complex(rows[i][j][0].get<double>(), rows[i][j][1].get<double>());
  return m;
}

// Round numbers for axis ticks: 1, 2 or 5 times a power of ten.
double nice_step(double span, int target_ticks) {
  const double raw = span / target_ticks;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double frac = raw / mag;
  const double nice = frac < 1.5 ? 1.0 : frac < 3.5 ? 2.0 : frac < 7.5 ? 5.0 : 10.0;
  return nice * mag;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

}  // namespace

void write_trajectory_csv(std::ostream& out, const TrajectoryRecord& traj) {
  out << kTrajectoryCsvHeader << '\n';
  for (const auto& s : traj.samples) {
    out << fmt12(s.t) << ',' << fmt12(s.negativity) << ',' << fmt12(s.discord_1) << ','
        << fmt12(s.discord_2) << ',' << fmt12(s.purity) << ',' << fmt12(s.min_eigenvalue) << ','
        << fmt12(s.trace_deviation) << '\n';
  }
}

nlohmann::json config_to_json(const ScenarioConfig& c) {
  nlohmann::json j = {
      {"m_over_p", c.m_over_p},         {"E_over_p", c.E_over_p},
      {"kappa", c.kappa},               {"mu", c.mu},
      {"theta", c.theta},               {"gamma_over_p", c.gamma_over_p},
      {"initial_state", c.initial_state}, {"t_max", c.t_max},
      {"dt", c.dt},                     {"outputs", c.outputs.generic_string()},
      {"emit_plots", c.emit_plots},     {"eps_dead", c.eps_dead},
      {"eps_alive", c.eps_alive},
  };
  if (c.custom_state) j["custom_rho"] = matrix_to_json(*c.custom_state);
  return j;
}

ScenarioConfig config_from_json(const nlohmann::json& j) {
  ScenarioConfig c;
  c.m_over_p = j.at("m_over_p").get<double>();
  c.E_over_p = j.at("E_over_p").get<double>();
  c.kappa = j.at("kappa").get<double>();
  c.mu = j.at("mu").get<double>();
  c.theta = j.at("theta").get<double>();
  c.gamma_over_p = j.at("gamma_over_p").get<double>();
  c.initial_state = j.at("initial_state").get<std::string>();
  c.t_max = j.at("t_max").get<double>();
  c.dt = j.at("dt").get<double>();
  c.outputs = j.at("outputs").get<std::string>();
  c.emit_plots = j.at("emit_plots").get<bool>();
  c.eps_dead = j.at("eps_dead").get<double>();
  c.eps_alive = j.at("eps_alive").get<double>();
  if (j.contains("custom_rho")) c.custom_state = matrix_from_json(j.at("custom_rho"));
  return c;
}

nlohmann::json report_to_json(const FeatureReport& report, const ScenarioConfig& config) {
  nlohmann::json intervals = nlohmann::json::array();
  for (const auto& [start, end] : report.death_intervals) intervals.push_back({start, end});
  nlohmann::json j;
  j["death_intervals"] = intervals;
  j["revival_count"] = report.revival_count;
  j["min_negativity"] = report.min_negativity;
  j["max_negativity"] = report.max_negativity;
  j["residual_discord_in_death"] = std::isfinite(report.residual_discord_in_death)
                                       ? nlohmann::json(report.residual_discord_in_death)
                                       : nlohmann::json(nullptr);
  j["final_purity"] = report.final_purity;
  j["config"] = config_to_json(config);
  return j;
}

FeatureReport report_from_json(const nlohmann::json& j) {
  FeatureReport r;
  for (const auto& interval : j.at("death_intervals")) {
    r.death_intervals.emplace_back(interval.at(0).get<double>(), interval.at(1).get<double>());
  }
  r.revival_count = j.at("revival_count").get<int>();
  r.min_negativity = j.at("min_negativity").get<double>();
  r.max_negativity = j.at("max_negativity").get<double>();
  const auto& residual = j.at("residual_discord_in_death");
  r.residual_discord_in_death =
      residual.is_null() ? std::numeric_limits<double>::infinity() : residual.get<double>();
  r.final_purity = j.at("final_purity").get<double>();
  return r;
}

std::string render_line_chart(const std::string& title, const std::string& x_label,
                              const std::string& y_label, const std::vector<PlotSeries>& series) {
  constexpr double width = 720, height = 420;
  constexpr double left = 70, right = 20, top = 40, bottom = 55;
  const double plot_w = width - left - right;
  const double plot_h = height - top - bottom;

  double x_min = std::numeric_limits<double>::infinity(), x_max = -x_min;
  double y_min = 0.0, y_max = 0.0;
  for (const auto& s : series) {
    for (double x : s.x) x_min = std::min(x_min, x), x_max = std::max(x_max, x);
    for (double y : s.y) y_min = std::min(y_min, y), y_max = std::max(y_max, y);
  }
  if (!std::isfinite(x_min)) x_min = 0.0, x_max = 1.0;
  if (x_max <= x_min) x_max = x_min + 1.0;
  if (y_max <= y_min) y_max = y_min + 1.0;
  y_max += 0.05 * (y_max - y_min);

  auto px = [&](double x) { return left + (x - x_min) / (x_max - x_min) * plot_w; };
  auto py = [&](double y) { return top + (1.0 - (y - y_min) / (y_max - y_min)) * plot_h; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
      << "font-size=\"16\">" << xml_escape(title) << "</text>\n";

  svg << "<g stroke=\"black\" stroke-width=\"1\">\n";
  svg << "<line x1=\"" << left << "\" y1=\"" << top + plot_h << "\" x2=\"" << left + plot_w
      << "\" y2=\"" << top + plot_h << "\"/>\n";
  svg << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\""
      << top + plot_h << "\"/>\n";
  svg << "</g>\n";

  svg << "<g font-family=\"sans-serif\" font-size=\"11\">\n";
  const double x_step = nice_step(x_max - x_min, 8);
  for (double x = std::ceil(x_min / x_step) * x_step; x <= x_max + 1e-9 * x_step; x += x_step) {
    svg << "<line x1=\"" << fmt4(px(x)) << "\" y1=\"" << top + plot_h << "\" x2=\"" << fmt4(px(x))
        << "\" y2=\"" << top + plot_h + 5 << "\" stroke=\"black\"/>";
    svg << "<text x=\"" << fmt4(px(x)) << "\" y=\"" << top + plot_h + 18
        << "\" text-anchor=\"middle\">" << fmt4(x) << "</text>\n";
  }
  const double y_step = nice_step(y_max - y_min, 6);
  for (double y = std::ceil(y_min / y_step) * y_step; y <= y_max + 1e-9 * y_step; y += y_step) {
    svg << "<line x1=\"" << left - 5 << "\" y1=\"" << fmt4(py(y)) << "\" x2=\"" << left
        << "\" y2=\"" << fmt4(py(y)) << "\" stroke=\"black\"/>";
    svg << "<text x=\"" << left - 8 << "\" y=\"" << fmt4(py(y) + 4)
        << "\" text-anchor=\"end\">" << fmt4(y) << "</text>\n";
  }
  svg << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << height - 12
      << "\" text-anchor=\"middle\" font-size=\"13\">" << xml_escape(x_label) << "</text>\n";
  svg << "<text x=\"18\" y=\"" << top + plot_h / 2 << "\" text-anchor=\"middle\" font-size=\"13\" "
      << "transform=\"rotate(-90 18 " << top + plot_h / 2 << ")\">" << xml_escape(y_label)
      << "</text>\n";
  svg << "</g>\n";

  double legend_y = top + 12;
  for (const auto& s : series) {
    svg << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\"";
    if (s.dashed) svg << " stroke-dasharray=\"6 4\"";
    svg << " points=\"";
    const std::size_t n = std::min(s.x.size(), s.y.size());
    for (std::size_t i = 0; i < n; ++i) {
      svg << fmt4(px(s.x[i])) << ',' << fmt4(py(s.y[i])) << (i + 1 < n ? " " : "");
    }
    svg << "\"/>\n";
    if (!s.label.empty()) {
      const double lx = left + plot_w - 150;
      svg << "<line x1=\"" << lx << "\" y1=\"" << legend_y << "\" x2=\"" << lx + 24 << "\" y2=\""
          << legend_y << "\" stroke=\"" << s.color << "\" stroke-width=\"1.5\""
          << (s.dashed ? " stroke-dasharray=\"6 4\"" : "") << "/>";
      svg << "<text x=\"" << lx + 30 << "\" y=\"" << legend_y + 4
          << "\" font-family=\"sans-serif\" font-size=\"12\">" << xml_escape(s.label)
          << "</text>\n";
      legend_y += 16;
    }
  }
  svg << "</svg>\n";
  return svg.str();
}

std::vector<std::filesystem::path> emit_outputs(const TrajectoryRecord& traj,
                                                const FeatureReport& report,
                                                const ScenarioConfig& config,
                                                const std::filesystem::path& dir) {
  ensure_directory(dir);
  std::vector<std::filesystem::path> written;

  const auto csv_path = dir / "trajectory.csv";
  {
    auto out = open_for_write(csv_path);
    write_trajectory_csv(out, traj);
    finish(out, csv_path);
  }
  written.push_back(csv_path);

  const auto json_path = dir / "report.json";
  {
    auto out = open_for_write(json_path);
    out << report_to_json(report, config).dump(2) << '\n';
    finish(out, json_path);
  }
  written.push_back(json_path);

  if (config.emit_plots) {
    PlotSeries neg{"negativity", {}, {}, "#1f77b4", false};
    PlotSeries d1{"D (side 1)", {}, {}, "#d62728", false};
    PlotSeries d2{"D (side 2)", {}, {}, "#2ca02c", true};
    for (const auto& s : traj.samples) {
      neg.x.push_back(s.t), neg.y.push_back(s.negativity);
      d1.x.push_back(s.t), d1.y.push_back(s.discord_1);
      d2.x.push_back(s.t), d2.y.push_back(s.discord_2);
    }
    const std::string suffix = " (m/p = " + fmt4(config.m_over_p) + ", initial " +
                               config.initial_state + ")";
    const std::pair<std::string, std::string> charts[] = {
        {"negativity.svg", render_line_chart("Negativity" + suffix, "p t", "N", {neg})},
        {"discord.svg", render_line_chart("Geometric discord" + suffix, "p t", "D", {d1, d2})},
    };
    for (const auto& [name, body] : charts) {
      const auto path = dir / name;
      auto out = open_for_write(path);
      out << body;
      finish(out, path);
      written.push_back(path);
    }
  }
  return written;
}

std::vector<std::filesystem::path> emit_sweep(const std::vector<SweepPoint>& points,
                                              const ScenarioConfig& base,
                                              const std::filesystem::path& dir) {
  ensure_directory(dir);
  std::vector<std::filesystem::path> written;
  std::ostringstream index;
  index << "m_over_p,directory,death_intervals,revival_count,min_negativity,max_negativity,"
           "final_purity\n";
  for (const auto& point : points) {
    ScenarioConfig config = base;
    config.m_over_p = point.m_over_p;
    const std::string sub = "m_over_p_" + fmt12(point.m_over_p);
    const auto files = emit_outputs(point.record, point.report, config, dir / sub);
    written.insert(written.end(), files.begin(), files.end());
    index << fmt12(point.m_over_p) << ',' << sub << ',' << point.report.death_intervals.size()
          << ',' << point.report.revival_count << ',' << fmt12(point.report.min_negativity) << ','
          << fmt12(point.report.max_negativity) << ',' << fmt12(point.report.final_purity) << '\n';
  }
  const auto index_path = dir / "index.csv";
  auto out = open_for_write(index_path);
  out << index.str();
  finish(out, index_path);
  written.push_back(index_path);
  return written;
}

}  // namespace dirac_noise
