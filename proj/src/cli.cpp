#include "lcd/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "lcd/discrimination.hpp"
#include "lcd/errors.hpp"
#include "lcd/lightcone.hpp"
#include "lcd/montecarlo.hpp"
#include "lcd/propagation.hpp"

namespace lcd {
namespace {

using Json = nlohmann::ordered_json;

const std::vector<std::pair<Command, std::string>> kNames = {
    {Command::ErrorCurve, "error-curve"},     {Command::OptimalTime, "optimal-time"},
    {Command::MonteCarlo, "monte-carlo"},     {Command::DumpDensity, "dump-density"},
    {Command::ScanTime, "scan-time"},         {Command::Ruler, "ruler"},
    {Command::AmplitudeInfo, "amplitude-info"},
};

// Rounds to 12 significant digits so the JSON writer prints at most that many.
double num(double v) { return std::strtod(format_sig12(v).c_str(), nullptr); }

std::string csv(std::initializer_list<double> values) {
  std::string line;
  for (const double v : values) {
    if (!line.empty()) line += ',';
    line += format_sig12(v);
  }
  return line;
}

OutputFormat resolve_format(const RunConfig &config, Command command, OutputFormat fallback,
                            bool csv_ok, bool json_ok) {
  const OutputFormat f = config.format == OutputFormat::Auto ? fallback : config.format;
  if ((f == OutputFormat::Csv && !csv_ok) || (f == OutputFormat::Json && !json_ok))
    throw ConfigError("format: " + command_name(command) + " does not emit " +
                          (f == OutputFormat::Csv ? "csv" : "json"),
                      "format");
  return f;
}

double single_radius(const RunConfig &config, Command command) {
  if (config.R_list.size() != 1)
    throw ConfigError("R_list: " + command_name(command) + " takes a single radius", "R_list");
  return config.R_list.front();
}

Json profile_json(const RunConfig &config) {
  Json p;
  if (const auto *g = std::get_if<GaussianFamily>(&config.family)) {
    p["family"] = "gaussian";
    p["k0"] = num(g->k0);
    p["sigma"] = num(g->sigma);
  } else {
    p["family"] = "exponential";
    p["kappa"] = num(std::get<ExponentialFamily>(config.family).kappa);
  }
  p["d"] = num(config.d);
  return p;
}

Json header_json(const RunConfig &config, Command command) {
  Json h;
  h["command"] = command_name(command);
  h["config"] = config.to_text();
  return h;
}

void report_warnings(const std::vector<std::string> &warnings, std::ostream &diag) {
  for (const auto &w : warnings) diag << "warning: " << w << '\n';
}

Json report_row(const DiscriminationReport &r) {
  Json row;
  row["R"] = num(r.R);
  row["t_star"] = num(r.t_meas);
  row["p_t"] = num(r.p_t);
  row["P_e"] = num(r.P_e);
  row["scan_T"] = num(r.scan_T);
  row["total_T"] = num(r.total_T);
  return row;
}

constexpr const char *kCurveColumns = "R,t_star,p_t,P_e,scan_T,total_T";

void write_reports(const RunConfig &config, Command command, OutputFormat format,
                   const std::vector<DiscriminationReport> &reports, std::ostream &out,
                   std::ostream &diag) {
  std::vector<std::string> warnings;
  for (const auto &r : reports) warnings.insert(warnings.end(), r.warnings.begin(), r.warnings.end());
  report_warnings(warnings, diag);

  if (format == OutputFormat::Csv) {
    out << provenance_line(config, command) << '\n' << kCurveColumns << '\n';
    for (const auto &r : reports)
      out << csv({r.R, r.t_meas, r.p_t, r.P_e, r.scan_T, r.total_T}) << '\n';
    return;
  }
  Json doc;
  Json header = header_json(config, command);
  header["profile"] = profile_json(config);
  header["priors"] = {{"pi0", num(config.pi0)}, {"pi1", num(config.priors().pi1())}};
  header["strategy"] = strategy_name(config.strategy);
  header["time_mode"] = config.fixed_t ? "fixed" : "optimized";
  doc["header"] = header;
  if (command == Command::OptimalTime) {
    const Json row = report_row(reports.front());
    for (const auto &[k, v] : row.items()) doc[k] = v;
  } else {
    doc["rows"] = Json::array();
    for (const auto &r : reports) doc["rows"].push_back(report_row(r));
  }
  doc["warnings"] = warnings;
  out << doc.dump(2) << '\n';
}

void error_curve(const RunConfig &config, std::ostream &out, std::ostream &diag) {
  const auto format = resolve_format(config, Command::ErrorCurve, OutputFormat::Csv, true, true);
  const auto profile = config.profile();
  const auto reports =
      config.fixed_t
          ? fixed_time_curve(profile, config.priors(), config.R_list, config.t, config.strategy,
                             config.tol)
          : tradeoff_curve(profile, config.priors(), config.R_list, config.window, config.n_grid,
                           config.strategy, config.tol);
  write_reports(config, Command::ErrorCurve, format, reports, out, diag);
}

void optimal_time(const RunConfig &config, std::ostream &out, std::ostream &diag) {
  const auto format = resolve_format(config, Command::OptimalTime, OutputFormat::Json, true, true);
  if (config.fixed_t)
    throw ConfigError("fixed_t: optimal-time always optimizes t", "fixed_t");
  const double R = single_radius(config, Command::OptimalTime);
  const std::vector<double> radii{R};
  const auto reports = tradeoff_curve(config.profile(), config.priors(), radii, config.window,
                                      config.n_grid, config.strategy, config.tol);
  write_reports(config, Command::OptimalTime, format, reports, out, diag);
}

void monte_carlo(const RunConfig &config, std::ostream &out, std::ostream &) {
  resolve_format(config, Command::MonteCarlo, OutputFormat::Json, false, true);
  const double R = single_radius(config, Command::MonteCarlo);
  const auto profile = config.profile();

  MonteCarloOptions options;
  options.n_trials = config.trials;
  options.seed = config.seed;
  options.strategy = config.strategy;
  options.cdf_cells = config.cdf_cells;
  options.r_max = config.r_max;

  std::ofstream trials;
  TrialSink sink;
  if (!config.trial_csv.empty()) {
    trials.open(config.trial_csv, std::ios::binary | std::ios::trunc);
    if (!trials) throw ConfigError("trial_csv: cannot open '" + config.trial_csv + "'", "trial_csv");
    trials << provenance_line(config, Command::MonteCarlo) << '\n'
           << "trial,true_state,rho,inside,outcome,guess,correct\n";
    sink = [&trials](std::size_t i, const TrialRecord &rec) {
      const char *outcome = rec.outcome == Outcome::ChannelPlus    ? "plus"
                            : rec.outcome == Outcome::ChannelMinus ? "minus"
                                                                   : "unknown";
      trials << i << ',' << rec.true_state << ',' << format_sig12(rec.detection_radius_rho)
             << ',' << (rec.inside_omega ? 1 : 0) << ',' << outcome << ',' << rec.guess << ','
             << (rec.correct ? 1 : 0) << '\n';
    };
  }

  const auto est =
      estimate_error(profile, config.priors(), R, config.t, options, config.tol, sink);
  if (trials.is_open() && !trials.flush())
    throw std::runtime_error("failed writing " + config.trial_csv);

  const double n = static_cast<double>(est.n_trials);
  Json doc;
  doc["header"] = header_json(config, Command::MonteCarlo);
  doc["strategy"] = strategy_name(config.strategy);
  doc["R"] = num(R);
  doc["t"] = num(config.t);
  doc["n_trials"] = est.n_trials;
  doc["n_errors"] = est.n_errors;
  doc["n_unknown"] = est.n_unknown;
  doc["n_inside_errors"] = est.n_inside_errors;
  doc["empirical_rate"] = num(est.empirical_rate);
  doc["analytic_rate"] = num(est.analytic_rate);
  doc["std_err"] = num(est.std_err);
  doc["p_t"] = num(est.p_t);
  doc["unknown_fraction"] = num(static_cast<double>(est.n_unknown) / n);
  doc["unknown_std_err"] = num(std::sqrt(est.p_t * (1.0 - est.p_t) / n));
  out << doc.dump(2) << '\n';
}

void dump_density(const RunConfig &config, std::ostream &out, std::ostream &diag) {
  resolve_format(config, Command::DumpDensity, OutputFormat::Csv, true, false);
  const auto profile = config.profile();
  const double r_max = config.r_max > 0.0 ? config.r_max : default_r_max(profile, config.t);
  const auto grid = radial_density_grid(profile, config.t, r_max, config.n_points, config.tol);
  report_warnings(grid.warnings, diag);

  out << provenance_line(config, Command::DumpDensity) << '\n'
      << "r,re_amp,im_amp,density\n";
  for (std::size_t i = 0; i < grid.r_grid.size(); ++i)
    out << csv({grid.r_grid[i], grid.amp[i].real(), grid.amp[i].imag(), grid.density[i]})
        << '\n';
}

void scan_time(const RunConfig &config, std::ostream &out, std::ostream &) {
  resolve_format(config, Command::ScanTime, OutputFormat::Json, false, true);
  const double R = single_radius(config, Command::ScanTime);
  Json doc;
  doc["header"] = header_json(config, Command::ScanTime);
  doc["R"] = num(R);
  doc["scan_T"] = num(scan_time_ball(R));
  if (config.beta) {
    doc["beta"] = num(*config.beta);
    doc["lorentz_factor"] = num(lorentz_factor(*config.beta));
  }
  out << doc.dump(2) << '\n';
}

void ruler(const RunConfig &config, std::ostream &out, std::ostream &) {
  resolve_format(config, Command::Ruler, OutputFormat::Json, false, true);
  if (!config.L1) throw ConfigError("L1: required by ruler", "L1");
  if (!config.L2) throw ConfigError("L2: required by ruler", "L2");
  const auto timing = ruler_min_time(Ruler(*config.L1), Ruler(*config.L2),
                                     ObserverPlacement{config.observer});
  Json doc;
  doc["header"] = header_json(config, Command::Ruler);
  doc["L1"] = num(*config.L1);
  doc["L2"] = num(*config.L2);
  doc["observer"] = num(config.observer);
  doc["T"] = num(timing.T);
  doc["indistinguishable"] = timing.indistinguishable;
  out << doc.dump(2) << '\n';
}

void amplitude_info(const RunConfig &config, std::ostream &out, std::ostream &) {
  resolve_format(config, Command::AmplitudeInfo, OutputFormat::Json, false, true);
  const auto profile = config.profile();
  Json doc;
  doc["header"] = header_json(config, Command::AmplitudeInfo);
  doc["profile"] = profile_json(config);
  doc["norm_const"] = num(profile.norm_const());
  doc["k_max"] = num(profile.k_max());
  doc["momentum_norm"] = num(momentum_norm(profile));
  doc["tail_mass"] = num(tail_mass(profile));
  doc["length_scale"] = num(profile.length_scale());
  doc["default_r_max"] = num(default_r_max(profile, config.t));
  if (config.oracle_grid > 0) {
    const double R = single_radius(config, Command::AmplitudeInfo);
    const double radial = inside_probability(profile, R, config.t, config.tol);
    const double oracle = oracle_inside_probability_3d(profile, R, config.t, config.oracle_grid,
                                                       OracleLimits::from_environment(),
                                                       config.tol);
    Json check;
    check["R"] = num(R);
    check["t"] = num(config.t);
    check["grid_n"] = config.oracle_grid;
    check["inside_probability"] = num(radial);
    check["oracle_inside_probability"] = num(oracle);
    check["relative_difference"] =
        num(radial != 0.0 ? std::abs(oracle - radial) / std::abs(radial) : std::abs(oracle));
    doc["oracle_check"] = check;
  }
  out << doc.dump(2) << '\n';
}

} // namespace

const std::vector<Command> &all_commands() {
  static const std::vector<Command> commands = [] {
    std::vector<Command> c;
    for (const auto &[cmd, name] : kNames) c.push_back(cmd);
    return c;
  }();
  return commands;
}

std::string command_name(Command c) {
  for (const auto &[cmd, name] : kNames)
    if (cmd == c) return name;
  return "unknown";
}

std::optional<Command> command_from_name(std::string_view name) {
  for (const auto &[cmd, n] : kNames)
    if (n == name) return cmd;
  return std::nullopt;
}

std::string provenance_line(const RunConfig &config, Command command) {
  return "# lcd " + command_name(command) + " " + config.to_text();
}

void write_artifact(const RunConfig &config, Command command, std::ostream &out,
                    std::ostream &diag) {
  switch (command) {
  case Command::ErrorCurve: return error_curve(config, out, diag);
  case Command::OptimalTime: return optimal_time(config, out, diag);
  case Command::MonteCarlo: return monte_carlo(config, out, diag);
  case Command::DumpDensity: return dump_density(config, out, diag);
  case Command::ScanTime: return scan_time(config, out, diag);
  case Command::Ruler: return ruler(config, out, diag);
  case Command::AmplitudeInfo: return amplitude_info(config, out, diag);
  }
  throw ConfigError("unknown command");
}

int run_subcommand(const RunConfig &config, Command command, std::ostream &out,
                   std::ostream &diag) {
  const std::string name = command_name(command);
  try {
    std::ostringstream buffer;
    write_artifact(config, command, buffer, diag);
    if (config.output.empty()) {
      out << buffer.str();
      out.flush();
    } else {
      std::ofstream file(config.output, std::ios::binary | std::ios::trunc);
      if (!file) throw ConfigError("output: cannot open '" + config.output + "'", "output");
      file << buffer.str();
      if (!file.flush()) throw std::runtime_error("failed writing " + config.output);
    }
    return kExitOk;
  } catch (const ConfigError &e) {
    diag << "lcd " << name << ": config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const InvalidParameter &e) {
    diag << "lcd " << name << ": invalid parameter: " << e.what() << '\n';
    return kExitConfig;
  } catch (const NumericFailure &e) {
    diag << "lcd " << name << ": numeric failure: " << e.what()
         << " (error estimate " << format_sig12(e.error_estimate()) << ")\n";
    return kExitNumeric;
  } catch (const Error &e) {
    diag << "lcd " << name << ": " << e.what() << '\n';
    return kExitNumeric;
  } catch (const std::exception &e) {
    diag << "lcd " << name << ": " << e.what() << '\n';
    return kExitNumeric;
  }
}

} // namespace lcd
