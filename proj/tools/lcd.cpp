#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "lcd/cli.hpp"
#include "lcd/config.hpp"

int main(int argc, char **argv) {
  CLI::App app{"Light-cone-limited helicity discrimination of single-photon packets"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  std::string config_path;
  app.add_option("--config", config_path, "key=value configuration file; flags override it")
      ->check(CLI::ExistingFile);

  bool fixed_t_flag = false;
  app.add_flag("--fixed-t", fixed_t_flag, "shorthand for --fixed_t true");

  std::map<std::string, std::string> flags;
  for (const auto &[key, help] : lcd::config_keys())
    app.add_option("--" + key, flags[key], help);

  const std::map<lcd::Command, std::string> descriptions = {
      {lcd::Command::ErrorCurve, "P_e and timing per radius (CSV or JSON)"},
      {lcd::Command::OptimalTime, "measurement time minimizing p_t for one radius"},
      {lcd::Command::MonteCarlo, "simulated error rate against the analytic value"},
      {lcd::Command::DumpDensity, "radial amplitude and density on a uniform grid (CSV)"},
      {lcd::Command::ScanTime, "light-cone scan time of a ball"},
      {lcd::Command::Ruler, "minimal time to tell two rulers apart"},
      {lcd::Command::AmplitudeInfo, "normalization and cutoff data of the profile"},
  };
  for (const auto command : lcd::all_commands())
    app.add_subcommand(lcd::command_name(command), descriptions.at(command))->fallthrough();

  CLI11_PARSE(app, argc, argv);

  const auto *sub = app.get_subcommands().front();
  const auto command = *lcd::command_from_name(sub->get_name());
  try {
    lcd::ConfigEntries entries;
    if (!config_path.empty()) {
      std::ifstream in(config_path, std::ios::binary);
      std::ostringstream text;
      text << in.rdbuf();
      entries = lcd::parse_entries(text.str());
    }
    for (const auto &[key, help] : lcd::config_keys())
      if (app.count("--" + key) > 0) entries.set(key, flags[key]);
    if (fixed_t_flag) entries.set("fixed_t", "true");
    const auto config = lcd::resolve_config(entries);
    return lcd::run_subcommand(config, command, std::cout, std::cerr);
  } catch (const lcd::ConfigError &e) {
    std::cerr << "lcd " << sub->get_name() << ": config error: " << e.what() << '\n';
    return lcd::kExitConfig;
  }
}
