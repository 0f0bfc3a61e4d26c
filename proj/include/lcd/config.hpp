#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lcd/amplitude.hpp"
#include "lcd/discrimination.hpp"
#include "lcd/errors.hpp"
#include "lcd/propagation.hpp"

namespace lcd {

/// Malformed or invalid configuration. line() is 0 for command-line values
/// and for cross-field checks; field() names the offending key when known.
class ConfigError : public Error {
public:
  ConfigError(const std::string &what, std::string field = {}, int line = 0)
      : Error(what), field_(std::move(field)), line_(line) {}
  const std::string &field() const noexcept { return field_; }
  int line() const noexcept { return line_; }

private:
  std::string field_;
  int line_;
};

enum class OutputFormat { Auto, Csv, Json };

struct RunConfig {
  FamilyParams family = GaussianFamily{5.0, 1.0};
  double d = 0.0;
  double pi0 = 0.5;
  std::vector<double> R_list{2.0};
  double t = 0.0;
  TimeWindow window{0.0, 20.0};
  int n_grid = 41;
  bool fixed_t = false;
  QuadratureTolerances tol;

  std::size_t trials = 100000;
  std::uint64_t seed = 1;
  GuessStrategy strategy = GuessStrategy::ProbabilityMatching;
  std::size_t cdf_cells = 4096;
  std::string trial_csv; ///< optional per-trial CSV path for monte-carlo

  double r_max = 0.0; ///< 0: default_r_max
  std::size_t n_points = 2048;
  std::size_t oracle_grid = 0; ///< amplitude-info cross-check; 0 skips it

  std::optional<double> L1, L2;
  double observer = 0.5; ///< fraction along the shorter ruler
  std::optional<double> beta;

  OutputFormat format = OutputFormat::Auto;
  std::string output; ///< empty: standard output

  Priors priors() const { return Priors(pi0); }
  MomentumProfile profile() const { return make_profile(family, d); }

  /// Canonical key=value text that parse_config maps back to this config.
  /// Output paths are left out; they do not change the computation.
  std::string to_text() const;
};

/// Raw key=value settings in first-seen order with their source line.
class ConfigEntries {
public:
  struct Entry {
    std::string key;
    std::string value;
    int line = 0;
  };

  /// Inserts or replaces; unknown keys raise ConfigError.
  void set(const std::string &key, const std::string &value, int line = 0);
  const std::vector<Entry> &entries() const noexcept { return entries_; }
  const Entry *find(std::string_view key) const;

private:
  std::vector<Entry> entries_;
};

/// Every accepted key with a one-line description, in canonical order.
const std::vector<std::pair<std::string, std::string>> &config_keys();

/// Whitespace-separated key=value tokens, any number per line; '#' starts a
/// comment. Duplicate keys are rejected.
ConfigEntries parse_entries(std::string_view text);

/// Validates and converts settings; every failure names its field.
RunConfig resolve_config(const ConfigEntries &entries);

inline RunConfig parse_config(std::string_view text) { return resolve_config(parse_entries(text)); }

/// Shortest decimal string that parses back to exactly v.
std::string format_exact(double v);

/// v with 12 significant digits, as used in every emitted artifact.
std::string format_sig12(double v);

} // namespace lcd
