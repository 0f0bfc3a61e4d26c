#include "lcd/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace lcd {
namespace {

const std::vector<std::pair<std::string, std::string>> kKeys = {
    {"family", "momentum profile family: gaussian | exponential"},
    {"k0", "gaussian centre momentum (> 0)"},
    {"sigma", "gaussian momentum width (> 0)"},
    {"kappa", "exponential momentum scale (> 0)"},
    {"d", "packet offset from the ball centre (>= 0)"},
    {"pi0", "prior of state 0, in [0, 1]"},
    {"R", "single ball radius (>= 0)"},
    {"R_list", "comma-separated strictly increasing radii"},
    {"R_range", "lo:hi:n, n equally spaced radii including both ends"},
    {"t", "measurement time for fixed-time commands"},
    {"t_lo", "start of the optimization window"},
    {"t_hi", "end of the optimization window"},
    {"n_grid", "grid points of the time search (>= 8)"},
    {"fixed_t", "error-curve at time t instead of optimizing: true | false"},
    {"amp_tol", "absolute tolerance of the amplitude quadrature"},
    {"prob_tol", "absolute tolerance of the probability quadrature"},
    {"trials", "Monte Carlo trials (>= 1000)"},
    {"seed", "Monte Carlo seed (unsigned 64-bit)"},
    {"strategy", "guess after '?': paper | map"},
    {"cdf_cells", "cells of the Monte Carlo radial CDF"},
    {"trial_csv", "path of the optional per-trial CSV"},
    {"r_max", "radial cutoff; auto for d + |t| + 10 length scales"},
    {"n_points", "grid points of dump-density (>= 16)"},
    {"oracle_grid", "amplitude-info: 3D oracle cells per axis, 0 to skip"},
    {"L1", "length of the first ruler"},
    {"L2", "length of the second ruler"},
    {"observer", "ruler observer: midpoint | endpoint | fraction in [0, 1]"},
    {"beta", "scan-time: observer speed in units of c, |beta| < 1"},
    {"format", "auto | csv | json"},
    {"output", "artifact path; standard output when absent"},
};

bool known_key(std::string_view key) {
  return std::any_of(kKeys.begin(), kKeys.end(), [&](const auto &k) { return k.first == key; });
}

std::string where(const ConfigEntries::Entry &e) {
  return e.line > 0 ? "line " + std::to_string(e.line) + ": " : "";
}

[[noreturn]] void fail(const ConfigEntries::Entry &e, const std::string &msg) {
  throw ConfigError(where(e) + e.key + ": " + msg, e.key, e.line);
}

double to_double(const ConfigEntries::Entry &e, std::string_view s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v))
    fail(e, "expected a finite number, got '" + std::string(s) + "'");
  return v;
}

std::uint64_t to_unsigned(const ConfigEntries::Entry &e, std::string_view s) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    fail(e, "expected a non-negative integer, got '" + std::string(s) + "'");
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

class Reader {
public:
  explicit Reader(const ConfigEntries &entries) : entries_(entries) {}

  const ConfigEntries::Entry *get(std::string_view key) {
    used_.emplace_back(key);
    return entries_.find(key);
  }

  double number(std::string_view key, double fallback) {
    const auto *e = get(key);
    return e ? to_double(*e, e->value) : fallback;
  }

  double positive(std::string_view key, double fallback) {
    const auto *e = get(key);
    if (!e) return fallback;
    const double v = to_double(*e, e->value);
    if (!(v > 0.0)) fail(*e, "must be > 0");
    return v;
  }

  double non_negative(std::string_view key, double fallback) {
    const auto *e = get(key);
    if (!e) return fallback;
    const double v = to_double(*e, e->value);
    if (!(v >= 0.0)) fail(*e, "must be >= 0");
    return v;
  }

  std::uint64_t count(std::string_view key, std::uint64_t fallback, std::uint64_t min) {
    const auto *e = get(key);
    if (!e) return fallback;
    const auto v = to_unsigned(*e, e->value);
    if (v < min) fail(*e, "must be >= " + std::to_string(min));
    return v;
  }

  /// Keys present in the input but not consumed for this family/command.
  void reject_unused(std::string_view context) const {
    for (const auto &e : entries_.entries())
      if (std::find(used_.begin(), used_.end(), e.key) == used_.end())
        fail(e, "not valid " + std::string(context));
  }

private:
  const ConfigEntries &entries_;
  std::vector<std::string> used_;
};

std::vector<double> parse_radii(const ConfigEntries::Entry &e, bool range) {
  std::vector<double> out;
  if (range) {
    const auto parts = split(e.value, ':');
    if (parts.size() != 3) fail(e, "expected lo:hi:n");
    const double lo = to_double(e, parts[0]);
    const double hi = to_double(e, parts[1]);
    const auto n = to_unsigned(e, parts[2]);
    if (n == 0 || n > 100000) fail(e, "n must be in [1, 100000]");
    if (n == 1 && hi != lo) fail(e, "n=1 needs lo == hi");
    for (std::uint64_t i = 0; i < n; ++i)
      out.push_back(i + 1 == n ? hi : lo + (hi - lo) * static_cast<double>(i) / (n - 1));
  } else {
    for (const auto part : split(e.value, ',')) out.push_back(to_double(e, part));
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i] < 0.0) fail(e, "radii must be >= 0");
    if (i > 0 && !(out[i] > out[i - 1])) fail(e, "radii must be strictly increasing");
  }
  return out;
}

} // namespace

const std::vector<std::pair<std::string, std::string>> &config_keys() { return kKeys; }

void ConfigEntries::set(const std::string &key, const std::string &value, int line) {
  if (!known_key(key)) {
    const std::string at = line > 0 ? "line " + std::to_string(line) + ": " : "";
    throw ConfigError(at + "unknown key '" + key + "'", key, line);
  }
  for (auto &e : entries_)
    if (e.key == key) {
      e.value = value;
      e.line = line;
      return;
    }
  entries_.push_back({key, value, line});
}

const ConfigEntries::Entry *ConfigEntries::find(std::string_view key) const {
  for (const auto &e : entries_)
    if (e.key == key) return &e;
  return nullptr;
}

ConfigEntries parse_entries(std::string_view text) {
  ConfigEntries entries;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream tokens(line);
    std::string token;
    while (tokens >> token) {
      const auto eq = token.find('=');
      if (eq == std::string::npos || eq == 0 || eq + 1 == token.size())
        throw ConfigError("line " + std::to_string(line_no) + ": expected key=value, got '" +
                              token + "'",
                          {}, line_no);
      const std::string key = token.substr(0, eq);
      if (entries.find(key))
        throw ConfigError("line " + std::to_string(line_no) + ": duplicate key '" + key + "'",
                          key, line_no);
      entries.set(key, token.substr(eq + 1), line_no);
    }
  }
  return entries;
}

RunConfig resolve_config(const ConfigEntries &entries) {
  RunConfig c;
  Reader r(entries);

  std::string family = "gaussian";
  if (const auto *e = r.get("family")) {
    if (e->value != "gaussian" && e->value != "exponential")
      fail(*e, "expected gaussian or exponential");
    family = e->value;
  }
  if (family == "gaussian")
    c.family = GaussianFamily{r.positive("k0", 5.0), r.positive("sigma", 1.0)};
  else
    c.family = ExponentialFamily{r.positive("kappa", 2.0)};
  c.d = r.non_negative("d", 0.0);

  if (const auto *e = r.get("pi0")) {
    c.pi0 = to_double(*e, e->value);
    if (!(c.pi0 >= 0.0 && c.pi0 <= 1.0)) fail(*e, "must lie in [0, 1]");
  }

  const auto *eR = r.get("R");
  const auto *eList = r.get("R_list");
  const auto *eRange = r.get("R_range");
  if ((eR != nullptr) + (eList != nullptr) + (eRange != nullptr) > 1) {
    const auto *second = eRange ? eRange : eList;
    fail(*second, "R, R_list and R_range are mutually exclusive");
  }
  if (eR) c.R_list = parse_radii(*eR, false);
  if (eR && c.R_list.size() != 1) fail(*eR, "expected a single radius; use R_list");
  if (eList) c.R_list = parse_radii(*eList, false);
  if (eRange) c.R_list = parse_radii(*eRange, true);

  c.t = r.number("t", 0.0);
  c.window.lo = r.number("t_lo", c.window.lo);
  c.window.hi = r.number("t_hi", c.window.hi);
  if (!(c.window.lo < c.window.hi))
    throw ConfigError("t_lo: must be smaller than t_hi", "t_lo");
  c.n_grid = static_cast<int>(r.count("n_grid", 41, 8));
  if (c.n_grid > 100000) fail(*entries.find("n_grid"), "must be <= 100000");
  if (const auto *e = r.get("fixed_t")) {
    if (e->value != "true" && e->value != "false") fail(*e, "expected true or false");
    c.fixed_t = e->value == "true";
  }
  c.tol.amplitude_abs = r.positive("amp_tol", c.tol.amplitude_abs);
  c.tol.probability_abs = r.positive("prob_tol", c.tol.probability_abs);

  c.trials = r.count("trials", c.trials, 1000);
  c.seed = r.count("seed", c.seed, 0);
  if (const auto *e = r.get("strategy")) {
    if (e->value == "paper")
      c.strategy = GuessStrategy::ProbabilityMatching;
    else if (e->value == "map")
      c.strategy = GuessStrategy::Map;
    else
      fail(*e, "expected paper or map");
  }
  c.cdf_cells = r.count("cdf_cells", c.cdf_cells, 64);
  if (const auto *e = r.get("trial_csv")) c.trial_csv = e->value;

  if (const auto *e = r.get("r_max"); e && e->value != "auto") {
    c.r_max = to_double(*e, e->value);
    if (!(c.r_max > 0.0)) fail(*e, "must be > 0 or auto");
  }
  c.n_points = r.count("n_points", c.n_points, 16);
  c.oracle_grid = r.count("oracle_grid", 0, 0);
  if (c.oracle_grid != 0 && c.oracle_grid < 32)
    fail(*entries.find("oracle_grid"), "must be 0 or >= 32");

  if (entries.find("L1")) c.L1 = r.positive("L1", 0.0);
  if (entries.find("L2")) c.L2 = r.positive("L2", 0.0);
  if (const auto *e = r.get("observer")) {
    if (e->value == "midpoint")
      c.observer = 0.5;
    else if (e->value == "endpoint")
      c.observer = 0.0;
    else {
      c.observer = to_double(*e, e->value);
      if (!(c.observer >= 0.0 && c.observer <= 1.0)) fail(*e, "must lie in [0, 1]");
    }
  }
  if (const auto *e = r.get("beta")) {
    c.beta = to_double(*e, e->value);
    if (!(std::abs(*c.beta) < 1.0)) fail(*e, "must satisfy |beta| < 1");
  }

  if (const auto *e = r.get("format")) {
    if (e->value == "auto")
      c.format = OutputFormat::Auto;
    else if (e->value == "csv")
      c.format = OutputFormat::Csv;
    else if (e->value == "json")
      c.format = OutputFormat::Json;
    else
      fail(*e, "expected auto, csv or json");
  }
  if (const auto *e = r.get("output")) c.output = e->value;

  r.reject_unused("for family " + family);
  return c;
}

std::string format_exact(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

std::string format_sig12(double v) {
  if (v == 0.0) return "0"; // folds -0
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string RunConfig::to_text() const {
  std::ostringstream out;
  auto put = [&](const std::string &key, const std::string &value) {
    if (out.tellp() > 0) out << ' ';
    out << key << '=' << value;
  };
  if (const auto *g = std::get_if<GaussianFamily>(&family)) {
    put("family", "gaussian");
    put("k0", format_exact(g->k0));
    put("sigma", format_exact(g->sigma));
  } else {
    put("family", "exponential");
    put("kappa", format_exact(std::get<ExponentialFamily>(family).kappa));
  }
  put("d", format_exact(d));
  put("pi0", format_exact(pi0));
  std::string radii;
  for (std::size_t i = 0; i < R_list.size(); ++i)
    radii += (i ? "," : "") + format_exact(R_list[i]);
  put("R_list", radii);
  put("t", format_exact(t));
  put("t_lo", format_exact(window.lo));
  put("t_hi", format_exact(window.hi));
  put("n_grid", std::to_string(n_grid));
  put("fixed_t", fixed_t ? "true" : "false");
  put("amp_tol", format_exact(tol.amplitude_abs));
  put("prob_tol", format_exact(tol.probability_abs));
  put("trials", std::to_string(trials));
  put("seed", std::to_string(seed));
  put("strategy", strategy_name(strategy));
  put("cdf_cells", std::to_string(cdf_cells));
  put("r_max", r_max > 0.0 ? format_exact(r_max) : "auto");
  put("n_points", std::to_string(n_points));
  put("oracle_grid", std::to_string(oracle_grid));
  if (L1) put("L1", format_exact(*L1));
  if (L2) put("L2", format_exact(*L2));
  put("observer", format_exact(observer));
  if (beta) put("beta", format_exact(*beta));
  put("format", format == OutputFormat::Csv ? "csv" : format == OutputFormat::Json ? "json" : "auto");
  return out.str();
}

} // namespace lcd
