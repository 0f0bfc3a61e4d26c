#include "lcd/discrimination.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <tuple>

#include "lcd/errors.hpp"
#include "lcd/lightcone.hpp"

namespace lcd {
namespace {

constexpr double kTie = 1e-12;
constexpr double kClipWarn = 1e-6;

void require_probability(double p_t) {
  if (!(p_t >= 0.0 && p_t <= 1.0)) throw InvalidParameter("p_t must lie in [0, 1]");
}

void require_radii(std::span<const double> R_list) {
  if (R_list.empty()) throw InvalidParameter("R list must not be empty");
  for (std::size_t i = 0; i < R_list.size(); ++i) {
    if (!std::isfinite(R_list[i]) || R_list[i] < 0.0)
      throw InvalidParameter("R values must be finite and >= 0");
    if (i > 0 && !(R_list[i] > R_list[i - 1]))
      throw InvalidParameter("R list must be strictly increasing");
  }
}

struct Sample {
  double t;
  double p;
};

// Earlier time wins unless the later one is lower by more than kTie.
bool better(const Sample &candidate, const Sample &incumbent) {
  if (candidate.p < incumbent.p - kTie) return true;
  if (candidate.p > incumbent.p + kTie) return false;
  return candidate.t < incumbent.t;
}

DiscriminationReport make_report(const Priors &priors, double R, double t, double p_t,
                                 GuessStrategy strategy) {
  DiscriminationReport r;
  r.R = R;
  r.t_meas = t;
  r.p_t = p_t;
  r.P_e = unknown_outcome_error(priors, p_t, strategy);
  std::tie(r.posterior0, r.posterior1) = posteriors_on_unknown(priors);
  r.scan_T = scan_time_ball(R);
  r.total_T = t + r.scan_T;
  return r;
}

} // namespace

Priors::Priors(double pi0) : pi0_(pi0), pi1_(1.0 - pi0) {
  if (!(pi0 >= 0.0 && pi0 <= 1.0)) throw InvalidParameter("pi0 must lie in [0, 1]");
}

std::string strategy_name(GuessStrategy s) {
  return s == GuessStrategy::Map ? "map" : "paper";
}

double outside_probability(const MomentumProfile &profile, double R, double t,
                           const QuadratureTolerances &tol, std::vector<std::string> *warnings) {
  const double raw = 1.0 - inside_probability(profile, R, t, tol);
  const double clipped = std::clamp(raw, 0.0, 1.0);
  if (warnings && std::abs(clipped - raw) > kClipWarn)
    warnings->push_back("p_t clipped from " + std::to_string(raw) + " at R=" +
                        std::to_string(R) + ", t=" + std::to_string(t));
  return clipped;
}

std::pair<double, double> posteriors_on_unknown(const Priors &priors) {
  return {priors.pi0(), priors.pi1()};
}

double inaccessible_error(const Priors &priors, double p_t) {
  require_probability(p_t);
  const auto [p0, p1] = posteriors_on_unknown(priors);
  return (priors.pi0() * p1 + priors.pi1() * p0) * p_t;
}

double total_error(const Priors &priors, double p_t) {
  return accessible_error() + inaccessible_error(priors, p_t);
}

double unknown_outcome_error(const Priors &priors, double p_t, GuessStrategy strategy) {
  if (strategy == GuessStrategy::ProbabilityMatching) return total_error(priors, p_t);
  require_probability(p_t);
  return std::min(priors.pi0(), priors.pi1()) * p_t;
}

OptimalTime optimal_measurement_time(const MomentumProfile &profile, double R,
                                     TimeWindow window, int n_grid,
                                     const QuadratureTolerances &tol) {
  if (!std::isfinite(window.lo) || !std::isfinite(window.hi) || !(window.lo < window.hi))
    throw InvalidParameter("time window needs finite t_lo < t_hi");
  if (n_grid < 8) throw InvalidParameter("n_grid must be at least 8");

  OptimalTime out;
  auto p_at = [&](double t) { return outside_probability(profile, R, t, tol, &out.warnings); };

  const double span = window.hi - window.lo;
  std::vector<Sample> grid(static_cast<std::size_t>(n_grid));
  for (int i = 0; i < n_grid; ++i) {
    const double t = (i + 1 == n_grid) ? window.hi : window.lo + span * i / (n_grid - 1);
    grid[static_cast<std::size_t>(i)] = {t, p_at(t)};
  }
  std::size_t best_i = 0;
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (better(grid[i], grid[best_i])) best_i = i;
  Sample best = grid[best_i];

  double a = grid[best_i == 0 ? 0 : best_i - 1].t;
  double b = grid[std::min(best_i + 1, grid.size() - 1)].t;
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  Sample fc{c, p_at(c)}, fd{d, p_at(d)};
  for (const auto &s : {fc, fd})
    if (better(s, best)) best = s;
  while (b - a > kTimeTolerance) {
    if (fc.p <= fd.p) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = {c, p_at(c)};
      if (better(fc, best)) best = fc;
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = {d, p_at(d)};
      if (better(fd, best)) best = fd;
    }
  }

  out.t_star = best.t;
  out.p_t_star = best.p;
  const auto [lo_it, hi_it] = std::minmax_element(
      grid.begin(), grid.end(), [](const Sample &x, const Sample &y) { return x.p < y.p; });
  const bool flat = hi_it->p - lo_it->p <= kTie;
  if (!flat && (best.t - window.lo <= kTimeTolerance || window.hi - best.t <= kTimeTolerance))
    out.warnings.push_back("window too narrow: minimum of p_t at window boundary t=" +
                           std::to_string(best.t));
  return out;
}

std::vector<DiscriminationReport>
tradeoff_curve(const MomentumProfile &profile, const Priors &priors,
               std::span<const double> R_list, TimeWindow window, int n_grid,
               GuessStrategy strategy, const QuadratureTolerances &tol) {
  require_radii(R_list);
  std::vector<DiscriminationReport> out;
  out.reserve(R_list.size());
  for (const double R : R_list) {
    auto opt = optimal_measurement_time(profile, R, window, n_grid, tol);
    auto report = make_report(priors, R, opt.t_star, opt.p_t_star, strategy);
    report.warnings = std::move(opt.warnings);
    out.push_back(std::move(report));
  }
  return out;
}

std::vector<DiscriminationReport>
fixed_time_curve(const MomentumProfile &profile, const Priors &priors,
                 std::span<const double> R_list, double t, GuessStrategy strategy,
                 const QuadratureTolerances &tol) {
  require_radii(R_list);
  std::vector<DiscriminationReport> out;
  out.reserve(R_list.size());
  for (const double R : R_list) {
    std::vector<std::string> warnings;
    const double p_t = outside_probability(profile, R, t, tol, &warnings);
    auto report = make_report(priors, R, t, p_t, strategy);
    report.warnings = std::move(warnings);
    out.push_back(std::move(report));
  }
  return out;
}

} // namespace lcd
