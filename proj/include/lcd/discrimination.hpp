#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lcd/amplitude.hpp"
#include "lcd/propagation.hpp"

namespace lcd {

/// A priori probabilities of the two candidate states; pi1 is always 1 - pi0.
class Priors {
public:
  explicit Priors(double pi0);
  double pi0() const noexcept { return pi0_; }
  double pi1() const noexcept { return pi1_; }

private:
  double pi0_;
  double pi1_;
};

/// How the observer guesses after the inaccessible outcome "?".
enum class GuessStrategy {
  ProbabilityMatching, ///< guess state j with probability pi_j (reproduces 2 pi0 pi1 p_t)
  Map,                 ///< extension: always guess the larger prior, ties to state 0
};

std::string strategy_name(GuessStrategy s);

struct DiscriminationReport {
  double R = 0.0;
  double t_meas = 0.0;
  double p_t = 1.0;
  double P_e = 0.0;
  double posterior0 = 0.0;
  double posterior1 = 0.0;
  double scan_T = 0.0;
  double total_T = 0.0;
  std::vector<std::string> warnings;
};

/// p_t = 1 - inside_probability, clipped to [0, 1]. A clip larger than 1e-6
/// appends a warning when a sink is supplied.
double outside_probability(const MomentumProfile &profile, double R, double t,
                           const QuadratureTolerances &tol = {},
                           std::vector<std::string> *warnings = nullptr);

/// Posterior probabilities of the two states given the outcome "?". The
/// common factor p_t cancels, leaving the priors.
std::pair<double, double> posteriors_on_unknown(const Priors &priors);

/// (pi0 p1 + pi1 p0) p_t with the posteriors above, i.e. 2 pi0 pi1 p_t.
double inaccessible_error(const Priors &priors, double p_t);

/// Error for outcomes inside the accessible domain under the helicity-resolving
/// measurement. The two channels are orthogonal, so this is exactly 0.
constexpr double accessible_error() noexcept { return 0.0; }

/// accessible_error() + inaccessible_error(priors, p_t) = 2 pi0 pi1 p_t.
double total_error(const Priors &priors, double p_t);

/// Error on "?" under the chosen strategy: 2 pi0 pi1 p_t or min(pi0, pi1) p_t.
double unknown_outcome_error(const Priors &priors, double p_t, GuessStrategy strategy);

struct TimeWindow {
  double lo = 0.0;
  double hi = 20.0;
};

struct OptimalTime {
  double t_star = 0.0;
  double p_t_star = 1.0;
  std::vector<std::string> warnings;
};

inline constexpr double kTimeTolerance = 1e-4;

/// Minimizes p_t over the window: n_grid equally spaced times, then
/// golden-section search on the bracket around the best grid point down to
/// kTimeTolerance. Values within 1e-12 of each other count as ties and the
/// earliest time wins.
OptimalTime optimal_measurement_time(const MomentumProfile &profile, double R,
                                     TimeWindow window, int n_grid,
                                     const QuadratureTolerances &tol = {});

/// One report per radius, with t optimized per radius. R_list must be
/// non-empty and strictly increasing.
std::vector<DiscriminationReport>
tradeoff_curve(const MomentumProfile &profile, const Priors &priors,
               std::span<const double> R_list, TimeWindow window, int n_grid = 41,
               GuessStrategy strategy = GuessStrategy::ProbabilityMatching,
               const QuadratureTolerances &tol = {});

/// Same as tradeoff_curve with the measurement time held at t for every radius.
std::vector<DiscriminationReport>
fixed_time_curve(const MomentumProfile &profile, const Priors &priors,
                 std::span<const double> R_list, double t,
                 GuessStrategy strategy = GuessStrategy::ProbabilityMatching,
                 const QuadratureTolerances &tol = {});

} // namespace lcd
