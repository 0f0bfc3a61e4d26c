#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "lcd/amplitude.hpp"
#include "lcd/discrimination.hpp"
#include "lcd/propagation.hpp"
#include "lcd/rng.hpp"

namespace lcd {

/// Inverse-transform sampler for the distance of the detector firing from the
/// packet centre, built from 4 pi rho^2 |A(rho, t)|^2 on a uniform grid of
/// cells over [0, r_max]. Cell masses use Simpson's rule on the cell
/// endpoints and midpoint; within a cell the CDF is linear.
class RadialSampler {
public:
  static constexpr std::size_t kDefaultCells = 4096;

  /// Throws InvalidState when the grid is degenerate or holds less than
  /// 1 - 1e-6 of the profile's mass.
  RadialSampler(const MomentumProfile &profile, double t, double r_max,
                std::size_t cells = kDefaultCells, const QuadratureTolerances &tol = {});

  /// rho with CDF(rho) = u, u in [0, 1).
  double sample_radius(double u) const;

  /// Normalized grid probability that rho <= r.
  double cdf(double r) const;

  double time() const noexcept { return t_; }
  double r_max() const noexcept { return r_max_; }
  std::size_t cells() const noexcept { return mass_.size(); }
  double grid_mass() const noexcept { return total_; }

private:
  double t_;
  double r_max_;
  double width_;
  double total_;
  std::vector<double> mass_; // per cell
  std::vector<double> cum_;  // cum_[c] = mass of cells [0, c)
};

struct Detection {
  double rho = 0.0;                ///< distance from the packet centre
  std::array<double, 3> direction; ///< unit vector from the packet centre
  std::array<double, 3> point;     ///< observer-frame position; packet at (0, 0, d)
};

/// Draws rho from the sampler (one uniform), then cos(theta) and phi (two more).
Detection sample_detection(const MomentumProfile &profile, const RadialSampler &sampler,
                           SplitMix64 &rng);

enum class Outcome { ChannelPlus, ChannelMinus, Unknown };

struct TrialRecord {
  int true_state = 0; ///< 0: positive helicity, 1: negative helicity
  double detection_radius_rho = 0.0;
  bool inside_omega = false;
  Outcome outcome = Outcome::Unknown;
  int guess = 0;
  bool correct = false;

  HelicityChannel true_channel() const noexcept { return channel_of_state(true_state); }
  HelicityChannel guessed_channel() const noexcept { return channel_of_state(guess); }
};

/// One preparation and measurement. Consumes exactly five uniforms in the
/// order: state, rho, cos(theta), phi, guess.
TrialRecord run_trial(const MomentumProfile &profile, const RadialSampler &sampler,
                      const Priors &priors, double R, GuessStrategy strategy,
                      SplitMix64 &rng);

struct ErrorEstimate {
  std::size_t n_trials = 0;
  std::size_t n_errors = 0;
  std::size_t n_unknown = 0;
  std::size_t n_inside_errors = 0; ///< always 0 for the helicity-resolving rule
  double empirical_rate = 0.0;
  double analytic_rate = 0.0;
  double p_t = 0.0;
  double std_err = 0.0; ///< sqrt(analytic (1 - analytic) / n_trials)
};

struct MonteCarloOptions {
  std::size_t n_trials = 100000;
  std::uint64_t seed = 1;
  GuessStrategy strategy = GuessStrategy::ProbabilityMatching;
  std::size_t cdf_cells = RadialSampler::kDefaultCells;
  double r_max = 0.0; ///< 0: default_r_max(profile, t)
};

using TrialSink = std::function<void(std::size_t index, const TrialRecord &)>;

/// Runs n_trials trials, trial i drawing from SplitMix64::substream(seed, i),
/// and compares the error rate with the analytic value for the strategy.
ErrorEstimate estimate_error(const MomentumProfile &profile, const Priors &priors, double R,
                             double t, const MonteCarloOptions &options,
                             const QuadratureTolerances &tol = {},
                             const TrialSink &sink = {});

} // namespace lcd
