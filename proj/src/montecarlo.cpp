#include "lcd/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "lcd/errors.hpp"
#include "lcd/quadrature.hpp"

namespace lcd {

RadialSampler::RadialSampler(const MomentumProfile &profile, double t, double r_max,
                             std::size_t cells, const QuadratureTolerances &tol)
    : t_(t), r_max_(r_max) {
  if (!std::isfinite(r_max) || r_max <= 0.0 || cells == 0)
    throw InvalidState("radial sampling grid has zero width or no cells");
  width_ = r_max / static_cast<double>(cells);

  const auto grid = radial_density_grid(profile, t, r_max, 2 * cells + 1, tol);
  const double half = 0.5 * width_;
  auto f = [&](std::size_t i) {
    const double r = grid.r_grid[i];
    return 4.0 * std::numbers::pi * r * r * grid.density[i];
  };
  mass_.resize(cells);
  cum_.resize(cells + 1);
  cum_[0] = 0.0;
  for (std::size_t c = 0; c < cells; ++c) {
    mass_[c] = half / 3.0 * (f(2 * c) + 4.0 * f(2 * c + 1) + f(2 * c + 2));
    cum_[c + 1] = cum_[c] + mass_[c];
  }
  total_ = cum_[cells];

  const double expected = momentum_norm(profile);
  if (!(total_ >= (1.0 - kCoverageDeficit) * expected))
    throw InvalidState("sampling grid up to r_max=" + std::to_string(r_max) + " holds " +
                       std::to_string(total_ / expected) +
                       " of the mass; increase r_max");
}

double RadialSampler::sample_radius(double u) const {
  const double target = u * total_;
  auto it = std::upper_bound(cum_.begin() + 1, cum_.end(), target);
  if (it == cum_.end()) return r_max_;
  const auto c = static_cast<std::size_t>(it - cum_.begin()) - 1;
  const double frac = mass_[c] > 0.0 ? (target - cum_[c]) / mass_[c] : 0.0;
  return (static_cast<double>(c) + std::clamp(frac, 0.0, 1.0)) * width_;
}

double RadialSampler::cdf(double r) const {
  if (r <= 0.0) return 0.0;
  if (r >= r_max_) return 1.0;
  const double pos = r / width_;
  const auto c = std::min(static_cast<std::size_t>(pos), mass_.size() - 1);
  return (cum_[c] + (pos - static_cast<double>(c)) * mass_[c]) / total_;
}

Detection sample_detection(const MomentumProfile &profile, const RadialSampler &sampler,
                           SplitMix64 &rng) {
  Detection det;
  det.rho = sampler.sample_radius(rng.uniform());
  const double cos_theta = 2.0 * rng.uniform() - 1.0;
  const double phi = 2.0 * std::numbers::pi * rng.uniform();
  const double sin_theta = std::sqrt(std::max(0.0, 1.0 - cos_theta * cos_theta));
  det.direction = {sin_theta * std::cos(phi), sin_theta * std::sin(phi), cos_theta};
  det.point = {det.rho * det.direction[0], det.rho * det.direction[1],
               profile.offset_d() + det.rho * det.direction[2]};
  return det;
}

TrialRecord run_trial(const MomentumProfile &profile, const RadialSampler &sampler,
                      const Priors &priors, double R, GuessStrategy strategy,
                      SplitMix64 &rng) {
  TrialRecord rec;
  rec.true_state = rng.uniform() < priors.pi0() ? 0 : 1;
  const Detection det = sample_detection(profile, sampler, rng);
  const double u_guess = rng.uniform();
  rec.detection_radius_rho = det.rho;
  const auto &x = det.point;
  rec.inside_omega = x[0] * x[0] + x[1] * x[1] + x[2] * x[2] < R * R;

  if (rec.inside_omega) {
    // The two helicity channels are orthogonal: the firing channel names the state.
    rec.outcome = rec.true_state == 0 ? Outcome::ChannelPlus : Outcome::ChannelMinus;
    rec.guess = rec.true_state;
  } else {
    rec.outcome = Outcome::Unknown;
    if (strategy == GuessStrategy::ProbabilityMatching)
      rec.guess = u_guess < priors.pi0() ? 0 : 1;
    else
      rec.guess = priors.pi0() >= priors.pi1() ? 0 : 1;
  }
  rec.correct = rec.guess == rec.true_state;
  return rec;
}

ErrorEstimate estimate_error(const MomentumProfile &profile, const Priors &priors, double R,
                             double t, const MonteCarloOptions &options,
                             const QuadratureTolerances &tol, const TrialSink &sink) {
  if (options.n_trials < 1000) throw InvalidParameter("at least 1000 trials are required");
  if (!std::isfinite(R) || R < 0.0) throw InvalidParameter("ball radius R must be >= 0");

  const double r_max = options.r_max > 0.0 ? options.r_max : default_r_max(profile, t);
  const RadialSampler sampler(profile, t, r_max, options.cdf_cells, tol);

  ErrorEstimate est;
  est.n_trials = options.n_trials;
  est.p_t = outside_probability(profile, R, t, tol);
  est.analytic_rate = unknown_outcome_error(priors, est.p_t, options.strategy);

  for (std::size_t i = 0; i < options.n_trials; ++i) {
    auto rng = SplitMix64::substream(options.seed, i);
    const TrialRecord rec = run_trial(profile, sampler, priors, R, options.strategy, rng);
    if (!rec.inside_omega) ++est.n_unknown;
    if (!rec.correct) {
      ++est.n_errors;
      if (rec.inside_omega) ++est.n_inside_errors;
    }
    if (sink) sink(i, rec);
  }

  const double n = static_cast<double>(est.n_trials);
  est.empirical_rate = static_cast<double>(est.n_errors) / n;
  est.std_err = std::sqrt(est.analytic_rate * (1.0 - est.analytic_rate) / n);
  return est;
}

} // namespace lcd
