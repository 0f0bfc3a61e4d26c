#include "lcd/amplitude.hpp"

#include <cmath>
#include <numbers>

#include "lcd/errors.hpp"
#include "lcd/quadrature.hpp"

namespace lcd {
namespace {

// |g(k)|^2 with unit constant.
double shape_sq(const FamilyParams &family, double k) {
  if (k <= 0.0) return 0.0;
  if (const auto *g = std::get_if<GaussianFamily>(&family)) {
    const double z = (k - g->k0) / g->sigma;
    return std::exp(-0.5 * z * z);
  }
  const auto &e = std::get<ExponentialFamily>(family);
  return k * k * std::exp(-2.0 * k / e.kappa);
}

double resolution(const FamilyParams &family) {
  if (const auto *g = std::get_if<GaussianFamily>(&family)) return 0.5 * g->sigma;
  return 0.5 * std::get<ExponentialFamily>(family).kappa;
}

// Beyond this point the shape is below double underflow relative to its peak.
double far_cutoff(const FamilyParams &family) {
  if (const auto *g = std::get_if<GaussianFamily>(&family)) return g->k0 + 40.0 * g->sigma;
  return 100.0 * std::get<ExponentialFamily>(family).kappa;
}

double grid_start(const FamilyParams &family) {
  if (const auto *g = std::get_if<GaussianFamily>(&family)) return g->k0 + g->sigma;
  return std::get<ExponentialFamily>(family).kappa;
}

// Order-of-magnitude estimate of the full shape mass; scales tolerances.
double mass_scale(const FamilyParams &family) {
  if (const auto *g = std::get_if<GaussianFamily>(&family))
    return 2.0 * std::numbers::pi * g->sigma *
           (g->k0 * std::sqrt(2.0 * std::numbers::pi) + g->sigma);
  const double half = 0.5 * std::get<ExponentialFamily>(family).kappa;
  return 12.0 * std::numbers::pi * half * half * half * half;
}

double shape_mass(const FamilyParams &family, double a, double b, double rel_tol) {
  const double abs_tol = rel_tol * mass_scale(family);
  quad::Options opt;
  opt.abs_tol = abs_tol;
  opt.max_panel_width = resolution(family);
  return quad::integrate(
             [&](double k) { return 2.0 * std::numbers::pi * k * shape_sq(family, k); }, a,
             b, opt, "momentum mass")
      .value;
}

void validate(const FamilyParams &family, double offset_d) {
  auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (const auto *g = std::get_if<GaussianFamily>(&family)) {
    if (!positive(g->k0)) throw InvalidParameter("gaussian k0 must be positive and finite");
    if (!positive(g->sigma))
      throw InvalidParameter("gaussian sigma must be positive and finite");
  } else if (!positive(std::get<ExponentialFamily>(family).kappa)) {
    throw InvalidParameter("exponential kappa must be positive and finite");
  }
  if (!std::isfinite(offset_d) || offset_d < 0.0)
    throw InvalidParameter("offset d must be finite and non-negative");
}

double choose_k_max(const FamilyParams &family) {
  const double far = far_cutoff(family);
  const double total = shape_mass(family, 0.0, far, 1e-13);
  if (!std::isfinite(total) || total <= 0.0)
    throw NumericFailure("normalization integral is not finite and positive", total);
  double k = grid_start(family);
  for (int i = 0; i < 10000 && k < far; ++i, k *= 1.01) {
    const double tail = shape_mass(family, k, far, 1e-3 * kTailMassBound);
    if (tail < kTailMassBound * total) return k;
  }
  return far;
}

} // namespace

std::string family_name(const FamilyParams &family) {
  return std::holds_alternative<GaussianFamily>(family) ? "gaussian" : "exponential";
}

double MomentumProfile::operator()(double k) const {
  if (k <= 0.0) return 0.0;
  if (const auto *g = std::get_if<GaussianFamily>(&family_)) {
    const double z = k - g->k0;
    return norm_const_ * std::exp(-z * z / (4.0 * g->sigma * g->sigma));
  }
  return norm_const_ * k * std::exp(-k / std::get<ExponentialFamily>(family_).kappa);
}

double MomentumProfile::k_resolution() const { return resolution(family_); }

double MomentumProfile::length_scale() const {
  if (const auto *g = std::get_if<GaussianFamily>(&family_)) return 1.0 / g->sigma;
  return 4.0 / std::get<ExponentialFamily>(family_).kappa;
}

MomentumProfile MomentumProfile::scaled(double factor) const {
  return MomentumProfile(family_, norm_const_ * factor, offset_d_, k_max_);
}

MomentumProfile make_raw_profile(const FamilyParams &family, double offset_d,
                                 double norm_const) {
  validate(family, offset_d);
  if (!std::isfinite(norm_const)) throw InvalidParameter("norm_const must be finite");
  return MomentumProfile(family, norm_const, offset_d, choose_k_max(family));
}

MomentumProfile make_profile(const FamilyParams &family, double offset_d) {
  validate(family, offset_d);
  const double k_max = choose_k_max(family);
  const double mass = shape_mass(family, 0.0, k_max, 1e-13);
  const double c = 1.0 / std::sqrt(mass);
  if (!std::isfinite(c) || c <= 0.0)
    throw NumericFailure("normalization constant is not finite", mass);
  return MomentumProfile(family, c, offset_d, k_max);
}

double momentum_norm(const MomentumProfile &profile) {
  const double c2 = profile.norm_const() * profile.norm_const();
  return c2 * shape_mass(profile.family(), 0.0, profile.k_max(), 1e-13);
}

double tail_mass(const MomentumProfile &profile) {
  const double c2 = profile.norm_const() * profile.norm_const();
  return c2 * shape_mass(profile.family(), profile.k_max(), far_cutoff(profile.family()),
                         1e-3 * kTailMassBound);
}

} // namespace lcd
