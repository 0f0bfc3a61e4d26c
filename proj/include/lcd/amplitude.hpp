#pragma once

#include <string>
#include <variant>

namespace lcd {

/// g(k) = C exp(-(k - k0)^2 / (4 sigma^2)) for k > 0.
struct GaussianFamily {
  double k0 = 0.0;
  double sigma = 0.0;
};

/// g(k) = C k exp(-k / kappa).
struct ExponentialFamily {
  double kappa = 0.0;
};

using FamilyParams = std::variant<GaussianFamily, ExponentialFamily>;

std::string family_name(const FamilyParams &family);

/// Spherically symmetric amplitude on the positive mass shell, truncated at
/// k_max and rigidly displaced by offset_d from the observer origin.
///
/// Immutable once built; instances are freely shared between threads.
class MomentumProfile {
public:
  const FamilyParams &family() const noexcept { return family_; }
  double norm_const() const noexcept { return norm_const_; }
  double offset_d() const noexcept { return offset_d_; }
  double k_max() const noexcept { return k_max_; }

  /// g(k) including the normalization constant; 0 for k <= 0.
  double operator()(double k) const;

  /// Width below which quadrature panels over k resolve g.
  double k_resolution() const;

  /// Spatial length scale used for default radial extents: 1/sigma for the
  /// Gaussian family, 4/kappa for the exponential family (whose position
  /// density only decays as a power law).
  double length_scale() const;

  /// Same shape with the normalization constant multiplied by factor.
  MomentumProfile scaled(double factor) const;

private:
  friend MomentumProfile make_profile(const FamilyParams &, double);
  friend MomentumProfile make_raw_profile(const FamilyParams &, double, double);

  MomentumProfile(FamilyParams family, double norm_const, double offset_d, double k_max)
      : family_(family), norm_const_(norm_const), offset_d_(offset_d), k_max_(k_max) {}

  FamilyParams family_;
  double norm_const_;
  double offset_d_;
  double k_max_;
};

/// Truncation point shared by all profiles: the first point of the geometric
/// grid k_ref * 1.01^i at which the relative tail mass drops below this.
inline constexpr double kTailMassBound = 1e-10;

/// Builds a unit-norm profile: 2 pi \int_0^{k_max} k |g|^2 dk = 1.
/// Throws InvalidParameter for non-positive scales or negative offset and
/// NumericFailure when the normalization integral is not finite.
MomentumProfile make_profile(const FamilyParams &family, double offset_d);

/// Same truncation as make_profile but with a caller-supplied constant.
MomentumProfile make_raw_profile(const FamilyParams &family, double offset_d,
                                 double norm_const);

/// 2 pi \int_0^{k_max} k |g(k)|^2 dk, i.e. \int d^3k |g|^2 / 2|k|.
double momentum_norm(const MomentumProfile &profile);

/// Tail mass 2 pi \int_{k_max}^\infty k |g|^2 dk for the profile as built.
double tail_mass(const MomentumProfile &profile);

enum class HelicityChannel { Plus, Minus };

/// <psi_a|psi_b> for two states sharing one profile: 1 on equal helicity,
/// 0 otherwise.
constexpr double channel_overlap(HelicityChannel a, HelicityChannel b) noexcept {
  return a == b ? 1.0 : 0.0;
}

/// Candidate state index: 0 is the positive-helicity state, 1 the negative.
constexpr HelicityChannel channel_of_state(int state) noexcept {
  return state == 0 ? HelicityChannel::Plus : HelicityChannel::Minus;
}

} // namespace lcd
