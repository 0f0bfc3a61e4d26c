#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "lcd/amplitude.hpp"

namespace lcd {

struct QuadratureTolerances {
  double amplitude_abs = 1e-9;   ///< per evaluation of A(r, t)
  double probability_abs = 1e-8; ///< per radial probability integral
};

/// Evaluates the packet-centred position amplitude
///
///   A(r, t) = 4 pi / (2 pi)^{3/2} \int_0^{k_max} k^2 g(k) (2k)^{-1/2} j0(kr) e^{-ikt} dk
///
/// for any r in [0, max_radius] at one fixed t.
///
/// The k-axis is cut into equal GK15 panels no wider than
/// pi / (8 max(max_radius, |t|, 1)) (and no wider than the profile's own
/// resolution), so each panel advances the phase by at most pi/4. The first
/// panel is mapped through k = h v^2 to absorb the sqrt(k) endpoint. Panel
/// weights g(k) e^{-ikt} are precomputed once; per radius the panel phases
/// e^{i k r} are advanced by complex rotation, which is exact up to rounding
/// because every panel has the same width.
class AmplitudeEvaluator {
public:
  AmplitudeEvaluator(const MomentumProfile &profile, double t, double max_radius,
                     double amplitude_tol = QuadratureTolerances{}.amplitude_abs);

  /// A(r, t). Throws NumericFailure if |K15 - G7| exceeds the tolerance.
  std::complex<double> amplitude(double r) const;

  /// 4 pi r^2 |A(r, t)|^2, finite at r = 0.
  double radial_density(double r) const;

  double time() const noexcept { return t_; }
  double max_radius() const noexcept { return max_radius_; }
  double panel_width() const noexcept { return h_; }
  std::size_t node_count() const noexcept { return 15 * (panels_ + 1); }

private:
  struct Sum {
    std::complex<double> value; // r * A(r, t) / prefactor
    double error;
  };
  Sum scaled_sum(double r) const;
  template <class Kernel> Sum kernel_sum(Kernel &&kernel) const;
  std::complex<double> checked(const Sum &s, double r) const;

  double t_;
  double max_radius_;
  double tol_;
  double h_;
  std::size_t panels_; // uniform panels after the first
  // First panel: nodes and weights after the k = h v^2 map.
  std::vector<double> first_k_;
  std::vector<std::complex<double>> first_w_, first_dw_;
  // Panels 1..panels_, 15 nodes each, in panel-major order.
  std::vector<std::complex<double>> w_, dw_;
};

/// Single-point A(r, t) about the packet centre.
std::complex<double> centered_amplitude(const MomentumProfile &profile, double r, double t,
                                        const QuadratureTolerances &tol = {});

/// Sampled amplitude on a uniform radial grid about the packet centre.
struct RadialAmplitude {
  double time_t = 0.0;
  std::vector<double> r_grid;
  std::vector<std::complex<double>> amp;
  std::vector<double> density; ///< |amp|^2
  double grid_norm = 0.0;      ///< 4 pi \int r^2 density dr (composite Simpson)
  bool coverage_ok = true;     ///< grid_norm >= (1 - 1e-6) * momentum norm
  std::vector<std::string> warnings;
};

inline constexpr double kCoverageDeficit = 1e-6;

/// Default radial extent d + |t| + 10 * length_scale.
double default_r_max(const MomentumProfile &profile, double t);

/// Radius about the packet centre beyond which radial probability integrals
/// are truncated: |t| + 20 * length_scale.
double packet_support_radius(const MomentumProfile &profile, double t);

RadialAmplitude radial_density_grid(const MomentumProfile &profile, double t, double r_max,
                                    std::size_t n_points,
                                    const QuadratureTolerances &tol = {});

/// Fraction of the sphere of radius rho about the packet centre that lies in
/// the ball of radius R about the origin, the centres being d apart.
double cap_weight(double rho, double R, double d);

/// Probability that the detector fires inside the ball of radius R around
/// the observer at time t: 4 pi \int rho^2 |A(rho, t)|^2 w(rho; R, d) d rho.
double inside_probability(const MomentumProfile &profile, double R, double t,
                          const QuadratureTolerances &tol = {});

struct OracleLimits {
  std::size_t max_cells = std::size_t{512} * 512 * 512;

  /// Reads LCD_MAX_GRID (maximum cells per axis) when set.
  static OracleLimits from_environment();
};

/// Brute-force check of inside_probability on a Cartesian grid of
/// grid_n^3 cells covering the ball's bounding box. Each cell is integrated
/// with a 2x2x2 Gauss-Legendre rule; cells cut by the sphere are clipped
/// exactly along z. |p(x, t)|^2 is taken from the amplitude at the point's
/// distance to the packet centre. Cost is O(grid_n^3) amplitude evaluations
/// (halved twice by the x/y reflection symmetry of the geometry).
double oracle_inside_probability_3d(const MomentumProfile &profile, double R, double t,
                                    std::size_t grid_n,
                                    const OracleLimits &limits = OracleLimits::from_environment(),
                                    const QuadratureTolerances &tol = {});

} // namespace lcd
