#include "lcd/propagation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>

#include "lcd/errors.hpp"
#include "lcd/quadrature.hpp"

namespace lcd {
namespace {

using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;

// 4 pi / (2 pi)^{3/2}
const double kPrefactor = 4.0 * kPi / std::pow(2.0 * kPi, 1.5);

// Below this radius the rotated-phase sum loses relative accuracy once divided
// by r, so the panels are summed with j0 evaluated directly.
constexpr double kDirectRadius = 1e-2;

// Panels between exact re-seeds of the rotated phase.
constexpr std::size_t kReseedEvery = 16;

double j0(double z) {
  if (std::abs(z) < 1e-4) {
    const double z2 = z * z;
    return 1.0 - z2 / 6.0 + z2 * z2 / 120.0;
  }
  return std::sin(z) / z;
}

void require_finite_time(double t) {
  if (!std::isfinite(t)) throw InvalidParameter("time t must be finite");
}

} // namespace

AmplitudeEvaluator::AmplitudeEvaluator(const MomentumProfile &profile, double t,
                                       double max_radius, double amplitude_tol)
    : t_(t), max_radius_(max_radius), tol_(amplitude_tol) {
  require_finite_time(t);
  if (!std::isfinite(max_radius) || max_radius < 0.0)
    throw InvalidParameter("max radius must be finite and non-negative");
  const double freq = std::max({max_radius, std::abs(t), 1.0});
  const double cap = std::min(kPi / (8.0 * freq), profile.k_resolution());
  const double k_max = profile.k_max();
  const auto n = static_cast<std::size_t>(std::ceil(k_max / cap));
  h_ = k_max / static_cast<double>(n);
  panels_ = n - 1;

  const auto rule = quad::gk15_nodes();
  auto weight = [&](double k) {
    // k^2 g(k) (2k)^{-1/2} j0(kr) = sqrt(k/2) g(k) sin(kr) / r
    return std::sqrt(0.5 * k) * profile(k) * std::polar(1.0, -k * t);
  };

  first_k_.reserve(15);
  for (const auto &node : rule) {
    const double v = 0.5 * (1.0 + node.x);
    const double k = h_ * v * v;
    const double jac = h_ * v; // dk = 2 h v dv, dv = dx / 2
    const cplx base = weight(k) * jac;
    first_k_.push_back(k);
    first_w_.push_back(node.kronrod * base);
    first_dw_.push_back((node.kronrod - node.gauss) * base);
  }

  w_.reserve(15 * panels_);
  dw_.reserve(15 * panels_);
  const double half = 0.5 * h_;
  for (std::size_t p = 1; p <= panels_; ++p) {
    const double centre = (static_cast<double>(p) + 0.5) * h_;
    for (const auto &node : rule) {
      const cplx base = weight(centre + half * node.x) * half;
      w_.push_back(node.kronrod * base);
      dw_.push_back((node.kronrod - node.gauss) * base);
    }
  }
}

template <class Kernel>
AmplitudeEvaluator::Sum AmplitudeEvaluator::kernel_sum(Kernel &&kernel) const {
  Sum s{{0.0, 0.0}, 0.0};
  cplx err{0.0, 0.0};
  for (std::size_t j = 0; j < 15; ++j) {
    const double kern = kernel(first_k_[j]);
    s.value += first_w_[j] * kern;
    err += first_dw_[j] * kern;
  }
  s.error = std::abs(err);
  const auto rule = quad::gk15_nodes();
  const double half = 0.5 * h_;
  for (std::size_t p = 1; p <= panels_; ++p) {
    const double centre = (static_cast<double>(p) + 0.5) * h_;
    const std::size_t base = 15 * (p - 1);
    cplx panel{0.0, 0.0}, perr{0.0, 0.0};
    for (std::size_t j = 0; j < 15; ++j) {
      const double kern = kernel(centre + half * rule[j].x);
      panel += w_[base + j] * kern;
      perr += dw_[base + j] * kern;
    }
    s.value += panel;
    s.error += std::abs(perr);
  }
  return s;
}

AmplitudeEvaluator::Sum AmplitudeEvaluator::scaled_sum(double r) const {
  // r * A / prefactor = \int sqrt(k/2) g e^{-ikt} k r j0(kr) dk
  if (r < kDirectRadius) return kernel_sum([r](double k) { return k * r * j0(k * r); });

  Sum s{{0.0, 0.0}, 0.0};
  cplx err{0.0, 0.0};
  for (std::size_t j = 0; j < 15; ++j) {
    const double kern = std::sin(first_k_[j] * r);
    s.value += first_w_[j] * kern;
    err += first_dw_[j] * kern;
  }
  s.error = std::abs(err);

  // sin(k r) for k = centre_p + half x_j is Im(E_p e_j) with E_p = e^{i centre_p r}
  // and e_j = e^{i half x_j r}; e_j is shared by all panels.
  const auto rule = quad::gk15_nodes();
  const double half = 0.5 * h_;
  std::array<double, 15> ec{}, es{};
  for (std::size_t j = 0; j < 15; ++j) {
    ec[j] = std::cos(half * rule[j].x * r);
    es[j] = std::sin(half * rule[j].x * r);
  }
  const cplx step = std::polar(1.0, h_ * r);
  cplx phase{1.0, 0.0};
  for (std::size_t p = 1; p <= panels_; ++p) {
    if ((p - 1) % kReseedEvery == 0)
      phase = std::polar(1.0, (static_cast<double>(p) + 0.5) * h_ * r);
    const std::size_t base = 15 * (p - 1);
    cplx wc{0.0, 0.0}, ws{0.0, 0.0}, dc{0.0, 0.0}, ds{0.0, 0.0};
    for (std::size_t j = 0; j < 15; ++j) {
      wc += w_[base + j] * ec[j];
      ws += w_[base + j] * es[j];
      dc += dw_[base + j] * ec[j];
      ds += dw_[base + j] * es[j];
    }
    s.value += phase.imag() * wc + phase.real() * ws;
    s.error += std::abs(phase.imag() * dc + phase.real() * ds);
    phase *= step;
  }
  return s;
}

// Returns s.value scaled to r * A(r, t); the tolerance applies to A itself.
cplx AmplitudeEvaluator::checked(const Sum &s, double r) const {
  if (r > max_radius_ * (1.0 + 1e-12) + 1e-12)
    throw InvalidParameter("radius " + std::to_string(r) + " beyond evaluator range " +
                           std::to_string(max_radius_));
  const double err = kPrefactor * s.error / (r > 0.0 ? r : 1.0);
  if (!std::isfinite(s.value.real()) || !std::isfinite(s.value.imag()))
    throw NumericFailure("amplitude quadrature produced a non-finite value", err);
  if (err > tol_)
    throw NumericFailure("amplitude quadrature error estimate " + std::to_string(err) +
                             " exceeds tolerance " + std::to_string(tol_),
                         err);
  return kPrefactor * s.value;
}

cplx AmplitudeEvaluator::amplitude(double r) const {
  if (!(r >= 0.0)) throw InvalidParameter("radius must be non-negative");
  if (r == 0.0) return checked(kernel_sum([](double k) { return k; }), 0.0);
  return checked(scaled_sum(r), r) / r;
}

double AmplitudeEvaluator::radial_density(double r) const {
  if (!(r >= 0.0)) throw InvalidParameter("radius must be non-negative");
  if (r == 0.0) return 0.0;
  return 4.0 * kPi * std::norm(checked(scaled_sum(r), r));
}

cplx centered_amplitude(const MomentumProfile &profile, double r, double t,
                        const QuadratureTolerances &tol) {
  if (!(r >= 0.0) || !std::isfinite(r)) throw InvalidParameter("radius must be non-negative");
  return AmplitudeEvaluator(profile, t, r, tol.amplitude_abs).amplitude(r);
}

double default_r_max(const MomentumProfile &profile, double t) {
  return profile.offset_d() + std::abs(t) + 10.0 * profile.length_scale();
}

double packet_support_radius(const MomentumProfile &profile, double t) {
  return std::abs(t) + 20.0 * profile.length_scale();
}

RadialAmplitude radial_density_grid(const MomentumProfile &profile, double t, double r_max,
                                    std::size_t n_points, const QuadratureTolerances &tol) {
  require_finite_time(t);
  if (!std::isfinite(r_max) || r_max <= 0.0) throw InvalidParameter("r_max must be positive");
  if (n_points < 16) throw InvalidParameter("n_points must be at least 16");

  const AmplitudeEvaluator eval(profile, t, r_max, tol.amplitude_abs);
  RadialAmplitude out;
  out.time_t = t;
  out.r_grid.resize(n_points);
  out.amp.resize(n_points);
  out.density.resize(n_points);
  std::vector<double> integrand(n_points);
  const double h = r_max / static_cast<double>(n_points - 1);
  for (std::size_t i = 0; i < n_points; ++i) {
    const double r = (i + 1 == n_points) ? r_max : h * static_cast<double>(i);
    out.r_grid[i] = r;
    out.amp[i] = eval.amplitude(r);
    out.density[i] = std::norm(out.amp[i]);
    integrand[i] = r * r * out.density[i];
  }
  out.grid_norm = 4.0 * kPi * quad::simpson(integrand, h);

  const double total = momentum_norm(profile);
  if (out.grid_norm < (1.0 - kCoverageDeficit) * total) {
    out.coverage_ok = false;
    out.warnings.push_back("coverage: r_max=" + std::to_string(r_max) + " captures " +
                           std::to_string(out.grid_norm / total) +
                           " of the total mass (< 1 - 1e-6)");
  }
  return out;
}

double cap_weight(double rho, double R, double d) {
  if (R <= 0.0) return 0.0;
  if (d <= 0.0) return rho < R ? 1.0 : 0.0;
  if (rho <= R - d) return 1.0;
  if (rho >= R + d) return 0.0;
  if (d > R && rho <= d - R) return 0.0;
  const double w = 0.5 * (1.0 - (d * d + rho * rho - R * R) / (2.0 * d * rho));
  return std::clamp(w, 0.0, 1.0);
}

double inside_probability(const MomentumProfile &profile, double R, double t,
                          const QuadratureTolerances &tol) {
  if (!std::isfinite(R) || R < 0.0) throw InvalidParameter("ball radius R must be >= 0");
  require_finite_time(t);
  if (R == 0.0) return 0.0;

  const double d = profile.offset_d();
  const double support = packet_support_radius(profile, t);
  std::vector<double> breaks;
  if (d == 0.0) {
    breaks = {0.0, R};
  } else if (R > d) {
    breaks = {0.0, R - d, R + d};
  } else {
    breaks = {d - R, R + d};
  }
  for (auto &b : breaks) b = std::min(b, support);
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  if (breaks.size() < 2) return 0.0;

  const AmplitudeEvaluator eval(profile, t, breaks.back(), tol.amplitude_abs);
  quad::Options opt;
  opt.abs_tol = tol.probability_abs;
  opt.max_panel_width = kPi / (2.0 * profile.k_max());
  const auto res = quad::integrate(
      [&](double rho) {
        const double w = cap_weight(rho, R, d);
        return w == 0.0 ? 0.0 : w * eval.radial_density(rho);
      },
      std::span<const double>(breaks), opt, "inside probability");
  return res.value;
}

OracleLimits OracleLimits::from_environment() {
  OracleLimits lim;
  if (const char *env = std::getenv("LCD_MAX_GRID")) {
    char *end = nullptr;
    const unsigned long long n = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && n > 0) lim.max_cells = static_cast<std::size_t>(n * n * n);
  }
  return lim;
}

double oracle_inside_probability_3d(const MomentumProfile &profile, double R, double t,
                                    std::size_t grid_n, const OracleLimits &limits,
                                    const QuadratureTolerances &tol) {
  if (!std::isfinite(R) || R < 0.0) throw InvalidParameter("ball radius R must be >= 0");
  require_finite_time(t);
  if (grid_n < 32) throw InvalidParameter("oracle grid_n must be at least 32");
  const double cells = static_cast<double>(grid_n) * static_cast<double>(grid_n) *
                       static_cast<double>(grid_n);
  if (cells > static_cast<double>(limits.max_cells))
    throw ResourceLimit("oracle grid of " + std::to_string(grid_n) + "^3 cells exceeds cap of " +
                        std::to_string(limits.max_cells));
  if (R == 0.0) return 0.0;

  const double d = profile.offset_d();
  const AmplitudeEvaluator eval(profile, t, R + d, tol.amplitude_abs);
  const double h = 2.0 * R / static_cast<double>(grid_n);
  const double g = 0.5 / std::sqrt(3.0); // 2-point Gauss offsets, in cell widths

  // Positive half of the per-axis Gauss nodes; the grid is symmetric about 0.
  std::vector<double> xs;
  for (std::size_t i = 0; i < grid_n; ++i) {
    const double c = -R + (static_cast<double>(i) + 0.5) * h;
    for (double x : {c - g * h, c + g * h})
      if (x > 0.0) xs.push_back(x);
  }
  std::sort(xs.begin(), xs.end());
  const double wxy = 0.5 * h;

  double total = 0.0;
  for (std::size_t a = 0; a < xs.size(); ++a) {
    for (std::size_t b = a; b < xs.size(); ++b) {
      const double s = xs[a] * xs[a] + xs[b] * xs[b];
      if (s >= R * R) break;
      const double zmax = std::sqrt(R * R - s);
      double column = 0.0;
      for (std::size_t c = 0; c < grid_n; ++c) {
        const double lo = std::max(-R + static_cast<double>(c) * h, -zmax);
        const double hi = std::min(-R + static_cast<double>(c + 1) * h, zmax);
        if (!(hi > lo)) continue;
        const double mid = 0.5 * (lo + hi), len = hi - lo;
        for (double z : {mid - g * len, mid + g * len}) {
          const double dz = z - d;
          column += 0.5 * len * std::norm(eval.amplitude(std::sqrt(s + dz * dz)));
        }
      }
      const double multiplicity = (a == b) ? 4.0 : 8.0;
      total += multiplicity * wxy * wxy * column;
    }
  }
  return total;
}

} // namespace lcd
