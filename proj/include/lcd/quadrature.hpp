#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "lcd/errors.hpp"

namespace lcd::quad {

/// 15-point Gauss-Kronrod abscissae on [-1, 1]: +/-kNodes[i] for i < 7 and 0.
/// The odd entries (and 0) are the embedded 7-point Gauss nodes.
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

/// Gauss weights matching kKronrodNodes[1], [3], [5], [7].
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

/// One GK15 node expanded to both signs: position on [-1,1], Kronrod weight
/// and the Gauss weight (0 for Kronrod-only nodes).
struct RuleNode {
  double x;
  double kronrod;
  double gauss;
};

/// The full 15-node rule in ascending order of x.
inline std::array<RuleNode, 15> gk15_nodes() {
  std::array<RuleNode, 15> out{};
  for (std::size_t i = 0; i < 7; ++i) {
    const double g = (i % 2 == 1) ? kGaussWeights[i / 2] : 0.0;
    out[i] = {-kKronrodNodes[i], kKronrodWeights[i], g};
    out[14 - i] = {kKronrodNodes[i], kKronrodWeights[i], g};
  }
  out[7] = {0.0, kKronrodWeights[7], kGaussWeights[3]};
  return out;
}

template <class T> struct PanelEstimate {
  T value{};
  double error = 0.0;
};

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(const std::complex<double> &v) { return std::abs(v); }

/// Single-panel GK15; error is |K15 - G7|.
template <class F> auto gk15(F &&f, double a, double b) {
  using T = decltype(f(a));
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  T kronrod{};
  T gauss{};
  const T fc = f(centre);
  kronrod += kKronrodWeights[7] * fc;
  gauss += kGaussWeights[3] * fc;
  for (std::size_t i = 0; i < 7; ++i) {
    const double dx = half * kKronrodNodes[i];
    const T pair = f(centre - dx) + f(centre + dx);
    kronrod += kKronrodWeights[i] * pair;
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * pair;
  }
  return PanelEstimate<T>{kronrod * half, magnitude((kronrod - gauss) * half)};
}

struct Options {
  double abs_tol = 1e-10;
  double max_panel_width = 0.0; // 0: one panel per segment to start with
  std::size_t max_panels = 20000;
};

/// Adaptive composite GK15 over [breaks.front(), breaks.back()] with the given
/// interior breakpoints kept as panel boundaries. Panels are bisected in order
/// of decreasing error (leftmost first on ties) until the summed |K - G|
/// estimate is within abs_tol. Final summation runs left to right so the
/// result does not depend on refinement order.
template <class F>
auto integrate(F &&f, std::span<const double> breaks, const Options &opt,
               const char *what = "integral") {
  using T = decltype(f(breaks.front()));
  struct Panel {
    double a, b;
    PanelEstimate<T> est;
  };
  std::vector<Panel> panels;
  for (std::size_t s = 0; s + 1 < breaks.size(); ++s) {
    const double a = breaks[s], b = breaks[s + 1];
    if (!(b > a)) continue;
    std::size_t n = 1;
    if (opt.max_panel_width > 0.0)
      n = std::max<std::size_t>(1, static_cast<std::size_t>(
                                       std::ceil((b - a) / opt.max_panel_width)));
    const double h = (b - a) / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double lo = a + h * static_cast<double>(i);
      const double hi = (i + 1 == n) ? b : lo + h;
      panels.push_back({lo, hi, gk15(f, lo, hi)});
    }
  }

  auto total_error = [&] {
    double e = 0.0;
    for (const auto &p : panels) e += p.est.error;
    return e;
  };

  double err = total_error();
  while (err > opt.abs_tol && panels.size() < opt.max_panels) {
    auto worst = std::max_element(panels.begin(), panels.end(),
                                  [](const Panel &l, const Panel &r) {
                                    return l.est.error < r.est.error;
                                  });
    const double a = worst->a, b = worst->b, mid = 0.5 * (a + b);
    if (!(mid > a && mid < b)) break;
    *worst = {a, mid, gk15(f, a, mid)};
    panels.push_back({mid, b, gk15(f, mid, b)});
    err = total_error();
  }

  std::sort(panels.begin(), panels.end(),
            [](const Panel &l, const Panel &r) { return l.a < r.a; });
  PanelEstimate<T> out;
  for (const auto &p : panels) out.value += p.est.value;
  out.error = err;
  if (!std::isfinite(magnitude(out.value)) || !std::isfinite(err))
    throw NumericFailure(std::string(what) + ": non-finite quadrature result", err);
  if (err > opt.abs_tol)
    throw NumericFailure(std::string(what) + ": error estimate " + std::to_string(err) +
                             " exceeds tolerance " + std::to_string(opt.abs_tol),
                         err);
  return out;
}

template <class F> auto integrate(F &&f, double a, double b, const Options &opt,
                                  const char *what = "integral") {
  const std::array<double, 2> breaks{a, b};
  return integrate(std::forward<F>(f), std::span<const double>(breaks), opt, what);
}

/// Composite Simpson on uniformly spaced samples. An even sample count is
/// closed with Simpson's 3/8 rule on the last three intervals.
inline double simpson(std::span<const double> y, double h) {
  const std::size_t n = y.size();
  if (n < 2) return 0.0;
  if (n == 2) return 0.5 * h * (y[0] + y[1]);
  if (n == 3) return h / 3.0 * (y[0] + 4.0 * y[1] + y[2]);
  std::size_t simpson_end = (n % 2 == 1) ? n - 1 : n - 4;
  double s = 0.0;
  for (std::size_t i = 0; i + 2 <= simpson_end; i += 2)
    s += y[i] + 4.0 * y[i + 1] + y[i + 2];
  s *= h / 3.0;
  if (n % 2 == 0) {
    const std::size_t i = simpson_end;
    s += 3.0 * h / 8.0 * (y[i] + 3.0 * y[i + 1] + 3.0 * y[i + 2] + y[i + 3]);
  }
  return s;
}

} // namespace lcd::quad
