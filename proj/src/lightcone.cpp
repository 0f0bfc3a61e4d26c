#include "lcd/lightcone.hpp"

#include <algorithm>
#include <cmath>

#include "lcd/errors.hpp"

namespace lcd {

Ruler::Ruler(double length) : length_(length) {
  if (!std::isfinite(length) || length <= 0.0)
    throw InvalidParameter("ruler length must be positive and finite");
}

double scan_time_ball(double R) {
  if (!std::isfinite(R) || R < 0.0) throw InvalidParameter("ball radius must be >= 0");
  return R;
}

RulerTiming ruler_min_time(const Ruler &a, const Ruler &b, ObserverPlacement observer) {
  const double x = observer.fraction;
  if (!(x >= 0.0 && x <= 1.0))
    throw InvalidParameter("observer placement must lie in [0, 1]");
  const double shortest = std::min(a.length(), b.length());
  return {std::max(x, 1.0 - x) * shortest, a.length() == b.length()};
}

double lorentz_factor(double beta) {
  if (!std::isfinite(beta) || std::abs(beta) >= 1.0)
    throw InvalidParameter("|beta| must be < 1");
  return std::sqrt((1.0 - beta) * (1.0 + beta));
}

} // namespace lcd
