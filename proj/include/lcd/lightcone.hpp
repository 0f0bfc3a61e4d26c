#pragma once

namespace lcd {

/// A rigid ruler at rest in the laboratory frame.
class Ruler {
public:
  explicit Ruler(double length);
  double length() const noexcept { return length_; }

private:
  double length_;
};

/// Laboratory-frame delay (c = 1) before the backward light cone of the
/// observer, sitting at the centre of a ball of radius R, covers the ball.
double scan_time_ball(double R);

/// Observer position along the shorter ruler as a fraction of its length.
struct ObserverPlacement {
  double fraction = 0.5;

  static constexpr ObserverPlacement midpoint() { return {0.5}; }
  static constexpr ObserverPlacement endpoint() { return {0.0}; }
};

struct RulerTiming {
  double T = 0.0;
  /// Set when L1 == L2: the rulers cannot be told apart by length at all.
  bool indistinguishable = false;
};

/// Minimal time before both ends of the shorter ruler are inside the
/// observer's backward light cone: max(x, 1 - x) * min(L1, L2).
RulerTiming ruler_min_time(const Ruler &a, const Ruler &b,
                           ObserverPlacement observer = ObserverPlacement::midpoint());

/// sqrt(1 - beta^2), the contraction factor for lengths seen from a frame
/// moving at speed beta. Laboratory scan times are not rescaled by it.
double lorentz_factor(double beta);

} // namespace lcd
