#include "ntsim/mobility.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ntsim {

WalkState
walk_epoch(const WalkState& state, Rng& rng, SimTime now, const RandomWalkParams& params)
{
  if (now != state.next_change) {
    throw std::invalid_argument("walk_epoch at " + std::to_string(now) +
                                " us but epoch is due at " + std::to_string(state.next_change));
  }
  WalkState next;
  next.heading = rng.uniform_real(0.0, 2.0 * std::numbers::pi);
  next.speed = rng.uniform_real(params.min_speed, params.max_speed);
  if (next.speed > params.max_speed) {
    next.speed = params.max_speed;
  }
  next.next_change = now + params.epoch;
  return next;
}

namespace {

// time until the coordinate reaches a wall of [0, limit] moving at velocity v
double
time_to_wall(double pos, double v, double limit)
{
  if (v > 0.0) {
    return (limit - pos) / v;
  }
  if (v < 0.0) {
    return -pos / v;
  }
  return std::numeric_limits<double>::infinity();
}

} // namespace

Position
position_at(const Position& initial, const WalkState& state, SimTime t0, SimTime t,
            const GridBounds& bounds)
{
  if (t < t0 || t > state.next_change) {
    throw std::invalid_argument("position_at outside the epoch window");
  }

  double x = std::clamp(initial.x, 0.0, bounds.width);
  double y = std::clamp(initial.y, 0.0, bounds.height);
  double vx = state.speed * std::cos(state.heading);
  double vy = state.speed * std::sin(state.heading);
  double remaining = static_cast<double>(t - t0) / static_cast<double>(kSecond);

  // walk segment by segment, flipping the velocity component at each wall hit
  constexpr int kMaxBounces = 1'000'000;
  for (int bounce = 0; remaining > 0.0 && bounce < kMaxBounces; ++bounce) {
    double tx = time_to_wall(x, vx, bounds.width);
    double ty = time_to_wall(y, vy, bounds.height);
    double step = std::min(tx, ty);
    if (step >= remaining) {
      x += vx * remaining;
      y += vy * remaining;
      break;
    }
    x += vx * step;
    y += vy * step;
    if (tx <= step) {
      x = vx > 0.0 ? bounds.width : 0.0;
      vx = -vx;
    }
    if (ty <= step) {
      y = vy > 0.0 ? bounds.height : 0.0;
      vy = -vy;
    }
    remaining -= step;
  }

  return {std::clamp(x, 0.0, bounds.width), std::clamp(y, 0.0, bounds.height)};
}

} // namespace ntsim
