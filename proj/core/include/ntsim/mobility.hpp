#ifndef NTSIM_MOBILITY_HPP
#define NTSIM_MOBILITY_HPP

#include "ntsim/common.hpp"
#include "ntsim/rng.hpp"

namespace ntsim {

struct Position
{
  double x = 0.0; ///< meters
  double y = 0.0; ///< meters

  friend bool operator==(const Position&, const Position&) = default;
};

struct GridBounds
{
  double width = 300.0;
  double height = 300.0;

  bool
  contains(const Position& p) const noexcept
  {
    return p.x >= 0.0 && p.x <= width && p.y >= 0.0 && p.y <= height;
  }

  friend bool operator==(const GridBounds&, const GridBounds&) = default;
};

struct RandomWalkParams
{
  double min_speed = 2.0;          ///< m/s
  double max_speed = 10.0;         ///< m/s
  Duration epoch = 20 * kSecond;
};

/// Motion within one epoch: constant heading and speed until next_change.
struct WalkState
{
  double heading = 0.0;            ///< radians in [0, 2*pi)
  double speed = 0.0;              ///< m/s
  SimTime next_change = 0;

  friend bool operator==(const WalkState&, const WalkState&) = default;
};

/// A node that never moves.
constexpr WalkState
static_walk() noexcept
{
  return {0.0, 0.0, kNever};
}

/// Draws a new heading and speed; the next change is exactly one epoch later.
/// @pre now == state.next_change
/// @throw std::invalid_argument on violated precondition
WalkState
walk_epoch(const WalkState& state, Rng& rng, SimTime now, const RandomWalkParams& params = {});

/**
 * @brief Position at time @p t of a node that was at @p initial at @p t0.
 *
 * Straight-line motion with specular reflection off the grid walls.
 * @pre t0 <= t <= state.next_change
 */
Position
position_at(const Position& initial, const WalkState& state, SimTime t0, SimTime t,
            const GridBounds& bounds);

} // namespace ntsim

#endif // NTSIM_MOBILITY_HPP
