#ifndef NTSIM_MEDIUM_HPP
#define NTSIM_MEDIUM_HPP

#include "ntsim/mobility.hpp"

#include <span>
#include <vector>

namespace ntsim {

struct RadioConfig
{
  double range = 60.0;              ///< meters, closed disk
  Duration one_hop_delay = 500;     ///< must be > 0
  double loss_prob = 0.0;

  /// @throw std::invalid_argument
  void
  validate() const;

  friend bool operator==(const RadioConfig&, const RadioConfig&) = default;
};

bool
in_range(const Position& a, const Position& b, const RadioConfig& cfg) noexcept;

/// A node as seen by the medium at transmission time.
struct Station
{
  NodeId id;
  Position position;
};

struct Delivery
{
  NodeId receiver;
  SimTime at;
};

struct BroadcastOutcome
{
  std::vector<Delivery> delivered;
  std::vector<NodeId> lost;
};

/**
 * @brief Unit-disk broadcast from @p sender at @p now.
 *
 * Every other station in range receives the packet at now + one_hop_delay,
 * independently lost with probability loss_prob. Stations are visited in the
 * given order, one loss draw per in-range station.
 */
BroadcastOutcome
broadcast(NodeId sender, std::span<const Station> stations, SimTime now, const RadioConfig& cfg,
          Rng& loss_rng);

} // namespace ntsim

#endif // NTSIM_MEDIUM_HPP
