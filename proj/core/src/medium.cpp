#include "ntsim/medium.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ntsim {

void
RadioConfig::validate() const
{
  if (!(range > 0.0) || !std::isfinite(range)) {
    throw std::invalid_argument("radio.range must be a finite value > 0");
  }
  if (one_hop_delay == 0) {
    throw std::invalid_argument("radio.one_hop_delay_us must be > 0");
  }
  if (!(loss_prob >= 0.0 && loss_prob <= 1.0)) {
    throw std::invalid_argument("radio.loss_prob must lie in [0, 1]");
  }
}

bool
in_range(const Position& a, const Position& b, const RadioConfig& cfg) noexcept
{
  double dx = a.x - b.x;
  double dy = a.y - b.y;
  return dx * dx + dy * dy <= cfg.range * cfg.range;
}

BroadcastOutcome
broadcast(NodeId sender, std::span<const Station> stations, SimTime now, const RadioConfig& cfg,
          Rng& loss_rng)
{
  BroadcastOutcome out;
  auto self = std::find_if(stations.begin(), stations.end(),
                           [sender] (const Station& s) { return s.id == sender; });
  if (self == stations.end()) {
    throw std::invalid_argument("broadcast sender is not a known station");
  }

  for (const auto& st : stations) {
    if (st.id == sender || !in_range(self->position, st.position, cfg)) {
      continue;
    }
    if (loss_rng.bernoulli(cfg.loss_prob)) {
      out.lost.push_back(st.id);
    }
    else {
      out.delivered.push_back({st.id, now + cfg.one_hop_delay});
    }
  }
  return out;
}

} // namespace ntsim
