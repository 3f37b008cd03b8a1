#include "ntsim/oracle.hpp"
#include "ntsim/medium.hpp"

#include <deque>
#include <vector>

namespace ntsim {

std::map<NodeId, bool>
reachability_oracle(const ScenarioConfig& cfg)
{
  const double p = cfg.strategy.p_forward;
  if (p != 0.0 && p != 1.0) {
    throw OracleUnsupported("oracle needs p_forward of 0 or 1");
  }
  if (cfg.radio.loss_prob != 0.0) {
    throw OracleUnsupported("oracle needs loss_prob = 0");
  }
  if (cfg.collision_mode) {
    throw OracleUnsupported("oracle needs collision_mode off");
  }
  for (const auto& n : cfg.nodes) {
    if (n.mobility != MobilityKind::Static || !n.initial_position) {
      throw OracleUnsupported("oracle needs static nodes at explicit positions");
    }
  }

  const auto& nodes = cfg.nodes;
  const std::size_t count = nodes.size();
  auto relays = [&] (std::size_t i) {
    return nodes[i].kind != NodeKind::PureForwarder || p == 1.0;
  };

  std::map<NodeId, bool> verdict;
  for (std::size_t target = 0; target < count; ++target) {
    if (nodes[target].kind != NodeKind::Leecher) {
      continue;
    }
    // BFS outward from the leecher; only relays may be expanded
    std::vector<bool> seen(count, false);
    std::deque<std::size_t> frontier{target};
    seen[target] = true;
    bool found = false;
    while (!frontier.empty() && !found) {
      auto u = frontier.front();
      frontier.pop_front();
      for (std::size_t v = 0; v < count; ++v) {
        if (seen[v] || !in_range(*nodes[u].initial_position, *nodes[v].initial_position, cfg.radio)) {
          continue;
        }
        seen[v] = true;
        if (nodes[v].kind == NodeKind::Seeder && nodes[v].torrent == nodes[target].torrent) {
          found = true;
          break;
        }
        if (relays(v)) {
          frontier.push_back(v);
        }
      }
    }
    verdict[nodes[target].id] = found;
  }
  return verdict;
}

} // namespace ntsim
