#ifndef NTSIM_SIMULATION_HPP
#define NTSIM_SIMULATION_HPP

#include "ntsim/app.hpp"
#include "ntsim/engine.hpp"
#include "ntsim/forwarder.hpp"
#include "ntsim/metrics.hpp"
#include "ntsim/scenario.hpp"
#include "ntsim/trace.hpp"

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <vector>

namespace ntsim {

/**
 * @brief One run of a scenario: nodes, radio medium, mobility and the engine.
 *
 * Construction resolves random positions and seeds every per-node stream from
 * (master_seed, purpose, node). run() advances to the scenario duration.
 */
class Simulation
{
public:
  /// @throw ValidationError if @p config is invalid
  Simulation(ScenarioConfig config, std::uint64_t master_seed);

  RunReport
  run();

  const ScenarioConfig&
  config() const noexcept
  {
    return m_config;
  }

  const TraceLog&
  trace() const noexcept
  {
    return m_trace;
  }

  TraceLog&
  trace() noexcept
  {
    return m_trace;
  }

  const std::vector<PositionSample>&
  positions() const noexcept
  {
    return m_positions;
  }

  const Engine&
  engine() const noexcept
  {
    return m_engine;
  }

  /// Current position of a node.
  Position
  position_of(NodeId id) const;

  const Forwarder&
  forwarder(NodeId id) const;

  const NTorrentApp*
  app(NodeId id) const;

private:
  struct NodeRuntime
  {
    NodeSpec spec;
    Forwarder forwarder;
    std::optional<NTorrentApp> app;
    Rng mobility_rng;
    Rng medium_rng;
    Position anchor;          ///< position at anchor_time
    SimTime anchor_time = 0;
    WalkState walk = static_walk();
  };

  NodeRuntime&
  node(NodeId id);

  const NodeRuntime&
  node(NodeId id) const;

  void
  dispatch(const Event& event);

  void
  apply(NodeRuntime& n, std::vector<Effect> effects);

  void
  apply(NodeRuntime& n, AppOutput output);

  void
  transmit(NodeRuntime& n, const Packet& packet, std::string_view event);

  void
  on_delivery(const Event& event);

  void
  on_mobility_epoch(NodeRuntime& n);

  void
  sample_positions();

  Event
  timer(SimTime at, std::optional<NodeId> target, TimerKind kind) const;

private:
  ScenarioConfig m_config;
  std::uint64_t m_seed;
  Engine m_engine;
  TraceLog m_trace;
  std::vector<PositionSample> m_positions;
  std::vector<NodeRuntime> m_nodes;
  std::map<NodeId, std::size_t> m_index;

  // collision bookkeeping: last arrival per receiver and the doomed deliveries
  std::map<NodeId, std::pair<SimTime, std::uint64_t>> m_last_arrival;
  std::set<std::uint64_t> m_collided;
};

struct RunResult
{
  RunReport report;
  std::vector<TraceRecord> trace;
  std::vector<PositionSample> positions;
  MetricsSummary metrics;
};

/// Build, run to cfg.duration, and reduce the trace to metrics.
RunResult
run_scenario(const ScenarioConfig& cfg, std::uint64_t master_seed);

/// Writes trace.csv, metrics.csv and positions.csv into @p dir (created if needed).
/// @throw IoError
void
write_run_outputs(const RunResult& result, const std::filesystem::path& dir);

} // namespace ntsim

#endif // NTSIM_SIMULATION_HPP
