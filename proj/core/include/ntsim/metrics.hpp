#ifndef NTSIM_METRICS_HPP
#define NTSIM_METRICS_HPP

#include "ntsim/scenario.hpp"
#include "ntsim/trace.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ntsim {

struct LeecherOutcome
{
  NodeId node{};
  TorrentId torrent;
  bool completed = false;
  std::optional<SimTime> completion_time_us;

  friend bool operator==(const LeecherOutcome&, const LeecherOutcome&) = default;
};

struct NodeCounters
{
  std::uint64_t interests_tx = 0;
  std::uint64_t data_tx = 0;
  std::map<std::string, std::uint64_t> drops_by_reason;

  friend bool operator==(const NodeCounters&, const NodeCounters&) = default;
};

struct MetricsSummary
{
  std::vector<LeecherOutcome> leechers;     ///< in scenario node order
  std::map<NodeId, NodeCounters> nodes;
  std::uint64_t total_tx = 0;
  std::uint64_t pieces_delivered = 0;       ///< PIECE_RX records
  double overhead_ratio = 0.0;              ///< total_tx / pieces_delivered; 0 if none

  friend bool operator==(const MetricsSummary&, const MetricsSummary&) = default;
};

/// Pure reduction of a trace; the scenario supplies the leecher roster.
MetricsSummary
summarize(const ScenarioConfig& cfg, std::span<const TraceRecord> trace);

/// Long format: header "scope,node,metric,value".
/// @throw IoError
void
write_metrics_csv(const MetricsSummary& metrics, const std::filesystem::path& path);

} // namespace ntsim

#endif // NTSIM_METRICS_HPP
