#include "ntsim/metrics.hpp"

#include <fstream>

namespace ntsim {

MetricsSummary
summarize(const ScenarioConfig& cfg, std::span<const TraceRecord> trace)
{
  MetricsSummary m;
  for (const auto& n : cfg.nodes) {
    m.nodes[n.id];
  }

  std::map<NodeId, SimTime> completed;
  for (const auto& r : trace) {
    auto& counters = m.nodes[r.node];
    if (code::is_interest_transmission(r.event)) {
      ++counters.interests_tx;
      ++m.total_tx;
    }
    else if (r.event == code::kDataTx || r.event == code::kDataFwd) {
      ++counters.data_tx;
      ++m.total_tx;
    }
    else if (code::is_drop(r.event)) {
      ++counters.drops_by_reason[r.event];
    }
    else if (r.event == code::kPieceRx) {
      ++m.pieces_delivered;
    }
    else if (r.event == code::kCompleted) {
      completed.try_emplace(r.node, r.time_us);
    }
  }

  for (const auto& n : cfg.nodes) {
    if (n.kind != NodeKind::Leecher) {
      continue;
    }
    LeecherOutcome out;
    out.node = n.id;
    out.torrent = n.torrent.value_or("");
    if (auto it = completed.find(n.id); it != completed.end()) {
      out.completed = true;
      out.completion_time_us = it->second;
    }
    m.leechers.push_back(std::move(out));
  }

  if (m.pieces_delivered > 0) {
    m.overhead_ratio = static_cast<double>(m.total_tx) / static_cast<double>(m.pieces_delivered);
  }
  return m;
}

void
write_metrics_csv(const MetricsSummary& metrics, const std::filesystem::path& path)
{
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) {
    throw IoError("cannot open " + path.string() + " for writing");
  }

  os << "scope,node,metric,value\n";
  for (const auto& l : metrics.leechers) {
    auto id = to_index(l.node);
    os << "leecher," << id << ",torrent," << l.torrent << '\n';
    os << "leecher," << id << ",completed," << (l.completed ? 1 : 0) << '\n';
    os << "leecher," << id << ",completion_time_us,";
    if (l.completion_time_us) {
      os << *l.completion_time_us;
    }
    os << '\n';
  }
  for (const auto& [node, c] : metrics.nodes) {
    auto id = to_index(node);
    os << "node," << id << ",interests_tx," << c.interests_tx << '\n';
    os << "node," << id << ",data_tx," << c.data_tx << '\n';
    for (const auto& [reason, count] : c.drops_by_reason) {
      os << "node," << id << ",drop." << reason << ',' << count << '\n';
    }
  }
  os << "global,,total_tx," << metrics.total_tx << '\n';
  os << "global,,pieces_delivered," << metrics.pieces_delivered << '\n';
  os << "global,,overhead_ratio," << format_fixed(metrics.overhead_ratio) << '\n';

  os.flush();
  if (!os) {
    throw IoError("write failed: " + path.string());
  }
}

} // namespace ntsim
