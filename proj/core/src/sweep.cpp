#include "ntsim/sweep.hpp"
#include "ntsim/simulation.hpp"

#include <fstream>

namespace ntsim {

std::vector<SweepRow>
sweep(const ScenarioConfig& cfg, std::span<const double> p_values,
      std::span<const std::uint64_t> seeds)
{
  if (p_values.empty() || seeds.empty()) {
    throw std::invalid_argument("sweep needs at least one p value and one seed");
  }

  std::vector<SweepRow> rows;
  for (double p : p_values) {
    ScenarioConfig run_cfg = cfg;
    run_cfg.strategy.p_forward = p;
    for (auto seed : seeds) {
      auto result = run_scenario(run_cfg, seed);
      for (const auto& l : result.metrics.leechers) {
        rows.push_back({p, seed, l.node, l.torrent, l.completed, l.completion_time_us});
      }
    }
  }
  return rows;
}

void
write_sweep_csv(std::span<const SweepRow> rows, const std::filesystem::path& path)
{
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) {
    throw IoError("cannot open " + path.string() + " for writing");
  }
  os << "p,seed,leecher,torrent,completed,completion_time_us\n";
  for (const auto& r : rows) {
    os << format_fixed(r.p, 4) << ',' << r.seed << ',' << to_index(r.leecher) << ',' << r.torrent
       << ',' << (r.completed ? 1 : 0) << ',';
    if (r.completion_time_us) {
      os << *r.completion_time_us;
    }
    os << '\n';
  }
  os.flush();
  if (!os) {
    throw IoError("write failed: " + path.string());
  }
}

} // namespace ntsim
