#ifndef NTSIM_SWEEP_HPP
#define NTSIM_SWEEP_HPP

#include "ntsim/scenario.hpp"

#include <filesystem>
#include <optional>
#include <span>
#include <vector>

namespace ntsim {

struct SweepRow
{
  double p = 0.0;
  std::uint64_t seed = 0;
  NodeId leecher{};
  TorrentId torrent;
  bool completed = false;
  std::optional<SimTime> completion_time_us;

  friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

/// One run per (p, seed), rows ordered by p, then seed, then scenario node order.
/// @throw std::invalid_argument if either list is empty
std::vector<SweepRow>
sweep(const ScenarioConfig& cfg, std::span<const double> p_values,
      std::span<const std::uint64_t> seeds);

/// Header "p,seed,leecher,torrent,completed,completion_time_us".
/// @throw IoError
void
write_sweep_csv(std::span<const SweepRow> rows, const std::filesystem::path& path);

} // namespace ntsim

#endif // NTSIM_SWEEP_HPP
