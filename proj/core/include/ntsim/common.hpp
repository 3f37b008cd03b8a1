#ifndef NTSIM_COMMON_HPP
#define NTSIM_COMMON_HPP

#include <cstdint>
#include <limits>
#include <string>

namespace ntsim {

/// Simulated time in microseconds since the start of a run.
using SimTime = std::uint64_t;

/// Span of simulated time in microseconds.
using Duration = std::uint64_t;

inline constexpr SimTime kNever = std::numeric_limits<SimTime>::max();
inline constexpr Duration kMillisecond = 1'000;
inline constexpr Duration kSecond = 1'000'000;

enum class NodeId : std::uint32_t {};

constexpr std::uint32_t
to_index(NodeId id) noexcept
{
  return static_cast<std::uint32_t>(id);
}

using TorrentId = std::string;
using PieceIndex = std::uint32_t;

struct TorrentInfo
{
  TorrentId id;
  std::uint32_t n_pieces = 32;
  std::uint64_t piece_bytes = 1024;

  friend bool operator==(const TorrentInfo&, const TorrentInfo&) = default;
};

} // namespace ntsim

#endif // NTSIM_COMMON_HPP
