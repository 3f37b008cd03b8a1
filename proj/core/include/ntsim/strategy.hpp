#ifndef NTSIM_STRATEGY_HPP
#define NTSIM_STRATEGY_HPP

#include "ntsim/packet.hpp"
#include "ntsim/rng.hpp"

#include <map>
#include <optional>
#include <string_view>

namespace ntsim {

enum class ActionKind : std::uint8_t {
  ForwardInterest,
  DeliverToApp,
  Drop,
};

/// Why a strategy decided what it did; rendered into the trace.
enum class Reason : std::uint8_t {
  ProbDrop,
  ProbFwd,
  ForeignLearn,
  ForeignFwd,
  OwnApp,
  UnknownDrop,
};

std::string_view
to_string(Reason reason) noexcept;

struct ForwardAction
{
  ActionKind kind = ActionKind::Drop;
  Duration delay = 0;  ///< meaningful for ForwardInterest only
  Reason reason = Reason::UnknownDrop;

  friend bool operator==(const ForwardAction&, const ForwardAction&) = default;
};

struct PureForwarderConfig
{
  double p_forward = 1.0;
  Duration jitter_min = 2'000;
  Duration jitter_max = 10'000;

  /// @throw std::invalid_argument
  void
  validate() const;
};

/// Foreign torrent ids this peer has overheard, each with an expiry time.
class OverheardNameTable
{
public:
  explicit
  OverheardNameTable(Duration t_mem = 30 * kSecond)
    : m_t_mem(t_mem)
  {
  }

  Duration
  t_mem() const noexcept
  {
    return m_t_mem;
  }

  /// An entry is live strictly before its expiry.
  bool
  is_live(const TorrentId& torrent, SimTime now) const;

  /// Inserts or refreshes: expiry becomes now + t_mem.
  void
  remember(const TorrentId& torrent, SimTime now);

  std::optional<SimTime>
  expiry(const TorrentId& torrent) const;

  std::size_t
  size() const noexcept
  {
    return m_entries.size();
  }

  /// Removes entries with expiry <= now.
  std::size_t
  gc(SimTime now);

private:
  std::map<TorrentId, SimTime> m_entries;
  Duration m_t_mem;
};

struct PeerStrategyConfig
{
  TorrentId own_torrent;
  Duration t_mem = 30 * kSecond;
  Duration jitter_min = 2'000;
  Duration jitter_max = 10'000;

  void
  validate() const;
};

/// Forward with probability p_forward after a uniform jitter, else drop.
ForwardAction
pure_decide(const PureForwarderConfig& cfg, const Packet& interest, Rng& rng);

/**
 * @brief Decision of an nTorrent peer for an Interest that passed nonce dedup.
 *
 * Beacons and anything about the peer's own torrent go to the application.
 * For a foreign torrent, the first Interest heard while the table has no live
 * entry is dropped and remembered; any later one within t_mem is forwarded and
 * refreshes the entry.
 */
ForwardAction
peer_decide(const PeerStrategyConfig& cfg, OverheardNameTable& table, const Packet& interest,
            SimTime now, Rng& rng);

std::size_t
table_gc(OverheardNameTable& table, SimTime now);

} // namespace ntsim

#endif // NTSIM_STRATEGY_HPP
