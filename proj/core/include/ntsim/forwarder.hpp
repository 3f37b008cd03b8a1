#ifndef NTSIM_FORWARDER_HPP
#define NTSIM_FORWARDER_HPP

#include "ntsim/packet.hpp"
#include "ntsim/strategy.hpp"
#include "ntsim/trace.hpp"

#include <map>
#include <set>
#include <variant>
#include <vector>

namespace ntsim {

/// Every node has exactly two faces: the shared radio and its local application.
enum class FaceId : std::uint8_t {
  Broadcast,
  App,
};

struct PitEntry
{
  Name name;
  std::set<std::uint64_t> nonces;
  std::map<FaceId, SimTime> in_faces;  ///< in-record expiry per face
  SimTime expiry = 0;                  ///< latest in-record expiry

  /// True if @p face asked for the name and its in-record is still live.
  bool
  wants(FaceId face, SimTime now) const
  {
    auto it = in_faces.find(face);
    return it != in_faces.end() && now < it->second;
  }
};

/// Pending Interest Table: at most one live entry per exact name.
class Pit
{
public:
  /// Live entry (expiry > now) for @p name, or nullptr.
  PitEntry*
  find(const Name& name, SimTime now);

  /// Adds @p nonce and an in-record for @p face (expiring at now + lifetime)
  /// to the live entry for the name, creating the entry if needed.
  /// @return the entry and whether it was created by this call
  std::pair<PitEntry*, bool>
  insert(const Name& name, std::uint64_t nonce, FaceId face, SimTime now, Duration lifetime);

  void
  erase(const Name& name)
  {
    m_entries.erase(name);
  }

  /// Removes entries with expiry <= now.
  std::size_t
  gc(SimTime now);

  std::size_t
  size() const noexcept
  {
    return m_entries.size();
  }

  const std::map<Name, PitEntry>&
  entries() const noexcept
  {
    return m_entries;
  }

private:
  std::map<Name, PitEntry> m_entries;
};

/// Per-torrent bitmaps of pieces this node can produce Data for.
class PieceStore
{
public:
  void
  add_torrent(const TorrentInfo& torrent, Bitmap held);

  bool
  has(const TorrentId& torrent, PieceIndex piece) const;

  /// @return true if the piece was not held before
  bool
  set(const TorrentId& torrent, PieceIndex piece);

  const Bitmap*
  bitmap(const TorrentId& torrent) const;

  std::optional<std::uint64_t>
  piece_bytes(const TorrentId& torrent) const;

private:
  struct Holding
  {
    TorrentInfo info;
    Bitmap held;
  };
  std::map<TorrentId, Holding> m_torrents;
};

struct ForwardingConfig
{
  Duration pit_lifetime = 2 * kSecond;
  Duration data_response_delay = 1'000;   ///< jittered by +/-10%
  bool cache_overheard_data = false;
  std::uint32_t max_hops = 16;

  void
  validate() const;
};

/// Broadcast @p packet at time @p at, traced with @p event.
struct Transmit
{
  Packet packet;
  SimTime at;
  std::string_view event;
};

/// Hand @p packet to the local application now.
struct DeliverToApp
{
  Packet packet;
};

using Effect = std::variant<Transmit, DeliverToApp>;

struct PureForwarderStrategy
{
  PureForwarderConfig config;
};

struct PeerStrategy
{
  PeerStrategyConfig config;
  OverheardNameTable table;
};

using Strategy = std::variant<PureForwarderStrategy, PeerStrategy>;

/**
 * @brief Per-node forwarding engine.
 *
 * Operations return the effects to schedule and append their decisions to the
 * trace; nothing here touches the event queue directly.
 */
class Forwarder
{
public:
  Forwarder(NodeId id, ForwardingConfig config, Strategy strategy, Rng rng);

  std::vector<Effect>
  on_incoming_interest(const Packet& interest, FaceId from, SimTime now, TraceLog& trace);

  std::vector<Effect>
  on_incoming_data(const Packet& data, FaceId from, SimTime now, TraceLog& trace);

  /// Interest originated by the local application; transmitted immediately.
  std::vector<Effect>
  send_interest(const Packet& interest, std::string_view event, SimTime now);

  /// Data produced by the local application for a pending Interest.
  std::vector<Effect>
  send_data(const Packet& data, SimTime now, TraceLog& trace);

  /// Removes PIT entries with expiry <= now.
  std::size_t
  pit_gc(SimTime now)
  {
    return m_pit.gc(now);
  }

  /// True if this node runs the peer application for @p torrent.
  bool
  is_peer_of(const TorrentId& torrent) const;

  bool
  is_pure_forwarder() const noexcept
  {
    return std::holds_alternative<PureForwarderStrategy>(m_strategy);
  }

  /// True if (name, nonce) was ever received or originated here.
  bool
  has_seen(const Name& name, std::uint64_t nonce) const;

  NodeId
  id() const noexcept
  {
    return m_id;
  }

  const ForwardingConfig&
  config() const noexcept
  {
    return m_config;
  }

  Pit&
  pit() noexcept
  {
    return m_pit;
  }

  PieceStore&
  store() noexcept
  {
    return m_store;
  }

  const PieceStore&
  store() const noexcept
  {
    return m_store;
  }

  Strategy&
  strategy() noexcept
  {
    return m_strategy;
  }

  Rng&
  rng() noexcept
  {
    return m_rng;
  }

private:
  Duration
  response_delay();

  std::optional<std::uint64_t>
  producible(const Name& name) const;

  ForwardAction
  decide(const Packet& interest, SimTime now);

private:
  NodeId m_id;
  ForwardingConfig m_config;
  Strategy m_strategy;
  Rng m_rng;
  Pit m_pit;
  PieceStore m_store;
  std::map<Name, std::uint64_t> m_cache;
  std::set<std::pair<std::string, std::uint64_t>> m_seen;
};

} // namespace ntsim

#endif // NTSIM_FORWARDER_HPP
