#ifndef NTSIM_APP_HPP
#define NTSIM_APP_HPP

#include "ntsim/packet.hpp"
#include "ntsim/rng.hpp"
#include "ntsim/trace.hpp"

#include <map>
#include <optional>
#include <set>
#include <vector>

namespace ntsim {

struct AppConfig
{
  Duration beacon_interval = 2 * kSecond;
  std::uint32_t pipeline_window = 4;
  Duration interest_retry_timeout = 1 * kSecond;
  std::optional<std::uint32_t> max_retries;       ///< nullopt = unbounded
  Duration bitmap_min_gap = 500 * kMillisecond;   ///< per remote node
  bool keep_seeding = true;                       ///< keep beaconing after completion

  /// @throw std::invalid_argument
  void
  validate() const;
};

enum class InitialHolding : std::uint8_t {
  Seeder,
  Leecher,
};

struct PeerRole
{
  TorrentInfo torrent;
  InitialHolding initial = InitialHolding::Leecher;
};

struct PendingRequest
{
  SimTime last_sent = 0;
  std::uint32_t retries = 0;
};

struct DownloadState
{
  Bitmap have;
  std::map<PieceIndex, PendingRequest> pending;
  Bitmap known_remote;                 ///< union of pieces advertised by other peers
  std::optional<SimTime> completed_at;
};

struct OutgoingInterest
{
  Packet packet;
  std::string_view event;              ///< BEACON_TX, BITMAP_TX or PIECE_REQ
};

struct AppOutput
{
  std::vector<OutgoingInterest> interests;
  std::vector<Packet> data;
  std::optional<PieceIndex> stored;    ///< piece newly added to the local store
};

/// Pieces set in @p theirs and clear in @p mine, ascending.
/// @throw LengthMismatch
std::vector<PieceIndex>
compute_missing(const Bitmap& mine, const Bitmap& theirs);

/**
 * @brief nTorrent peer: beacons, bitmap exchange, pipelined piece requests.
 *
 * Handlers are driven by the simulation; they return the packets to send and
 * record application events (PIECE_RX, COMPLETED) in the trace.
 */
class NTorrentApp
{
public:
  NTorrentApp(NodeId self, PeerRole role, AppConfig config, Rng rng);

  /// Time of the first beacon: a small random offset after time zero.
  SimTime
  first_beacon_time();

  struct BeaconTick
  {
    std::optional<OutgoingInterest> beacon;
    std::optional<SimTime> next;       ///< nullopt once beaconing stops
  };

  BeaconTick
  on_beacon_timer(SimTime now);

  AppOutput
  on_receive_beacon(NodeId from, SimTime now);

  /// Bitmap for our own torrent. If we hold pieces the sender lacks, we answer
  /// with our bitmap, subject to the same per-node rate limit as beacon replies.
  AppOutput
  on_receive_bitmap(const name_class::BitmapAnnounce& announce, SimTime now);

  AppOutput
  on_receive_piece(PieceIndex piece, SimTime now, TraceLog& trace);

  AppOutput
  on_retry_timer(SimTime now);

  AppOutput
  on_receive_piece_interest(PieceIndex piece, SimTime now);

  /// Routes an Interest delivered by the forwarder to the handler for its class.
  AppOutput
  on_interest(const Packet& interest, SimTime now);

  /// Interval between retry-timer ticks.
  Duration
  retry_tick() const noexcept;

  NodeId
  self() const noexcept
  {
    return m_self;
  }

  const PeerRole&
  role() const noexcept
  {
    return m_role;
  }

  const AppConfig&
  config() const noexcept
  {
    return m_config;
  }

  const DownloadState&
  state() const noexcept
  {
    return m_state;
  }

  /// Pieces other peers asked us for that we did not hold at the time.
  const std::set<PieceIndex>&
  demand() const noexcept
  {
    return m_demand;
  }

  bool
  completed() const noexcept
  {
    return m_state.completed_at.has_value();
  }

private:
  std::uint64_t
  fresh_nonce()
  {
    return m_rng.next_u64();
  }

  OutgoingInterest
  make_bitmap_interest();

  OutgoingInterest
  make_piece_interest(PieceIndex piece);

  /// Sends our bitmap to @p remote unless one went out within bitmap_min_gap.
  void
  maybe_send_bitmap(NodeId remote, SimTime now, AppOutput& out);

  void
  fill_pipeline(SimTime now, AppOutput& out, const std::set<PieceIndex>& exclude = {});

private:
  NodeId m_self;
  PeerRole m_role;
  AppConfig m_config;
  Rng m_rng;
  DownloadState m_state;
  std::map<NodeId, SimTime> m_last_bitmap_to;
  std::set<PieceIndex> m_demand;
};

} // namespace ntsim

#endif // NTSIM_APP_HPP
