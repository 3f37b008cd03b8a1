#include "ntsim/app.hpp"

#include <algorithm>
#include <stdexcept>

namespace ntsim {

void
AppConfig::validate() const
{
  if (beacon_interval == 0) {
    throw std::invalid_argument("beacon_interval must be > 0");
  }
  if (pipeline_window == 0) {
    throw std::invalid_argument("pipeline_window must be >= 1");
  }
  if (interest_retry_timeout == 0) {
    throw std::invalid_argument("interest_retry_timeout must be > 0");
  }
  if (max_retries && *max_retries == 0) {
    throw std::invalid_argument("max_retries must be positive or unbounded");
  }
}

std::vector<PieceIndex>
compute_missing(const Bitmap& mine, const Bitmap& theirs)
{
  if (mine.size() != theirs.size()) {
    throw LengthMismatch("cannot compare bitmaps of " + std::to_string(mine.size()) + " and " +
                         std::to_string(theirs.size()) + " pieces");
  }
  std::vector<PieceIndex> missing;
  for (std::size_t i = 0; i < mine.size(); ++i) {
    if (theirs.test(i) && !mine.test(i)) {
      missing.push_back(static_cast<PieceIndex>(i));
    }
  }
  return missing;
}

NTorrentApp::NTorrentApp(NodeId self, PeerRole role, AppConfig config, Rng rng)
  : m_self(self)
  , m_role(std::move(role))
  , m_config(config)
  , m_rng(rng)
  , m_state{m_role.initial == InitialHolding::Seeder ? Bitmap::full(m_role.torrent.n_pieces)
                                                     : Bitmap(m_role.torrent.n_pieces),
            {}, Bitmap(m_role.torrent.n_pieces), std::nullopt}
{
  m_config.validate();
}

SimTime
NTorrentApp::first_beacon_time()
{
  return m_rng.uniform_int(1, std::max<Duration>(1, m_config.beacon_interval / 10));
}

Duration
NTorrentApp::retry_tick() const noexcept
{
  return std::max<Duration>(1, m_config.interest_retry_timeout / 4);
}

NTorrentApp::BeaconTick
NTorrentApp::on_beacon_timer(SimTime now)
{
  if (m_role.initial == InitialHolding::Leecher && completed() && !m_config.keep_seeding) {
    return {};
  }
  BeaconTick tick;
  tick.beacon = OutgoingInterest{Packet::make_interest(beacon_name(m_self), fresh_nonce(), m_self),
                                 code::kBeaconTx};
  const Duration interval = m_config.beacon_interval;
  tick.next = now + m_rng.uniform_int(interval - interval / 10, interval + interval / 10);
  return tick;
}

OutgoingInterest
NTorrentApp::make_bitmap_interest()
{
  return {Packet::make_interest(bitmap_name(m_role.torrent.id, m_self, m_state.have),
                                fresh_nonce(), m_self),
          code::kBitmapTx};
}

OutgoingInterest
NTorrentApp::make_piece_interest(PieceIndex piece)
{
  return {Packet::make_interest(piece_name(m_role.torrent.id, piece), fresh_nonce(), m_self),
          code::kPieceReq};
}

void
NTorrentApp::maybe_send_bitmap(NodeId remote, SimTime now, AppOutput& out)
{
  auto it = m_last_bitmap_to.find(remote);
  if (it != m_last_bitmap_to.end() && now - it->second < m_config.bitmap_min_gap) {
    return;
  }
  m_last_bitmap_to[remote] = now;
  out.interests.push_back(make_bitmap_interest());
}

void
NTorrentApp::fill_pipeline(SimTime now, AppOutput& out, const std::set<PieceIndex>& exclude)
{
  if (m_state.have.complete()) {
    return;
  }
  for (PieceIndex piece : compute_missing(m_state.have, m_state.known_remote)) {
    if (m_state.pending.size() >= m_config.pipeline_window) {
      break;
    }
    if (m_state.pending.count(piece) > 0 || exclude.count(piece) > 0) {
      continue;
    }
    m_state.pending[piece] = PendingRequest{now, 0};
    out.interests.push_back(make_piece_interest(piece));
  }
}

AppOutput
NTorrentApp::on_receive_beacon(NodeId from, SimTime now)
{
  AppOutput out;
  if (from != m_self) {
    maybe_send_bitmap(from, now, out);
  }
  return out;
}

AppOutput
NTorrentApp::on_receive_bitmap(const name_class::BitmapAnnounce& announce, SimTime now)
{
  AppOutput out;
  if (announce.node == m_self || announce.torrent != m_role.torrent.id ||
      announce.bits.size() != m_role.torrent.n_pieces) {
    return out;
  }
  m_state.known_remote |= announce.bits;
  fill_pipeline(now, out);
  // answer only when we hold something the sender still lacks
  if (!compute_missing(announce.bits, m_state.have).empty()) {
    maybe_send_bitmap(announce.node, now, out);
  }
  return out;
}

AppOutput
NTorrentApp::on_receive_piece(PieceIndex piece, SimTime now, TraceLog& trace)
{
  AppOutput out;
  if (piece >= m_role.torrent.n_pieces || m_state.have.test(piece)) {
    return out;
  }
  m_state.have.set(piece);
  m_state.pending.erase(piece);
  out.stored = piece;
  trace.add(now, m_self, code::kPieceRx, piece_name(m_role.torrent.id, piece).to_uri(),
            "have=" + std::to_string(m_state.have.count()));

  if (m_state.have.complete() && !m_state.completed_at) {
    m_state.completed_at = now;
    trace.add(now, m_self, code::kCompleted, "",
              "torrent=" + m_role.torrent.id + " time_us=" + std::to_string(now));
  }
  fill_pipeline(now, out);
  return out;
}

AppOutput
NTorrentApp::on_retry_timer(SimTime now)
{
  AppOutput out;
  std::set<PieceIndex> dropped;
  for (auto it = m_state.pending.begin(); it != m_state.pending.end();) {
    auto& [piece, req] = *it;
    if (now - req.last_sent < m_config.interest_retry_timeout) {
      ++it;
      continue;
    }
    if (m_config.max_retries && req.retries >= *m_config.max_retries) {
      dropped.insert(piece);
      it = m_state.pending.erase(it);
      continue;
    }
    ++req.retries;
    req.last_sent = now;
    out.interests.push_back(make_piece_interest(piece));
    ++it;
  }
  fill_pipeline(now, out, dropped);
  return out;
}

AppOutput
NTorrentApp::on_receive_piece_interest(PieceIndex piece, SimTime)
{
  AppOutput out;
  if (piece < m_role.torrent.n_pieces && m_state.have.test(piece)) {
    out.data.push_back(Packet::make_data(piece_name(m_role.torrent.id, piece),
                                         m_role.torrent.piece_bytes, m_self));
  }
  else {
    m_demand.insert(piece);
  }
  return out;
}

AppOutput
NTorrentApp::on_interest(const Packet& interest, SimTime now)
{
  auto cls = classify(interest.name());
  if (auto* beacon = std::get_if<name_class::Beacon>(&cls)) {
    return on_receive_beacon(beacon->node, now);
  }
  if (auto* announce = std::get_if<name_class::BitmapAnnounce>(&cls)) {
    return on_receive_bitmap(*announce, now);
  }
  if (auto* piece = std::get_if<name_class::PieceInterest>(&cls)) {
    if (piece->torrent == m_role.torrent.id) {
      return on_receive_piece_interest(piece->piece, now);
    }
  }
  return {};
}

} // namespace ntsim
