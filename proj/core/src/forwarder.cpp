#include "ntsim/forwarder.hpp"

#include <algorithm>
#include <stdexcept>

namespace ntsim {

PitEntry*
Pit::find(const Name& name, SimTime now)
{
  auto it = m_entries.find(name);
  if (it == m_entries.end() || it->second.expiry <= now) {
    return nullptr;
  }
  return &it->second;
}

std::pair<PitEntry*, bool>
Pit::insert(const Name& name, std::uint64_t nonce, FaceId face, SimTime now, Duration lifetime)
{
  auto [it, created] = m_entries.try_emplace(name, PitEntry{name, {}, {}, 0});
  PitEntry& entry = it->second;
  if (!created && entry.expiry <= now) {
    // stale entry awaiting gc; start over
    entry = PitEntry{name, {}, {}, 0};
    created = true;
  }
  entry.nonces.insert(nonce);
  entry.in_faces[face] = now + lifetime;
  entry.expiry = std::max(entry.expiry, now + lifetime);
  return {&entry, created};
}

std::size_t
Pit::gc(SimTime now)
{
  return std::erase_if(m_entries, [now] (const auto& kv) { return kv.second.expiry <= now; });
}

void
PieceStore::add_torrent(const TorrentInfo& torrent, Bitmap held)
{
  if (held.size() != torrent.n_pieces) {
    throw LengthMismatch("held bitmap does not match torrent " + torrent.id);
  }
  m_torrents.insert_or_assign(torrent.id, Holding{torrent, std::move(held)});
}

bool
PieceStore::has(const TorrentId& torrent, PieceIndex piece) const
{
  auto it = m_torrents.find(torrent);
  return it != m_torrents.end() && piece < it->second.held.size() && it->second.held.test(piece);
}

bool
PieceStore::set(const TorrentId& torrent, PieceIndex piece)
{
  auto it = m_torrents.find(torrent);
  if (it == m_torrents.end() || piece >= it->second.held.size() || it->second.held.test(piece)) {
    return false;
  }
  it->second.held.set(piece);
  return true;
}

const Bitmap*
PieceStore::bitmap(const TorrentId& torrent) const
{
  auto it = m_torrents.find(torrent);
  return it == m_torrents.end() ? nullptr : &it->second.held;
}

std::optional<std::uint64_t>
PieceStore::piece_bytes(const TorrentId& torrent) const
{
  auto it = m_torrents.find(torrent);
  if (it == m_torrents.end()) {
    return std::nullopt;
  }
  return it->second.info.piece_bytes;
}

void
ForwardingConfig::validate() const
{
  if (pit_lifetime == 0) {
    throw std::invalid_argument("pit_lifetime must be > 0");
  }
  if (max_hops == 0) {
    throw std::invalid_argument("max_hops must be > 0");
  }
}

namespace {

std::string
interest_detail(const Packet& p)
{
  return "nonce=" + std::to_string(p.interest().nonce) + " hops=" + std::to_string(p.hop_count());
}

} // namespace

Forwarder::Forwarder(NodeId id, ForwardingConfig config, Strategy strategy, Rng rng)
  : m_id(id)
  , m_config(config)
  , m_strategy(std::move(strategy))
  , m_rng(rng)
{
  m_config.validate();
}

bool
Forwarder::is_peer_of(const TorrentId& torrent) const
{
  auto* peer = std::get_if<PeerStrategy>(&m_strategy);
  return peer != nullptr && peer->config.own_torrent == torrent;
}

bool
Forwarder::has_seen(const Name& name, std::uint64_t nonce) const
{
  return m_seen.count({name.to_uri(), nonce}) > 0;
}

Duration
Forwarder::response_delay()
{
  Duration d = m_config.data_response_delay;
  return m_rng.uniform_int(d - d / 10, d + d / 10);
}

std::optional<std::uint64_t>
Forwarder::producible(const Name& name) const
{
  auto cls = classify(name);
  if (auto* piece = std::get_if<name_class::PieceInterest>(&cls)) {
    if (m_store.has(piece->torrent, piece->piece)) {
      return m_store.piece_bytes(piece->torrent);
    }
  }
  if (auto it = m_cache.find(name); it != m_cache.end()) {
    return it->second;
  }
  return std::nullopt;
}

ForwardAction
Forwarder::decide(const Packet& interest, SimTime now)
{
  return std::visit([&] (auto& s) -> ForwardAction {
    using T = std::decay_t<decltype(s)>;
    if constexpr (std::is_same_v<T, PureForwarderStrategy>) {
      return pure_decide(s.config, interest, m_rng);
    }
    else {
      return peer_decide(s.config, s.table, interest, now, m_rng);
    }
  }, m_strategy);
}

std::vector<Effect>
Forwarder::on_incoming_interest(const Packet& interest, FaceId from, SimTime now, TraceLog& trace)
{
  if (!interest.is_interest()) {
    throw std::invalid_argument("on_incoming_interest expects an Interest");
  }
  const Name& name = interest.name();
  const auto uri = name.to_uri();
  const auto nonce = interest.interest().nonce;

  if (!m_seen.emplace(uri, nonce).second) {
    trace.add(now, m_id, code::kDupDrop, uri, interest_detail(interest));
    return {};
  }
  auto [entry, created] = m_pit.insert(name, nonce, from, now, m_config.pit_lifetime);

  std::vector<Effect> effects;
  if (auto bytes = producible(name)) {
    trace.add(now, m_id, code::kStoreHit, uri, interest_detail(interest));
    m_pit.erase(name);
    effects.push_back(Transmit{Packet::make_data(name, *bytes, m_id), now + response_delay(),
                               code::kDataTx});
    return effects;
  }

  auto action = decide(interest, now);
  trace.add(now, m_id, to_string(action.reason), uri, interest_detail(interest));

  switch (action.kind) {
    case ActionKind::ForwardInterest:
      if (interest.hop_count() + 1 > m_config.max_hops) {
        trace.add(now, m_id, code::kHopDrop, uri, interest_detail(interest));
        break;
      }
      effects.push_back(Transmit{interest.relayed(), now + action.delay, code::kInterestFwd});
      return effects;
    case ActionKind::DeliverToApp:
      effects.push_back(DeliverToApp{interest});
      return effects;
    case ActionKind::Drop:
      break;
  }

  // dropped: forget a breadcrumb that only this Interest laid down
  if (created) {
    m_pit.erase(name);
  }
  return effects;
}

std::vector<Effect>
Forwarder::on_incoming_data(const Packet& data, FaceId, SimTime now, TraceLog& trace)
{
  if (!data.is_data()) {
    throw std::invalid_argument("on_incoming_data expects Data");
  }
  const Name& name = data.name();
  const auto uri = name.to_uri();
  const auto detail = "origin=" + std::to_string(to_index(data.origin())) +
                      " hops=" + std::to_string(data.hop_count());

  if (m_config.cache_overheard_data) {
    m_cache.insert_or_assign(name, data.data().payload_bytes);
  }

  PitEntry* entry = m_pit.find(name, now);
  if (entry == nullptr) {
    trace.add(now, m_id, code::kDataUnsolicited, uri, detail);
    return {};
  }

  const bool to_app = entry->wants(FaceId::App, now);
  const bool to_radio = entry->wants(FaceId::Broadcast, now);
  m_pit.erase(name);
  trace.add(now, m_id, code::kDataRx, uri,
            detail + " app=" + (to_app ? "1" : "0") + " bcast=" + (to_radio ? "1" : "0"));

  std::vector<Effect> effects;
  auto torrent = torrent_of(name);
  if (to_app || (torrent && is_peer_of(*torrent))) {
    effects.push_back(DeliverToApp{data});
  }
  if (to_radio) {
    effects.push_back(Transmit{data.relayed(), now + response_delay(), code::kDataFwd});
  }
  return effects;
}

std::vector<Effect>
Forwarder::send_interest(const Packet& interest, std::string_view event, SimTime now)
{
  if (!interest.is_interest()) {
    throw std::invalid_argument("send_interest expects an Interest");
  }
  m_seen.emplace(interest.name().to_uri(), interest.interest().nonce);
  m_pit.insert(interest.name(), interest.interest().nonce, FaceId::App, now,
               m_config.pit_lifetime);
  return {Transmit{interest, now, event}};
}

std::vector<Effect>
Forwarder::send_data(const Packet& data, SimTime now, TraceLog& trace)
{
  if (!data.is_data()) {
    throw std::invalid_argument("send_data expects Data");
  }
  PitEntry* entry = m_pit.find(data.name(), now);
  if (entry == nullptr || !entry->wants(FaceId::Broadcast, now)) {
    return {};
  }
  m_pit.erase(data.name());
  trace.add(now, m_id, code::kStoreHit, data.name().to_uri(), "source=app");
  return {Transmit{data, now + response_delay(), code::kDataTx}};
}

} // namespace ntsim
