#include "ntsim/strategy.hpp"

#include <cmath>
#include <stdexcept>

namespace ntsim {

std::string_view
to_string(Reason reason) noexcept
{
  switch (reason) {
    case Reason::ProbDrop: return "PROB_DROP";
    case Reason::ProbFwd: return "PROB_FWD";
    case Reason::ForeignLearn: return "FOREIGN_LEARN";
    case Reason::ForeignFwd: return "FOREIGN_FWD";
    case Reason::OwnApp: return "OWN_APP";
    case Reason::UnknownDrop: return "UNKNOWN_DROP";
  }
  return "UNKNOWN_DROP";
}

namespace {

void
validate_jitter(Duration lo, Duration hi)
{
  if (lo > hi) {
    throw std::invalid_argument("jitter_min must not exceed jitter_max");
  }
}

Duration
draw_jitter(Duration lo, Duration hi, Rng& rng)
{
  return rng.uniform_int(lo, hi);
}

} // namespace

void
PureForwarderConfig::validate() const
{
  if (!(p_forward >= 0.0 && p_forward <= 1.0)) {
    throw std::invalid_argument("p_forward must lie in [0, 1]");
  }
  validate_jitter(jitter_min, jitter_max);
}

void
PeerStrategyConfig::validate() const
{
  if (own_torrent.empty()) {
    throw std::invalid_argument("peer strategy needs its own torrent id");
  }
  validate_jitter(jitter_min, jitter_max);
}

bool
OverheardNameTable::is_live(const TorrentId& torrent, SimTime now) const
{
  auto it = m_entries.find(torrent);
  return it != m_entries.end() && now < it->second;
}

void
OverheardNameTable::remember(const TorrentId& torrent, SimTime now)
{
  m_entries[torrent] = now + m_t_mem;
}

std::optional<SimTime>
OverheardNameTable::expiry(const TorrentId& torrent) const
{
  auto it = m_entries.find(torrent);
  if (it == m_entries.end()) {
    return std::nullopt;
  }
  return it->second;
}

std::size_t
OverheardNameTable::gc(SimTime now)
{
  return std::erase_if(m_entries, [now] (const auto& kv) { return kv.second <= now; });
}

ForwardAction
pure_decide(const PureForwarderConfig& cfg, const Packet& interest, Rng& rng)
{
  if (!interest.is_interest()) {
    throw std::invalid_argument("pure_decide expects an Interest");
  }
  if (!rng.bernoulli(cfg.p_forward)) {
    return {ActionKind::Drop, 0, Reason::ProbDrop};
  }
  return {ActionKind::ForwardInterest, draw_jitter(cfg.jitter_min, cfg.jitter_max, rng),
          Reason::ProbFwd};
}

ForwardAction
peer_decide(const PeerStrategyConfig& cfg, OverheardNameTable& table, const Packet& interest,
            SimTime now, Rng& rng)
{
  if (!interest.is_interest()) {
    throw std::invalid_argument("peer_decide expects an Interest");
  }

  auto cls = classify(interest.name());
  if (std::holds_alternative<name_class::Beacon>(cls)) {
    return {ActionKind::DeliverToApp, 0, Reason::OwnApp};
  }
  if (std::holds_alternative<name_class::Unknown>(cls)) {
    return {ActionKind::Drop, 0, Reason::UnknownDrop};
  }

  auto torrent = torrent_of(interest.name());
  if (*torrent == cfg.own_torrent) {
    return {ActionKind::DeliverToApp, 0, Reason::OwnApp};
  }

  if (!table.is_live(*torrent, now)) {
    table.remember(*torrent, now);
    return {ActionKind::Drop, 0, Reason::ForeignLearn};
  }
  table.remember(*torrent, now);
  return {ActionKind::ForwardInterest, draw_jitter(cfg.jitter_min, cfg.jitter_max, rng),
          Reason::ForeignFwd};
}

std::size_t
table_gc(OverheardNameTable& table, SimTime now)
{
  return table.gc(now);
}

} // namespace ntsim
