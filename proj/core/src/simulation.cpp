#include "ntsim/simulation.hpp"

#include <array>
#include <stdexcept>

namespace ntsim {

namespace {

constexpr std::array<std::string_view, 6> kTxCodes = {
  code::kBeaconTx, code::kBitmapTx, code::kPieceReq,
  code::kInterestFwd, code::kDataTx, code::kDataFwd,
};

std::uint32_t
tx_tag(std::string_view event)
{
  for (std::size_t i = 0; i < kTxCodes.size(); ++i) {
    if (kTxCodes[i] == event) {
      return static_cast<std::uint32_t>(i);
    }
  }
  throw std::logic_error("not a transmission code: " + std::string(event));
}

std::string
packet_detail(const Packet& p)
{
  if (p.is_interest()) {
    return "nonce=" + std::to_string(p.interest().nonce) + " hops=" + std::to_string(p.hop_count());
  }
  return "origin=" + std::to_string(to_index(p.origin())) + " hops=" +
         std::to_string(p.hop_count()) + " bytes=" + std::to_string(p.data().payload_bytes);
}

Strategy
make_strategy(const ScenarioConfig& cfg, const NodeSpec& spec)
{
  if (spec.kind == NodeKind::PureForwarder) {
    PureForwarderConfig pc{cfg.strategy.p_forward, cfg.strategy.jitter_min, cfg.strategy.jitter_max};
    pc.validate();
    return PureForwarderStrategy{pc};
  }
  PeerStrategyConfig pc{*spec.torrent, cfg.strategy.t_mem, cfg.strategy.jitter_min,
                        cfg.strategy.jitter_max};
  pc.validate();
  return PeerStrategy{pc, OverheardNameTable(pc.t_mem)};
}

} // namespace

Simulation::Simulation(ScenarioConfig config, std::uint64_t master_seed)
  : m_config(std::move(config))
  , m_seed(master_seed)
{
  m_config.validate();
  m_nodes.reserve(m_config.nodes.size());

  for (const auto& spec : m_config.nodes) {
    Position start;
    if (spec.initial_position) {
      start = *spec.initial_position;
    }
    else {
      Rng placement = derive_stream(m_seed, Purpose::Placement, spec.id);
      start.x = placement.uniform_real(0.0, m_config.grid.width);
      start.y = placement.uniform_real(0.0, m_config.grid.height);
    }

    NodeRuntime n{
      spec,
      Forwarder(spec.id, m_config.forwarding(), make_strategy(m_config, spec),
                derive_stream(m_seed, Purpose::Strategy, spec.id)),
      std::nullopt,
      derive_stream(m_seed, Purpose::Mobility, spec.id),
      derive_stream(m_seed, Purpose::Medium, spec.id),
      start,
      0,
      spec.mobility == MobilityKind::Static ? static_walk() : WalkState{0.0, 0.0, 0},
    };

    if (spec.kind != NodeKind::PureForwarder) {
      const TorrentInfo& info = *m_config.find_torrent(*spec.torrent);
      auto holding = spec.kind == NodeKind::Seeder ? InitialHolding::Seeder : InitialHolding::Leecher;
      n.forwarder.store().add_torrent(
        info, holding == InitialHolding::Seeder ? Bitmap::full(info.n_pieces) : Bitmap(info.n_pieces));
      n.app.emplace(spec.id, PeerRole{info, holding}, m_config.app,
                    derive_stream(m_seed, Purpose::App, spec.id));
    }

    m_index.emplace(spec.id, m_nodes.size());
    m_nodes.push_back(std::move(n));
  }

  for (auto& n : m_nodes) {
    if (n.spec.mobility == MobilityKind::RandomWalk) {
      Event e;
      e.time = 0;
      e.kind = EventKind::MobilityEpoch;
      e.target = n.spec.id;
      m_engine.schedule(std::move(e));
    }
    if (n.app) {
      m_engine.schedule(timer(n.app->first_beacon_time(), n.spec.id, TimerKind::Beacon));
      if (n.spec.kind == NodeKind::Leecher) {
        m_engine.schedule(timer(n.app->retry_tick(), n.spec.id, TimerKind::Retry));
      }
    }
  }
  m_engine.schedule(timer(0, std::nullopt, TimerKind::PositionSample));

  Event gc;
  gc.time = kSecond;
  gc.kind = EventKind::GcTick;
  m_engine.schedule(std::move(gc));

  Event end;
  end.time = m_config.duration;
  end.kind = EventKind::End;
  m_engine.schedule(std::move(end));
}

Event
Simulation::timer(SimTime at, std::optional<NodeId> target, TimerKind kind) const
{
  Event e;
  e.time = at;
  e.kind = EventKind::Timer;
  e.target = target;
  e.timer = kind;
  return e;
}

Simulation::NodeRuntime&
Simulation::node(NodeId id)
{
  return m_nodes.at(m_index.at(id));
}

const Simulation::NodeRuntime&
Simulation::node(NodeId id) const
{
  return m_nodes.at(m_index.at(id));
}

Position
Simulation::position_of(NodeId id) const
{
  const auto& n = node(id);
  return position_at(n.anchor, n.walk, n.anchor_time, m_engine.now(), m_config.grid);
}

const Forwarder&
Simulation::forwarder(NodeId id) const
{
  return node(id).forwarder;
}

const NTorrentApp*
Simulation::app(NodeId id) const
{
  const auto& n = node(id);
  return n.app ? &*n.app : nullptr;
}

RunReport
Simulation::run()
{
  return m_engine.run_until(m_config.duration, [this] (const Event& e) { dispatch(e); });
}

void
Simulation::dispatch(const Event& event)
{
  const SimTime now = event.time;
  switch (event.kind) {
    case EventKind::PacketDelivery:
      on_delivery(event);
      break;

    case EventKind::MobilityEpoch:
      on_mobility_epoch(node(*event.target));
      break;

    case EventKind::GcTick:
      for (auto& n : m_nodes) {
        n.forwarder.pit_gc(now);
        if (auto* peer = std::get_if<PeerStrategy>(&n.forwarder.strategy())) {
          table_gc(peer->table, now);
        }
      }
      {
        Event next = event;
        next.time = now + kSecond;
        m_engine.schedule(std::move(next));
      }
      break;

    case EventKind::End:
      break;

    case EventKind::Timer:
      switch (event.timer) {
        case TimerKind::Beacon: {
          auto& n = node(*event.target);
          auto tick = n.app->on_beacon_timer(now);
          if (tick.beacon) {
            apply(n, n.forwarder.send_interest(tick.beacon->packet, tick.beacon->event, now));
          }
          if (tick.next) {
            m_engine.schedule(timer(*tick.next, n.spec.id, TimerKind::Beacon));
          }
          break;
        }
        case TimerKind::Retry: {
          auto& n = node(*event.target);
          apply(n, n.app->on_retry_timer(now));
          if (!n.app->completed()) {
            m_engine.schedule(timer(now + n.app->retry_tick(), n.spec.id, TimerKind::Retry));
          }
          break;
        }
        case TimerKind::Transmit:
          transmit(node(*event.target), *event.packet, kTxCodes.at(event.tag));
          break;
        case TimerKind::PositionSample:
          sample_positions();
          m_engine.schedule(timer(now + m_config.position_sample_interval, std::nullopt,
                                  TimerKind::PositionSample));
          break;
        case TimerKind::None:
          break;
      }
      break;
  }
}

void
Simulation::apply(NodeRuntime& n, std::vector<Effect> effects)
{
  const SimTime now = m_engine.now();
  for (auto& effect : effects) {
    if (auto* tx = std::get_if<Transmit>(&effect)) {
      Event e = timer(tx->at, n.spec.id, TimerKind::Transmit);
      e.tag = tx_tag(tx->event);
      e.packet = std::move(tx->packet);
      m_engine.schedule(std::move(e));
      continue;
    }

    auto& deliver = std::get<DeliverToApp>(effect);
    if (!n.app) {
      continue;
    }
    if (deliver.packet.is_interest()) {
      apply(n, n.app->on_interest(deliver.packet, now));
    }
    else {
      auto cls = classify(deliver.packet.name());
      auto* piece = std::get_if<name_class::PieceInterest>(&cls);
      if (piece != nullptr && piece->torrent == n.app->role().torrent.id) {
        apply(n, n.app->on_receive_piece(piece->piece, now, m_trace));
      }
    }
  }
}

void
Simulation::apply(NodeRuntime& n, AppOutput output)
{
  const SimTime now = m_engine.now();
  if (output.stored) {
    n.forwarder.store().set(n.app->role().torrent.id, *output.stored);
  }
  for (auto& out : output.interests) {
    apply(n, n.forwarder.send_interest(out.packet, out.event, now));
  }
  for (auto& data : output.data) {
    apply(n, n.forwarder.send_data(data, now, m_trace));
  }
}

void
Simulation::transmit(NodeRuntime& n, const Packet& packet, std::string_view event)
{
  const SimTime now = m_engine.now();
  m_trace.add(now, n.spec.id, event, packet.name().to_uri(), packet_detail(packet));

  std::vector<Station> stations;
  stations.reserve(m_nodes.size());
  for (const auto& other : m_nodes) {
    stations.push_back({other.spec.id, position_of(other.spec.id)});
  }

  auto outcome = broadcast(n.spec.id, stations, now, m_config.radio, n.medium_rng);
  for (NodeId lost : outcome.lost) {
    m_trace.add(now, lost, code::kLoss, packet.name().to_uri(),
                "from=" + std::to_string(to_index(n.spec.id)));
  }
  for (const auto& d : outcome.delivered) {
    Event e;
    e.time = d.at;
    e.kind = EventKind::PacketDelivery;
    e.target = d.receiver;
    e.sender = n.spec.id;
    e.packet = packet;
    auto seq = m_engine.schedule(std::move(e));

    if (m_config.collision_mode) {
      auto it = m_last_arrival.find(d.receiver);
      if (it != m_last_arrival.end() && d.at - it->second.first < m_config.radio.one_hop_delay) {
        m_collided.insert(it->second.second);
        m_collided.insert(seq);
      }
      m_last_arrival[d.receiver] = {d.at, seq};
    }
  }
}

void
Simulation::on_delivery(const Event& event)
{
  const SimTime now = event.time;
  auto& n = node(*event.target);
  const Packet& packet = *event.packet;

  if (auto it = m_collided.find(event.seq); it != m_collided.end()) {
    m_collided.erase(it);
    m_trace.add(now, n.spec.id, code::kCollision, packet.name().to_uri(),
                "from=" + std::to_string(to_index(*event.sender)));
    return;
  }

  if (packet.is_interest()) {
    apply(n, n.forwarder.on_incoming_interest(packet, FaceId::Broadcast, now, m_trace));
  }
  else {
    apply(n, n.forwarder.on_incoming_data(packet, FaceId::Broadcast, now, m_trace));
  }
}

void
Simulation::on_mobility_epoch(NodeRuntime& n)
{
  const SimTime now = m_engine.now();
  n.anchor = position_at(n.anchor, n.walk, n.anchor_time, now, m_config.grid);
  n.anchor_time = now;
  n.walk = walk_epoch(n.walk, n.mobility_rng, now);
  m_trace.add(now, n.spec.id, code::kEpoch, "",
              "heading=" + format_fixed(n.walk.heading) + " speed=" + format_fixed(n.walk.speed));

  Event next;
  next.time = n.walk.next_change;
  next.kind = EventKind::MobilityEpoch;
  next.target = n.spec.id;
  m_engine.schedule(std::move(next));
}

void
Simulation::sample_positions()
{
  const SimTime now = m_engine.now();
  for (const auto& n : m_nodes) {
    m_positions.push_back({now, n.spec.id, position_of(n.spec.id), n.walk.heading, n.walk.speed});
  }
}

RunResult
run_scenario(const ScenarioConfig& cfg, std::uint64_t master_seed)
{
  Simulation sim(cfg, master_seed);
  RunResult result;
  result.report = sim.run();
  result.trace = sim.trace().records();
  result.positions = sim.positions();
  result.metrics = summarize(sim.config(), result.trace);
  return result;
}

void
write_run_outputs(const RunResult& result, const std::filesystem::path& dir)
{
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
  }
  write_trace_csv(result.trace, dir / "trace.csv");
  write_metrics_csv(result.metrics, dir / "metrics.csv");
  write_positions_csv(result.positions, dir / "positions.csv");
}

} // namespace ntsim
