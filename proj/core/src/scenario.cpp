#include "ntsim/scenario.hpp"
#include "ntsim/rng.hpp"
#include "ntsim/trace.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace ntsim {

using json = nlohmann::json;

std::string_view
to_string(NodeKind kind) noexcept
{
  switch (kind) {
    case NodeKind::Seeder: return "seeder";
    case NodeKind::Leecher: return "leecher";
    case NodeKind::PureForwarder: return "pure_forwarder";
  }
  return "pure_forwarder";
}

namespace {

constexpr std::uint32_t kMaxPieces = 1u << 20;

std::string_view
to_string(MobilityKind kind) noexcept
{
  return kind == MobilityKind::Static ? "static" : "random_walk";
}

// Reads the fields of one JSON object and rejects keys nobody asked for.
class ObjectReader
{
public:
  ObjectReader(const json& obj, std::string path)
    : m_obj(obj)
    , m_path(std::move(path))
  {
    if (!m_obj.is_object()) {
      throw ParseError("'" + display() + "' must be an object");
    }
  }

  bool
  has(const std::string& key)
  {
    m_known.insert(key);
    return m_obj.contains(key);
  }

  const json&
  raw(const std::string& key)
  {
    m_known.insert(key);
    if (!m_obj.contains(key)) {
      throw ParseError("missing required field '" + field(key) + "'");
    }
    return m_obj.at(key);
  }

  std::uint64_t
  get_uint(const std::string& key, std::uint64_t fallback)
  {
    if (!has(key)) {
      return fallback;
    }
    const auto& v = m_obj.at(key);
    if (v.is_number_unsigned()) {
      return v.get<std::uint64_t>();
    }
    if (v.is_number_integer() && v.get<std::int64_t>() >= 0) {
      return static_cast<std::uint64_t>(v.get<std::int64_t>());
    }
    throw ParseError("field '" + field(key) + "' must be a non-negative integer");
  }

  double
  get_double(const std::string& key, double fallback)
  {
    if (!has(key)) {
      return fallback;
    }
    const auto& v = m_obj.at(key);
    if (!v.is_number()) {
      throw ParseError("field '" + field(key) + "' must be a number");
    }
    return v.get<double>();
  }

  bool
  get_bool(const std::string& key, bool fallback)
  {
    if (!has(key)) {
      return fallback;
    }
    const auto& v = m_obj.at(key);
    if (!v.is_boolean()) {
      throw ParseError("field '" + field(key) + "' must be true or false");
    }
    return v.get<bool>();
  }

  std::string
  get_string(const std::string& key)
  {
    const auto& v = raw(key);
    if (!v.is_string()) {
      throw ParseError("field '" + field(key) + "' must be a string");
    }
    return v.get<std::string>();
  }

  std::string
  field(const std::string& key) const
  {
    return m_path.empty() ? key : m_path + "." + key;
  }

  void
  finish() const
  {
    for (const auto& item : m_obj.items()) {
      if (m_known.count(item.key()) == 0) {
        throw ParseError("unknown key '" + field(item.key()) + "'");
      }
    }
  }

private:
  std::string
  display() const
  {
    return m_path.empty() ? "<root>" : m_path;
  }

  const json& m_obj;
  std::string m_path;
  std::set<std::string> m_known;
};

std::uint32_t
narrow_u32(std::uint64_t v, const std::string& field)
{
  if (v > 0xffffffffULL) {
    throw ParseError("field '" + field + "' is out of range");
  }
  return static_cast<std::uint32_t>(v);
}

NodeKind
parse_kind(const std::string& text, const std::string& field)
{
  if (text == "seeder") {
    return NodeKind::Seeder;
  }
  if (text == "leecher") {
    return NodeKind::Leecher;
  }
  if (text == "pure_forwarder") {
    return NodeKind::PureForwarder;
  }
  throw ParseError("field '" + field + "' must be seeder, leecher or pure_forwarder");
}

MobilityKind
parse_mobility(const std::string& text, const std::string& field)
{
  if (text == "static") {
    return MobilityKind::Static;
  }
  if (text == "random_walk") {
    return MobilityKind::RandomWalk;
  }
  throw ParseError("field '" + field + "' must be static or random_walk");
}

std::size_t
line_of_offset(std::string_view text, std::size_t offset)
{
  offset = std::min(offset, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + offset, '\n'));
}

bool
valid_torrent_id(const std::string& id)
{
  if (id.empty() || id == kBeaconComponent) {
    return false;
  }
  return std::all_of(id.begin(), id.end(), [] (char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
           c == '_' || c == '-' || c == '.';
  });
}

ScenarioConfig
from_json(const json& root)
{
  ScenarioConfig cfg;
  ObjectReader top(root, "");

  if (top.has("grid")) {
    ObjectReader r(root.at("grid"), "grid");
    cfg.grid.width = r.get_double("width", cfg.grid.width);
    cfg.grid.height = r.get_double("height", cfg.grid.height);
    r.finish();
  }
  if (top.has("radio")) {
    ObjectReader r(root.at("radio"), "radio");
    cfg.radio.range = r.get_double("range_m", cfg.radio.range);
    cfg.radio.one_hop_delay = r.get_uint("one_hop_delay_us", cfg.radio.one_hop_delay);
    cfg.radio.loss_prob = r.get_double("loss_prob", cfg.radio.loss_prob);
    r.finish();
  }
  cfg.duration = top.get_uint("duration_us", cfg.duration);

  const auto& torrents = top.raw("torrents");
  if (!torrents.is_array()) {
    throw ParseError("field 'torrents' must be an array");
  }
  for (std::size_t i = 0; i < torrents.size(); ++i) {
    ObjectReader r(torrents[i], "torrents[" + std::to_string(i) + "]");
    TorrentInfo t;
    t.id = r.get_string("id");
    t.n_pieces = narrow_u32(r.get_uint("n_pieces", t.n_pieces), r.field("n_pieces"));
    t.piece_bytes = r.get_uint("piece_bytes", t.piece_bytes);
    r.finish();
    cfg.torrents.push_back(std::move(t));
  }

  const auto& nodes = top.raw("nodes");
  if (!nodes.is_array()) {
    throw ParseError("field 'nodes' must be an array");
  }
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    ObjectReader r(nodes[i], "nodes[" + std::to_string(i) + "]");
    NodeSpec n;
    n.id = NodeId{narrow_u32(r.get_uint("id", 0), r.field("id"))};
    if (!nodes[i].contains("id")) {
      throw ParseError("missing required field '" + r.field("id") + "'");
    }
    n.kind = parse_kind(r.get_string("kind"), r.field("kind"));
    if (r.has("torrent")) {
      n.torrent = r.get_string("torrent");
    }
    if (r.has("position")) {
      const auto& pos = nodes[i].at("position");
      if (pos.is_string() && pos.get<std::string>() == "random") {
        n.initial_position = std::nullopt;
      }
      else if (pos.is_array() && pos.size() == 2 && pos[0].is_number() && pos[1].is_number()) {
        n.initial_position = Position{pos[0].get<double>(), pos[1].get<double>()};
      }
      else {
        throw ParseError("field '" + r.field("position") + "' must be [x, y] or \"random\"");
      }
    }
    if (r.has("mobility")) {
      n.mobility = parse_mobility(r.get_string("mobility"), r.field("mobility"));
    }
    r.finish();
    cfg.nodes.push_back(std::move(n));
  }

  if (top.has("strategy")) {
    ObjectReader r(root.at("strategy"), "strategy");
    cfg.strategy.p_forward = r.get_double("p_forward", cfg.strategy.p_forward);
    cfg.strategy.jitter_min = r.get_uint("jitter_min_us", cfg.strategy.jitter_min);
    cfg.strategy.jitter_max = r.get_uint("jitter_max_us", cfg.strategy.jitter_max);
    cfg.strategy.t_mem = r.get_uint("t_mem_us", cfg.strategy.t_mem);
    r.finish();
  }
  if (top.has("app")) {
    ObjectReader r(root.at("app"), "app");
    cfg.app.beacon_interval = r.get_uint("beacon_interval_us", cfg.app.beacon_interval);
    cfg.app.pipeline_window =
      narrow_u32(r.get_uint("pipeline_window", cfg.app.pipeline_window), r.field("pipeline_window"));
    cfg.app.interest_retry_timeout =
      r.get_uint("interest_retry_timeout_us", cfg.app.interest_retry_timeout);
    if (r.has("max_retries") && !root.at("app").at("max_retries").is_null()) {
      cfg.app.max_retries = narrow_u32(r.get_uint("max_retries", 0), r.field("max_retries"));
    }
    cfg.app.bitmap_min_gap = r.get_uint("bitmap_min_gap_us", cfg.app.bitmap_min_gap);
    cfg.app.keep_seeding = r.get_bool("keep_seeding", cfg.app.keep_seeding);
    r.finish();
  }
  if (top.has("forwarding")) {
    ObjectReader r(root.at("forwarding"), "forwarding");
    cfg.pit_lifetime = r.get_uint("pit_lifetime_us", cfg.pit_lifetime);
    cfg.data_response_delay = r.get_uint("data_response_delay_us", cfg.data_response_delay);
    cfg.cache_overheard_data = r.get_bool("cache_overheard_data", cfg.cache_overheard_data);
    r.finish();
  }
  cfg.max_hops = narrow_u32(top.get_uint("max_hops", cfg.max_hops), "max_hops");
  cfg.collision_mode = top.get_bool("collision_mode", cfg.collision_mode);
  cfg.position_sample_interval =
    top.get_uint("position_sample_interval_us", cfg.position_sample_interval);
  top.finish();
  return cfg;
}

json
position_json(const std::optional<Position>& p)
{
  if (!p) {
    return "random";
  }
  return json::array({p->x, p->y});
}

} // namespace

void
ScenarioConfig::validate() const
{
  if (!(grid.width > 0.0) || !(grid.height > 0.0) || !std::isfinite(grid.width) ||
      !std::isfinite(grid.height)) {
    throw ValidationError("grid: width and height must be finite and > 0");
  }
  try {
    radio.validate();
  }
  catch (const std::invalid_argument& e) {
    throw ValidationError(e.what());
  }

  std::set<TorrentId> torrent_ids;
  for (const auto& t : torrents) {
    if (!valid_torrent_id(t.id)) {
      throw ValidationError("torrent id '" + t.id + "' must be [A-Za-z0-9_.-]+ and not 'beacon'");
    }
    if (!torrent_ids.insert(t.id).second) {
      throw ValidationError("duplicate torrent id '" + t.id + "'");
    }
    if (t.n_pieces == 0 || t.n_pieces > kMaxPieces) {
      throw ValidationError("torrent '" + t.id + "': n_pieces must lie in [1, 2^20]");
    }
  }

  if (nodes.empty()) {
    throw ValidationError("nodes: at least one node is required");
  }
  std::set<NodeId> node_ids;
  for (const auto& n : nodes) {
    const auto label = "node " + std::to_string(to_index(n.id));
    if (!node_ids.insert(n.id).second) {
      throw ValidationError("duplicate node id " + std::to_string(to_index(n.id)));
    }
    if (n.kind == NodeKind::PureForwarder) {
      if (n.torrent) {
        throw ValidationError(label + ": a pure forwarder has no torrent");
      }
    }
    else {
      if (!n.torrent) {
        throw ValidationError(label + ": seeders and leechers must name a torrent");
      }
      if (torrent_ids.count(*n.torrent) == 0) {
        throw ValidationError(label + ": references undeclared torrent '" + *n.torrent + "'");
      }
    }
    if (n.initial_position && !grid.contains(*n.initial_position)) {
      throw ValidationError(label + ": position lies outside the grid");
    }
  }

  if (!(strategy.p_forward >= 0.0 && strategy.p_forward <= 1.0)) {
    throw ValidationError("strategy.p_forward must lie in [0, 1]");
  }
  if (strategy.jitter_min > strategy.jitter_max) {
    throw ValidationError("strategy: jitter_min_us must not exceed jitter_max_us");
  }
  if (strategy.t_mem == 0) {
    throw ValidationError("strategy.t_mem_us must be > 0");
  }
  try {
    app.validate();
  }
  catch (const std::invalid_argument& e) {
    throw ValidationError(std::string("app: ") + e.what());
  }
  if (pit_lifetime <= strategy.jitter_max + 2 * radio.one_hop_delay) {
    throw ValidationError("forwarding.pit_lifetime_us must exceed jitter_max + 2 * one_hop_delay");
  }
  if (max_hops == 0) {
    throw ValidationError("max_hops must be >= 1");
  }
  if (position_sample_interval == 0) {
    throw ValidationError("position_sample_interval_us must be > 0");
  }
}

const TorrentInfo*
ScenarioConfig::find_torrent(const TorrentId& id) const
{
  auto it = std::find_if(torrents.begin(), torrents.end(),
                         [&] (const TorrentInfo& t) { return t.id == id; });
  return it == torrents.end() ? nullptr : &*it;
}

const NodeSpec*
ScenarioConfig::find_node(NodeId id) const
{
  auto it = std::find_if(nodes.begin(), nodes.end(),
                         [&] (const NodeSpec& n) { return n.id == id; });
  return it == nodes.end() ? nullptr : &*it;
}

ForwardingConfig
ScenarioConfig::forwarding() const
{
  ForwardingConfig fc;
  fc.pit_lifetime = pit_lifetime;
  fc.data_response_delay = data_response_delay;
  fc.cache_overheard_data = cache_overheard_data;
  fc.max_hops = max_hops;
  return fc;
}

ScenarioConfig
parse_scenario(std::string_view text)
{
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  }
  catch (const json::parse_error& e) {
    throw ParseError(e.what(), line_of_offset(text, e.byte > 0 ? e.byte - 1 : 0));
  }
  auto cfg = from_json(root);
  cfg.validate();
  return cfg;
}

ScenarioConfig
load_scenario(const std::filesystem::path& path)
{
  std::ifstream is(path, std::ios::binary);
  if (!is) {
    throw IoError("cannot open scenario " + path.string());
  }
  std::ostringstream buf;
  buf << is.rdbuf();
  return parse_scenario(buf.str());
}

std::string
dump_scenario(const ScenarioConfig& cfg)
{
  json root;
  root["grid"] = {{"width", cfg.grid.width}, {"height", cfg.grid.height}};
  root["radio"] = {{"range_m", cfg.radio.range},
                   {"one_hop_delay_us", cfg.radio.one_hop_delay},
                   {"loss_prob", cfg.radio.loss_prob}};
  root["duration_us"] = cfg.duration;

  root["torrents"] = json::array();
  for (const auto& t : cfg.torrents) {
    root["torrents"].push_back({{"id", t.id}, {"n_pieces", t.n_pieces}, {"piece_bytes", t.piece_bytes}});
  }
  root["nodes"] = json::array();
  for (const auto& n : cfg.nodes) {
    json node = {{"id", to_index(n.id)},
                 {"kind", to_string(n.kind)},
                 {"position", position_json(n.initial_position)},
                 {"mobility", to_string(n.mobility)}};
    if (n.torrent) {
      node["torrent"] = *n.torrent;
    }
    root["nodes"].push_back(std::move(node));
  }

  root["strategy"] = {{"p_forward", cfg.strategy.p_forward},
                      {"jitter_min_us", cfg.strategy.jitter_min},
                      {"jitter_max_us", cfg.strategy.jitter_max},
                      {"t_mem_us", cfg.strategy.t_mem}};
  root["app"] = {{"beacon_interval_us", cfg.app.beacon_interval},
                 {"pipeline_window", cfg.app.pipeline_window},
                 {"interest_retry_timeout_us", cfg.app.interest_retry_timeout},
                 {"max_retries", cfg.app.max_retries ? json(*cfg.app.max_retries) : json(nullptr)},
                 {"bitmap_min_gap_us", cfg.app.bitmap_min_gap},
                 {"keep_seeding", cfg.app.keep_seeding}};
  root["forwarding"] = {{"pit_lifetime_us", cfg.pit_lifetime},
                        {"data_response_delay_us", cfg.data_response_delay},
                        {"cache_overheard_data", cfg.cache_overheard_data}};
  root["max_hops"] = cfg.max_hops;
  root["collision_mode"] = cfg.collision_mode;
  root["position_sample_interval_us"] = cfg.position_sample_interval;
  return root.dump(2) + "\n";
}

ScenarioConfig
build_five_node()
{
  ScenarioConfig cfg;
  cfg.duration = 120 * kSecond;
  cfg.torrents = {{"movie1", 32, 1024}, {"movie2", 32, 1024}};

  auto at = [] (int slot) { return Position{50.0 + 50.0 * slot, 150.0}; };
  cfg.nodes = {
    {NodeId{0}, NodeKind::Seeder, "movie1", at(0), MobilityKind::Static},
    {NodeId{1}, NodeKind::Leecher, "movie2", at(1), MobilityKind::Static},
    {NodeId{2}, NodeKind::Leecher, "movie1", at(2), MobilityKind::Static},
    {NodeId{3}, NodeKind::PureForwarder, std::nullopt, at(3), MobilityKind::Static},
    {NodeId{4}, NodeKind::Seeder, "movie2", at(4), MobilityKind::Static},
  };
  return cfg;
}

ScenarioConfig
build_random_field(std::size_t n_nodes, std::uint64_t seed)
{
  if (n_nodes < 5) {
    throw TooFewNodes("random field needs at least 5 nodes, got " + std::to_string(n_nodes));
  }
  ScenarioConfig cfg;
  cfg.duration = 600 * kSecond;
  cfg.torrents = {{"movie1", 32, 1024}, {"movie2", 32, 1024}};

  const std::size_t per_torrent = n_nodes / 3;
  for (std::size_t i = 0; i < n_nodes; ++i) {
    NodeSpec n;
    n.id = NodeId{static_cast<std::uint32_t>(i)};
    n.mobility = MobilityKind::RandomWalk;
    if (i == 0 || i == 1) {
      n.kind = NodeKind::Seeder;
      n.torrent = i == 0 ? "movie1" : "movie2";
    }
    else if (i < 2 + per_torrent) {
      n.kind = NodeKind::Leecher;
      n.torrent = "movie1";
    }
    else if (i < 2 + 2 * per_torrent) {
      n.kind = NodeKind::Leecher;
      n.torrent = "movie2";
    }
    else {
      n.kind = NodeKind::PureForwarder;
    }
    Rng placement = derive_stream(seed, Purpose::Placement, n.id);
    double x = placement.uniform_real(0.0, cfg.grid.width);
    double y = placement.uniform_real(0.0, cfg.grid.height);
    n.initial_position = Position{x, y};
    cfg.nodes.push_back(std::move(n));
  }
  return cfg;
}

} // namespace ntsim
