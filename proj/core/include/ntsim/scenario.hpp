#ifndef NTSIM_SCENARIO_HPP
#define NTSIM_SCENARIO_HPP

#include "ntsim/app.hpp"
#include "ntsim/forwarder.hpp"
#include "ntsim/medium.hpp"
#include "ntsim/mobility.hpp"

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ntsim {

/// Malformed scenario text: bad JSON syntax, wrong value type, or unknown key.
class ParseError : public std::runtime_error
{
public:
  ParseError(const std::string& what, std::size_t line = 0)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what)
    , m_line(line)
  {
  }

  std::size_t
  line() const noexcept
  {
    return m_line;
  }

private:
  std::size_t m_line;
};

/// Well-formed scenario that violates an invariant; the message names it.
class ValidationError : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

class TooFewNodes : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

enum class NodeKind : std::uint8_t {
  Seeder,
  Leecher,
  PureForwarder,
};

enum class MobilityKind : std::uint8_t {
  Static,
  RandomWalk,
};

struct NodeSpec
{
  NodeId id{};
  NodeKind kind = NodeKind::PureForwarder;
  std::optional<TorrentId> torrent;          ///< required for seeders and leechers
  std::optional<Position> initial_position;  ///< nullopt = uniform random in the grid
  MobilityKind mobility = MobilityKind::Static;

  friend bool operator==(const NodeSpec&, const NodeSpec&) = default;
};

struct StrategyParams
{
  double p_forward = 1.0;
  Duration jitter_min = 2'000;
  Duration jitter_max = 10'000;
  Duration t_mem = 30 * kSecond;

  friend bool operator==(const StrategyParams&, const StrategyParams&) = default;
};

struct ScenarioConfig
{
  GridBounds grid;
  RadioConfig radio;
  SimTime duration = 120 * kSecond;
  std::vector<NodeSpec> nodes;
  std::vector<TorrentInfo> torrents;
  StrategyParams strategy;
  AppConfig app;
  Duration pit_lifetime = 2 * kSecond;
  Duration data_response_delay = 1'000;
  bool cache_overheard_data = false;
  std::uint32_t max_hops = 16;
  bool collision_mode = false;
  Duration position_sample_interval = 1 * kSecond;

  /// @throw ValidationError naming the violated invariant
  void
  validate() const;

  const TorrentInfo*
  find_torrent(const TorrentId& id) const;

  const NodeSpec*
  find_node(NodeId id) const;

  ForwardingConfig
  forwarding() const;
};

/// @throw ParseError, ValidationError
ScenarioConfig
parse_scenario(std::string_view text);

/// @throw IoError if unreadable, ParseError, ValidationError
ScenarioConfig
load_scenario(const std::filesystem::path& path);

/// JSON text that parse_scenario() maps back to an equal config.
std::string
dump_scenario(const ScenarioConfig& cfg);

/**
 * Node 0 seeds movie1, node 4 seeds movie2, node 2 wants movie1, node 1 wants
 * movie2, node 3 is a pure forwarder. Static, on a line in id order with 50 m
 * spacing; 60 m radio range, so only adjacent nodes hear each other.
 */
ScenarioConfig
build_five_node();

/**
 * floor(n/3) leechers per torrent, one seeder per torrent, the rest pure
 * forwarders. Positions uniform in the grid (drawn from @p seed), all nodes
 * random-walking.
 * @throw TooFewNodes if n_nodes < 5
 */
ScenarioConfig
build_random_field(std::size_t n_nodes, std::uint64_t seed);

std::string_view
to_string(NodeKind kind) noexcept;

} // namespace ntsim

#endif // NTSIM_SCENARIO_HPP
