#ifndef NTSIM_PACKET_HPP
#define NTSIM_PACKET_HPP

#include "ntsim/bitmap.hpp"
#include "ntsim/common.hpp"
#include "ntsim/name.hpp"

#include <optional>
#include <variant>

namespace ntsim {

/*
 * Name layout
 *
 *   /ntorrent/beacon/<node>                       beacon
 *   /ntorrent/<t>/bitmap/<node>/<hex-bits>/<n>    bitmap announcement
 *   /ntorrent/<t>/data/<idx>                      piece interest (and its Data)
 *   /ntorrent/<t>/...                             any other name of torrent t
 *
 * Node components are "n" followed by the decimal node id.
 */
inline constexpr std::string_view kAppPrefix = "ntorrent";
inline constexpr std::string_view kBeaconComponent = "beacon";

namespace name_class {

struct Beacon
{
  NodeId node;
  friend bool operator==(const Beacon&, const Beacon&) = default;
};

struct BitmapAnnounce
{
  TorrentId torrent;
  NodeId node;
  Bitmap bits;
  friend bool operator==(const BitmapAnnounce&, const BitmapAnnounce&) = default;
};

struct PieceInterest
{
  TorrentId torrent;
  PieceIndex piece;
  friend bool operator==(const PieceInterest&, const PieceInterest&) = default;
};

struct Foreign
{
  TorrentId torrent;
  friend bool operator==(const Foreign&, const Foreign&) = default;
};

struct Unknown
{
  friend bool operator==(const Unknown&, const Unknown&) = default;
};

} // namespace name_class

using NameClass = std::variant<name_class::Beacon,
                               name_class::BitmapAnnounce,
                               name_class::PieceInterest,
                               name_class::Foreign,
                               name_class::Unknown>;

/// Total: malformed fields yield Unknown.
NameClass
classify(const Name& name);

std::optional<TorrentId>
torrent_of(const Name& name);

std::string
node_component(NodeId node);

std::optional<NodeId>
parse_node_component(std::string_view text);

Name
beacon_name(NodeId node);

Name
bitmap_name(const TorrentId& torrent, NodeId node, const Bitmap& bits);

Name
piece_name(const TorrentId& torrent, PieceIndex piece);

struct Interest
{
  Name name;
  std::uint64_t nonce = 0;
  friend bool operator==(const Interest&, const Interest&) = default;
};

struct Data
{
  Name name;
  std::uint64_t payload_bytes = 0;
  friend bool operator==(const Data&, const Data&) = default;
};

class Packet
{
public:
  static Packet
  make_interest(Name name, std::uint64_t nonce, NodeId origin);

  /// @throw std::invalid_argument unless @p name classifies as a piece interest
  static Packet
  make_data(Name name, std::uint64_t payload_bytes, NodeId origin);

  bool
  is_interest() const noexcept
  {
    return std::holds_alternative<Interest>(m_kind);
  }

  bool
  is_data() const noexcept
  {
    return std::holds_alternative<Data>(m_kind);
  }

  const Interest&
  interest() const
  {
    return std::get<Interest>(m_kind);
  }

  const Data&
  data() const
  {
    return std::get<Data>(m_kind);
  }

  const Name&
  name() const noexcept;

  NodeId
  origin() const noexcept
  {
    return m_origin;
  }

  std::uint32_t
  hop_count() const noexcept
  {
    return m_hop_count;
  }

  /// Copy for retransmission by another node: hop_count + 1.
  Packet
  relayed() const;

  friend bool operator==(const Packet&, const Packet&) = default;

private:
  Packet(std::variant<Interest, Data> kind, NodeId origin, std::uint32_t hops)
    : m_kind(std::move(kind))
    , m_origin(origin)
    , m_hop_count(hops)
  {
  }

  std::variant<Interest, Data> m_kind;
  NodeId m_origin;
  std::uint32_t m_hop_count = 0;
};

} // namespace ntsim

#endif // NTSIM_PACKET_HPP
