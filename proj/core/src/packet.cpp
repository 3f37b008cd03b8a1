#include "ntsim/packet.hpp"

#include <charconv>

namespace ntsim {

namespace {

constexpr std::string_view kBitmapComponent = "bitmap";
constexpr std::string_view kDataComponent = "data";

// Canonical decimal: digits only, no leading zeros except "0" itself.
std::optional<std::uint32_t>
parse_decimal(std::string_view text)
{
  if (text.empty() || (text.size() > 1 && text.front() == '0')) {
    return std::nullopt;
  }
  std::uint32_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    return std::nullopt;
  }
  return value;
}

} // namespace

std::string
node_component(NodeId node)
{
  return "n" + std::to_string(to_index(node));
}

std::optional<NodeId>
parse_node_component(std::string_view text)
{
  if (text.size() < 2 || text.front() != 'n') {
    return std::nullopt;
  }
  auto value = parse_decimal(text.substr(1));
  if (!value) {
    return std::nullopt;
  }
  return NodeId{*value};
}

NameClass
classify(const Name& name)
{
  using namespace name_class;

  if (name.size() < 2 || name[0] != kAppPrefix) {
    return Unknown{};
  }

  if (name[1] == kBeaconComponent) {
    if (name.size() != 3) {
      return Unknown{};
    }
    auto node = parse_node_component(name[2]);
    if (!node) {
      return Unknown{};
    }
    return Beacon{*node};
  }

  const TorrentId& torrent = name[1];
  if (name.size() >= 3 && name[2] == kBitmapComponent) {
    if (name.size() != 6) {
      return Unknown{};
    }
    auto node = parse_node_component(name[3]);
    if (!node) {
      return Unknown{};
    }
    try {
      return BitmapAnnounce{torrent, *node, decode_bitmap(name[4], name[5])};
    }
    catch (const MalformedBitmap&) {
      return Unknown{};
    }
  }

  if (name.size() >= 3 && name[2] == kDataComponent) {
    if (name.size() != 4) {
      return Unknown{};
    }
    auto piece = parse_decimal(name[3]);
    if (!piece) {
      return Unknown{};
    }
    return PieceInterest{torrent, *piece};
  }

  return Foreign{torrent};
}

std::optional<TorrentId>
torrent_of(const Name& name)
{
  return std::visit([] (const auto& cls) -> std::optional<TorrentId> {
    using T = std::decay_t<decltype(cls)>;
    if constexpr (std::is_same_v<T, name_class::Beacon> || std::is_same_v<T, name_class::Unknown>) {
      return std::nullopt;
    }
    else {
      return cls.torrent;
    }
  }, classify(name));
}

Name
beacon_name(NodeId node)
{
  return Name({std::string(kAppPrefix), std::string(kBeaconComponent), node_component(node)});
}

Name
bitmap_name(const TorrentId& torrent, NodeId node, const Bitmap& bits)
{
  auto encoded = encode_bitmap(bits);
  return Name({std::string(kAppPrefix), torrent, std::string(kBitmapComponent), node_component(node),
               std::move(encoded.hex), std::move(encoded.length)});
}

Name
piece_name(const TorrentId& torrent, PieceIndex piece)
{
  return Name({std::string(kAppPrefix), torrent, std::string(kDataComponent), std::to_string(piece)});
}

Packet
Packet::make_interest(Name name, std::uint64_t nonce, NodeId origin)
{
  return Packet(Interest{std::move(name), nonce}, origin, 0);
}

Packet
Packet::make_data(Name name, std::uint64_t payload_bytes, NodeId origin)
{
  if (!std::holds_alternative<name_class::PieceInterest>(classify(name))) {
    throw std::invalid_argument("Data name must be a piece name: " + name.to_uri());
  }
  return Packet(Data{std::move(name), payload_bytes}, origin, 0);
}

const Name&
Packet::name() const noexcept
{
  return is_interest() ? std::get<Interest>(m_kind).name : std::get<Data>(m_kind).name;
}

Packet
Packet::relayed() const
{
  Packet copy = *this;
  ++copy.m_hop_count;
  return copy;
}

} // namespace ntsim
