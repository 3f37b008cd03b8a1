#ifndef NTSIM_TRACE_HPP
#define NTSIM_TRACE_HPP

#include "ntsim/common.hpp"
#include "ntsim/mobility.hpp"

#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ntsim {

class IoError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Event codes written to the trace "event" column.
namespace code {

// transmissions
inline constexpr std::string_view kBeaconTx = "BEACON_TX";
inline constexpr std::string_view kBitmapTx = "BITMAP_TX";
inline constexpr std::string_view kPieceReq = "PIECE_REQ";
inline constexpr std::string_view kInterestFwd = "INT_FWD";
inline constexpr std::string_view kDataTx = "DATA_TX";
inline constexpr std::string_view kDataFwd = "DATA_FWD";

// strategy decisions
inline constexpr std::string_view kProbDrop = "PROB_DROP";
inline constexpr std::string_view kProbFwd = "PROB_FWD";
inline constexpr std::string_view kForeignLearn = "FOREIGN_LEARN";
inline constexpr std::string_view kForeignFwd = "FOREIGN_FWD";
inline constexpr std::string_view kOwnApp = "OWN_APP";
inline constexpr std::string_view kUnknownDrop = "UNKNOWN_DROP";

// forwarding plane
inline constexpr std::string_view kDupDrop = "DUP_DROP";
inline constexpr std::string_view kHopDrop = "HOP_DROP";
inline constexpr std::string_view kStoreHit = "STORE_HIT";
inline constexpr std::string_view kDataRx = "DATA_RX";
inline constexpr std::string_view kDataUnsolicited = "DATA_UNSOLICITED";

// application
inline constexpr std::string_view kPieceRx = "PIECE_RX";
inline constexpr std::string_view kCompleted = "COMPLETED";

// medium and mobility
inline constexpr std::string_view kLoss = "LOSS";
inline constexpr std::string_view kCollision = "COLLISION";
inline constexpr std::string_view kEpoch = "EPOCH";

bool
is_transmission(std::string_view event) noexcept;

bool
is_interest_transmission(std::string_view event) noexcept;

/// Records that only a node running the peer application can emit.
bool
is_application(std::string_view event) noexcept;

/// Decisions that end an Interest's or Data's journey at this node.
bool
is_drop(std::string_view event) noexcept;

} // namespace code

struct TraceRecord
{
  SimTime time_us = 0;
  NodeId node{};
  std::string event;
  std::string name;    ///< canonical name text, empty when not applicable
  std::string detail;  ///< space-separated key=value pairs

  friend bool operator==(const TraceRecord&, const TraceRecord&) = default;
};

class TraceLog
{
public:
  void
  add(SimTime time, NodeId node, std::string_view event, std::string name = {},
      std::string detail = {})
  {
    m_records.push_back({time, node, std::string(event), std::move(name), std::move(detail)});
  }

  const std::vector<TraceRecord>&
  records() const noexcept
  {
    return m_records;
  }

  std::vector<TraceRecord>
  release() noexcept
  {
    return std::move(m_records);
  }

  std::size_t
  size() const noexcept
  {
    return m_records.size();
  }

private:
  std::vector<TraceRecord> m_records;
};

/// Reads "key=value" out of a record's detail field.
std::optional<std::string_view>
detail_value(std::string_view detail, std::string_view key);

struct PositionSample
{
  SimTime time_us = 0;
  NodeId node{};
  Position position;
  double heading = 0.0;
  double speed = 0.0;

  friend bool operator==(const PositionSample&, const PositionSample&) = default;
};

/// Header "time_us,node,event,name,detail"; LF line endings.
/// @throw IoError
void
write_trace_csv(std::span<const TraceRecord> trace, const std::filesystem::path& path);

/// @throw IoError on unreadable files or malformed rows
std::vector<TraceRecord>
read_trace_csv(const std::filesystem::path& path);

/// Header "time_us,node,x,y,heading,speed".
void
write_positions_csv(std::span<const PositionSample> samples, const std::filesystem::path& path);

/// Fixed-point text with @p digits decimals, identical on every platform.
std::string
format_fixed(double value, int digits = 6);

} // namespace ntsim

#endif // NTSIM_TRACE_HPP
