#ifndef NTSIM_ENGINE_HPP
#define NTSIM_ENGINE_HPP

#include "ntsim/common.hpp"
#include "ntsim/packet.hpp"

#include <functional>
#include <optional>
#include <queue>
#include <stdexcept>
#include <vector>

namespace ntsim {

class SchedulingInPast : public std::logic_error
{
public:
  using std::logic_error::logic_error;
};

enum class EventKind : std::uint8_t {
  PacketDelivery,
  Timer,
  MobilityEpoch,
  GcTick,
  End,
};

enum class TimerKind : std::uint8_t {
  None,
  Beacon,
  Retry,
  Transmit,
  PositionSample,
};

struct Event
{
  SimTime time = 0;
  std::uint64_t seq = 0;           ///< assigned by Engine::schedule
  EventKind kind = EventKind::End;
  std::optional<NodeId> target;    ///< nullopt addresses the world
  TimerKind timer = TimerKind::None;
  std::optional<Packet> packet;
  std::optional<NodeId> sender;
  std::uint32_t tag = 0;           ///< handler-defined discriminator
};

struct RunReport
{
  std::uint64_t events_dispatched = 0;
  SimTime final_time = 0;

  friend bool operator==(const RunReport&, const RunReport&) = default;
};

/**
 * @brief Single-threaded discrete-event core.
 *
 * Events are totally ordered by (time, seq); seq is a global counter bumped on
 * every schedule() call, so same-time events dispatch in issue order.
 */
class Engine
{
public:
  using Handler = std::function<void(const Event&)>;

  SimTime
  now() const noexcept
  {
    return m_now;
  }

  /// @return the sequence number given to the event
  /// @throw SchedulingInPast if event.time < now()
  std::uint64_t
  schedule(Event event);

  /// Dispatch events with time <= t_end; the clock ends at exactly t_end.
  /// @throw SchedulingInPast if t_end < now()
  RunReport
  run_until(SimTime t_end, const Handler& handler);

  std::size_t
  pending() const noexcept
  {
    return m_queue.size();
  }

  std::uint64_t
  scheduled_total() const noexcept
  {
    return m_next_seq;
  }

  std::uint64_t
  dispatched_total() const noexcept
  {
    return m_dispatched;
  }

private:
  struct Later
  {
    bool
    operator()(const Event& a, const Event& b) const noexcept
    {
      return a.time != b.time ? a.time > b.time : a.seq > b.seq;
    }
  };

  std::priority_queue<Event, std::vector<Event>, Later> m_queue;
  SimTime m_now = 0;
  std::uint64_t m_next_seq = 0;
  std::uint64_t m_dispatched = 0;
};

} // namespace ntsim

#endif // NTSIM_ENGINE_HPP
