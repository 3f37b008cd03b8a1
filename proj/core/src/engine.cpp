#include "ntsim/engine.hpp"

#include <string>

namespace ntsim {

std::uint64_t
Engine::schedule(Event event)
{
  if (event.time < m_now) {
    throw SchedulingInPast("event at " + std::to_string(event.time) + " us is before now (" +
                           std::to_string(m_now) + " us)");
  }
  event.seq = m_next_seq++;
  auto seq = event.seq;
  m_queue.push(std::move(event));
  return seq;
}

RunReport
Engine::run_until(SimTime t_end, const Handler& handler)
{
  if (t_end < m_now) {
    throw SchedulingInPast("run_until target " + std::to_string(t_end) + " us is before now");
  }

  RunReport report;
  while (!m_queue.empty() && m_queue.top().time <= t_end) {
    Event event = m_queue.top();
    m_queue.pop();
    m_now = event.time;
    ++m_dispatched;
    ++report.events_dispatched;
    handler(event);
  }
  m_now = t_end;
  report.final_time = m_now;
  return report;
}

} // namespace ntsim
