#ifndef NTSIM_ORACLE_HPP
#define NTSIM_ORACLE_HPP

#include "ntsim/scenario.hpp"

#include <map>
#include <stdexcept>

namespace ntsim {

class OracleUnsupported : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

/**
 * @brief Graph-only prediction of which leechers can finish.
 *
 * A leecher is reachable iff the unit-disk graph holds a path to a seeder of
 * its torrent whose interior nodes are p=1 pure forwarders or peers of any
 * torrent. Requires static nodes at explicit positions, p_forward in {0, 1},
 * zero loss and no collisions.
 *
 * @throw OracleUnsupported
 */
std::map<NodeId, bool>
reachability_oracle(const ScenarioConfig& cfg);

} // namespace ntsim

#endif // NTSIM_ORACLE_HPP
