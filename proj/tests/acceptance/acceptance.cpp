// Acceptance checks: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include "ntsim/oracle.hpp"
#include "ntsim/simulation.hpp"
#include "ntsim/sweep.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

namespace {

using namespace ntsim;
namespace fs = std::filesystem;

struct Verdict
{
  bool pass = false;
  std::string detail;
};

// Criterion 7 looks at every run made by the other criteria.
struct InvariantLedger
{
  std::size_t runs = 0;
  std::size_t records = 0;
  std::vector<std::string> violations;

  void
  check(const ScenarioConfig& cfg, const std::vector<TraceRecord>& trace, const std::string& label)
  {
    ++runs;
    records += trace.size();
    auto fail = [&] (const TraceRecord& r, const std::string& why) {
      if (violations.size() < 10) {
        violations.push_back(label + " t=" + std::to_string(r.time_us) + " node " +
                             std::to_string(to_index(r.node)) + " " + r.event + " " + r.name +
                             ": " + why);
      }
      else if (violations.size() == 10) {
        violations.push_back("...");
      }
    };

    std::set<NodeId> pure;
    for (const auto& n : cfg.nodes) {
      if (n.kind == NodeKind::PureForwarder) {
        pure.insert(n.id);
      }
    }

    std::set<std::tuple<NodeId, std::string, std::string>> sent;
    // (node, name) -> times of Interest receptions that left a radio breadcrumb
    std::map<std::pair<NodeId, std::string>, std::vector<SimTime>> crumbs;
    std::map<std::pair<NodeId, std::string>, std::size_t> pending_relays;

    for (const auto& r : trace) {
      if (code::is_interest_transmission(r.event)) {
        auto nonce = detail_value(r.detail, "nonce");
        if (!nonce) {
          fail(r, "no nonce");
        }
        else if (!sent.emplace(r.node, r.name, std::string(*nonce)).second) {
          fail(r, "(name, nonce) transmitted twice");
        }
      }
      if (r.event == code::kProbFwd || r.event == code::kForeignFwd || r.event == code::kOwnApp) {
        crumbs[{r.node, r.name}].push_back(r.time_us);
      }
      if (r.event == code::kDataRx && detail_value(r.detail, "bcast") == "1") {
        // the entry must have been live when the Data arrived
        const auto& times = crumbs[{r.node, r.name}];
        bool live = std::any_of(times.begin(), times.end(), [&] (SimTime t) {
          return t <= r.time_us && r.time_us < t + cfg.pit_lifetime;
        });
        if (live) {
          ++pending_relays[{r.node, r.name}];
        }
        else {
          fail(r, "Data consumed a PIT entry no Interest created");
        }
      }
      if (r.event == code::kDataFwd) {
        auto& pending = pending_relays[{r.node, r.name}];
        if (pending == 0) {
          fail(r, "Data relayed without a preceding PIT entry");
        }
        else {
          --pending;
        }
      }
      if (pure.count(r.node) > 0 && code::is_application(r.event)) {
        fail(r, "application record at a pure forwarder");
      }
    }
  }
};

InvariantLedger g_ledger;

RunResult
run_checked(const ScenarioConfig& cfg, std::uint64_t seed, const std::string& label)
{
  auto result = run_scenario(cfg, seed);
  g_ledger.check(cfg, result.trace, label);
  return result;
}

fs::path
work_dir(const std::string& leaf)
{
  auto dir = fs::temp_directory_path() / "ntsim_acceptance" / leaf;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string
slurp(const fs::path& p)
{
  std::ifstream is(p, std::ios::binary);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

std::size_t
count_events(const std::vector<TraceRecord>& trace, std::string_view event)
{
  std::size_t n = 0;
  for (const auto& r : trace) {
    n += r.event == event ? 1 : 0;
  }
  return n;
}

ScenarioConfig
three_line(NodeKind middle_kind, std::optional<TorrentId> middle_torrent, double p)
{
  ScenarioConfig cfg;
  cfg.torrents = {{"movie1", 32, 1024}, {"movie2", 32, 1024}};
  cfg.nodes = {
    {NodeId{0}, NodeKind::Seeder, "movie1", Position{50, 150}, MobilityKind::Static},
    {NodeId{1}, middle_kind, std::move(middle_torrent), Position{100, 150}, MobilityKind::Static},
    {NodeId{2}, NodeKind::Leecher, "movie1", Position{150, 150}, MobilityKind::Static},
  };
  cfg.strategy.p_forward = p;
  cfg.duration = 120 * kSecond;
  return cfg;
}

Verdict
five_node_reproduction()
{
  double worst_wall = 0;
  SimTime worst_sim = 0;
  auto dir = work_dir("c1");
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto cfg = build_five_node();
    cfg.strategy.p_forward = 1.0;
    auto start = std::chrono::steady_clock::now();
    auto result = run_checked(cfg, seed, "five-node seed " + std::to_string(seed));
    write_run_outputs(result, dir / std::to_string(seed));
    double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    worst_wall = std::max(worst_wall, wall);

    for (const auto& l : result.metrics.leechers) {
      bool want = (l.node == NodeId{2} && l.torrent == "movie1") ||
                  (l.node == NodeId{1} && l.torrent == "movie2");
      if (!want || !l.completed || *l.completion_time_us > 120 * kSecond) {
        return {false, "seed " + std::to_string(seed) + ": node " + std::to_string(to_index(l.node)) +
                         " did not complete " + l.torrent};
      }
      worst_sim = std::max(worst_sim, *l.completion_time_us);
    }
    if (result.metrics.leechers.size() != 2) {
      return {false, "expected two leechers"};
    }
    if (wall >= 2.0) {
      return {false, "seed " + std::to_string(seed) + " took " + format_fixed(wall, 3) + " s"};
    }
  }
  return {true, "10/10 seeds, both leechers done; latest completion " +
                  format_fixed(worst_sim / 1e6, 3) + " s sim, slowest run " +
                  format_fixed(worst_wall, 3) + " s wall"};
}

Verdict
blocking_case()
{
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto cfg = three_line(NodeKind::PureForwarder, std::nullopt, 0.0);
    auto result = run_checked(cfg, seed, "blocked seed " + std::to_string(seed));
    auto rx = count_events(result.trace, code::kPieceRx);
    if (result.metrics.leechers.at(0).completed || rx != 0) {
      return {false, "seed " + std::to_string(seed) + ": PIECE_RX=" + std::to_string(rx)};
    }
    if (count_events(result.trace, code::kProbDrop) == 0) {
      return {false, "forwarder never saw an Interest"};
    }
  }
  return {true, "10/10 seeds: no completion, PIECE_RX=0 over 120 s"};
}

Verdict
foreign_relay()
{
  std::size_t learned_first = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto cfg = three_line(NodeKind::Leecher, "movie2", 1.0);
    if (in_range(*cfg.nodes[0].initial_position, *cfg.nodes[2].initial_position, cfg.radio)) {
      return {false, "F is within A's range"};
    }
    auto result = run_checked(cfg, seed, "relay seed " + std::to_string(seed));
    const auto& f = result.metrics.leechers.at(1);
    if (f.node != NodeId{2} || !f.completed) {
      return {false, "seed " + std::to_string(seed) + ": F did not complete movie1"};
    }

    std::vector<std::string> decisions;
    for (const auto& r : result.trace) {
      if (r.node != NodeId{1} || r.name.empty()) {
        continue;
      }
      if (r.event != code::kForeignLearn && r.event != code::kForeignFwd) {
        continue;
      }
      if (torrent_of(parse_name(r.name)) == "movie1") {
        decisions.push_back(r.event);
      }
    }
    if (decisions.empty() || decisions.front() != code::kForeignLearn) {
      return {false, "seed " + std::to_string(seed) + ": C's first movie1 decision is " +
                       (decisions.empty() ? std::string("missing") : decisions.front())};
    }
    if (std::find(decisions.begin() + 1, decisions.end(), std::string(code::kForeignFwd)) ==
        decisions.end()) {
      return {false, "seed " + std::to_string(seed) + ": C never forwarded movie1"};
    }
    ++learned_first;
  }
  return {true, std::to_string(learned_first) +
                  "/10 seeds: F completes, C learns first then forwards"};
}

// Layout k: 10 static nodes, 2 seeders, 3+3 leechers, 2 forwarders, on a
// grid whose side cycles through 150/200/300 m to mix dense and sparse graphs.
ScenarioConfig
oracle_layout(std::uint64_t k)
{
  auto cfg = build_random_field(10, 1000 + k);
  static const double kSides[] = {150.0, 200.0, 300.0};
  double side = kSides[k % 3];
  cfg.grid = {side, side};
  Rng place(0xace0000 + k);
  for (auto& n : cfg.nodes) {
    n.mobility = MobilityKind::Static;
    n.initial_position = Position{place.uniform_real(0, side), place.uniform_real(0, side)};
  }
  cfg.strategy.p_forward = (k / 3) % 2 == 0 ? 1.0 : 0.0;
  cfg.radio.loss_prob = 0.0;
  cfg.duration = 300 * kSecond;
  return cfg;
}

Verdict
oracle_equivalence()
{
  std::size_t reachable = 0, unreachable = 0;
  for (std::uint64_t k = 0; k < 100; ++k) {
    auto cfg = oracle_layout(k);
    auto predicted = reachability_oracle(cfg);
    auto result = run_checked(cfg, k + 1, "oracle layout " + std::to_string(k));
    for (const auto& l : result.metrics.leechers) {
      bool want = predicted.at(l.node);
      (want ? reachable : unreachable)++;
      if (want != l.completed) {
        return {false, "layout " + std::to_string(k) + " node " + std::to_string(to_index(l.node)) +
                         ": oracle " + (want ? "reachable" : "unreachable") + ", simulator " +
                         (l.completed ? "completed" : "incomplete")};
      }
    }
  }
  return {true, "100/100 layouts agree (" + std::to_string(reachable) + " reachable, " +
                  std::to_string(unreachable) + " unreachable leechers)"};
}

Verdict
determinism()
{
  struct Case
  {
    std::string label;
    ScenarioConfig cfg;
    std::uint64_t seed;
  };
  auto lossy = build_random_field(12, 8);
  lossy.radio.loss_prob = 0.1;
  lossy.collision_mode = true;
  lossy.duration = 200 * kSecond;
  std::vector<Case> cases{
    {"five-node", build_five_node(), 3},
    {"random-field", build_random_field(12, 5), 5},
    {"lossy-field", lossy, 8},
  };
  for (const auto& c : cases) {
    std::string first[3];
    for (int pass = 0; pass < 2; ++pass) {
      auto dir = work_dir("c5_" + c.label + "_" + std::to_string(pass));
      write_run_outputs(run_checked(c.cfg, c.seed, c.label), dir);
      int i = 0;
      for (auto f : {"trace.csv", "metrics.csv", "positions.csv"}) {
        auto bytes = slurp(dir / f);
        if (pass == 0) {
          first[i] = bytes;
        }
        else if (bytes != first[i]) {
          return {false, c.label + ": " + f + " differs between runs"};
        }
        ++i;
      }
    }
  }
  return {true, "trace/metrics/positions byte-identical for 3 scenarios"};
}

Verdict
mobility_law()
{
  std::size_t samples = 0, epochs = 0;
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    auto cfg = build_random_field(12, seed);
    Simulation sim(cfg, seed);
    sim.run();
    g_ledger.check(cfg, sim.trace().records(), "field seed " + std::to_string(seed));

    for (const auto& s : sim.positions()) {
      ++samples;
      if (s.speed < 2.0 || s.speed > 10.0) {
        return {false, "speed " + format_fixed(s.speed) + " at t=" + std::to_string(s.time_us)};
      }
      if (!cfg.grid.contains(s.position)) {
        return {false, "node " + std::to_string(to_index(s.node)) + " left the grid"};
      }
    }
    std::map<NodeId, std::size_t> per_node;
    for (const auto& r : sim.trace().records()) {
      if (r.event != code::kEpoch) {
        continue;
      }
      ++epochs;
      ++per_node[r.node];
      if (r.time_us % (20 * kSecond) != 0) {
        return {false, "epoch at " + std::to_string(r.time_us) + " us"};
      }
    }
    for (const auto& n : cfg.nodes) {
      if (per_node[n.id] != cfg.duration / (20 * kSecond) + 1) {
        return {false, "node " + std::to_string(to_index(n.id)) + " had " +
                         std::to_string(per_node[n.id]) + " epochs"};
      }
    }
    if (sim.positions().size() != cfg.nodes.size() * (cfg.duration / kSecond + 1)) {
      return {false, "unexpected number of position samples"};
    }
  }
  return {true, std::to_string(samples) + " samples in grid with speed in [2,10]; " +
                  std::to_string(epochs) + " epochs on 20 s multiples"};
}

Verdict
forwarding_invariants()
{
  if (!g_ledger.violations.empty()) {
    std::string all;
    for (const auto& v : g_ledger.violations) {
      all += "\n    " + v;
    }
    return {false, std::to_string(g_ledger.violations.size()) + " violations:" + all};
  }
  return {true, std::to_string(g_ledger.runs) + " runs, " + std::to_string(g_ledger.records) +
                  " trace records, no violations"};
}

Verdict
probability_statistics()
{
  PureForwarderConfig cfg{0.5, 2'000, 10'000};
  Rng rng = derive_stream(1, Purpose::Strategy, NodeId{0});
  auto pkt = Packet::make_interest(piece_name("movie1", 0), 1, NodeId{0});
  std::size_t forwards = 0;
  for (int i = 0; i < 100'000; ++i) {
    auto a = pure_decide(cfg, pkt, rng);
    if (a.kind == ActionKind::ForwardInterest) {
      ++forwards;
      if (a.delay < cfg.jitter_min || a.delay > cfg.jitter_max) {
        return {false, "jitter " + std::to_string(a.delay) + " out of bounds"};
      }
    }
  }
  bool ok = forwards >= 49'000 && forwards <= 51'000;
  return {ok, std::to_string(forwards) + " forwards of 100000 (want 50000 +/- 1000)"};
}

Verdict
monotonicity()
{
  std::vector<double> means;
  std::string detail;
  for (double p : {0.25, 0.5, 1.0}) {
    auto cfg = build_five_node();
    cfg.strategy.p_forward = p;
    double total = 0;
    std::size_t n = 0, censored = 0;
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
      auto result = run_checked(cfg, seed, "sweep p=" + format_fixed(p, 2));
      for (const auto& l : result.metrics.leechers) {
        if (l.completed) {
          total += static_cast<double>(*l.completion_time_us);
        }
        else {
          total += static_cast<double>(cfg.duration);
          ++censored;
        }
        ++n;
      }
    }
    means.push_back(total / static_cast<double>(n));
    detail += (detail.empty() ? "" : ", ") + std::string("p=") + format_fixed(p, 2) + " mean " +
              format_fixed(means.back() / 1e6, 3) + " s";
    if (censored > 0) {
      detail += " (" + std::to_string(censored) + " censored)";
    }
  }
  bool ok = means[0] >= means[1] && means[1] >= means[2];
  return {ok, detail};
}

} // namespace

int
main()
{
  struct Criterion
  {
    int id;
    const char* name;
    std::function<Verdict()> check;
  };
  // 7 runs last so that it sees every other run
  std::vector<Criterion> criteria{
    {1, "five-node reproduction", five_node_reproduction},
    {2, "blocked forwarder", blocking_case},
    {3, "foreign-torrent relay", foreign_relay},
    {4, "oracle equivalence", oracle_equivalence},
    {5, "determinism", determinism},
    {6, "mobility law", mobility_law},
    {8, "probability statistics", probability_statistics},
    {9, "monotonicity sweep", monotonicity},
    {7, "forwarding invariants", forwarding_invariants},
  };

  std::map<int, std::string> lines;
  bool all = true;
  for (const auto& c : criteria) {
    Verdict v;
    try {
      v = c.check();
    }
    catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    all = all && v.pass;
    lines[c.id] = std::string(v.pass ? "PASS" : "FAIL") + " [" + std::to_string(c.id) + "] " +
                  c.name + ": " + v.detail;
  }
  for (const auto& [id, line] : lines) {
    std::cout << line << '\n';
  }
  return all ? 0 : 1;
}
