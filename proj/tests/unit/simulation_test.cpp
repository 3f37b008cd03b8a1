#include "ntsim/oracle.hpp"
#include "ntsim/simulation.hpp"
#include "ntsim/sweep.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

namespace ntsim {
namespace {

namespace fs = std::filesystem;

fs::path
scratch(const std::string& leaf)
{
  auto dir = fs::temp_directory_path() / ("ntsim_unit_" + std::to_string(::getpid())) / leaf;
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

ScenarioConfig
line(NodeKind middle, double p)
{
  ScenarioConfig cfg;
  cfg.torrents = {{"movie1", 8, 256}};
  cfg.nodes = {
    {NodeId{0}, NodeKind::Seeder, "movie1", Position{50, 150}, MobilityKind::Static},
    {NodeId{1}, middle, std::nullopt, Position{100, 150}, MobilityKind::Static},
    {NodeId{2}, NodeKind::Leecher, "movie1", Position{150, 150}, MobilityKind::Static},
  };
  cfg.strategy.p_forward = p;
  cfg.duration = 30 * kSecond;
  return cfg;
}

TEST(Simulation, FiveNodeCompletes)
{
  auto result = run_scenario(build_five_node(), 1);
  ASSERT_EQ(result.metrics.leechers.size(), 2u);
  for (auto& l : result.metrics.leechers) {
    EXPECT_TRUE(l.completed) << to_index(l.node);
    EXPECT_LT(*l.completion_time_us, 120 * kSecond);
  }
  EXPECT_EQ(result.metrics.pieces_delivered, 64u);
  EXPECT_GE(result.metrics.overhead_ratio, 1.0);
  EXPECT_EQ(result.report.final_time, 120 * kSecond);
}

TEST(Simulation, ZeroDuration)
{
  auto cfg = build_five_node();
  cfg.duration = 0;
  auto result = run_scenario(cfg, 1);
  EXPECT_EQ(result.metrics.total_tx, 0u);
  EXPECT_EQ(result.metrics.pieces_delivered, 0u);
  EXPECT_EQ(result.metrics.overhead_ratio, 0.0);
  for (auto& l : result.metrics.leechers) {
    EXPECT_FALSE(l.completed);
  }
}

TEST(Simulation, Deterministic)
{
  auto cfg = build_random_field(8, 5);
  cfg.duration = 60 * kSecond;
  auto a = run_scenario(cfg, 9);
  auto b = run_scenario(cfg, 9);
  EXPECT_EQ(a.report, b.report);
  EXPECT_EQ(a.trace, b.trace);
  EXPECT_EQ(a.positions, b.positions);
  EXPECT_EQ(a.metrics, b.metrics);
  auto c = run_scenario(cfg, 10);
  EXPECT_NE(a.positions, c.positions);
}

TEST(Simulation, StaticNodesStayPut)
{
  auto sim = Simulation(build_five_node(), 3);
  sim.run();
  for (auto& s : sim.positions()) {
    EXPECT_EQ(s.position, *build_five_node().find_node(s.node)->initial_position);
  }
  EXPECT_EQ(sim.positions().size(), 5u * 121);
}

TEST(Simulation, LossAndCollisionsAreTraced)
{
  auto cfg = build_five_node();
  cfg.radio.loss_prob = 0.3;
  cfg.duration = 20 * kSecond;
  auto lossy = run_scenario(cfg, 1);
  std::size_t losses = 0;
  for (auto& r : lossy.trace) {
    losses += r.event == code::kLoss ? 1 : 0;
  }
  EXPECT_GT(losses, 0u);

  cfg.radio.loss_prob = 0;
  cfg.collision_mode = true;
  auto crowded = run_scenario(cfg, 1);
  std::size_t collisions = 0;
  for (auto& r : crowded.trace) {
    collisions += r.event == code::kCollision ? 1 : 0;
  }
  EXPECT_GT(collisions, 0u);
}

TEST(TraceCsv, HeaderAndRecords)
{
  auto dir = scratch("csv");
  write_trace_csv({}, dir / "empty.csv");
  EXPECT_EQ(slurp(dir / "empty.csv"), "time_us,node,event,name,detail\n");

  std::vector<TraceRecord> one{{5, NodeId{2}, "PIECE_RX", "/ntorrent/m/data/1", "have=1"}};
  write_trace_csv(one, dir / "one.csv");
  EXPECT_EQ(slurp(dir / "one.csv"),
            "time_us,node,event,name,detail\n5,2,PIECE_RX,/ntorrent/m/data/1,have=1\n");

  std::vector<TraceRecord> tricky{{1, NodeId{0}, "X", "/a,b", "say \"hi\""}};
  write_trace_csv(tricky, dir / "tricky.csv");
  EXPECT_EQ(read_trace_csv(dir / "tricky.csv"), tricky);
  EXPECT_THROW(write_trace_csv(one, dir / "missing" / "x.csv"), IoError);
  EXPECT_THROW(read_trace_csv(dir / "nope.csv"), IoError);
}

TEST(TraceCsv, MetricsRecomputeFromFile)
{
  auto dir = scratch("recompute");
  auto cfg = build_five_node();
  auto result = run_scenario(cfg, 4);
  write_run_outputs(result, dir);
  auto reread = read_trace_csv(dir / "trace.csv");
  EXPECT_EQ(reread, result.trace);
  EXPECT_EQ(summarize(cfg, reread), result.metrics);
  EXPECT_NE(slurp(dir / "metrics.csv").find("global,,pieces_delivered,64\n"), std::string::npos);
  EXPECT_EQ(slurp(dir / "positions.csv").substr(0, 31), "time_us,node,x,y,heading,speed\n");
}

TEST(TraceCsv, DetailValue)
{
  EXPECT_EQ(detail_value("nonce=12 hops=3", "hops"), "3");
  EXPECT_EQ(detail_value("nonce=12 hops=3", "nonce"), "12");
  EXPECT_EQ(detail_value("nonce=12 hops=3", "non"), std::nullopt);
}

TEST(WriteOutputs, UnwritableDirectory)
{
  auto dir = scratch("unwritable");
  std::ofstream(dir / "file") << "x";
  EXPECT_THROW(write_run_outputs(run_scenario(line(NodeKind::PureForwarder, 1), 1), dir / "file" / "run"),
               IoError);
}

TEST(Oracle, Lines)
{
  EXPECT_TRUE(reachability_oracle(line(NodeKind::PureForwarder, 1.0)).at(NodeId{2}));
  EXPECT_FALSE(reachability_oracle(line(NodeKind::PureForwarder, 0.0)).at(NodeId{2}));

  auto peer_middle = line(NodeKind::Leecher, 0.0);
  peer_middle.torrents.push_back({"movie2", 8, 256});
  peer_middle.nodes[1].torrent = "movie2";
  auto verdict = reachability_oracle(peer_middle);
  EXPECT_TRUE(verdict.at(NodeId{2}));
  EXPECT_FALSE(verdict.at(NodeId{1}));  // no movie2 seeder at all
}

TEST(Oracle, Preconditions)
{
  auto cfg = line(NodeKind::PureForwarder, 0.5);
  EXPECT_THROW(reachability_oracle(cfg), OracleUnsupported);
  cfg = line(NodeKind::PureForwarder, 1.0);
  cfg.radio.loss_prob = 0.1;
  EXPECT_THROW(reachability_oracle(cfg), OracleUnsupported);
  cfg = line(NodeKind::PureForwarder, 1.0);
  cfg.nodes[0].mobility = MobilityKind::RandomWalk;
  EXPECT_THROW(reachability_oracle(cfg), OracleUnsupported);
  cfg = line(NodeKind::PureForwarder, 1.0);
  cfg.collision_mode = true;
  EXPECT_THROW(reachability_oracle(cfg), OracleUnsupported);
}

TEST(Oracle, AgreesOnSmallLines)
{
  for (double p : {0.0, 1.0}) {
    auto cfg = line(NodeKind::PureForwarder, p);
    auto result = run_scenario(cfg, 2);
    EXPECT_EQ(result.metrics.leechers[0].completed, reachability_oracle(cfg).at(NodeId{2}));
  }
}

// Leecher 2 hears the movie1 seeder only through leecher 1, which finishes
// movie2 quickly. Peers do not relay beacons, so once 1 falls silent, 2 has
// nothing to answer with its bitmap.
TEST(Simulation, KeepSeedingAvoidsRelayStarvation)
{
  ScenarioConfig cfg;
  cfg.torrents = {{"movie1", 32, 1024}, {"movie2", 32, 1024}};
  cfg.nodes = {
    {NodeId{0}, NodeKind::Seeder, "movie1", Position{50, 150}, MobilityKind::Static},
    {NodeId{1}, NodeKind::Leecher, "movie2", Position{100, 150}, MobilityKind::Static},
    {NodeId{2}, NodeKind::Leecher, "movie1", Position{150, 150}, MobilityKind::Static},
    {NodeId{3}, NodeKind::Seeder, "movie2", Position{100, 100}, MobilityKind::Static},
  };
  ASSERT_TRUE(reachability_oracle(cfg).at(NodeId{2}));

  std::size_t starved = 0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    cfg.app.keep_seeding = true;
    EXPECT_TRUE(run_scenario(cfg, seed).metrics.leechers[1].completed) << seed;
    cfg.app.keep_seeding = false;
    starved += run_scenario(cfg, seed).metrics.leechers[1].completed ? 0 : 1;
  }
  EXPECT_GT(starved, 0u);
}

TEST(Sweep, Rows)
{
  std::vector<double> ps{1.0};
  std::vector<std::uint64_t> seeds{1};
  auto rows = sweep(build_five_node(), ps, seeds);
  ASSERT_EQ(rows.size(), 2u);
  for (auto& r : rows) {
    EXPECT_TRUE(r.completed);
    EXPECT_EQ(r.p, 1.0);
    EXPECT_EQ(r.seed, 1u);
  }

  std::vector<double> zero{0.0};
  std::vector<std::uint64_t> two{1, 2};
  rows = sweep(line(NodeKind::PureForwarder, 1.0), zero, two);
  ASSERT_EQ(rows.size(), 2u);
  for (auto& r : rows) {
    EXPECT_FALSE(r.completed);
    EXPECT_FALSE(r.completion_time_us);
  }

  EXPECT_THROW(sweep(build_five_node(), std::vector<double>{}, seeds), std::invalid_argument);

  auto dir = scratch("sweep");
  write_sweep_csv(rows, dir / "sweep.csv");
  EXPECT_EQ(slurp(dir / "sweep.csv"),
            "p,seed,leecher,torrent,completed,completion_time_us\n"
            "0.0000,1,2,movie1,0,\n0.0000,2,2,movie1,0,\n");
}

} // namespace
} // namespace ntsim
