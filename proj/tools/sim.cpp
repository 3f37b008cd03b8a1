// sim: command-line front end for the nTorrent ad hoc simulator.

#include "ntsim/oracle.hpp"
#include "ntsim/simulation.hpp"
#include "ntsim/sweep.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <iostream>

namespace {

using namespace ntsim;

constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

class BadList : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

template<typename T>
std::vector<T>
parse_list(const std::string& text, const char* what)
{
  std::vector<T> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find(',', start);
    if (end == std::string::npos) {
      end = text.size();
    }
    const char* first = text.data() + start;
    const char* last = text.data() + end;
    T value{};
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || first == last) {
      throw BadList(std::string("bad ") + what + " list: '" + text + "'");
    }
    out.push_back(value);
    start = end + 1;
  }
  return out;
}

void
report(const RunResult& result, const std::filesystem::path& out)
{
  std::cout << "events_dispatched=" << result.report.events_dispatched
            << " final_time_us=" << result.report.final_time << '\n';
  for (const auto& l : result.metrics.leechers) {
    std::cout << "leecher " << to_index(l.node) << ' ' << l.torrent << ' ';
    if (l.completed) {
      std::cout << "completed at " << *l.completion_time_us << " us\n";
    }
    else {
      std::cout << "incomplete\n";
    }
  }
  std::cout << "total_tx=" << result.metrics.total_tx
            << " pieces_delivered=" << result.metrics.pieces_delivered
            << " overhead_ratio=" << format_fixed(result.metrics.overhead_ratio) << '\n';
  std::cout << "outputs in " << out.string() << '\n';
}

int
run_and_write(const ScenarioConfig& cfg, std::uint64_t seed, const std::string& out)
{
  auto result = run_scenario(cfg, seed);
  write_run_outputs(result, out);
  report(result, out);
  return 0;
}

} // namespace

int
main(int argc, char** argv)
{
  CLI::App app{"Discrete-event simulator for nTorrent over wireless ad hoc NDN"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string out_dir;
  std::uint64_t seed = 1;
  double p = 1.0;
  std::size_t n_nodes = 0;
  std::string p_list;
  std::string seed_list;

  auto* run = app.add_subcommand("run", "Run a scenario file");
  run->add_option("--scenario", scenario_path, "Scenario JSON")->required();
  run->add_option("--seed", seed, "Master seed");
  run->add_option("--out", out_dir, "Output directory")->required();

  auto* five = app.add_subcommand("five-node", "Five-node line with two torrents");
  five->add_option("--p", p, "Pure forwarder probability")->check(CLI::Range(0.0, 1.0));
  five->add_option("--seed", seed, "Master seed");
  five->add_option("--out", out_dir, "Output directory")->required();

  auto* field = app.add_subcommand("random-field", "Random mobile field");
  field->add_option("--nodes", n_nodes, "Node count (>= 5)")->required();
  field->add_option("--seed", seed, "Master seed (also places nodes)");
  field->add_option("--out", out_dir, "Output directory")->required();

  auto* sw = app.add_subcommand("sweep", "Completion times over p values and seeds");
  sw->add_option("--scenario", scenario_path, "Scenario JSON")->required();
  sw->add_option("--p", p_list, "Comma-separated p values")->required();
  sw->add_option("--seeds", seed_list, "Comma-separated seeds")->required();
  sw->add_option("--out", out_dir, "Output directory")->required();

  auto* oracle = app.add_subcommand("oracle", "Reachability verdict per leecher");
  oracle->add_option("--scenario", scenario_path, "Scenario JSON")->required();

  try {
    app.parse(argc, argv);
  }
  catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    if (*run) {
      return run_and_write(load_scenario(scenario_path), seed, out_dir);
    }
    if (*five) {
      auto cfg = build_five_node();
      cfg.strategy.p_forward = p;
      return run_and_write(cfg, seed, out_dir);
    }
    if (*field) {
      return run_and_write(build_random_field(n_nodes, seed), seed, out_dir);
    }
    if (*sw) {
      auto cfg = load_scenario(scenario_path);
      auto ps = parse_list<double>(p_list, "p");
      auto seeds = parse_list<std::uint64_t>(seed_list, "seed");
      auto rows = sweep(cfg, ps, seeds);
      std::error_code ec;
      std::filesystem::create_directories(out_dir, ec);
      if (ec) {
        throw IoError("cannot create output directory " + out_dir + ": " + ec.message());
      }
      write_sweep_csv(rows, std::filesystem::path(out_dir) / "sweep.csv");
      std::cout << rows.size() << " rows written to " << out_dir << "/sweep.csv\n";
      return 0;
    }
    if (*oracle) {
      auto cfg = load_scenario(scenario_path);
      std::cout << "leecher,torrent,reachable\n";
      for (const auto& [id, ok] : reachability_oracle(cfg)) {
        std::cout << to_index(id) << ',' << *cfg.find_node(id)->torrent << ',' << (ok ? 1 : 0)
                  << '\n';
      }
      return 0;
    }
  }
  catch (const ParseError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
  catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kExitIo;
  }
  catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kExitIo;
  }
  catch (const std::invalid_argument& e) {
    // ValidationError, TooFewNodes, OracleUnsupported and bad lists
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
  return 0;
}
