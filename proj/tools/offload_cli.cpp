// Command line front end: generate, solve, sweep, convergence.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "offload/harness.hpp"

namespace fs = std::filesystem;
using namespace offload;

namespace {

struct Options
{
  std::uint32_t buyers = 100;
  std::uint32_t sellers = 600;
  std::string seller_range;
  double density = 10.0;
  double radius = 250.0;
  double k_factor = 20.0;
  std::vector<double> weights;
  double markup = default_markup;
  std::uint32_t replicates = 3;
  std::uint64_t seed = 42;
  std::uint32_t iters = 2000;
  double alpha = 0.85;
  std::string out = ".";
  std::string scenario;
  std::vector<std::string> algorithms{"local", "average", "proposed"};
  std::int64_t group = -1;
  bool full_trace = false;
  bool raw_objective = false;
};

ScenarioConfig make_config(const Options& o)
{
  ScenarioConfig c;
  c.buyer_count = o.buyers;
  c.seller_count = o.sellers;
  c.density = o.density;
  c.radius = o.radius;
  c.k_factor = o.k_factor;
  if (!o.weights.empty())
    c.weights = Weights(o.weights.at(0), o.weights.at(1), o.weights.at(2));
  c.rng_seed = o.seed;
  return c;
}

SolverSettings make_settings(const Options& o)
{
  SolverSettings s;
  s.markup = o.markup;
  s.schedule.max_iterations = o.iters;
  s.schedule.cooling_ratio = o.alpha;
  s.objective.normalize = !o.raw_objective;
  if (o.full_trace)
    s.schedule.plateau_epsilon = 0.0;
  return s;
}

std::vector<std::uint32_t> parse_seller_range(const std::string& text, std::uint32_t fallback)
{
  if (text.empty())
    return {fallback};
  unsigned lo = 0, hi = 0, step = 0;
  char tail = 0;
  if (std::sscanf(text.c_str(), "%u:%u:%u%c", &lo, &hi, &step, &tail) != 3 || step == 0 || lo > hi)
    throw std::invalid_argument("--seller-range expects MIN:MAX:STEP, got '" + text + "'");
  std::vector<std::uint32_t> out;
  for (unsigned v = lo; v <= hi; v += step)
    out.push_back(v);
  return out;
}

std::vector<Algorithm> parse_algorithms(const std::vector<std::string>& names)
{
  std::vector<Algorithm> out;
  for (const auto& n : names)
    out.push_back(parse_algorithm(n));
  return out;
}

std::ofstream open_out(const Options& o, const char* file)
{
  fs::create_directories(o.out);
  const auto path = fs::path(o.out) / file;
  std::ofstream f(path);
  if (!f)
    throw std::runtime_error("cannot write " + path.string());
  std::cout << path.string() << '\n';
  return f;
}

ScenarioConfig config_for(const Options& o)
{
  if (o.scenario.empty())
    return make_config(o);
  return read_scenario(o.scenario).config;
}

}  // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Incentive-priced opportunistic computation offloading among vehicles"};
  app.require_subcommand(1);
  Options o;

  auto common = [&o](CLI::App* sub) {
    sub->add_option("--buyers", o.buyers, "number of buyers");
    sub->add_option("--sellers", o.sellers, "number of sellers");
    sub->add_option("--density", o.density, "vehicles per square km");
    sub->add_option("--radius", o.radius, "transmission radius in metres");
    sub->add_option("--k-factor", o.k_factor, "resource blocks per megabit");
    sub->add_option("--weights", o.weights, "objective weights w1,w2,w3")->delimiter(',')->expected(3);
    sub->add_option("--markup", o.markup, "average-offloading price markup over cost");
    sub->add_option("--seed", o.seed, "scenario seed");
    sub->add_option("--iters", o.iters, "annealing iterations");
    sub->add_option("--alpha", o.alpha, "annealing cooling ratio");
    sub->add_option("--out", o.out, "output directory");
    sub->add_option("--scenario", o.scenario, "scenario file");
    sub->add_flag("--raw-objective", o.raw_objective, "anneal on the unnormalized objective");
  };

  auto* gen = app.add_subcommand("generate", "write a scenario file");
  common(gen);
  auto* solve = app.add_subcommand("solve", "solve every group of a scenario");
  common(solve);
  solve->add_option("--algorithms", o.algorithms, "subset of local,average,proposed")->delimiter(',');
  auto* sweep = app.add_subcommand("sweep", "seller-count sweep");
  common(sweep);
  sweep->add_option("--seller-range", o.seller_range, "MIN:MAX:STEP");
  sweep->add_option("--replicates", o.replicates, "scenarios per seller count");
  sweep->add_option("--algorithms", o.algorithms, "subset of local,average,proposed")->delimiter(',');
  auto* conv = app.add_subcommand("convergence", "annealing trace for one group");
  common(conv);
  conv->add_option("--group", o.group, "group index (default: first with a seller)");
  conv->add_flag("--full-trace", o.full_trace, "disable plateau stopping");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    const SolverSettings settings = make_settings(o);
    if (*gen) {
      auto f = open_out(o, "scenario.json");
      f << nlohmann::json(generate_scenario(make_config(o))).dump(2) << '\n';
    } else if (*solve) {
      const Scenario s = o.scenario.empty() ? generate_scenario(make_config(o)) : read_scenario(o.scenario);
      const auto results = solve_scenario(s, parse_algorithms(o.algorithms), settings);
      auto f = open_out(o, "solutions.csv");
      write_solutions_csv(f, results);
      auto g = open_out(o, "feasibility.csv");
      write_feasibility_csv(g, results);
    } else if (*sweep) {
      const ScenarioConfig base = config_for(o);
      const auto result = run_sweep(base, parse_seller_range(o.seller_range, base.seller_count),
                                    parse_algorithms(o.algorithms), o.replicates, settings);
      auto f = open_out(o, "sweep.csv");
      write_sweep_csv(f, result);
    } else if (*conv) {
      std::optional<std::size_t> group;
      if (o.group >= 0)
        group = std::size_t(o.group);
      const auto r = run_convergence(config_for(o), group, settings);
      auto f = open_out(o, "trace.csv");
      write_trace_csv(f, r.trace);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
