#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "offload/harness.hpp"
#include "offload/solver_sa.hpp"

using namespace offload;

namespace {

GroupProblem two_sellers()
{
  GroupProblem p;
  p.buyer = {0, 5.0, 15.0, 8.0, 40.0};
  p.sellers = {{1, 40.0, 100.0, 1.2, 2.5}, {2, 30.0, 80.0, 1.6, 3.5}};
  p.rates = {4.0, 5.0};
  p.contacts = {20.0, 6.0};
  return p;
}

GroupProblem no_sellers()
{
  GroupProblem p;
  p.buyer = {0, 5.0, 20.0, 6.0, 30.0};
  return p;
}

std::vector<GroupProblem> generated_groups(std::size_t min_m, std::size_t max_m, std::size_t count)
{
  std::vector<GroupProblem> out;
  for (std::uint64_t seed = 1; out.size() < count; ++seed) {
    ScenarioConfig c;
    c.rng_seed = seed;
    const auto s = generate_scenario(c);
    for (std::size_t g = 0; g < s.groups.size() && out.size() < count; ++g) {
      auto p = s.problem(g);
      if (p.size() >= min_m && p.size() <= max_m)
        out.push_back(std::move(p));
    }
  }
  return out;
}

}  // namespace

TEST_CASE("initial state")
{
  const auto p = two_sellers();
  const auto s = initial_state(p);
  CHECK(s.allocation.offload == std::vector<double>{0.0, 0.0});
  CHECK(s.allocation.local == 5.0);
  CHECK(s.prices == std::vector<double>{2.5, 3.5});

  const auto e = initial_state(no_sellers());
  CHECK(e.allocation.offload.empty());
  CHECK(e.allocation.local == 5.0);
  CHECK(e.prices.empty());

  for (const auto& g : generated_groups(0, 50, 200)) {
    const auto i = initial_state(g);
    CHECK(check_feasibility(g, i.allocation, i.prices).feasible());
  }
}

TEST_CASE("schedule validation")
{
  AnnealSchedule s;
  CHECK_NOTHROW(s.validate());
  s.cooling_ratio = 1.0;
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  s = {};
  s.initial_temperature = 0.0;
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  s = {};
  s.max_iterations = 0;
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  s = {};
  s.plateau_epsilon = -1.0;
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
}

TEST_CASE("empty group proposals are the identity")
{
  const auto p = no_sellers();
  Rng rng(1);
  const auto s = initial_state(p);
  for (int i = 0; i < 100; ++i) {
    const auto n = propose_neighbor(s, p, rng, StepSizes::defaults_for(p));
    CHECK(n.kind == MoveKind::none);
    CHECK(n.state.allocation.local == s.allocation.local);
  }
}

TEST_CASE("proposals conserve mass and stay nonnegative")
{
  const auto p = two_sellers();
  const auto steps = StepSizes::defaults_for(p);
  CHECK(steps.price == doctest::Approx(0.3));
  Rng rng(2);
  auto s = initial_state(p);
  for (int i = 0; i < 20000; ++i) {
    const auto before = s;
    auto n = propose_neighbor(s, p, rng, steps);
    CHECK(s.allocation.local == before.allocation.local);
    CHECK(std::abs(n.state.allocation.total() - p.buyer.data_size) <= 1e-9 * p.buyer.data_size);
    CHECK(n.state.allocation.local >= 0.0);
    for (std::size_t k = 0; k < p.size(); ++k) {
      CHECK(n.state.allocation.offload[k] >= 0.0);
      CHECK(n.state.prices[k] >= 0.0);
    }
    s = std::move(n.state);
  }
}

TEST_CASE("move kinds are drawn with equal probability")
{
  const auto p = two_sellers();
  Rng rng(3);
  const auto s = initial_state(p);
  int allocation = 0;
  for (int i = 0; i < 10000; ++i)
    allocation += propose_neighbor(s, p, rng, StepSizes::defaults_for(p)).kind == MoveKind::allocation;
  CHECK(std::abs(allocation / 1e4 - 0.5) <= 0.02);
}

TEST_CASE("metropolis rule")
{
  Rng rng(4);
  CHECK(metropolis_accept(-1.0, 0.3, rng));
  CHECK(metropolis_accept(0.0, 0.3, rng));
  CHECK_THROWS_AS(metropolis_accept(1.0, 0.0, rng), std::invalid_argument);

  const double t = 2.0;
  int half = 0, tiny = 0;
  for (int i = 0; i < 10000; ++i) {
    half += metropolis_accept(t * std::numbers::ln2, t, rng);
    tiny += metropolis_accept(1e6 * t, t, rng);
  }
  CHECK(std::abs(half / 1e4 - 0.5) <= 0.02);
  CHECK(tiny / 1e4 < 1e-3);
}

TEST_CASE("metropolis chain on two states matches Boltzmann weights")
{
  // States 0 and 1 with energies 0 and T ln 3; every proposal flips.
  const double t = 0.8, e1 = t * std::log(3.0);
  const double p1 = std::exp(-e1 / t) / (1.0 + std::exp(-e1 / t));
  Rng rng(5);
  int state = 0;
  long in_one = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const double delta = state == 0 ? e1 : -e1;
    if (metropolis_accept(delta, t, rng))
      state = 1 - state;
    in_one += state;
  }
  const double sigma = std::sqrt(p1 * (1.0 - p1) / n);
  CHECK(std::abs(double(in_one) / n - p1) <= 3.0 * sigma);
}

TEST_CASE("repair yields feasible states")
{
  Rng rng(6);
  for (const auto& p : generated_groups(1, 8, 100)) {
    auto s = initial_state(p);
    for (int i = 0; i < 50; ++i) {
      s = propose_neighbor(s, p, rng, {0.4, 1.0}).state;
      const auto r = repair(p, s);
      CHECK(check_feasibility(p, r.allocation, r.prices).feasible());
    }
  }
}

TEST_CASE("anneal on an empty group returns the local answer")
{
  const auto p = no_sellers();
  const auto r = anneal(p, p.weights, {}, 1e3, 9);
  CHECK(r.solution.feasible);
  CHECK(r.solution.allocation.local == 5.0);
  CHECK(r.solution.objective == doctest::Approx(p.weights.time() * 20.0 * 5.0 / 20.0));
}

TEST_CASE("anneal contracts")
{
  const ObjectiveOptions norm{.normalize = true};
  for (const auto& p : generated_groups(1, 10, 20)) {
    const auto r = anneal(p, p.weights, {}, 1e3, 77, norm);
    REQUIRE_FALSE(r.trace.empty());
    CHECK(r.trace.size() <= 2000);
    CHECK(r.initial_temperature > 0.0);
    CHECK(r.solution.feasible);
    const auto init = initial_state(p);
    CHECK(r.solution.objective <= objective_value(p, init.allocation, init.prices, p.weights, norm));
    for (std::size_t i = 1; i < r.trace.size(); ++i) {
      CHECK(r.trace[i].iteration == r.trace[i - 1].iteration + 1);
      CHECK(r.trace[i].best_objective <= r.trace[i - 1].best_objective);
      CHECK(r.trace[i].temperature <= r.trace[i - 1].temperature);
    }
    CHECK(r.solution.objective == doctest::Approx(r.trace.back().best_objective).epsilon(1e-12));
  }
}

TEST_CASE("anneal is deterministic per seed")
{
  const auto p = two_sellers();
  const auto a = anneal(p, p.weights, {}, 1e3, 123);
  const auto b = anneal(p, p.weights, {}, 1e3, 123);
  REQUIRE(a.trace.size() == b.trace.size());
  for (std::size_t i = 0; i < a.trace.size(); ++i) {
    CHECK(a.trace[i].current_objective == b.trace[i].current_objective);
    CHECK(a.trace[i].best_objective == b.trace[i].best_objective);
  }
  CHECK(a.solution.allocation.offload == b.solution.allocation.offload);
  CHECK(a.solution.prices == b.solution.prices);
}

TEST_CASE("fixed temperature and disabled plateau run every iteration")
{
  const auto p = two_sellers();
  AnnealSchedule s;
  s.initial_temperature = 0.5;
  s.plateau_epsilon = 0.0;
  s.max_iterations = 300;
  const auto r = anneal(p, p.weights, s, 1e3, 1);
  REQUIRE(r.trace.size() == 300);
  CHECK(r.trace[0].temperature == 0.5);
  CHECK(r.trace[10].temperature == doctest::Approx(0.5 * s.cooling_ratio));
  CHECK_THROWS_AS(anneal(p, p.weights, s, 0.0, 1), std::invalid_argument);

  std::ostringstream os;
  write_trace_csv(os, r.trace);
  std::string line;
  std::istringstream in(os.str());
  std::getline(in, line);
  CHECK(line == trace_csv_header);
  int rows = 0;
  while (std::getline(in, line))
    ++rows;
  CHECK(rows == 300);
}

TEST_CASE("oracle on an empty group")
{
  const auto r = brute_force_oracle(no_sellers(), Weights{});
  CHECK(r.evaluated == 1);
  CHECK(r.solution.allocation.local == 5.0);
}

TEST_CASE("oracle enumerates the whole grid")
{
  auto p = two_sellers();
  // Allocated sellers try every level plus the point just above cost;
  // unallocated ones stay at their satisfied price.
  auto expected = [](std::uint32_t n, std::uint32_t levels, std::size_t m) {
    std::uint64_t total = 0;
    const std::uint64_t per = levels + 1;
    for (std::uint32_t a = 0; a <= n; ++a)
      for (std::uint32_t b = 0; b <= (m > 1 ? n - a : 0); ++b)
        total += (a > 0 ? per : 1) * (b > 0 ? per : 1);
    return total;
  };
  CHECK(brute_force_oracle(p, Weights{}, {3, 4}).evaluated == expected(3, 4, 2));
  CHECK(brute_force_oracle(p, Weights{}, {10, 5}).evaluated == expected(10, 5, 2));

  p.sellers.pop_back();
  p.rates.pop_back();
  p.contacts.pop_back();
  CHECK(brute_force_oracle(p, Weights{}, {2, 2}).evaluated == 7);
  CHECK(expected(2, 2, 1) == 7);

  CHECK_THROWS_AS(brute_force_oracle(p, Weights{}, {1, 5}), std::invalid_argument);
  CHECK_THROWS_AS(brute_force_oracle(p, Weights{}, {5, 1}), std::invalid_argument);
}

TEST_CASE("oracle rejects more than three sellers")
{
  const auto big = generated_groups(4, 40, 1).front();
  CHECK_THROWS_AS(brute_force_oracle(big, Weights{}), std::invalid_argument);
}

TEST_CASE("oracle finds the time-balancing split")
{
  GroupProblem p;
  p.k_factor = 20.0;
  p.buyer = {0, 6.0, 12.0, 20.0, 1e6};
  p.sellers = {{1, 200.0, 1e6, 1.0, 2.0}};
  p.rates = {5.0};
  p.contacts = {1e6};
  const double k = p.k_factor, d = p.buyer.data_size, cb = p.buyer.local_rate;
  const double x = (k * d / cb) / (1.0 / p.rates[0] + k / p.sellers[0].compute_rate + k / cb);
  const OracleGrid grid{50, 5};
  const auto r = brute_force_oracle(p, Weights(1, 0, 0), grid);
  CHECK(r.solution.feasible);
  CHECK(std::abs(r.solution.allocation.offload[0] - x) <= d / grid.allocation_steps);
}

TEST_CASE("anneal is never far above the oracle on small groups")
{
  const ObjectiveOptions norm{.normalize = true};
  const SolverSettings settings;
  std::uint64_t seed = 0;
  for (const auto& p : generated_groups(1, 2, 10)) {
    const auto o = brute_force_oracle(p, p.weights, {30, 15}, norm).solution;
    const auto a = anneal(p, p.weights, settings.schedule, settings.penalty_coefficient, ++seed, norm);
    CHECK(o.feasible);
    CHECK(a.solution.feasible);
    CHECK(a.solution.objective <= 1.05 * o.objective);
  }
}
