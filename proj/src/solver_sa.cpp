#include "offload/solver_sa.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "offload/csv.hpp"

namespace offload {

StepSizes StepSizes::defaults_for(const GroupProblem& problem)
{
  StepSizes s;
  if (problem.size() > 0) {
    double sum = 0.0;
    for (const auto& seller : problem.sellers)
      sum += seller.satisfied_price;
    s.price = 0.1 * sum / double(problem.size());
  }
  return s;
}

void AnnealSchedule::validate() const
{
  if (initial_temperature && !(*initial_temperature > 0.0))
    throw std::invalid_argument("anneal schedule: initial temperature must be positive");
  if (!(cooling_ratio > 0.0 && cooling_ratio < 1.0))
    throw std::invalid_argument("anneal schedule: cooling ratio must lie in (0, 1)");
  if (iterations_per_temperature < 1 || max_iterations < 1 || plateau_window < 1)
    throw std::invalid_argument("anneal schedule: iteration counts must be at least 1");
  if (!(plateau_epsilon >= 0.0))
    throw std::invalid_argument("anneal schedule: plateau epsilon must be nonnegative");
  if (!(step_allocation > 0.0))
    throw std::invalid_argument("anneal schedule: allocation step must be positive");
  if (step_price && !(*step_price > 0.0))
    throw std::invalid_argument("anneal schedule: price step must be positive");
  if (!(step_decay >= 0.0))
    throw std::invalid_argument("anneal schedule: step decay must be nonnegative");
}

SearchState initial_state(const GroupProblem& problem)
{
  SearchState s;
  s.allocation.offload.assign(problem.size(), 0.0);
  s.allocation.local = problem.buyer.data_size;
  s.prices = satisfied_prices(problem);
  return s;
}

namespace {

// Uniform pick among the indices in [0, n) accepted by `keep`; uniform over
// all of them when none is.
template <class Keep>
std::size_t pick_index(std::size_t n, Keep keep, Rng& rng)
{
  std::vector<std::size_t> pool;
  for (std::size_t i = 0; i < n; ++i)
    if (keep(i))
      pool.push_back(i);
  if (pool.empty())
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
  return pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
}

}  // namespace

Proposal propose_neighbor(const SearchState& state, const GroupProblem& problem, Rng& rng,
                          const StepSizes& steps)
{
  const auto m = state.prices.size();
  Proposal out{state, MoveKind::none};
  if (m == 0)
    return out;

  const auto& x = state.allocation.offload;
  if (uniform01(rng) < 0.5) {
    // Slot m is the local slot. Data leaves a nonempty slot.
    auto amount = [&](std::size_t i) { return i == m ? state.allocation.local : x[i]; };
    const std::size_t from = pick_index(m + 1, [&](std::size_t i) { return amount(i) > 0.0; }, rng);
    std::size_t to = std::uniform_int_distribution<std::size_t>(0, m - 1)(rng);
    if (to >= from)
      ++to;
    auto slot = [&out, m](std::size_t i) -> double& {
      return i == m ? out.state.allocation.local : out.state.allocation.offload[i];
    };
    const double cap = steps.allocation * problem.buyer.data_size;
    const double delta = std::min(std::uniform_real_distribution<double>(0.0, cap)(rng), slot(from));
    if (delta == slot(from))
      slot(from) = 0.0;
    else
      slot(from) -= delta;
    slot(to) += delta;
    out.kind = MoveKind::allocation;
  } else {
    // Prices of sellers with work are the ones that matter.
    const std::size_t k = pick_index(m, [&](std::size_t i) { return x[i] > 0.0; }, rng);
    const double step = std::normal_distribution<double>(0.0, steps.price)(rng);
    out.state.prices[k] = std::max(0.0, out.state.prices[k] + step);
    out.kind = MoveKind::price;
  }
  return out;
}

SearchState repair(const GroupProblem& problem, SearchState state)
{
  auto& x = state.allocation.offload;
  auto& p = state.prices;
  const double d = problem.buyer.data_size;
  for (std::size_t k = 0; k < x.size(); ++k) {
    x[k] = std::max(0.0, x[k]);
    p[k] = std::max(0.0, p[k]);
    const auto& s = problem.sellers[k];
    const double per_mb = 1.0 / problem.rates[k] + problem.k_factor / s.compute_rate;
    const double cap = std::min(s.idle_stock / problem.k_factor, problem.contacts[k] / per_mb);
    x[k] = std::min(x[k], cap);
    if (x[k] > 0.0 && !(p[k] > s.unit_cost))
      p[k] = s.unit_cost + 1e-9;
  }
  const double pay = total_payment(x, p);
  if (pay > problem.buyer.budget) {
    const double scale = problem.buyer.budget / pay;
    for (auto& v : x)
      v *= scale;
  }
  // Anything taken off the sellers runs locally.
  double offloaded = 0.0;
  for (double v : x)
    offloaded += v;
  if (offloaded > d) {
    for (auto& v : x)
      v *= d / offloaded;
    offloaded = d;
  }
  state.allocation.local = d - offloaded;
  return state;
}

bool metropolis_accept(double delta, double temperature, Rng& rng)
{
  if (!(temperature > 0.0))
    throw std::invalid_argument("metropolis_accept: temperature must be positive");
  if (delta <= 0.0)
    return true;
  return uniform01(rng) < std::exp(-delta / temperature);
}

namespace {

double adaptive_temperature(const GroupProblem& problem, const SearchState& start,
                            const StepSizes& steps, const Weights& weights,
                            const ObjectiveOptions& options, Rng& rng)
{
  // Spread of the unpenalized objective change over feasible neighbours.
  constexpr int samples = 100;
  const double base = objective_value(problem, start.allocation, start.prices, weights, options);
  double sum = 0.0;
  double sq = 0.0;
  int n = 0;
  for (int i = 0; i < samples; ++i) {
    const SearchState next = propose_neighbor(start, problem, rng, steps).state;
    if (!check_feasibility(problem, next.allocation, next.prices).feasible())
      continue;
    const double d = objective_value(problem, next.allocation, next.prices, weights, options) - base;
    sum += d;
    sq += d * d;
    ++n;
  }
  if (n < 2)
    return 1.0;
  const double mean = sum / n;
  const double sd = std::sqrt(std::max(0.0, sq / n - mean * mean));
  return (sd > 0.0 && std::isfinite(sd)) ? sd : 1.0;
}

}  // namespace

AnnealResult anneal(const GroupProblem& problem, const Weights& weights,
                    const AnnealSchedule& schedule, double penalty_coefficient,
                    std::uint64_t seed, const ObjectiveOptions& options)
{
  problem.validate();
  schedule.validate();
  if (!(penalty_coefficient > 0.0))
    throw std::invalid_argument("anneal: penalty coefficient must be positive");

  Rng rng(seed);
  StepSizes steps = StepSizes::defaults_for(problem);
  steps.allocation = schedule.step_allocation;
  if (schedule.step_price)
    steps.price = *schedule.step_price;

  auto penalized = [&](const SearchState& s) {
    return penalized_objective(problem, s.allocation, s.prices, weights, penalty_coefficient, options);
  };

  SearchState current = initial_state(problem);
  double current_value = penalized(current);

  SearchState best = current;
  double best_value = std::numeric_limits<double>::infinity();
  if (check_feasibility(problem, current.allocation, current.prices).feasible())
    best_value = objective_value(problem, current.allocation, current.prices, weights, options);

  AnnealResult result;
  double temperature = schedule.initial_temperature
                           ? *schedule.initial_temperature
                           : adaptive_temperature(problem, current, steps, weights, options, rng);
  result.initial_temperature = temperature;

  // best_history[i] is the best value after i moves.
  std::vector<double> best_history{best_value};
  best_history.reserve(schedule.max_iterations + 1);
  result.trace.reserve(schedule.max_iterations);

  const double t0 = temperature;
  for (std::uint32_t it = 1; it <= schedule.max_iterations; ++it) {
    StepSizes scaled = steps;
    const double shrink = std::pow(temperature / t0, schedule.step_decay);
    scaled.allocation *= shrink;
    scaled.price *= shrink;
    Proposal next = propose_neighbor(current, problem, rng, scaled);
    const double next_value = penalized(next.state);
    if (metropolis_accept(next_value - current_value, temperature, rng)) {
      current = std::move(next.state);
      current_value = next_value;
      SearchState candidate = repair(problem, current);
      if (check_feasibility(problem, candidate.allocation, candidate.prices).feasible()) {
        const double v = objective_value(problem, candidate.allocation, candidate.prices, weights, options);
        if (v < current_value) {
          current = candidate;
          current_value = v;
        }
        if (v < best_value) {
          best_value = v;
          best = std::move(candidate);
        }
      }
    }
    result.trace.push_back({it, temperature, current_value, best_value});
    best_history.push_back(best_value);

    if (it % schedule.iterations_per_temperature == 0)
      temperature *= schedule.cooling_ratio;

    if (schedule.plateau_epsilon > 0.0 && it >= schedule.plateau_window) {
      const double before = best_history[it - schedule.plateau_window];
      if (std::isfinite(before) && before - best_value < schedule.plateau_epsilon * std::abs(before))
        break;
    }
  }

  GroupProblem weighted = problem;
  weighted.weights = weights;
  result.solution = evaluate(weighted, std::move(best.allocation), std::move(best.prices), options);
  return result;
}

namespace {

// Calls visit(counts) for every composition of `total` into `parts`
// nonnegative integers.
void for_each_composition(std::uint32_t total, std::size_t parts,
                          const std::function<void(const std::vector<std::uint32_t>&)>& visit)
{
  std::vector<std::uint32_t> counts(parts, 0);
  std::function<void(std::size_t, std::uint32_t)> rec = [&](std::size_t i, std::uint32_t left) {
    if (i + 1 == parts) {
      counts[i] = left;
      visit(counts);
      return;
    }
    for (std::uint32_t c = 0; c <= left; ++c) {
      counts[i] = c;
      rec(i + 1, left - c);
    }
  };
  rec(0, total);
}

}  // namespace

OracleResult brute_force_oracle(const GroupProblem& problem, const Weights& weights,
                                const OracleGrid& grid, const ObjectiveOptions& options)
{
  problem.validate();
  const auto m = problem.size();
  if (m > 3)
    throw std::invalid_argument("brute_force_oracle: at most 3 sellers supported");
  if (grid.allocation_steps < 2 || grid.price_levels < 2)
    throw std::invalid_argument("brute_force_oracle: grid resolutions must be at least 2");

  constexpr double just_above = 1e-6;
  const double d = problem.buyer.data_size;
  const double unit = d / grid.allocation_steps;

  // Candidate prices for an allocated seller.
  std::vector<std::vector<double>> levels(m);
  for (std::size_t k = 0; k < m; ++k) {
    const auto& s = problem.sellers[k];
    const double lo = s.unit_cost;
    const double hi = 2.0 * s.satisfied_price;
    for (std::uint32_t j = 0; j < grid.price_levels; ++j)
      levels[k].push_back(lo + (hi - lo) * j / (grid.price_levels - 1));
    levels[k].push_back(lo + just_above);
  }

  OracleResult out;
  double best_value = std::numeric_limits<double>::infinity();
  SearchState best;
  SearchState trial;
  trial.allocation.offload.assign(m, 0.0);
  trial.prices.assign(m, 0.0);

  std::vector<std::size_t> pick(m, 0);
  for_each_composition(grid.allocation_steps, m + 1, [&](const std::vector<std::uint32_t>& counts) {
    double assigned = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
      trial.allocation.offload[k] = counts[k] * unit;
      assigned += trial.allocation.offload[k];
    }
    trial.allocation.local = counts[m] == 0 ? 0.0 : d - assigned;

    // Odometer over the price choices of the allocated sellers.
    std::fill(pick.begin(), pick.end(), 0);
    for (;;) {
      for (std::size_t k = 0; k < m; ++k)
        trial.prices[k] = counts[k] == 0 ? problem.sellers[k].satisfied_price : levels[k][pick[k]];
      ++out.evaluated;
      if (check_feasibility(problem, trial.allocation, trial.prices).feasible()) {
        const double v = objective_value(problem, trial.allocation, trial.prices, weights, options);
        if (v < best_value) {
          best_value = v;
          best = trial;
        }
      }
      std::size_t k = 0;
      for (; k < m; ++k) {
        if (counts[k] == 0)
          continue;
        if (++pick[k] < levels[k].size())
          break;
        pick[k] = 0;
      }
      if (k == m)
        break;
    }
  });

  if (!std::isfinite(best_value))
    best = initial_state(problem);
  GroupProblem weighted = problem;
  weighted.weights = weights;
  out.solution = evaluate(weighted, std::move(best.allocation), std::move(best.prices), options);
  return out;
}

void write_trace_csv(std::ostream& os, const ConvergenceTrace& trace)
{
  os << trace_csv_header << '\n';
  for (const auto& p : trace)
    os << p.iteration << ',' << csv::number(p.temperature) << ',' << csv::number(p.current_objective)
       << ',' << csv::number(p.best_objective) << '\n';
}

}  // namespace offload
