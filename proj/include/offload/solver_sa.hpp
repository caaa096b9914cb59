#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "offload/domain.hpp"
#include "offload/objective.hpp"
#include "offload/random.hpp"

namespace offload {

/// Point in the joint (allocation, price) search space.
struct SearchState
{
  Allocation allocation;
  std::vector<double> prices;
};

struct StepSizes
{
  double allocation = 0.1;  // fraction of the buyer's data size
  double price = 0.1;       // standard deviation of a price move

  /// allocation = 0.1, price = 0.1 * mean satisfied price (0.1 for m = 0).
  static StepSizes defaults_for(const GroupProblem& problem);
};

enum class MoveKind { none, allocation, price };

struct Proposal
{
  SearchState state;
  MoveKind kind = MoveKind::none;
};

struct AnnealSchedule
{
  // Absent: standard deviation of the objective change over the feasible
  // ones among 100 random neighbours of the initial state.
  std::optional<double> initial_temperature;
  double cooling_ratio = 0.85;
  std::uint32_t iterations_per_temperature = 10;
  std::uint32_t max_iterations = 2000;
  std::uint32_t plateau_window = 200;
  double plateau_epsilon = 1e-3;  // 0 disables early stopping
  double step_allocation = 0.1;
  std::optional<double> step_price;
  // Steps shrink as (T / T0)^step_decay while the chain cools; 0 keeps them fixed.
  double step_decay = 0.25;

  /// Throws std::invalid_argument on an out-of-range field.
  void validate() const;
};

struct TracePoint
{
  std::uint32_t iteration = 0;
  double temperature = 0.0;
  double current_objective = 0.0;
  double best_objective = 0.0;
};

using ConvergenceTrace = std::vector<TracePoint>;

struct AnnealResult
{
  GroupSolution solution;
  ConvergenceTrace trace;
  double initial_temperature = 0.0;
};

/// Everything local, every seller offered its satisfied price.
SearchState initial_state(const GroupProblem& problem);

/// Either moves a random amount of data out of a nonempty slot into another
/// slot (sum preserved) or perturbs one price, with equal probability. Price
/// moves target sellers that hold data when there are any. Never mutates
/// `state`.
Proposal propose_neighbor(const SearchState& state, const GroupProblem& problem, Rng& rng,
                          const StepSizes& steps);

/// Nearest feasible point along simple directions: each offload is cut to
/// the seller's idle-resource and contact limits, allocated sellers are
/// priced just above cost, offloads are scaled down to fit the budget, and
/// the remainder goes local.
SearchState repair(const GroupProblem& problem, SearchState state);

/// Metropolis rule on a minimization delta. Throws std::invalid_argument
/// when temperature <= 0.
bool metropolis_accept(double delta, double temperature, Rng& rng);

/// Simulated annealing on the penalized objective with geometric cooling.
/// Every accepted state is repaired; the repaired point competes for best
/// and replaces the current state when it scores lower. Returns the best feasible state visited (the initial state is always
/// feasible for a generated scenario) together with the per-move trace.
AnnealResult anneal(const GroupProblem& problem, const Weights& weights,
                    const AnnealSchedule& schedule, double penalty_coefficient,
                    std::uint64_t seed, const ObjectiveOptions& options = {});

struct OracleGrid
{
  std::uint32_t allocation_steps = 50;  // data is split in units of D / allocation_steps
  std::uint32_t price_levels = 30;      // levels on [unit_cost, 2 * satisfied_price]
};

struct OracleResult
{
  GroupSolution solution;
  std::uint64_t evaluated = 0;
};

/// Exhaustive grid search for small groups. Unallocated sellers are priced
/// at their satisfied price; allocated ones take every grid level plus the
/// value just above cost. Throws std::invalid_argument for m > 3 or a
/// resolution below 2.
OracleResult brute_force_oracle(const GroupProblem& problem, const Weights& weights,
                                const OracleGrid& grid = {}, const ObjectiveOptions& options = {});

inline constexpr const char* trace_csv_header = "iteration,temperature,current_objective,best_objective";

void write_trace_csv(std::ostream& os, const ConvergenceTrace& trace);

}  // namespace offload
