#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "offload/domain.hpp"

namespace offload {

/// Absolute slack allowed on every constraint, in its native unit.
inline constexpr double feasibility_tolerance = 1e-9;

/// One evaluated constraint. `magnitude` is the signed amount by which the
/// left side exceeds the bound (<= 0 means satisfied), except for 'd'
/// where it is the signed mass mismatch and for 'f' where it is
/// unit_cost - price for an allocated seller.
struct ConstraintStatus
{
  char label = 'a';
  std::optional<std::size_t> seller;
  double magnitude = 0.0;
  bool ok = true;
};

struct FeasibilityReport
{
  std::vector<ConstraintStatus> entries;

  bool feasible() const;
  /// Human readable "label[k]=magnitude" strings for the failed entries.
  std::vector<std::string> violations() const;
};

struct ObjectiveOptions
{
  // Divide each term by its all-local scale (local time, budget, norm of
  // satisfied prices) before weighting.
  bool normalize = false;
};

/// Upload plus remote execution time for x megabits sent to seller k.
/// Throws std::out_of_range for a bad index.
double per_seller_time(const GroupProblem& problem, double x, std::size_t k);

double local_time(const GroupProblem& problem, double x);

/// Makespan over all sellers and the local slot.
double completion_time(const GroupProblem& problem, const Allocation& allocation);

/// Sum of price times assigned data. Throws std::invalid_argument on a
/// length mismatch.
double total_payment(std::span<const double> offload, std::span<const double> prices);

/// Euclidean distance between awarded and satisfied prices.
double incentive_distance(std::span<const double> prices, std::span<const double> satisfied);

std::vector<double> satisfied_prices(const GroupProblem& problem);

double objective_value(const GroupProblem& problem, const Allocation& allocation,
                       std::span<const double> prices, const Weights& weights,
                       const ObjectiveOptions& options = {});

FeasibilityReport check_feasibility(const GroupProblem& problem, const Allocation& allocation,
                                    std::span<const double> prices);

/// objective_value plus coefficient times the sum of squared magnitudes of
/// the failed constraints. Throws std::invalid_argument unless
/// coefficient > 0.
double penalized_objective(const GroupProblem& problem, const Allocation& allocation,
                           std::span<const double> prices, const Weights& weights,
                           double coefficient, const ObjectiveOptions& options = {});

/// Fills every derived field of a GroupSolution using problem.weights.
GroupSolution evaluate(const GroupProblem& problem, Allocation allocation,
                       std::vector<double> prices, const ObjectiveOptions& options = {});

}  // namespace offload
