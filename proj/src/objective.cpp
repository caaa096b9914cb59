#include "offload/objective.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace offload {

bool FeasibilityReport::feasible() const
{
  return std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.ok; });
}

std::vector<std::string> FeasibilityReport::violations() const
{
  std::vector<std::string> out;
  for (const auto& e : entries) {
    if (e.ok)
      continue;
    std::string s(1, e.label);
    if (e.seller)
      s += "[" + std::to_string(*e.seller) + "]";
    s += "=" + std::to_string(e.magnitude);
    out.push_back(std::move(s));
  }
  return out;
}

double per_seller_time(const GroupProblem& problem, double x, std::size_t k)
{
  if (k >= problem.size())
    throw std::out_of_range("per_seller_time: seller index out of range");
  if (x == 0.0)
    return 0.0;
  return x / problem.rates[k] + problem.k_factor * x / problem.sellers[k].compute_rate;
}

double local_time(const GroupProblem& problem, double x)
{
  return problem.k_factor * x / problem.buyer.local_rate;
}

double completion_time(const GroupProblem& problem, const Allocation& allocation)
{
  double t = local_time(problem, allocation.local);
  for (std::size_t k = 0; k < allocation.offload.size(); ++k)
    t = std::max(t, per_seller_time(problem, allocation.offload[k], k));
  return t;
}

double total_payment(std::span<const double> offload, std::span<const double> prices)
{
  if (offload.size() != prices.size())
    throw std::invalid_argument("total_payment: allocation and price lengths differ");
  double sum = 0.0;
  for (std::size_t k = 0; k < offload.size(); ++k)
    sum += std::abs(prices[k] * offload[k]);
  return sum;
}

double incentive_distance(std::span<const double> prices, std::span<const double> satisfied)
{
  if (prices.size() != satisfied.size())
    throw std::invalid_argument("incentive_distance: price lengths differ");
  double sq = 0.0;
  for (std::size_t k = 0; k < prices.size(); ++k) {
    const double d = prices[k] - satisfied[k];
    sq += d * d;
  }
  return std::sqrt(sq);
}

std::vector<double> satisfied_prices(const GroupProblem& problem)
{
  std::vector<double> out;
  out.reserve(problem.size());
  for (const auto& s : problem.sellers)
    out.push_back(s.satisfied_price);
  return out;
}

double objective_value(const GroupProblem& problem, const Allocation& allocation,
                       std::span<const double> prices, const Weights& weights,
                       const ObjectiveOptions& options)
{
  const auto sat = satisfied_prices(problem);
  double time = completion_time(problem, allocation);
  double pay = total_payment(allocation.offload, prices);
  double dist = incentive_distance(prices, sat);
  if (options.normalize) {
    time /= local_time(problem, problem.buyer.data_size);
    if (problem.buyer.budget > 0.0)
      pay /= problem.buyer.budget;
    const double scale = incentive_distance(sat, std::vector<double>(sat.size(), 0.0));
    if (scale > 0.0)
      dist /= scale;
  }
  return weights.time() * time + weights.payment() * pay + weights.incentive() * dist;
}

FeasibilityReport check_feasibility(const GroupProblem& problem, const Allocation& allocation,
                                    std::span<const double> prices)
{
  const auto m = problem.size();
  if (allocation.offload.size() != m || prices.size() != m)
    throw std::invalid_argument("check_feasibility: solution dimensions do not match the group");

  constexpr double tol = feasibility_tolerance;
  FeasibilityReport report;
  auto& out = report.entries;
  out.reserve(4 * m + 3);

  for (std::size_t k = 0; k < m; ++k) {
    const double x = allocation.offload[k];
    const double p = prices[k];
    const auto& s = problem.sellers[k];

    const double idle = problem.k_factor * x - s.idle_stock;
    out.push_back({'a', k, idle, idle <= tol});

    const double contact = per_seller_time(problem, x, k) - problem.contacts[k];
    out.push_back({'b', k, contact, contact <= tol});

    const double negative = std::max(-x, -p);
    out.push_back({'e', k, negative, negative <= tol});

    // Strict: an allocated seller must be paid above its cost.
    const bool allocated = x > 0.0;
    out.push_back({'f', k, allocated ? s.unit_cost - p : 0.0, !allocated || p > s.unit_cost});
  }

  const double budget = total_payment(allocation.offload, prices) - problem.buyer.budget;
  out.push_back({'c', std::nullopt, budget, budget <= tol});

  const double mass = allocation.total() - problem.buyer.data_size;
  out.push_back({'d', std::nullopt, mass, std::abs(mass) <= tol});

  out.push_back({'e', std::nullopt, -allocation.local, -allocation.local <= tol});

  std::stable_sort(out.begin(), out.end(),
                   [](const auto& l, const auto& r) { return l.label < r.label; });
  return report;
}

double penalized_objective(const GroupProblem& problem, const Allocation& allocation,
                           std::span<const double> prices, const Weights& weights,
                           double coefficient, const ObjectiveOptions& options)
{
  if (!(coefficient > 0.0))
    throw std::invalid_argument("penalized_objective: coefficient must be positive");
  double penalty = 0.0;
  for (const auto& e : check_feasibility(problem, allocation, prices).entries) {
    if (e.ok)
      continue;
    const double v = e.label == 'd' ? std::abs(e.magnitude) : std::max(0.0, e.magnitude);
    penalty += v * v;
  }
  return objective_value(problem, allocation, prices, weights, options) + coefficient * penalty;
}

GroupSolution evaluate(const GroupProblem& problem, Allocation allocation,
                       std::vector<double> prices, const ObjectiveOptions& options)
{
  GroupSolution s;
  s.completion_time = completion_time(problem, allocation);
  s.payment = total_payment(allocation.offload, prices);
  s.objective = objective_value(problem, allocation, prices, problem.weights, options);
  const auto report = check_feasibility(problem, allocation, prices);
  s.feasible = report.feasible();
  s.violations = report.violations();
  s.allocation = std::move(allocation);
  s.prices = std::move(prices);
  return s;
}

}  // namespace offload
