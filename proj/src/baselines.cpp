#include "offload/baselines.hpp"

#include <algorithm>
#include <stdexcept>

#include "offload/objective.hpp"

namespace offload {

GroupSolution local_computing(const GroupProblem& problem)
{
  Allocation a;
  a.offload.assign(problem.size(), 0.0);
  a.local = problem.buyer.data_size;
  return evaluate(problem, std::move(a), std::vector<double>(problem.size(), 0.0));
}

double seller_capacity(const GroupProblem& problem, std::size_t k)
{
  const auto& s = problem.sellers.at(k);
  const double per_mb = 1.0 / problem.rates[k] + problem.k_factor / s.compute_rate;
  return std::min(s.idle_stock / problem.k_factor, problem.contacts[k] / per_mb);
}

GroupSolution average_offloading(const GroupProblem& problem, double markup)
{
  if (!(markup > 0.0))
    throw std::invalid_argument("average_offloading: markup must be positive");
  const auto m = problem.size();
  if (m == 0)
    return local_computing(problem);

  const double d = problem.buyer.data_size;
  const double share = d / double(m);

  Allocation a;
  std::vector<double> prices;
  a.offload.reserve(m);
  prices.reserve(m);
  for (std::size_t k = 0; k < m; ++k) {
    a.offload.push_back(std::min(share, seller_capacity(problem, k)));
    prices.push_back((1.0 + markup) * problem.sellers[k].unit_cost);
  }

  const double payment = total_payment(a.offload, prices);
  if (payment > problem.buyer.budget) {
    const double scale = problem.buyer.budget / payment;
    for (auto& x : a.offload)
      x *= scale;
  }

  double offloaded = 0.0;
  for (double x : a.offload)
    offloaded += x;
  a.local = std::max(0.0, d - offloaded);
  return evaluate(problem, std::move(a), std::move(prices));
}

}  // namespace offload
