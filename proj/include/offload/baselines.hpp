#pragma once

#include "offload/domain.hpp"

namespace offload {

inline constexpr double default_markup = 0.05;

/// Runs the whole application on the buyer; all prices are zero.
GroupSolution local_computing(const GroupProblem& problem);

/// Largest amount seller k can take without breaking its idle-resource or
/// contact-duration constraint.
double seller_capacity(const GroupProblem& problem, std::size_t k);

/// Even split over the group's sellers, each share capped by
/// seller_capacity, remainder kept local. Every seller is offered
/// (1 + markup) * unit_cost. If that overruns the budget, the offloaded
/// shares are scaled down together and the freed data goes local.
/// Throws std::invalid_argument unless markup > 0.
GroupSolution average_offloading(const GroupProblem& problem, double markup = default_markup);

}  // namespace offload
