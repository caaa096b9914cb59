#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace offload {

using VehicleId = std::uint32_t;

/// Closed interval [lo, hi] used for every sampled scenario parameter.
struct Range
{
  double lo = 0.0;
  double hi = 0.0;

  bool valid() const { return lo > 0.0 && lo <= hi; }
  bool contains(double v) const { return v >= lo && v <= hi; }
  double mid() const { return 0.5 * (lo + hi); }
};

/// A vehicle with an application to run.
///
/// data_size is in megabits, local_rate in resource blocks per second,
/// deadline in seconds, budget in currency units.
struct Buyer
{
  VehicleId id = 0;
  double data_size = 0.0;
  double local_rate = 0.0;
  double deadline = 0.0;
  double budget = 0.0;
};

/// A vehicle lending idle compute. Prices are currency per megabit of
/// assigned data.
struct Seller
{
  VehicleId id = 0;
  double compute_rate = 0.0;
  double idle_stock = 0.0;
  double unit_cost = 0.0;
  double satisfied_price = 0.0;
};

/// Objective weights, normalized to sum to one at construction.
class Weights
{
public:
  Weights() : Weights(1.0, 1.0, 1.0) {}
  /// Throws std::invalid_argument on a negative entry or a zero sum.
  Weights(double w1, double w2, double w3);

  double time() const { return w_[0]; }
  double payment() const { return w_[1]; }
  double incentive() const { return w_[2]; }

private:
  double w_[3];
};

struct ScenarioConfig
{
  std::uint32_t buyer_count = 100;
  std::uint32_t seller_count = 600;
  double density = 10.0;          // vehicles per square kilometre
  double radius = 250.0;          // metres
  double k_factor = 20.0;         // resource blocks per megabit
  double contact_cap = 120.0;     // seconds, used when relative velocity is zero
  Range rate_range{3.0, 6.0};     // Mb/s
  Range data_range{5.0, 6.0};     // Mb
  Range speed_range{10.0, 30.0};  // m/s
  Range local_rate_range{10.0, 20.0};
  Range compute_rate_range{20.0, 50.0};
  Range idle_stock_range{50.0, 150.0};
  Range unit_cost_range{1.0, 2.0};
  Range satisfied_price_range{2.0, 4.0};
  Range budget_range{30.0, 60.0};
  // deadline = factor * K * D / C_B, never below the local execution time
  Range deadline_factor_range{1.2, 1.2};
  Weights weights{};
  std::uint64_t rng_seed = 1;
};

/// One buyer together with its in-contact sellers. rates and contacts are
/// parallel to sellers.
struct GroupProblem
{
  Buyer buyer;
  std::vector<Seller> sellers;
  std::vector<double> rates;     // Mb/s
  std::vector<double> contacts;  // seconds of remaining contact
  double k_factor = 20.0;
  Weights weights{};

  std::size_t size() const { return sellers.size(); }
  /// Throws std::invalid_argument when lengths disagree or a rate or
  /// contact duration is not positive.
  void validate() const;
};

/// Workload split: one entry per seller plus the locally executed part.
struct Allocation
{
  std::vector<double> offload;
  double local = 0.0;

  double total() const;
};

struct GroupSolution
{
  Allocation allocation;
  std::vector<double> prices;
  double objective = 0.0;
  double completion_time = 0.0;
  double payment = 0.0;
  bool feasible = false;
  std::vector<std::string> violations;
};

/// Returns one message per violated invariant, each starting with the
/// offending field name. Empty means the config is valid.
std::vector<std::string> validate_scenario(const ScenarioConfig& config);

void to_json(nlohmann::json& j, const Range& r);
void from_json(const nlohmann::json& j, Range& r);
void to_json(nlohmann::json& j, const Weights& w);
void from_json(const nlohmann::json& j, Weights& w);
void to_json(nlohmann::json& j, const Buyer& b);
void from_json(const nlohmann::json& j, Buyer& b);
void to_json(nlohmann::json& j, const Seller& s);
void from_json(const nlohmann::json& j, Seller& s);
void to_json(nlohmann::json& j, const ScenarioConfig& c);
void from_json(const nlohmann::json& j, ScenarioConfig& c);

}  // namespace offload
