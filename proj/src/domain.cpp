#include "offload/domain.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace offload {

Weights::Weights(double w1, double w2, double w3)
{
  if (!(w1 >= 0.0 && w2 >= 0.0 && w3 >= 0.0))
    throw std::invalid_argument("weights must be nonnegative");
  const double sum = w1 + w2 + w3;
  if (!(sum > 0.0) || !std::isfinite(sum))
    throw std::invalid_argument("weights must have a positive finite sum");
  w_[0] = w1 / sum;
  w_[1] = w2 / sum;
  w_[2] = w3 / sum;
}

void GroupProblem::validate() const
{
  const auto m = sellers.size();
  if (rates.size() != m || contacts.size() != m)
    throw std::invalid_argument("group problem: sellers, rates and contacts differ in length");
  for (std::size_t k = 0; k < m; ++k) {
    if (!(rates[k] > 0.0))
      throw std::invalid_argument("group problem: rate must be positive");
    if (!(contacts[k] > 0.0))
      throw std::invalid_argument("group problem: contact duration must be positive");
  }
  if (!(k_factor > 0.0))
    throw std::invalid_argument("group problem: k_factor must be positive");
}

double Allocation::total() const
{
  return std::accumulate(offload.begin(), offload.end(), local);
}

std::vector<std::string> validate_scenario(const ScenarioConfig& config)
{
  std::vector<std::string> report;
  auto need = [&report](bool ok, const char* field, const char* what) {
    if (!ok)
      report.push_back(std::string(field) + ": " + what);
  };
  auto need_range = [&need](const Range& r, const char* field) {
    need(r.valid(), field, "range must be non-empty with lower bound > 0");
  };

  need(config.buyer_count >= 1, "buyer_count", "must be at least 1");
  need(config.seller_count >= 1, "seller_count", "must be at least 1");
  need(config.density > 0.0, "density", "must be positive");
  need(config.radius > 0.0, "radius", "must be positive");
  need(config.k_factor > 0.0, "k_factor", "must be positive");
  need(config.contact_cap > 0.0, "contact_cap", "must be positive");
  need_range(config.rate_range, "rate_range");
  need_range(config.data_range, "data_range");
  need_range(config.speed_range, "speed_range");
  need_range(config.local_rate_range, "local_rate_range");
  need_range(config.compute_rate_range, "compute_rate_range");
  need_range(config.idle_stock_range, "idle_stock_range");
  need_range(config.unit_cost_range, "unit_cost_range");
  need_range(config.satisfied_price_range, "satisfied_price_range");
  need_range(config.budget_range, "budget_range");
  need_range(config.deadline_factor_range, "deadline_factor_range");
  return report;
}

// JSON mapping. Field names follow the struct members.

void to_json(nlohmann::json& j, const Range& r)
{
  j = nlohmann::json::array({r.lo, r.hi});
}

void from_json(const nlohmann::json& j, Range& r)
{
  if (!j.is_array() || j.size() != 2)
    throw std::invalid_argument("range must be a two-element array");
  r.lo = j.at(0).get<double>();
  r.hi = j.at(1).get<double>();
}

void to_json(nlohmann::json& j, const Weights& w)
{
  j = nlohmann::json::array({w.time(), w.payment(), w.incentive()});
}

void from_json(const nlohmann::json& j, Weights& w)
{
  if (!j.is_array() || j.size() != 3)
    throw std::invalid_argument("weights must be a three-element array");
  w = Weights(j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<double>());
}

void to_json(nlohmann::json& j, const Buyer& b)
{
  j = {{"id", b.id},
       {"data_size", b.data_size},
       {"local_rate", b.local_rate},
       {"deadline", b.deadline},
       {"budget", b.budget}};
}

void from_json(const nlohmann::json& j, Buyer& b)
{
  j.at("id").get_to(b.id);
  j.at("data_size").get_to(b.data_size);
  j.at("local_rate").get_to(b.local_rate);
  j.at("deadline").get_to(b.deadline);
  j.at("budget").get_to(b.budget);
}

void to_json(nlohmann::json& j, const Seller& s)
{
  j = {{"id", s.id},
       {"compute_rate", s.compute_rate},
       {"idle_stock", s.idle_stock},
       {"unit_cost", s.unit_cost},
       {"satisfied_price", s.satisfied_price}};
}

void from_json(const nlohmann::json& j, Seller& s)
{
  j.at("id").get_to(s.id);
  j.at("compute_rate").get_to(s.compute_rate);
  j.at("idle_stock").get_to(s.idle_stock);
  j.at("unit_cost").get_to(s.unit_cost);
  j.at("satisfied_price").get_to(s.satisfied_price);
}

void to_json(nlohmann::json& j, const ScenarioConfig& c)
{
  j = {{"buyer_count", c.buyer_count},
       {"seller_count", c.seller_count},
       {"density", c.density},
       {"radius", c.radius},
       {"k_factor", c.k_factor},
       {"contact_cap", c.contact_cap},
       {"rate_range", c.rate_range},
       {"data_range", c.data_range},
       {"speed_range", c.speed_range},
       {"local_rate_range", c.local_rate_range},
       {"compute_rate_range", c.compute_rate_range},
       {"idle_stock_range", c.idle_stock_range},
       {"unit_cost_range", c.unit_cost_range},
       {"satisfied_price_range", c.satisfied_price_range},
       {"budget_range", c.budget_range},
       {"deadline_factor_range", c.deadline_factor_range},
       {"weights", c.weights},
       {"rng_seed", c.rng_seed}};
}

void from_json(const nlohmann::json& j, ScenarioConfig& c)
{
  // Missing keys keep their defaults so hand-written configs can be partial.
  auto opt = [&j](const char* key, auto& field) {
    if (auto it = j.find(key); it != j.end())
      it->get_to(field);
  };
  opt("buyer_count", c.buyer_count);
  opt("seller_count", c.seller_count);
  opt("density", c.density);
  opt("radius", c.radius);
  opt("k_factor", c.k_factor);
  opt("contact_cap", c.contact_cap);
  opt("rate_range", c.rate_range);
  opt("data_range", c.data_range);
  opt("speed_range", c.speed_range);
  opt("local_rate_range", c.local_rate_range);
  opt("compute_rate_range", c.compute_rate_range);
  opt("idle_stock_range", c.idle_stock_range);
  opt("unit_cost_range", c.unit_cost_range);
  opt("satisfied_price_range", c.satisfied_price_range);
  opt("budget_range", c.budget_range);
  opt("deadline_factor_range", c.deadline_factor_range);
  opt("weights", c.weights);
  opt("rng_seed", c.rng_seed);
}

}  // namespace offload
