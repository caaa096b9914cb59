#include "offload/mobility.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "offload/random.hpp"

namespace offload {

double dot(Vec2 a, Vec2 b)
{
  return a.x * b.x + a.y * b.y;
}

double norm(Vec2 a)
{
  return std::hypot(a.x, a.y);
}

double region_side(const ScenarioConfig& config)
{
  const double vehicles = double(config.buyer_count) + double(config.seller_count);
  return std::sqrt(vehicles / config.density) * 1000.0;
}

namespace {

VehicleKinematics draw_vehicle(VehicleId id, std::uint64_t seed, double side, const Range& speed)
{
  Rng rng(seed);
  VehicleKinematics v;
  v.id = id;
  v.position = {side * uniform01(rng), side * uniform01(rng)};
  const double s = uniform(rng, speed);
  const bool east_west = uniform01(rng) < 0.5;
  const double sign = uniform01(rng) < 0.5 ? -1.0 : 1.0;
  v.velocity = east_west ? Vec2{sign * s, 0.0} : Vec2{0.0, sign * s};
  return v;
}

}  // namespace

std::vector<VehicleKinematics> place_vehicles(const ScenarioConfig& config)
{
  const double side = region_side(config);
  std::vector<VehicleKinematics> out;
  out.reserve(std::size_t(config.buyer_count) + config.seller_count);
  for (std::uint32_t i = 0; i < config.buyer_count; ++i)
    out.push_back(draw_vehicle(i, derive_seed(config.rng_seed, {stream::buyer_motion, i}), side,
                               config.speed_range));
  for (std::uint32_t j = 0; j < config.seller_count; ++j)
    out.push_back(draw_vehicle(config.buyer_count + j,
                               derive_seed(config.rng_seed, {stream::seller_motion, j}), side,
                               config.speed_range));
  return out;
}

std::optional<double> contact_duration(const VehicleKinematics& a, const VehicleKinematics& b,
                                       double radius, double cap)
{
  if (!(radius > 0.0))
    throw std::invalid_argument("contact_duration: radius must be positive");

  const Vec2 dp = a.position - b.position;
  const Vec2 dv = a.velocity - b.velocity;
  const double c = dot(dp, dp) - radius * radius;
  if (c > 0.0)
    return std::nullopt;

  const double qa = dot(dv, dv);
  if (qa == 0.0)
    return cap;

  // Positive root of qa t^2 + qb t + c = 0 with c <= 0, in the
  // cancellation-free form.
  const double qb = 2.0 * dot(dp, dv);
  const double disc = std::sqrt(std::max(0.0, qb * qb - 4.0 * qa * c));
  if (qb >= 0.0) {
    const double q = -0.5 * (qb + disc);
    return q == 0.0 ? 0.0 : c / q;
  }
  return 0.5 * (disc - qb) / qa;
}

std::vector<CooperativeGroup> form_groups(std::span<const Buyer> buyers,
                                          std::span<const Seller> sellers,
                                          std::span<const VehicleKinematics> kinematics,
                                          const ScenarioConfig& config)
{
  std::unordered_map<VehicleId, const VehicleKinematics*> where;
  where.reserve(kinematics.size());
  for (const auto& k : kinematics)
    where.emplace(k.id, &k);
  auto lookup = [&where](VehicleId id) {
    auto it = where.find(id);
    if (it == where.end())
      throw std::invalid_argument("form_groups: no kinematics for vehicle " + std::to_string(id));
    return it->second;
  };

  std::vector<const Seller*> ordered;
  ordered.reserve(sellers.size());
  for (const auto& s : sellers)
    ordered.push_back(&s);
  std::sort(ordered.begin(), ordered.end(),
            [](const Seller* a, const Seller* b) { return a->id < b->id; });

  std::vector<const VehicleKinematics*> seller_kin;
  seller_kin.reserve(ordered.size());
  for (const auto* s : ordered)
    seller_kin.push_back(lookup(s->id));

  std::vector<CooperativeGroup> groups;
  groups.reserve(buyers.size());
  for (const auto& buyer : buyers) {
    const auto* bk = lookup(buyer.id);
    CooperativeGroup g;
    g.buyer_id = buyer.id;
    for (std::size_t j = 0; j < ordered.size(); ++j) {
      const auto contact = contact_duration(*bk, *seller_kin[j], config.radius, config.contact_cap);
      if (!contact || !(*contact > 0.0))
        continue;
      Rng rng(derive_seed(config.rng_seed, {stream::link_rate, buyer.id, ordered[j]->id}));
      g.members.push_back({ordered[j]->id, uniform(rng, config.rate_range), *contact});
    }
    groups.push_back(std::move(g));
  }
  return groups;
}

GroupProblem make_group_problem(const CooperativeGroup& group, const Buyer& buyer,
                                std::span<const Seller> sellers, const ScenarioConfig& config)
{
  GroupProblem p;
  p.buyer = buyer;
  p.k_factor = config.k_factor;
  p.weights = config.weights;
  for (const auto& member : group.members) {
    auto it = std::lower_bound(sellers.begin(), sellers.end(), member.seller_id,
                               [](const Seller& s, VehicleId id) { return s.id < id; });
    if (it == sellers.end() || it->id != member.seller_id)
      throw std::invalid_argument("make_group_problem: unknown seller " +
                                  std::to_string(member.seller_id));
    p.sellers.push_back(*it);
    p.rates.push_back(member.rate);
    p.contacts.push_back(member.contact);
  }
  return p;
}

void to_json(nlohmann::json& j, const VehicleKinematics& v)
{
  j = {{"id", v.id},
       {"position", {v.position.x, v.position.y}},
       {"velocity", {v.velocity.x, v.velocity.y}}};
}

void from_json(const nlohmann::json& j, VehicleKinematics& v)
{
  j.at("id").get_to(v.id);
  const auto& p = j.at("position");
  const auto& u = j.at("velocity");
  v.position = {p.at(0).get<double>(), p.at(1).get<double>()};
  v.velocity = {u.at(0).get<double>(), u.at(1).get<double>()};
}

void to_json(nlohmann::json& j, const CooperativeGroup& g)
{
  auto members = nlohmann::json::array();
  for (const auto& m : g.members)
    members.push_back({{"seller_id", m.seller_id}, {"rate", m.rate}, {"contact", m.contact}});
  j = {{"buyer_id", g.buyer_id}, {"members", std::move(members)}};
}

void from_json(const nlohmann::json& j, CooperativeGroup& g)
{
  j.at("buyer_id").get_to(g.buyer_id);
  g.members.clear();
  for (const auto& m : j.at("members"))
    g.members.push_back(
        {m.at("seller_id").get<VehicleId>(), m.at("rate").get<double>(), m.at("contact").get<double>()});
}

}  // namespace offload
