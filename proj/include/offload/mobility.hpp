#pragma once

#include <optional>
#include <span>
#include <vector>

#include <json.hpp>

#include "offload/domain.hpp"

namespace offload {

struct Vec2
{
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend bool operator==(Vec2, Vec2) = default;
};

double dot(Vec2 a, Vec2 b);
double norm(Vec2 a);

/// Snapshot position (metres) and velocity (m/s) of one vehicle. Velocity
/// always lies along one road axis.
struct VehicleKinematics
{
  VehicleId id = 0;
  Vec2 position;
  Vec2 velocity;

  friend bool operator==(const VehicleKinematics&, const VehicleKinematics&) = default;
};

struct GroupMember
{
  VehicleId seller_id = 0;
  double rate = 0.0;     // Mb/s
  double contact = 0.0;  // seconds
};

struct CooperativeGroup
{
  VehicleId buyer_id = 0;
  std::vector<GroupMember> members;  // sorted by seller_id
};

/// Side of the square region in metres, sqrt((B+S)/density) km.
double region_side(const ScenarioConfig& config);

/// Places B+S vehicles uniformly over the region, buyers first (ids
/// 0..B-1) then sellers (ids B..B+S-1). Each vehicle draws from its own
/// seeded stream, so vehicle i has the same normalized placement for any
/// total count.
std::vector<VehicleKinematics> place_vehicles(const ScenarioConfig& config);

/// Remaining time the pair stays within `radius` under constant velocity,
/// measured from the snapshot. Absent when the pair is out of range now.
/// Parallel motion (equal velocities) yields `cap`. Throws
/// std::invalid_argument when radius <= 0.
std::optional<double> contact_duration(const VehicleKinematics& a, const VehicleKinematics& b,
                                       double radius, double cap = 120.0);

/// One group per buyer, in buyer order. A seller joins every group whose
/// buyer it can currently reach with a positive remaining contact time.
/// Throws std::invalid_argument if a buyer or seller has no kinematics.
std::vector<CooperativeGroup> form_groups(std::span<const Buyer> buyers,
                                          std::span<const Seller> sellers,
                                          std::span<const VehicleKinematics> kinematics,
                                          const ScenarioConfig& config);

/// Assembles the solver input for one group. `sellers` must be sorted by id.
GroupProblem make_group_problem(const CooperativeGroup& group, const Buyer& buyer,
                                std::span<const Seller> sellers, const ScenarioConfig& config);

void to_json(nlohmann::json& j, const VehicleKinematics& v);
void from_json(const nlohmann::json& j, VehicleKinematics& v);
void to_json(nlohmann::json& j, const CooperativeGroup& g);
void from_json(const nlohmann::json& j, CooperativeGroup& g);

}  // namespace offload
