#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "offload/baselines.hpp"
#include "offload/domain.hpp"
#include "offload/mobility.hpp"
#include "offload/objective.hpp"
#include "offload/solver_sa.hpp"

namespace offload {

/// Invalid scenario configuration. what() lists the violated fields.
struct ConfigError : std::runtime_error
{
  using std::runtime_error::runtime_error;
};

struct GroupNotFound : std::runtime_error
{
  using std::runtime_error::runtime_error;
};

struct Scenario
{
  ScenarioConfig config;
  std::vector<Buyer> buyers;
  std::vector<Seller> sellers;  // sorted by id
  std::vector<VehicleKinematics> kinematics;
  std::vector<CooperativeGroup> groups;  // one per buyer, same order

  GroupProblem problem(std::size_t group_index) const;
};

/// Samples every buyer and seller from the configured ranges, places the
/// vehicles and forms the groups. Deadlines never fall below the local
/// execution time. Throws ConfigError if validate_scenario reports
/// anything.
Scenario generate_scenario(const ScenarioConfig& config);

void to_json(nlohmann::json& j, const Scenario& s);
void from_json(const nlohmann::json& j, Scenario& s);

void write_scenario(const std::filesystem::path& path, const Scenario& scenario);
/// Groups are recomputed from the kinematics when the file has none.
Scenario read_scenario(const std::filesystem::path& path);

enum class Algorithm { local, average, proposed };

std::string_view name(Algorithm a);
/// Throws std::invalid_argument for an unknown name.
Algorithm parse_algorithm(std::string_view s);

inline constexpr Algorithm all_algorithms[] = {Algorithm::local, Algorithm::average,
                                               Algorithm::proposed};

struct SolverSettings
{
  AnnealSchedule schedule{};
  double penalty_coefficient = 1e3;
  double markup = default_markup;
  // Annealing and the oracle run on the normalized objective by default.
  ObjectiveOptions objective{.normalize = true};
};

std::uint64_t group_seed(std::uint64_t scenario_seed, std::size_t group_index);
std::uint64_t replicate_seed(std::uint64_t base_seed, std::uint32_t replicate);

/// Every algorithm's objective is computed with settings.objective.
GroupSolution solve_group(const GroupProblem& problem, Algorithm algorithm,
                          const SolverSettings& settings, std::uint64_t seed);

struct GroupResult
{
  std::size_t group_id = 0;
  Algorithm algorithm = Algorithm::local;
  GroupProblem problem;
  GroupSolution solution;
};

/// Results ordered by group, then by the order of `algorithms`.
std::vector<GroupResult> solve_scenario(const Scenario& scenario,
                                        const std::vector<Algorithm>& algorithms,
                                        const SolverSettings& settings);

inline constexpr const char* solutions_csv_header =
    "group_id,algorithm,m,completion_s,payment,objective,feasible";

void write_solutions_csv(std::ostream& os, const std::vector<GroupResult>& results);

inline constexpr const char* feasibility_csv_header = "group_id,constraint,magnitude,ok";

/// One line per evaluated constraint of every result.
void write_feasibility_csv(std::ostream& os, const std::vector<GroupResult>& results);

struct SweepRow
{
  std::uint32_t seller_count = 0;
  Algorithm algorithm = Algorithm::local;
  double mean_completion = 0.0;
  std::optional<double> mean_knockdown_price;  // over sellers with work only
  double mean_payment = 0.0;
  double feasible_fraction = 0.0;
  std::uint32_t replicate_count = 0;

  // Diagnostics that are not part of the CSV.
  double mean_unit_cost = 0.0;            // over every seller in the scenarios
  std::uint64_t groups_with_sellers = 0;  // groups with m >= 1
  std::uint64_t allocated_sellers = 0;
  std::uint64_t incentive_violations = 0;  // allocated sellers paid <= cost
};

struct SweepResult
{
  std::vector<SweepRow> rows;  // ordered by seller_count, then algorithm

  const SweepRow* find(std::uint32_t seller_count, Algorithm a) const;
};

/// Each replicate r uses scenario seed replicate_seed(base.rng_seed, r)
/// for every seller count. Throws std::invalid_argument when
/// seller_counts or algorithms is empty or replicates is 0.
SweepResult run_sweep(const ScenarioConfig& base, const std::vector<std::uint32_t>& seller_counts,
                      const std::vector<Algorithm>& algorithms, std::uint32_t replicates,
                      const SolverSettings& settings);

inline constexpr const char* sweep_csv_header =
    "seller_count,algorithm,mean_completion_s,mean_knockdown_price,mean_payment,feasible_fraction,"
    "replicate_count";

void write_sweep_csv(std::ostream& os, const SweepResult& result);

/// Anneals one group of the scenario generated from `config` and returns
/// its trace. Without a selector the first group with at least one seller
/// is used. Throws GroupNotFound when the index is out of range, the
/// selected group is empty, or no group has a seller.
AnnealResult run_convergence(const ScenarioConfig& config, std::optional<std::size_t> group_index,
                             const SolverSettings& settings);

}  // namespace offload
