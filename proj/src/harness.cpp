#include "offload/harness.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>

#include "offload/csv.hpp"
#include "offload/random.hpp"

namespace offload {

GroupProblem Scenario::problem(std::size_t group_index) const
{
  const auto& g = groups.at(group_index);
  return make_group_problem(g, buyers.at(group_index), sellers, config);
}

Scenario generate_scenario(const ScenarioConfig& config)
{
  if (auto report = validate_scenario(config); !report.empty()) {
    std::string msg = "invalid scenario config:";
    for (const auto& r : report)
      msg += " " + r + ";";
    throw ConfigError(msg);
  }

  Scenario s;
  s.config = config;
  const double k = config.k_factor;

  s.buyers.reserve(config.buyer_count);
  for (std::uint32_t i = 0; i < config.buyer_count; ++i) {
    Rng rng(derive_seed(config.rng_seed, {stream::buyers, i}));
    Buyer b;
    b.id = i;
    b.data_size = uniform(rng, config.data_range);
    b.local_rate = uniform(rng, config.local_rate_range);
    b.budget = uniform(rng, config.budget_range);
    const double local = k * b.data_size / b.local_rate;
    b.deadline = std::max(uniform(rng, config.deadline_factor_range) * local, local);
    s.buyers.push_back(b);
  }

  s.sellers.reserve(config.seller_count);
  for (std::uint32_t j = 0; j < config.seller_count; ++j) {
    Rng rng(derive_seed(config.rng_seed, {stream::sellers, j}));
    Seller v;
    v.id = config.buyer_count + j;
    v.compute_rate = uniform(rng, config.compute_rate_range);
    v.idle_stock = uniform(rng, config.idle_stock_range);
    v.unit_cost = uniform(rng, config.unit_cost_range);
    v.satisfied_price = std::max(uniform(rng, config.satisfied_price_range), v.unit_cost);
    s.sellers.push_back(v);
  }

  s.kinematics = place_vehicles(config);
  s.groups = form_groups(s.buyers, s.sellers, s.kinematics, config);
  return s;
}

void to_json(nlohmann::json& j, const Scenario& s)
{
  j = {{"config", s.config},
       {"buyers", s.buyers},
       {"sellers", s.sellers},
       {"kinematics", s.kinematics},
       {"groups", s.groups}};
}

void from_json(const nlohmann::json& j, Scenario& s)
{
  j.at("config").get_to(s.config);
  j.at("buyers").get_to(s.buyers);
  j.at("sellers").get_to(s.sellers);
  j.at("kinematics").get_to(s.kinematics);
  std::sort(s.sellers.begin(), s.sellers.end(),
            [](const Seller& a, const Seller& b) { return a.id < b.id; });
  if (auto it = j.find("groups"); it != j.end())
    it->get_to(s.groups);
  else
    s.groups = form_groups(s.buyers, s.sellers, s.kinematics, s.config);
  if (s.groups.size() != s.buyers.size())
    throw std::invalid_argument("scenario: expected one group per buyer");
}

void write_scenario(const std::filesystem::path& path, const Scenario& scenario)
{
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error("cannot write " + path.string());
  out << nlohmann::json(scenario).dump(2) << '\n';
}

Scenario read_scenario(const std::filesystem::path& path)
{
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot read " + path.string());
  return nlohmann::json::parse(in).get<Scenario>();
}

std::string_view name(Algorithm a)
{
  switch (a) {
    case Algorithm::local: return "local";
    case Algorithm::average: return "average";
    case Algorithm::proposed: return "proposed";
  }
  return "?";
}

Algorithm parse_algorithm(std::string_view s)
{
  for (auto a : all_algorithms)
    if (name(a) == s)
      return a;
  throw std::invalid_argument("unknown algorithm '" + std::string(s) + "'");
}

std::uint64_t group_seed(std::uint64_t scenario_seed, std::size_t group_index)
{
  return derive_seed(scenario_seed, {stream::group_solver, group_index});
}

std::uint64_t replicate_seed(std::uint64_t base_seed, std::uint32_t replicate)
{
  return derive_seed(base_seed, {stream::replicate, replicate});
}

GroupSolution solve_group(const GroupProblem& problem, Algorithm algorithm,
                          const SolverSettings& settings, std::uint64_t seed)
{
  // Baselines are rescored so every algorithm reports the same objective.
  auto rescore = [&](GroupSolution s) {
    return evaluate(problem, std::move(s.allocation), std::move(s.prices), settings.objective);
  };
  switch (algorithm) {
    case Algorithm::local: return rescore(local_computing(problem));
    case Algorithm::average: return rescore(average_offloading(problem, settings.markup));
    case Algorithm::proposed:
      return anneal(problem, problem.weights, settings.schedule, settings.penalty_coefficient, seed,
                    settings.objective)
          .solution;
  }
  throw std::invalid_argument("solve_group: unknown algorithm");
}

std::vector<GroupResult> solve_scenario(const Scenario& scenario,
                                        const std::vector<Algorithm>& algorithms,
                                        const SolverSettings& settings)
{
  std::vector<GroupResult> out;
  out.reserve(scenario.groups.size() * algorithms.size());
  for (std::size_t g = 0; g < scenario.groups.size(); ++g) {
    GroupProblem problem = scenario.problem(g);
    const auto seed = group_seed(scenario.config.rng_seed, g);
    for (auto a : algorithms)
      out.push_back({g, a, problem, solve_group(problem, a, settings, seed)});
  }
  return out;
}

void write_solutions_csv(std::ostream& os, const std::vector<GroupResult>& results)
{
  os << solutions_csv_header << '\n';
  for (const auto& r : results)
    os << r.group_id << ',' << name(r.algorithm) << ',' << r.problem.size() << ','
       << csv::number(r.solution.completion_time) << ',' << csv::number(r.solution.payment) << ','
       << csv::number(r.solution.objective) << ',' << (r.solution.feasible ? 1 : 0) << '\n';
}

void write_feasibility_csv(std::ostream& os, const std::vector<GroupResult>& results)
{
  os << feasibility_csv_header << '\n';
  for (const auto& r : results) {
    const auto report =
        check_feasibility(r.problem, r.solution.allocation, r.solution.prices);
    for (const auto& e : report.entries) {
      os << r.group_id << ',' << e.label;
      if (e.seller)
        os << '[' << *e.seller << ']';
      os << ',' << csv::number(e.magnitude) << ',' << (e.ok ? 1 : 0) << '\n';
    }
  }
}

const SweepRow* SweepResult::find(std::uint32_t seller_count, Algorithm a) const
{
  for (const auto& r : rows)
    if (r.seller_count == seller_count && r.algorithm == a)
      return &r;
  return nullptr;
}

namespace {

struct Accumulator
{
  double completion = 0.0;
  double payment = 0.0;
  double price = 0.0;
  std::uint64_t priced = 0;
  std::uint64_t solutions = 0;
  std::uint64_t feasible = 0;
  std::uint64_t violations = 0;
};

}  // namespace

SweepResult run_sweep(const ScenarioConfig& base, const std::vector<std::uint32_t>& seller_counts,
                      const std::vector<Algorithm>& algorithms, std::uint32_t replicates,
                      const SolverSettings& settings)
{
  if (seller_counts.empty())
    throw std::invalid_argument("run_sweep: no seller counts");
  if (algorithms.empty())
    throw std::invalid_argument("run_sweep: no algorithms");
  if (replicates == 0)
    throw std::invalid_argument("run_sweep: replicates must be at least 1");

  SweepResult result;
  for (auto count : seller_counts) {
    std::vector<Accumulator> acc(algorithms.size());
    double cost_sum = 0.0;
    std::uint64_t cost_n = 0;
    std::uint64_t with_sellers = 0;

    for (std::uint32_t r = 0; r < replicates; ++r) {
      ScenarioConfig config = base;
      config.seller_count = count;
      config.rng_seed = replicate_seed(base.rng_seed, r);
      const Scenario scenario = generate_scenario(config);
      for (const auto& s : scenario.sellers) {
        cost_sum += s.unit_cost;
        ++cost_n;
      }

      for (const auto& gr : solve_scenario(scenario, algorithms, settings)) {
        const auto ai = std::size_t(std::find(algorithms.begin(), algorithms.end(), gr.algorithm) -
                                    algorithms.begin());
        auto& a = acc[ai];
        const auto& sol = gr.solution;
        a.completion += sol.completion_time;
        a.payment += sol.payment;
        ++a.solutions;
        if (sol.feasible)
          ++a.feasible;
        for (std::size_t k = 0; k < sol.prices.size(); ++k) {
          if (sol.allocation.offload[k] > 0.0) {
            a.price += sol.prices[k];
            ++a.priced;
            if (!(sol.prices[k] > gr.problem.sellers[k].unit_cost))
              ++a.violations;
          }
        }
        if (ai == 0 && gr.problem.size() > 0)
          ++with_sellers;
      }
    }

    for (std::size_t ai = 0; ai < algorithms.size(); ++ai) {
      const auto& a = acc[ai];
      SweepRow row;
      row.seller_count = count;
      row.algorithm = algorithms[ai];
      row.mean_completion = a.completion / double(a.solutions);
      if (a.priced > 0)
        row.mean_knockdown_price = a.price / double(a.priced);
      row.mean_payment = a.payment / double(a.solutions);
      row.feasible_fraction = double(a.feasible) / double(a.solutions);
      row.replicate_count = replicates;
      row.mean_unit_cost = cost_n ? cost_sum / double(cost_n) : 0.0;
      row.groups_with_sellers = with_sellers;
      row.allocated_sellers = a.priced;
      row.incentive_violations = a.violations;
      result.rows.push_back(row);
    }
  }
  return result;
}

void write_sweep_csv(std::ostream& os, const SweepResult& result)
{
  os << sweep_csv_header << '\n';
  for (const auto& r : result.rows)
    os << r.seller_count << ',' << name(r.algorithm) << ',' << csv::number(r.mean_completion) << ','
       << csv::number(r.mean_knockdown_price) << ',' << csv::number(r.mean_payment) << ','
       << csv::number(r.feasible_fraction) << ',' << r.replicate_count << '\n';
}

AnnealResult run_convergence(const ScenarioConfig& config, std::optional<std::size_t> group_index,
                             const SolverSettings& settings)
{
  const Scenario scenario = generate_scenario(config);
  std::size_t g = 0;
  if (group_index) {
    g = *group_index;
    if (g >= scenario.groups.size())
      throw GroupNotFound("group " + std::to_string(g) + " does not exist");
    if (scenario.groups[g].members.empty())
      throw GroupNotFound("group " + std::to_string(g) + " has no sellers");
  } else {
    auto it = std::find_if(scenario.groups.begin(), scenario.groups.end(),
                           [](const auto& grp) { return !grp.members.empty(); });
    if (it == scenario.groups.end())
      throw GroupNotFound("no group has a seller in range");
    g = std::size_t(it - scenario.groups.begin());
  }
  const GroupProblem problem = scenario.problem(g);
  return anneal(problem, problem.weights, settings.schedule, settings.penalty_coefficient,
                group_seed(config.rng_seed, g), settings.objective);
}

}  // namespace offload
