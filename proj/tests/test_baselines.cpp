#include <doctest.h>

#include "offload/baselines.hpp"
#include "offload/harness.hpp"
#include "offload/objective.hpp"

using namespace offload;

namespace {

// Sellers with 1 s/Mb total time each; contacts and idle stock ample.
GroupProblem even_group(double d, std::size_t m)
{
  GroupProblem p;
  p.k_factor = 20.0;
  p.buyer = {0, d, 20.0, 10.0, 1e3};
  for (std::size_t k = 0; k < m; ++k) {
    p.sellers.push_back({VehicleId(k + 1), 40.0, 1e3, 1.0 + 0.1 * double(k), 3.0});
    p.rates.push_back(2.0);
    p.contacts.push_back(100.0);
  }
  return p;
}

}  // namespace

TEST_CASE("local computing")
{
  const auto p = even_group(5.0, 3);
  const auto s = local_computing(p);
  CHECK(s.completion_time == doctest::Approx(5.0));
  CHECK(s.payment == 0.0);
  CHECK(s.feasible);
  CHECK(s.prices == std::vector<double>(3, 0.0));
  CHECK(local_computing(even_group(5.0, 0)).completion_time == s.completion_time);
}

TEST_CASE("average offloading splits evenly")
{
  const auto p = even_group(6.0, 2);
  const auto s = average_offloading(p, 0.05);
  CHECK(s.allocation.offload == std::vector<double>{3.0, 3.0});
  CHECK(s.allocation.local == 0.0);
  CHECK(s.prices[0] == doctest::Approx(1.05));
  CHECK(s.prices[1] == doctest::Approx(1.155));
  CHECK(s.feasible);
}

TEST_CASE("capped share leaves the residual local")
{
  auto p = even_group(6.0, 2);
  p.sellers[0].idle_stock = 20.0;  // 1 Mb at K = 20
  CHECK(seller_capacity(p, 0) == doctest::Approx(1.0));
  const auto s = average_offloading(p);
  CHECK(s.allocation.offload[0] == doctest::Approx(1.0));
  CHECK(s.allocation.offload[1] == doctest::Approx(3.0));
  CHECK(s.allocation.local == doctest::Approx(2.0));
  CHECK(check_feasibility(p, s.allocation, s.prices).feasible());
}

TEST_CASE("contact limited capacity")
{
  auto p = even_group(6.0, 1);
  p.contacts[0] = 2.5;  // 1 s per Mb
  CHECK(seller_capacity(p, 0) == doctest::Approx(2.5));
}

TEST_CASE("empty group degenerates to local")
{
  const auto p = even_group(5.0, 0);
  const auto a = average_offloading(p);
  const auto l = local_computing(p);
  CHECK(a.allocation.local == l.allocation.local);
  CHECK(a.completion_time == l.completion_time);
}

TEST_CASE("budget overrun scales shares down")
{
  auto p = even_group(6.0, 2);
  p.buyer.budget = 2.0;
  const auto s = average_offloading(p);
  CHECK(s.payment <= p.buyer.budget + feasibility_tolerance);
  CHECK(s.allocation.offload[0] == doctest::Approx(s.allocation.offload[1]));
  CHECK(s.allocation.total() == doctest::Approx(6.0));
  CHECK(s.feasible);
}

TEST_CASE("markup must be positive")
{
  CHECK_THROWS_AS(average_offloading(even_group(5.0, 2), 0.0), std::invalid_argument);
}

TEST_CASE("adding equally fast sellers never slows average offloading")
{
  double last = local_computing(even_group(6.0, 0)).completion_time;
  for (std::size_t m = 1; m <= 12; ++m) {
    const double t = average_offloading(even_group(6.0, m)).completion_time;
    CHECK(t <= last + 1e-12);
    last = t;
  }
}

TEST_CASE("baselines are feasible on generated groups")
{
  ScenarioConfig c;
  c.buyer_count = 100;
  c.seller_count = 900;
  c.budget_range = {2.0, 10.0};  // tight enough to trigger scaling
  const auto s = generate_scenario(c);
  for (std::size_t g = 0; g < s.groups.size(); ++g) {
    const auto p = s.problem(g);
    const auto l = local_computing(p);
    const auto a = average_offloading(p);
    CHECK(l.feasible);
    CHECK(a.feasible);
    CHECK(a.payment <= p.buyer.budget + feasibility_tolerance);
    CHECK(check_feasibility(p, a.allocation, a.prices).feasible());
  }
}
