#include "reference.hpp"

#include "etrap/constants.hpp"
#include "etrap/errors.hpp"
#include "etrap/oracles.hpp"

#include <doctest.h>

using namespace etrap;
using doctest::Approx;

namespace
{

// time at which 2 |kappa| t / hbar = x for |kappa| = 1 eV
double time_for(double x) { return x * ref::hbar_ev_fs / 2; }

}  // namespace

TEST_CASE("reference Bessel recurrence reproduces tabulated values")
{
  CHECK(ref::bessel_j(0, 1.0) == Approx(0.7651976865579666).epsilon(1e-13));
  CHECK(ref::bessel_j(1, 1.0) == Approx(0.4400505857449335).epsilon(1e-13));
  CHECK(ref::bessel_j(5, 10.0) == Approx(-0.2340615281867936).epsilon(1e-12));
}

TEST_CASE("Bessel populations match the independent recurrence")
{
  const BesselSolution sol{1.0, 0.3};
  for (double x : {0.1, 1.0, 2.5, 7.0, 13.0, 20.0, 35.0})
    for (int n = -40; n <= 40; ++n)
    {
      const double j = ref::bessel_j(n, x);
      CHECK(std::abs(bessel_population(sol, n, time_for(x)) - j * j) < 1e-13);
    }
}

TEST_CASE("Bessel populations at t = 0 and under n -> -n")
{
  const BesselSolution sol{0.8, 0};
  CHECK(bessel_population(sol, 0, 0) == 1.0);
  CHECK(bessel_population(sol, 3, 0) == 0.0);
  for (int n = 1; n < 10; ++n)
    CHECK(bessel_population(sol, n, 2.0) == bessel_population(sol, -n, 2.0));
}

TEST_CASE("first zero of J0 empties the initial sideband")
{
  const BesselSolution sol{1.0, 0};
  CHECK(bessel_population(sol, 0, time_for(2.404825557695773)) < 1e-8);
  CHECK(bessel_argument(sol, time_for(2.0)) == Approx(2.0));
}

TEST_CASE("Bessel sum rule up to x = 50")
{
  const BesselSolution sol{1.0, 0};
  for (double x = 1; x <= 50; x += 7)
  {
    double sum = 0;
    const int cut = static_cast<int>(std::ceil(4 * x)) + 20;
    for (int n = -cut; n <= cut; ++n)
      sum += bessel_population(sol, n, time_for(x));
    CHECK(sum <= 1 + 1e-12);
    INFO("x = " << x << " sum - 1 = " << sum - 1);
    CHECK(sum >= 1 - 1e-10);
  }
}

TEST_CASE("resonant two-level system transfers fully at pi hbar / 2 Omega")
{
  TwoLevelSolution sol;
  sol.effective_coupling = 0.01;
  const double t = constants::pi * ref::hbar_ev_fs / (2 * 0.01);
  const auto [p1, p2] = pendellosung_population(sol, t);
  CHECK(p2 == Approx(1.0).epsilon(1e-12));
  CHECK(p1 == Approx(0.0).epsilon(1e-12));
  CHECK(sol.period() == Approx(2 * t));
  const auto [q1, q2] = pendellosung_population(sol, 0);
  CHECK(q1 == 1.0);
  CHECK(q2 == 0.0);
}

TEST_CASE("detuned two-level amplitude bound")
{
  TwoLevelSolution sol;
  sol.effective_coupling = 0.01;
  sol.detuning_gap = 0.03;
  const double bound = 1e-4 / (1e-4 + 0.25 * 9e-4);
  CHECK(sol.max_transfer() == Approx(bound));
  double best = 0;
  for (int k = 0; k <= 20000; ++k)
    best = std::max(best, pendellosung_population(sol, k * sol.period() / 20000).second);
  CHECK(best == Approx(bound).epsilon(1e-8));
}

TEST_CASE("identical two-level indices are rejected")
{
  TwoLevelSolution sol;
  sol.n1 = sol.n2 = 1;
  CHECK_THROWS_AS(pendellosung_population(sol, 1.0), DomainError);
}

TEST_CASE("second-order Bragg coupling")
{
  CHECK(bragg_effective_coupling(0.1, 0.1, 1.0, 0.0) == Approx(0.01));
  CHECK_THROWS_AS(bragg_effective_coupling(0.1, 0.1, 1.0, 1.0), DomainError);
}
