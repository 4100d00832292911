#include "etrap/oracles.hpp"

#include "etrap/constants.hpp"
#include "etrap/errors.hpp"

#include <cmath>

namespace etrap
{

using constants::hbar;

double bessel_argument(const BesselSolution& sol, double t)
{
  return 2 * sol.kappa_mag * t / hbar;
}

double bessel_population(const BesselSolution& sol, int n, double t)
{
  if (t < 0)
    throw DomainError("bessel population requires t >= 0");
  const double x = bessel_argument(sol, t);
  // J_{-n}(x)^2 = J_n(x)^2
  const double j = std::cyl_bessel_j(static_cast<double>(std::abs(n)), x);
  return j * j;
}

double TwoLevelSolution::period() const
{
  const double rabi = std::sqrt(effective_coupling * effective_coupling
                                + 0.25 * detuning_gap * detuning_gap);
  return constants::pi * hbar / rabi;
}

double TwoLevelSolution::max_transfer() const
{
  const double c2 = effective_coupling * effective_coupling;
  const double rabi2 = c2 + 0.25 * detuning_gap * detuning_gap;
  return rabi2 > 0 ? c2 / rabi2 : 0.0;
}

std::pair<double, double> pendellosung_population(const TwoLevelSolution& sol,
                                                  double t)
{
  if (sol.n1 == sol.n2)
    throw DomainError("two-level pair must consist of distinct sidebands");
  const double c2 = sol.effective_coupling * sol.effective_coupling;
  const double rabi2 = c2 + 0.25 * sol.detuning_gap * sol.detuning_gap;
  if (rabi2 == 0)
    return {1.0, 0.0};
  const double s = std::sin(std::sqrt(rabi2) * t / hbar);
  const double transfer = c2 / rabi2 * s * s;
  return {1 - transfer, transfer};
}

double bragg_effective_coupling(double kappa_in, double kappa_out,
                                double level_energy,
                                double intermediate_energy)
{
  const double gap = level_energy - intermediate_energy;
  if (gap == 0)
    throw DomainError("intermediate site is degenerate with the Bragg pair");
  return kappa_in * kappa_out / gap;
}

}  // namespace etrap
