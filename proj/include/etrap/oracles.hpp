//! Closed-form reference solutions for limiting cases of the ladder dynamics.
#pragma once

#include <utility>

namespace etrap
{

//! Pure-hopping ladder (no on-site energy), plane-wave start at n = 0.
struct BesselSolution
{
  double kappa_mag = 0;  //!< [eV]
  double phase = 0;      //!< phi0 [rad]; does not affect populations
};

//! P_n(t) = J_n(2 |kappa| t / hbar)^2 with t in [fs].
double bessel_population(const BesselSolution& sol, int n, double t);

//! Argument 2 |kappa| t / hbar of the Bessel populations.
double bessel_argument(const BesselSolution& sol, double t);

/*!
 * Two-level Rabi reduction of a Bragg-coupled pair.
 *
 * effective_coupling and detuning_gap in [eV]; population starts in level
 * n1 (the first of the pair).
 */
struct TwoLevelSolution
{
  double effective_coupling = 0;
  double detuning_gap = 0;
  int n1 = -1;
  int n2 = 1;

  //! Oscillation period of P_{n2}(t) [fs].
  double period() const;
  //! max_t P_{n2}(t).
  double max_transfer() const;
};

//! (P_{n1}(t), P_{n2}(t))
std::pair<double, double> pendellosung_population(const TwoLevelSolution& sol,
                                                  double t);

/*!
 * Second-order coupling kappa1 kappa2 / (E_level - E_intermediate) between
 * two degenerate levels bridged by one intermediate site.
 */
double bragg_effective_coupling(double kappa_in, double kappa_out,
                                double level_energy,
                                double intermediate_energy);

}  // namespace etrap
