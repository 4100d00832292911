//! Time evolution of ladder states under a constant ladder Hamiltonian.
#pragma once

#include "etrap/ladder.hpp"

#include <map>
#include <span>
#include <string>
#include <vector>

namespace etrap
{

enum class PropagationMethod
{
  BandedStepper,  //!< fixed-step fourth-order Taylor/RK4 with step refinement
  DenseExact      //!< eigendecomposition of the dense Hermitian matrix
};

struct PropagationConfig
{
  double t_end = 20;           //!< [fs]
  double sample_interval = 0.1;  //!< [fs]
  PropagationMethod method = PropagationMethod::BandedStepper;
  double step_tolerance = 1e-9;
  double norm_drift_limit = 1e-8;
  //! Initial step is step_safety * hbar / spectral_radius_bound.
  double step_safety = 0.5;
  int max_refinements = 16;

  void validate() const;
};

//! Largest ladder dimension (2N + 1) handled by the dense path.
inline constexpr std::size_t dense_dimension_cap = 1025;
//! Largest dimension * steps accepted for one banded pass.
inline constexpr double banded_work_cap = 2e10;

/*!
 * Sideband populations sampled in time.
 *
 * populations is row-major, one row of length 2N + 1 per sample time.
 */
struct Spectrogram
{
  int n_max = 0;
  std::vector<double> times;
  std::vector<double> populations;
  std::vector<double> norm_drift;
  double photon_energy = 0;
  double detuning = 0;
  //! Final step used by the banded stepper [fs]; zero for dense runs.
  double step = 0;
  LadderState final_state;
  std::map<std::string, std::string> metadata;

  std::size_t dim() const { return 2 * static_cast<std::size_t>(n_max) + 1; }
  std::size_t samples() const { return times.size(); }
  std::span<const double> row(std::size_t sample) const;
  double population(std::size_t sample, int n) const;
};

Spectrogram propagate(const LadderHamiltonian& h, const LadderState& initial,
                      const PropagationConfig& config);

//! Amplitudes after evolving `initial` for a duration t by diagonalization.
std::vector<cplx> evolve_dense(const LadderHamiltonian& h,
                               const LadderState& initial, double t);

//! max_n |P_n^stepper(t) - P_n^dense(t)|, with the stepper run at
//! `step_tolerance`.
double dense_oracle_compare(const LadderHamiltonian& h,
                            const LadderState& initial, double t,
                            double step_tolerance = 1e-9);

struct SpreadSeries
{
  std::vector<double> times;
  std::vector<double> mean;
  std::vector<double> variance;
  //! Extreme sidebands with P_n >= threshold at each sample.
  std::vector<int> n_min;
  std::vector<int> n_max;
};

SpreadSeries centroid_and_spread(const Spectrogram& spec,
                                 double threshold = 1e-3);

}  // namespace etrap
