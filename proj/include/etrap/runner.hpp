//! Config-driven simulation runs and parameter sweeps.
#pragma once

#include "etrap/config.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace etrap
{

struct SimulationResult
{
  //! Input config with the ladder size that was actually used filled in.
  RunConfig config;
  ElectronParams electron;
  FieldParams field;
  CouplingSet couplings;
  Spectrogram spectrogram;
};

LadderState make_initial_state(const RunConfig& config, int n_max);

//! config.n_max when set, otherwise adaptive truncation over t_end.
int resolve_ladder_size(const RunConfig& config);

SimulationResult run_simulation(const RunConfig& config);

//! Analysis summary of a run as a JSON document.
std::string report_json(const SimulationResult& result);

enum class SweepAxis
{
  Energy,       //!< electron.energy [eV]
  Amplitude,    //!< field.amplitude [V / nm]
  Phase,        //!< field.phase [rad]
  PhotonEnergy  //!< field.photon_energy [eV]
};

enum class Observable
{
  TrapWidth,      //!< [eV]
  RevivalPeriod,  //!< [fs]
  Rho
};

SweepAxis sweep_axis_from_name(std::string_view name);
Observable observable_from_name(std::string_view name);
std::string_view axis_column(SweepAxis axis);
std::string_view observable_column(Observable observable);

//! Copy of `base` with the swept parameter set to `value`.
RunConfig with_parameter(const RunConfig& base, SweepAxis axis, double value);

struct SweepRow
{
  std::size_t index = 0;
  double parameter = 0;
  std::optional<double> value;
  std::optional<int> n_min;
  std::optional<int> n_max;
  //! "category: message" for a failed point, empty otherwise.
  std::string error;
};

struct SweepTable
{
  SweepAxis axis = SweepAxis::Energy;
  Observable observable = Observable::TrapWidth;
  std::vector<SweepRow> rows;
};

//! Thread count from ETRAP_THREADS, else the hardware concurrency.
unsigned sweep_threads();

/*!
 * Evaluates the observable at every grid point, concurrently when threads
 * > 1. Rows are ordered by grid index. A failed point is recorded in its
 * row; NumericalError is thrown only when every point fails.
 */
SweepTable sweep(const RunConfig& base, SweepAxis axis,
                 const std::vector<double>& grid, Observable observable,
                 unsigned threads = 0);

std::string sweep_csv(const SweepTable& table);

}  // namespace etrap
