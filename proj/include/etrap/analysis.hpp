//! Observables extracted from spectrograms: trap width, absorption/emission
//! asymmetry, collapse timing, regime labels, Bloch envelopes and fringes.
#pragma once

#include "etrap/errors.hpp"
#include "etrap/physics.hpp"
#include "etrap/propagator.hpp"

#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace etrap
{

//! Population above which a sideband counts as populated.
inline constexpr double default_population_threshold = 1e-3;

struct TimeWindow
{
  double start = 0;  //!< [fs]
  double end = 0;    //!< [fs]
};

struct TrapReport
{
  double width = 0;  //!< (n_max - n_min) hbar omega [eV]
  int n_min = 0;
  int n_max = 0;
  double threshold = 0;
  TimeWindow window;
  //! Nothing reached the threshold; width is 0 at the global maximum.
  bool degenerate = false;
};

//! Envelope max_t P_n(t) over the window (full run when omitted).
TrapReport trap_width(const Spectrogram& spec,
                      double threshold = default_population_threshold,
                      std::optional<TimeWindow> window = std::nullopt);

struct AsymmetryReport
{
  //! |n+_peak| - |n-_peak|; absent when one side is below the floor.
  std::optional<int> delta_n;
  int absorption_peak = 0;
  int emission_peak = 0;
  double time = 0;
};

//! Evaluated at the sample nearest to `time`.
AsymmetryReport asymmetry(const Spectrogram& spec, double time,
                          double floor = default_population_threshold);

struct Extremum
{
  double time = 0;
  double value = 0;
  std::size_t index = 0;
};

/*!
 * Local extrema of a uniformly sampled series whose prominence exceeds
 * `relative_prominence` times the series range, refined by a parabola
 * through the neighbouring samples.
 */
std::vector<Extremum> find_minima(std::span<const double> times,
                                  std::span<const double> values,
                                  double relative_prominence = 0.1);
std::vector<Extremum> find_maxima(std::span<const double> times,
                                  std::span<const double> values,
                                  double relative_prominence = 0.1);

struct CollapseTiming
{
  //! First maximum of the spread: the expansion halts here.
  std::optional<double> expansion_halt;
  //! Successive minima of the spread (collapses).
  std::vector<double> collapses;
};

CollapseTiming collapse_timing(const Spectrogram& spec);

//! Mean spacing of successive spread minima [fs]; throws InsufficientSpan
//! when fewer than two collapses are present.
double revival_period(const Spectrogram& spec);

struct InsufficientSpan : Error
{
  explicit InsufficientSpan(const std::string& what)
    : Error(ErrorCategory::Numerical, what) {}
};

//! Period of the centroid oscillation, from alternating extrema of <n>(t).
std::optional<double> trap_oscillation_period(const Spectrogram& spec);

enum class Regime
{
  RamanNath,
  Intermediate,
  Bragg
};

std::string_view regime_name(Regime regime);

struct RegimeLabel
{
  double rho = 0;
  Regime label = Regime::Intermediate;
};

RegimeLabel classify_rho(double rho);
//! Throws DomainError for a field-free coupling set (rho absent).
RegimeLabel classify_regime(const CouplingSet& cs);

struct BlochReport
{
  //! Input had zero detuning; no Bloch oscillation is expected.
  bool phase_matched = false;
  std::optional<double> period_absorption;
  std::optional<double> period_emission;
  int max_n_absorption = 0;
  int max_n_emission = 0;
};

/*!
 * Per-side envelopes: the first moments sum_{n>0} n P_n and
 * sum_{n<0} |n| P_n. Periods are mean spacings of their maxima; the
 * excursions are the outermost sidebands reaching `threshold`.
 */
BlochReport bloch_oscillation_report(
    const Spectrogram& spec, double threshold = default_population_threshold);

struct FringeOptions
{
  double threshold = default_population_threshold;
  int edge_band = 10;
  int min_count = 2;
  double t_start = 0;
};

struct FringeReport
{
  bool detected = false;
  //! Local maxima near the richer edge at the first detection.
  int count = 0;
  std::optional<double> first_detection;
  //! Fraction of samples after t_start with a detection.
  double detected_fraction = 0;
};

//! Counts local maxima of P_n within edge_band sidebands of each populated
//! edge (same side of n = 0 only).
int edge_fringe_count(std::span<const double> row, int n_max,
                      const FringeOptions& options = {});
FringeReport fringe_check(const Spectrogram& spec,
                          const FringeOptions& options = {});

struct PendellosungReport
{
  std::vector<double> transfer_maxima;  //!< times of P_{n2} maxima [fs]
  std::optional<double> period;         //!< mean spacing [fs]
  //! (max spacing - min spacing) / mean spacing
  std::optional<double> spacing_spread;
  double max_transfer = 0;
  //! max_t of 1 - P_{n1} - P_{n2} over the whole run
  double max_leak = 0;
  //! max leak over the first full oscillation, if one completed
  std::optional<double> max_leak_first_period;
};

PendellosungReport pendellosung_report(const Spectrogram& spec, int n1,
                                       int n2);

}  // namespace etrap
