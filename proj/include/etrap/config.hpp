//! Run configuration: a flat key-value schema with explicit units.
#pragma once

#include "etrap/analysis.hpp"
#include "etrap/ladder.hpp"
#include "etrap/physics.hpp"
#include "etrap/propagator.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace etrap
{

enum class MatchingMode
{
  PhaseMatched,
  GratingPeriod,  //!< value in [nm]
  Wavevector      //!< value in [1 / nm]
};

struct MatchingSpec
{
  MatchingMode mode = MatchingMode::PhaseMatched;
  double value = 0;
};

enum class InitialKind
{
  PlaneWave,
  Gaussian
};

struct InitialSpec
{
  InitialKind kind = InitialKind::PlaneWave;
  double width = 0;  //!< [eV]
  WidthConvention convention = WidthConvention::Fwhm;
  int center = 0;
  double chirp = 0;         //!< [rad]
  double offset_phase = 0;  //!< [rad]
};

struct AnalysisSpec
{
  double threshold = default_population_threshold;
  std::optional<TimeWindow> window;
};

struct RunConfig
{
  double kinetic_energy = 0;  //!< [eV]
  double field_amplitude = 0;  //!< [V / nm]
  //! Exactly one of photon_energy [eV] and wavelength [nm] is set.
  std::optional<double> photon_energy;
  std::optional<double> wavelength;
  double phase = 0;  //!< [rad]
  MatchingSpec matching;
  ModelVariant model;
  //! Ladder half-width; adaptive truncation when absent.
  std::optional<int> n_max;
  InitialSpec initial;
  PropagationConfig propagation;
  AnalysisSpec analysis;
  std::uint64_t seed = 0;

  ElectronParams electron() const;
  FieldParams field() const;
  double resolved_photon_energy() const;

  void validate() const;
};

/*!
 * Parses `section.key = value unit` lines, or `key = value unit` lines below
 * a `[section]` header. `#` starts a comment. Unknown keys, duplicate keys
 * and physical quantities without a unit token are rejected with a
 * ParseError naming the key.
 */
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);

//! Canonical text form; parsing it yields a bit-identical RunConfig.
std::string echo_config(const RunConfig& config);

std::string_view matching_name(MatchingMode mode);
std::string_view method_name(PropagationMethod method);

}  // namespace etrap
