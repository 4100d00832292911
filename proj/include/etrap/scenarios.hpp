//! Preset configurations and data exports for the figure targets.
#pragma once

#include "etrap/runner.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace etrap
{

const std::vector<std::string>& figure_names();
bool is_figure(std::string_view name);

//! Preset for a single-run figure: fig1c, fig1d, fig2b, figS1.
RunConfig scenario_config(std::string_view name);

struct FigureSweep
{
  std::string label;
  RunConfig base;
  SweepAxis axis = SweepAxis::Energy;
  std::vector<double> grid;
  Observable observable = Observable::TrapWidth;
};

//! Sweeps behind fig3a, fig3b and fig3c.
std::vector<FigureSweep> figure_sweeps(std::string_view name);

struct RhoMap
{
  std::vector<double> photon_energies;  //!< [eV]
  std::vector<double> amplitudes;       //!< [V / nm]
  std::vector<double> rho;  //!< row-major, photon energy outer
};

//! log-spaced (photon energy, field) grid at 100 eV, phase matched.
RhoMap fig2a_rho_map(std::size_t points = 25);

/*!
 * Writes the columnar data of a figure into `directory` and returns the
 * files written. Unknown names raise DomainError.
 */
std::vector<std::filesystem::path> write_figure(
    std::string_view name, const std::filesystem::path& directory,
    unsigned threads = 0);

}  // namespace etrap
