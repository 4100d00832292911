//! Physical constants in the internal (eV, fs, nm) unit system.
#pragma once

#include <numbers>

namespace etrap
{
namespace constants
{

inline constexpr double pi = std::numbers::pi;

//! Reduced Planck constant [eV fs]
inline constexpr double hbar = 0.6582119569509067;
//! Electron rest energy m c^2 [eV]
inline constexpr double electron_rest_energy = 510998.95;
//! Speed of light [nm / fs]
inline constexpr double c_light = 299.792458;
//! Electron rest mass [eV fs^2 / nm^2]
inline constexpr double electron_mass
    = electron_rest_energy / (c_light * c_light);

//! Elementary charge [C], used only for SI conversion
inline constexpr double elementary_charge_si = 1.602176634e-19;

}  // namespace constants

// SI conversion factors, applied at I/O boundaries only.
namespace units
{

inline constexpr double joule_per_ev = constants::elementary_charge_si;
inline constexpr double meter_per_nm = 1e-9;
inline constexpr double second_per_fs = 1e-15;
//! [eV fs / nm] -> [kg m / s]
inline constexpr double si_momentum_per_internal
    = joule_per_ev * second_per_fs / meter_per_nm;
//! [nm / fs] -> [m / s]
inline constexpr double si_velocity_per_internal = meter_per_nm / second_per_fs;
//! [V / m] -> [V / nm]
inline constexpr double volt_per_nm_per_volt_per_m = 1e-9;

}  // namespace units
}  // namespace etrap
