//! Electron kinematics, optical field description, phase matching and the
//! coupling coefficients of the sideband ladder.
#pragma once

#include <complex>
#include <optional>

namespace etrap
{

/*!
 * Kinematics of the incident electron.
 *
 * Units: kinetic_energy [eV], momentum [eV fs / nm], velocity [nm / fs].
 * Always constructed with the exact relativistic relations.
 */
struct ElectronParams
{
  double kinetic_energy = 0;
  double momentum = 0;
  double velocity = 0;
  double lorentz_factor = 1;

  //! Total relativistic energy gamma m c^2 [eV]
  double total_energy() const;
  //! Central wavenumber k0 = p0 / hbar [1 / nm]
  double wavenumber() const;
};

//! Same quantities in SI: J, kg m / s, m / s.
struct ElectronParamsSI
{
  double kinetic_energy = 0;
  double momentum = 0;
  double velocity = 0;
  double lorentz_factor = 1;
};

ElectronParams electron_from_energy(double kinetic_energy);
ElectronParamsSI to_si(const ElectronParams& e);
ElectronParams from_si(const ElectronParamsSI& si);

/*!
 * Monochromatic optical field A = -(E_f / omega) sin(omega t - k_z z + phi0).
 *
 * Units: amplitude [V / nm], photon_energy [eV], angular_frequency [rad / fs],
 * wavevector [1 / nm], initial_phase [rad] wrapped into (-pi, pi].
 */
struct FieldParams
{
  double amplitude = 0;
  double photon_energy = 0;
  double angular_frequency = 0;
  double wavevector = 0;
  double initial_phase = 0;
  //! Set when wavevector was solved from the electron velocity.
  bool phase_matched = false;

  //! phi = phi0 + pi/2, the phase carried by the single-photon hopping
  double hop_phase() const;
  //! Grating period 2 pi / k_z [nm]
  double grating_period() const;
};

//! Field with an explicitly given longitudinal wavevector.
FieldParams make_field(double amplitude, double photon_energy,
                       double wavevector, double initial_phase);

//! Field whose phase velocity equals the electron velocity.
FieldParams make_phase_matched_field(const ElectronParams& e, double amplitude,
                                     double photon_energy,
                                     double initial_phase);

//! Photon energy [eV] for a free-space wavelength [nm].
double photon_energy_from_wavelength(double wavelength);
//! Wavevector [1/nm] from a grating period [nm].
double wavevector_from_period(double period);
//! Wraps an angle into (-pi, pi].
double wrap_phase(double phase);

//! k_z such that omega / k_z = v0.
double phase_matched_wavevector(const ElectronParams& e, double photon_energy);

/*!
 * Derived coefficients of the ladder equations.
 *
 * beta, kappa_mag, ponderomotive and detuning in [eV], delta in [eV nm].
 * nath_rho is absent for a field-free configuration.
 */
struct CouplingSet
{
  double beta = 0;
  double kappa_mag = 0;
  double kappa_phase = 0;
  double delta = 0;
  double ponderomotive = 0;
  double detuning = 0;
  std::optional<double> nath_rho;

  std::complex<double> kappa() const;
};

CouplingSet coupling_set(const ElectronParams& e, const FieldParams& f);

//! Small-recoil estimate of beta under phase matching, (hbar omega)^2 / 4 E0.
double approximate_beta(const ElectronParams& e, double photon_energy);

//! Relative velocity change per photon exchange, sqrt(hbar omega / E0).
double recoil_ratio(const ElectronParams& e, double photon_energy);

//! Ratio e A / p of the ponderomotive to the p.A term, with the
//! non-relativistic momentum sqrt(2 m E0).
double ponderomotive_ratio(const ElectronParams& e, const FieldParams& f);

//! Single-photon energy-momentum conservation angle.
struct CriticalAngle
{
  //! cos(theta_c); unclamped, may lie outside [-1, 1]
  double cos_theta = 0;
  //! fast-electron limit v_p / v
  double fast_limit = 0;

  //! cos_theta - fast_limit
  double correction() const { return cos_theta - fast_limit; }
  bool kinematically_allowed() const;
};

CriticalAngle critical_angle(const ElectronParams& e, double photon_energy,
                             double phase_velocity);

}  // namespace etrap
