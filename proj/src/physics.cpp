#include "etrap/physics.hpp"

#include "etrap/constants.hpp"
#include "etrap/errors.hpp"

#include <cmath>

namespace etrap
{

using namespace constants;

double ElectronParams::total_energy() const
{
  return lorentz_factor * electron_rest_energy;
}

double ElectronParams::wavenumber() const { return momentum / hbar; }

ElectronParams electron_from_energy(double kinetic_energy)
{
  if (!(kinetic_energy > 0) || !std::isfinite(kinetic_energy))
    throw DomainError("electron kinetic energy must be positive");

  ElectronParams e;
  e.kinetic_energy = kinetic_energy;
  e.lorentz_factor = 1 + kinetic_energy / electron_rest_energy;
  // p c = sqrt(E_k (E_k + 2 m c^2)) avoids the cancellation in 1 - 1/gamma^2
  const double pc
      = std::sqrt(kinetic_energy * (kinetic_energy + 2 * electron_rest_energy));
  e.momentum = pc / c_light;
  e.velocity = e.momentum / (e.lorentz_factor * electron_mass);
  return e;
}

ElectronParamsSI to_si(const ElectronParams& e)
{
  return {e.kinetic_energy * units::joule_per_ev,
          e.momentum * units::si_momentum_per_internal,
          e.velocity * units::si_velocity_per_internal, e.lorentz_factor};
}

ElectronParams from_si(const ElectronParamsSI& si)
{
  return {si.kinetic_energy / units::joule_per_ev,
          si.momentum / units::si_momentum_per_internal,
          si.velocity / units::si_velocity_per_internal, si.lorentz_factor};
}

double FieldParams::hop_phase() const { return initial_phase + pi / 2; }

double FieldParams::grating_period() const { return 2 * pi / wavevector; }

double wrap_phase(double phase)
{
  double wrapped = std::remainder(phase, 2 * pi);
  if (wrapped <= -pi)
    wrapped += 2 * pi;
  return wrapped;
}

double photon_energy_from_wavelength(double wavelength)
{
  if (!(wavelength > 0))
    throw DomainError("wavelength must be positive");
  return 2 * pi * hbar * c_light / wavelength;
}

double wavevector_from_period(double period)
{
  if (!(period > 0))
    throw DomainError("grating period must be positive");
  return 2 * pi / period;
}

FieldParams make_field(double amplitude, double photon_energy,
                       double wavevector, double initial_phase)
{
  if (!(amplitude >= 0) || !std::isfinite(amplitude))
    throw DomainError("field amplitude must be non-negative");
  if (!(photon_energy > 0))
    throw DomainError("photon energy must be positive");
  if (!(wavevector > 0))
    throw DomainError("field wavevector must be positive");

  FieldParams f;
  f.amplitude = amplitude;
  f.photon_energy = photon_energy;
  f.angular_frequency = photon_energy / hbar;
  f.wavevector = wavevector;
  f.initial_phase = wrap_phase(initial_phase);
  return f;
}

double phase_matched_wavevector(const ElectronParams& e, double photon_energy)
{
  if (!(photon_energy > 0))
    throw DomainError("photon energy must be positive");
  return photon_energy / (hbar * e.velocity);
}

FieldParams make_phase_matched_field(const ElectronParams& e, double amplitude,
                                     double photon_energy, double initial_phase)
{
  FieldParams f = make_field(amplitude, photon_energy,
                             phase_matched_wavevector(e, photon_energy),
                             initial_phase);
  f.phase_matched = true;
  return f;
}

std::complex<double> CouplingSet::kappa() const
{
  return std::polar(kappa_mag, kappa_phase);
}

CouplingSet coupling_set(const ElectronParams& e, const FieldParams& f)
{
  const double hbar_kz = hbar * f.wavevector;
  const double omega = f.angular_frequency;

  CouplingSet cs;
  cs.beta = hbar_kz * hbar_kz / (2 * electron_mass);
  cs.delta = hbar * f.amplitude / (2 * electron_mass * omega);
  // delta k0 = e E_f hbar k0 / (2 m omega)
  cs.kappa_mag = cs.delta * e.wavenumber();
  cs.kappa_phase = f.hop_phase();
  cs.ponderomotive
      = f.amplitude * f.amplitude / (4 * electron_mass * omega * omega);
  cs.detuning = f.phase_matched
                    ? 0.0
                    : hbar * (omega - e.velocity * f.wavevector);
  if (cs.kappa_mag > 0)
    cs.nath_rho = cs.beta / cs.kappa_mag;
  return cs;
}

double approximate_beta(const ElectronParams& e, double photon_energy)
{
  return 0.25 * photon_energy * photon_energy / e.kinetic_energy;
}

double recoil_ratio(const ElectronParams& e, double photon_energy)
{
  return std::sqrt(photon_energy / e.kinetic_energy);
}

double ponderomotive_ratio(const ElectronParams& e, const FieldParams& f)
{
  const double p_classical
      = std::sqrt(2 * electron_mass * e.kinetic_energy);
  return f.amplitude / (f.angular_frequency * p_classical);
}

bool CriticalAngle::kinematically_allowed() const
{
  return std::abs(cos_theta) <= 1.0;
}

CriticalAngle critical_angle(const ElectronParams& e, double photon_energy,
                             double phase_velocity)
{
  if (!(phase_velocity > 0))
    throw DomainError("phase velocity must be positive");

  const double total = e.total_energy();
  const double light_ratio = c_light / phase_velocity;

  CriticalAngle angle;
  angle.fast_limit = phase_velocity / e.velocity;
  angle.cos_theta
      = angle.fast_limit
        * (1 + photon_energy / (2 * total) * (1 - light_ratio * light_ratio));
  return angle;
}

}  // namespace etrap
