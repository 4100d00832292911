// Independent reference computations for the test suites. Nothing here calls
// into the library's physics or propagation code.
#pragma once

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <complex>
#include <vector>

namespace ref
{

namespace si
{
inline constexpr double hbar = 6.62607015e-34 / (2 * 3.14159265358979323846);  // J s
inline constexpr double mass = 9.1093837015e-31;   // kg
inline constexpr double charge = 1.602176634e-19;  // C
inline constexpr double c = 299792458.0;           // m / s
inline constexpr double ev = 1.602176634e-19;      // J
}  // namespace si

inline constexpr double hbar_ev_fs = si::hbar / si::ev * 1e15;

struct Kinematics
{
  double gamma, velocity, momentum;  // SI
};

inline Kinematics kinematics(double kinetic_ev)
{
  const double rest = si::mass * si::c * si::c;
  const double gamma = 1 + kinetic_ev * si::ev / rest;
  const double v = si::c * std::sqrt(1 - 1 / (gamma * gamma));
  return {gamma, v, gamma * si::mass * v};
}

struct Couplings
{
  double beta, kappa, ponderomotive, kz_per_nm;  // eV, eV, eV, 1/nm
};

// Phase-matched coefficients from SI inputs: field in V/m, photon energy eV.
inline Couplings couplings(double kinetic_ev, double field_v_per_m,
                           double photon_ev)
{
  const Kinematics k = kinematics(kinetic_ev);
  const double omega = photon_ev * si::ev / si::hbar;
  const double kz = omega / k.velocity;
  const double beta = std::pow(si::hbar * kz, 2) / (2 * si::mass);
  const double delta = si::charge * si::hbar * field_v_per_m / (2 * si::mass * omega);
  const double kappa = delta * k.momentum / si::hbar;
  const double up = std::pow(si::charge * field_v_per_m, 2)
                    / (4 * si::mass * omega * omega);
  return {beta / si::ev, kappa / si::ev, up / si::ev, kz * 1e-9};
}

// J_n(x) for n >= 0 by Miller's backward recurrence, normalised with
// J_0 + 2 sum_k J_2k = 1.
inline double bessel_j(int n, double x)
{
  n = std::abs(n);
  if (x == 0)
    return n == 0 ? 1.0 : 0.0;
  const int start = 2 * ((std::max(n, static_cast<int>(x)) + 40 + static_cast<int>(std::sqrt(40.0 * std::max(n, static_cast<int>(x))))) / 2);
  long double jp1 = 0, j = 1e-300L, result = 0, norm = 0;
  for (int k = start; k > 0; --k)
  {
    const long double jm1 = 2.0L * k / x * j - jp1;
    jp1 = j;
    j = jm1;
    if (k - 1 == n)
      result = j;
    if ((k - 1) % 2 == 0 && k - 1 > 0)
      norm += 2 * j;
    if (std::fabs(j) > 1e250L)
    {
      j *= 1e-250L;
      jp1 *= 1e-250L;
      result *= 1e-250L;
      norm *= 1e-250L;
    }
  }
  norm += j;
  return static_cast<double>(result / norm);
}

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// exp(-i H t / hbar) psi via Eigen's Pade matrix exponential.
inline Vector evolve_expm(const Matrix& h, const Vector& psi, double t_fs)
{
  const std::complex<double> factor(0, -t_fs / hbar_ev_fs);
  const Matrix u = (factor * h).exp();
  return u * psi;
}

}  // namespace ref
