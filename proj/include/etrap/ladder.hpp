//! Truncated tight-binding Hamiltonian over the sideband ladder n = -N..N and
//! the states living on it.
#pragma once

#include "etrap/physics.hpp"

#include <complex>
#include <optional>
#include <span>
#include <vector>

namespace etrap
{

using cplx = std::complex<double>;

enum class ModelKind
{
  Full,       //!< recoil-resolved hopping, ponderomotive terms, detuning
  Simplified  //!< beta n^2 on-site energy and constant hopping kappa
};

struct ModelVariant
{
  ModelKind kind = ModelKind::Full;
  bool include_ponderomotive = true;
  bool include_recoil_asymmetry = true;
  //! Use the dispersion curvature 1 / (gamma^3 m) for the quadratic term.
  bool include_gamma_cubed = true;
  //! Replaces hbar (omega - v0 k_z) [eV].
  std::optional<double> detuning_override;
  //! Replaces (hbar k_z)^2 / 2m [eV]; zero gives the pure hopping ladder.
  std::optional<double> beta_override;

  static ModelVariant full();
  static ModelVariant simplified();

  //! Throws DomainError on an inconsistent flag combination.
  void validate() const;
};

/*!
 * Banded Hermitian ladder Hamiltonian.
 *
 * Only the upper bands are stored: H(n, n+1) = hop1[n + N] and
 * H(n, n+2) = hop2[n + N]; the lower bands are their conjugates, so the
 * matrix is Hermitian by construction.
 */
class LadderHamiltonian
{
public:
  LadderHamiltonian() = default;

  //! Direct band constructor, used for synthetic systems.
  static LadderHamiltonian from_bands(int n_max, std::vector<double> diagonal,
                                      std::vector<cplx> hop1,
                                      std::vector<cplx> hop2,
                                      ModelVariant variant = {});

  int n_max() const { return n_max_; }
  std::size_t dim() const { return diagonal_.size(); }
  std::size_t index(int n) const { return static_cast<std::size_t>(n + n_max_); }

  std::span<const double> diagonal() const { return diagonal_; }
  std::span<const cplx> hop1() const { return hop1_; }
  std::span<const cplx> hop2() const { return hop2_; }
  const ModelVariant& variant() const { return variant_; }

  //! Matrix element H(n, m) for sideband indices n, m.
  cplx element(int n, int m) const;

  //! y = H x
  void apply(std::span<const cplx> x, std::span<cplx> y) const;

  //! Gershgorin bound on the spectral radius [eV].
  double spectral_radius_bound() const;

  //! Element-wise complex conjugate (the time-reversed generator).
  LadderHamiltonian conjugated() const;

  //! Field quantities carried along for analysis: photon energy and
  //! effective linear detuning [eV].
  double photon_energy = 0;
  double detuning = 0;

private:
  int n_max_ = 0;
  std::vector<double> diagonal_;
  std::vector<cplx> hop1_;
  std::vector<cplx> hop2_;
  ModelVariant variant_;
};

LadderHamiltonian build_hamiltonian(const ElectronParams& e,
                                    const FieldParams& f,
                                    const ModelVariant& variant, int n_max);

//! Amplitudes a_n on the ladder at time t [fs].
class LadderState
{
public:
  LadderState() = default;

  //! Throws DomainError unless sum |a_n|^2 = 1 within 1e-8.
  LadderState(int n_max, std::vector<cplx> amplitudes, double time = 0);

  //! Result of a propagation; the norm is monitored by the caller.
  static LadderState evolved(int n_max, std::vector<cplx> amplitudes,
                             double time);

  int n_max() const { return n_max_; }
  std::size_t dim() const { return amplitudes_.size(); }
  double time() const { return time_; }
  std::span<const cplx> amplitudes() const { return amplitudes_; }

  cplx amplitude(int n) const;
  double population(int n) const;
  double norm_squared() const;

  //! Re-embeds into a ladder of half-width n_max; truncation must only drop
  //! sites with negligible population, else TruncationError.
  LadderState resized(int n_max) const;

  //! Total population on sites with |n| >= edge.
  double tail_population(int edge) const;

private:
  int n_max_ = 0;
  std::vector<cplx> amplitudes_;
  double time_ = 0;
};

LadderState initial_plane_wave(int n_max, int center = 0);

enum class WidthConvention
{
  Fwhm,  //!< full width at half maximum of |a_n|^2
  Rms    //!< standard deviation of |a_n|^2
};

//! Gaussian sigma in photons for an energy width of the population profile.
double gaussian_sigma_from_energy_width(double width, double photon_energy,
                                        WidthConvention convention);

/*!
 * a_n ~ exp(-(n - nc)^2 / (4 sigma^2)) exp(i (chirp (n - nc)^2
 *       + offset_phase (n - nc))), normalized.
 *
 * Throws TruncationError when |a_{+-N}|^2 exceeds 1e-12 of the peak.
 */
LadderState initial_gaussian(int n_max, double sigma, int center = 0,
                             double chirp = 0, double offset_phase = 0);

struct TruncationPolicy
{
  int start = 64;
  int hard_cap = 4096;
  double guard = 1e-10;
  //! The guard region is |n| >= N - margin.
  int margin = 2;
  int samples = 200;
};

/*!
 * Smallest ladder half-width that keeps the tail population below the guard
 * while evolving `state` up to t_max, found by doubling from policy.start.
 * Throws ResourceError once the hard cap is exceeded.
 */
int adaptive_truncation(const ElectronParams& e, const FieldParams& f,
                        const ModelVariant& variant, const LadderState& state,
                        double t_max, const TruncationPolicy& policy = {});

}  // namespace etrap
