#include "etrap/ladder.hpp"

#include "etrap/constants.hpp"
#include "etrap/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace etrap
{

ModelVariant ModelVariant::full() { return {}; }

ModelVariant ModelVariant::simplified()
{
  ModelVariant v;
  v.kind = ModelKind::Simplified;
  v.include_ponderomotive = false;
  v.include_recoil_asymmetry = false;
  v.include_gamma_cubed = false;
  return v;
}

void ModelVariant::validate() const
{
  if (kind == ModelKind::Simplified
      && (include_ponderomotive || include_recoil_asymmetry))
    throw DomainError(
        "simplified model excludes ponderomotive and recoil terms");
}

LadderHamiltonian LadderHamiltonian::from_bands(int n_max,
                                                std::vector<double> diagonal,
                                                std::vector<cplx> hop1,
                                                std::vector<cplx> hop2,
                                                ModelVariant variant)
{
  if (n_max < 1)
    throw DomainError("ladder half-width must be at least 1");
  const std::size_t dim = 2 * static_cast<std::size_t>(n_max) + 1;
  if (diagonal.size() != dim || hop1.size() != dim - 1
      || (!hop2.empty() && hop2.size() != dim - 2))
    throw DomainError("band lengths do not match the ladder size");
  if (hop2.empty())
    hop2.assign(dim - 2, cplx{});

  LadderHamiltonian h;
  h.n_max_ = n_max;
  h.diagonal_ = std::move(diagonal);
  h.hop1_ = std::move(hop1);
  h.hop2_ = std::move(hop2);
  h.variant_ = variant;
  return h;
}

cplx LadderHamiltonian::element(int n, int m) const
{
  if (std::abs(n) > n_max_ || std::abs(m) > n_max_)
    return {};
  const int offset = m - n;
  const std::size_t lo = index(std::min(n, m));
  switch (offset)
  {
  case 0: return diagonal_[lo];
  case 1: return hop1_[lo];
  case -1: return std::conj(hop1_[lo]);
  case 2: return hop2_[lo];
  case -2: return std::conj(hop2_[lo]);
  default: return {};
  }
}

void LadderHamiltonian::apply(std::span<const cplx> x, std::span<cplx> y) const
{
  const std::size_t n = dim();
  for (std::size_t i = 0; i < n; ++i)
  {
    cplx acc = diagonal_[i] * x[i];
    if (i + 1 < n)
      acc += hop1_[i] * x[i + 1];
    if (i >= 1)
      acc += std::conj(hop1_[i - 1]) * x[i - 1];
    if (i + 2 < n)
      acc += hop2_[i] * x[i + 2];
    if (i >= 2)
      acc += std::conj(hop2_[i - 2]) * x[i - 2];
    y[i] = acc;
  }
}

double LadderHamiltonian::spectral_radius_bound() const
{
  const std::size_t n = dim();
  double bound = 0;
  for (std::size_t i = 0; i < n; ++i)
  {
    double row = std::abs(diagonal_[i]);
    if (i + 1 < n)
      row += std::abs(hop1_[i]);
    if (i >= 1)
      row += std::abs(hop1_[i - 1]);
    if (i + 2 < n)
      row += std::abs(hop2_[i]);
    if (i >= 2)
      row += std::abs(hop2_[i - 2]);
    bound = std::max(bound, row);
  }
  return bound;
}

LadderHamiltonian LadderHamiltonian::conjugated() const
{
  LadderHamiltonian h = *this;
  for (auto& v : h.hop1_)
    v = std::conj(v);
  for (auto& v : h.hop2_)
    v = std::conj(v);
  return h;
}

LadderHamiltonian build_hamiltonian(const ElectronParams& e,
                                    const FieldParams& f,
                                    const ModelVariant& variant, int n_max)
{
  variant.validate();
  if (n_max < 1)
    throw DomainError("ladder half-width must be at least 1");

  const CouplingSet cs = coupling_set(e, f);
  const double detuning = variant.detuning_override.value_or(cs.detuning);
  const std::size_t dim = 2 * static_cast<std::size_t>(n_max) + 1;

  std::vector<double> diagonal(dim);
  std::vector<cplx> hop1(dim - 1);
  std::vector<cplx> hop2(dim - 2);

  const bool full = variant.kind == ModelKind::Full;
  double quadratic = variant.beta_override.value_or(cs.beta);
  if (full && variant.include_gamma_cubed && !variant.beta_override)
    quadratic /= std::pow(e.lorentz_factor, 3);
  const double shift = full && variant.include_ponderomotive
                           ? -cs.ponderomotive
                           : 0.0;

  for (int n = -n_max; n <= n_max; ++n)
    diagonal[static_cast<std::size_t>(n + n_max)]
        = -n * detuning + quadratic * double(n) * double(n) + shift;

  const cplx hop_phase = std::polar(1.0, f.hop_phase());
  const double k0 = e.wavenumber();
  for (int n = -n_max; n < n_max; ++n)
  {
    // row n couples to a_{n+1} through k_{n+1} - k_z/2 = k0 + (n + 1/2) k_z;
    // row n+1 couples to a_n through k_n + k_z/2, the same number.
    double k = k0;
    if (full && variant.include_recoil_asymmetry)
      k += (n + 0.5) * f.wavevector;
    hop1[static_cast<std::size_t>(n + n_max)] = cs.delta * k * hop_phase;
  }

  if (full && variant.include_ponderomotive)
  {
    const cplx two_photon
        = -0.5 * cs.ponderomotive * std::polar(1.0, 2 * f.initial_phase);
    std::fill(hop2.begin(), hop2.end(), two_photon);
  }

  LadderHamiltonian h = LadderHamiltonian::from_bands(
      n_max, std::move(diagonal), std::move(hop1), std::move(hop2), variant);
  h.photon_energy = f.photon_energy;
  h.detuning = detuning;
  return h;
}

LadderState::LadderState(int n_max, std::vector<cplx> amplitudes, double time)
  : n_max_(n_max), amplitudes_(std::move(amplitudes)), time_(time)
{
  if (n_max < 1)
    throw DomainError("ladder half-width must be at least 1");
  if (amplitudes_.size() != 2 * static_cast<std::size_t>(n_max) + 1)
    throw DomainError("amplitude vector does not match the ladder size");
  if (std::abs(norm_squared() - 1) > 1e-8)
    throw DomainError("state is not normalized (|norm^2 - 1| > 1e-8)");
}

LadderState LadderState::evolved(int n_max, std::vector<cplx> amplitudes,
                                 double time)
{
  if (amplitudes.size() != 2 * static_cast<std::size_t>(n_max) + 1)
    throw DomainError("amplitude vector does not match the ladder size");
  LadderState s;
  s.n_max_ = n_max;
  s.amplitudes_ = std::move(amplitudes);
  s.time_ = time;
  return s;
}

cplx LadderState::amplitude(int n) const
{
  if (std::abs(n) > n_max_)
    return {};
  return amplitudes_[static_cast<std::size_t>(n + n_max_)];
}

double LadderState::population(int n) const { return std::norm(amplitude(n)); }

double LadderState::norm_squared() const
{
  return std::accumulate(amplitudes_.begin(), amplitudes_.end(), 0.0,
                         [](double s, cplx a) { return s + std::norm(a); });
}

double LadderState::tail_population(int edge) const
{
  double tail = 0;
  for (int n = -n_max_; n <= n_max_; ++n)
    if (std::abs(n) >= edge)
      tail += population(n);
  return tail;
}

LadderState LadderState::resized(int n_max) const
{
  if (n_max < 1)
    throw DomainError("ladder half-width must be at least 1");
  if (n_max < n_max_ && tail_population(n_max + 1) > 1e-12)
    throw TruncationError("shrinking the ladder to N = "
                          + std::to_string(n_max)
                          + " drops populated sidebands");
  std::vector<cplx> out(2 * static_cast<std::size_t>(n_max) + 1);
  for (int n = -n_max; n <= n_max; ++n)
    out[static_cast<std::size_t>(n + n_max)] = amplitude(n);
  // only negligible population was dropped; restore unit norm exactly
  const double norm = std::sqrt(std::accumulate(
      out.begin(), out.end(), 0.0,
      [](double s, cplx a) { return s + std::norm(a); }));
  for (auto& a : out)
    a /= norm;
  return LadderState(n_max, std::move(out), time_);
}

LadderState initial_plane_wave(int n_max, int center)
{
  if (n_max < 1)
    throw DomainError("ladder half-width must be at least 1");
  if (std::abs(center) > n_max)
    throw DomainError("plane-wave sideband lies outside the ladder");
  std::vector<cplx> a(2 * static_cast<std::size_t>(n_max) + 1);
  a[static_cast<std::size_t>(center + n_max)] = 1.0;
  return LadderState(n_max, std::move(a), 0.0);
}

double gaussian_sigma_from_energy_width(double width, double photon_energy,
                                        WidthConvention convention)
{
  if (!(width > 0) || !(photon_energy > 0))
    throw DomainError("gaussian width and photon energy must be positive");
  const double photons = width / photon_energy;
  // |a_n|^2 ~ exp(-(n - nc)^2 / (2 sigma^2)) has standard deviation sigma
  if (convention == WidthConvention::Rms)
    return photons;
  return photons / (2 * std::sqrt(2 * std::log(2.0)));
}

LadderState initial_gaussian(int n_max, double sigma, int center,
                             double chirp, double offset_phase)
{
  if (!(sigma > 0))
    throw DomainError("gaussian width must be positive");
  if (n_max < 1)
    throw DomainError("ladder half-width must be at least 1");
  if (std::abs(center) > n_max)
    throw DomainError("gaussian center lies outside the ladder");

  std::vector<cplx> a(2 * static_cast<std::size_t>(n_max) + 1);
  for (int n = -n_max; n <= n_max; ++n)
  {
    const double x = n - center;
    a[static_cast<std::size_t>(n + n_max)]
        = std::exp(-x * x / (4 * sigma * sigma))
          * std::polar(1.0, chirp * x * x + offset_phase * x);
  }

  // relative to the peak at n = center, where |a|^2 = 1
  const double edge = std::max(std::norm(a.front()), std::norm(a.back()));
  if (edge > 1e-12)
    throw TruncationError("gaussian tail at |n| = N is " + std::to_string(edge)
                          + " of the peak; increase the ladder size");

  const double norm = std::sqrt(std::accumulate(
      a.begin(), a.end(), 0.0,
      [](double s, cplx v) { return s + std::norm(v); }));
  for (auto& v : a)
    v /= norm;
  return LadderState(n_max, std::move(a), 0.0);
}

}  // namespace etrap
