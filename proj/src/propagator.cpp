#include "etrap/propagator.hpp"

#include "etrap/constants.hpp"
#include "etrap/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace etrap
{

using constants::hbar;

void PropagationConfig::validate() const
{
  if (!(t_end > 0))
    throw DomainError("propagation.t_end must be positive");
  if (!(sample_interval > 0))
    throw DomainError("propagation.sample_interval must be positive");
  if (!(step_tolerance > 0) || !(norm_drift_limit > 0))
    throw DomainError("propagation tolerances must be positive");
  if (!(step_safety > 0) || step_safety > 2.5)
    throw DomainError("propagation.step_safety must lie in (0, 2.5]");
}

std::span<const double> Spectrogram::row(std::size_t sample) const
{
  return {populations.data() + sample * dim(), dim()};
}

double Spectrogram::population(std::size_t sample, int n) const
{
  if (std::abs(n) > n_max)
    return 0;
  return populations[sample * dim() + static_cast<std::size_t>(n + n_max)];
}

namespace
{

std::vector<double> sample_times(const PropagationConfig& config)
{
  std::vector<double> times;
  const auto whole = static_cast<std::size_t>(
      std::floor(config.t_end / config.sample_interval + 1e-9));
  for (std::size_t k = 0; k <= whole; ++k)
    times.push_back(static_cast<double>(k) * config.sample_interval);
  if (config.t_end - times.back() > 1e-9 * config.sample_interval)
    times.push_back(config.t_end);
  return times;
}

//! Amplitude snapshots, row-major (samples x dim).
using Snapshots = std::vector<cplx>;

/*!
 * Fixed-step propagation using the fourth-order Taylor polynomial of
 * exp(-i H h / hbar), which for a constant linear generator coincides with
 * classical RK4. No renormalization is applied.
 */
class TaylorStepper
{
public:
  explicit TaylorStepper(const LadderHamiltonian& h)
    : h_(h), term_(h.dim()), next_(h.dim())
  {}

  void step(std::vector<cplx>& psi, double dt)
  {
    const cplx factor{0, -dt / hbar};
    std::copy(psi.begin(), psi.end(), term_.begin());
    for (int order = 1; order <= 4; ++order)
    {
      h_.apply(term_, next_);
      const cplx scale = factor / static_cast<double>(order);
      for (std::size_t i = 0; i < psi.size(); ++i)
      {
        term_[i] = scale * next_[i];
        psi[i] += term_[i];
      }
    }
  }

private:
  const LadderHamiltonian& h_;
  std::vector<cplx> term_;
  std::vector<cplx> next_;
};

Snapshots run_banded(const LadderHamiltonian& h, const LadderState& initial,
                     const std::vector<double>& times, double max_step)
{
  const std::size_t dim = h.dim();
  Snapshots out;
  out.reserve(times.size() * dim);

  std::vector<cplx> psi(initial.amplitudes().begin(),
                        initial.amplitudes().end());
  out.insert(out.end(), psi.begin(), psi.end());

  const double work = static_cast<double>(dim) * times.back() / max_step;
  if (work > banded_work_cap)
  {
    std::ostringstream msg;
    msg << "banded propagation needs about " << work
        << " site-steps (cap " << banded_work_cap
        << "); reduce t_end, the ladder size or the field";
    throw ResourceError(msg.str());
  }

  TaylorStepper stepper(h);
  for (std::size_t k = 1; k < times.size(); ++k)
  {
    const double span = times[k] - times[k - 1];
    const auto steps = static_cast<long>(std::ceil(span / max_step - 1e-12));
    const double dt = span / static_cast<double>(std::max(steps, 1L));
    for (long s = 0; s < std::max(steps, 1L); ++s)
      stepper.step(psi, dt);
    out.insert(out.end(), psi.begin(), psi.end());
  }
  return out;
}

Eigen::MatrixXcd to_dense(const LadderHamiltonian& h)
{
  const auto dim = static_cast<Eigen::Index>(h.dim());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  const auto d = h.diagonal();
  const auto h1 = h.hop1();
  const auto h2 = h.hop2();
  for (Eigen::Index i = 0; i < dim; ++i)
  {
    m(i, i) = d[static_cast<std::size_t>(i)];
    if (i + 1 < dim)
    {
      m(i, i + 1) = h1[static_cast<std::size_t>(i)];
      m(i + 1, i) = std::conj(h1[static_cast<std::size_t>(i)]);
    }
    if (i + 2 < dim)
    {
      m(i, i + 2) = h2[static_cast<std::size_t>(i)];
      m(i + 2, i) = std::conj(h2[static_cast<std::size_t>(i)]);
    }
  }
  return m;
}

class DenseEvolver
{
public:
  DenseEvolver(const LadderHamiltonian& h, const LadderState& initial)
  {
    if (h.dim() > dense_dimension_cap)
      throw ResourceError("dense propagation is limited to 2N+1 <= "
                          + std::to_string(dense_dimension_cap));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(to_dense(h));
    if (solver.info() != Eigen::Success)
      throw NumericalError("Hermitian eigendecomposition did not converge");
    vectors_ = solver.eigenvectors();
    values_ = solver.eigenvalues();
    const Eigen::Map<const Eigen::VectorXcd> a0(
        initial.amplitudes().data(),
        static_cast<Eigen::Index>(initial.dim()));
    coefficients_ = vectors_.adjoint() * a0;
  }

  void evolve(double t, cplx* out) const
  {
    Eigen::VectorXcd phased(coefficients_.size());
    for (Eigen::Index k = 0; k < phased.size(); ++k)
      phased(k) = std::polar(1.0, -values_(k) * t / hbar) * coefficients_(k);
    Eigen::Map<Eigen::VectorXcd>(out, phased.size()) = vectors_ * phased;
  }

private:
  Eigen::MatrixXcd vectors_;
  Eigen::VectorXd values_;
  Eigen::VectorXcd coefficients_;
};

Snapshots run_dense(const LadderHamiltonian& h, const LadderState& initial,
                    const std::vector<double>& times)
{
  const DenseEvolver evolver(h, initial);
  Snapshots out(times.size() * h.dim());
  for (std::size_t k = 0; k < times.size(); ++k)
    evolver.evolve(times[k], out.data() + k * h.dim());
  return out;
}

double max_abs_difference(const Snapshots& a, const Snapshots& b)
{
  double err = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    err = std::max(err, std::abs(a[i] - b[i]));
  return err;
}

}  // namespace

Spectrogram propagate(const LadderHamiltonian& h, const LadderState& initial,
                      const PropagationConfig& config)
{
  config.validate();
  if (initial.dim() != h.dim())
    throw DomainError("state dimension " + std::to_string(initial.dim())
                      + " does not match Hamiltonian dimension "
                      + std::to_string(h.dim()));

  const std::vector<double> times = sample_times(config);
  Snapshots snapshots;
  double step_used = 0;

  if (config.method == PropagationMethod::DenseExact)
  {
    snapshots = run_dense(h, initial, times);
  }
  else
  {
    const double radius = h.spectral_radius_bound();
    // steps longer than a sample span would make coarse and fine identical
    double step = config.sample_interval;
    if (radius > 0)
      step = std::min(step, config.step_safety * hbar / radius);
    Snapshots coarse = run_banded(h, initial, times, step);
    int refinements = 0;
    for (;;)
    {
      Snapshots fine = run_banded(h, initial, times, step / 2);
      const double err = max_abs_difference(coarse, fine);
      if (err < config.step_tolerance)
      {
        snapshots = std::move(fine);
        step_used = step / 2;
        break;
      }
      if (++refinements > config.max_refinements)
      {
        std::ostringstream msg;
        msg << "step refinement did not reach tolerance "
            << config.step_tolerance << " (last error " << err
            << ", step " << step / 2 << " fs)";
        throw NumericalError(msg.str());
      }
      coarse = std::move(fine);
      step /= 2;
    }
  }

  Spectrogram spec;
  spec.n_max = h.n_max();
  spec.times = times;
  spec.photon_energy = h.photon_energy;
  spec.detuning = h.detuning;
  spec.step = step_used;
  spec.populations.resize(snapshots.size());
  std::transform(snapshots.begin(), snapshots.end(), spec.populations.begin(),
                 [](cplx a) { return std::norm(a); });

  const std::size_t dim = h.dim();
  spec.norm_drift.resize(times.size());
  for (std::size_t k = 0; k < times.size(); ++k)
  {
    double total = 0;
    for (double p : spec.row(k))
      total += p;
    spec.norm_drift[k] = total - 1;
    if (std::abs(spec.norm_drift[k]) > config.norm_drift_limit)
    {
      std::ostringstream msg;
      msg << "norm drift " << spec.norm_drift[k] << " at t = " << times[k]
          << " fs exceeds limit " << config.norm_drift_limit;
      throw NumericalError(msg.str());
    }
  }

  std::vector<cplx> last(snapshots.end() - static_cast<std::ptrdiff_t>(dim),
                         snapshots.end());
  // drift was checked above against the configured limit
  spec.final_state
      = LadderState::evolved(h.n_max(), std::move(last), times.back());
  return spec;
}

std::vector<cplx> evolve_dense(const LadderHamiltonian& h,
                               const LadderState& initial, double t)
{
  if (initial.dim() != h.dim())
    throw DomainError("state dimension does not match Hamiltonian dimension");
  const DenseEvolver evolver(h, initial);
  std::vector<cplx> out(h.dim());
  evolver.evolve(t, out.data());
  return out;
}

double dense_oracle_compare(const LadderHamiltonian& h,
                            const LadderState& initial, double t,
                            double step_tolerance)
{
  if (h.dim() > dense_dimension_cap)
    throw ResourceError("oracle comparison is limited to 2N+1 <= "
                        + std::to_string(dense_dimension_cap));
  if (!(t > 0))
    return 0;

  PropagationConfig config;
  config.t_end = t;
  config.sample_interval = t;
  config.step_tolerance = step_tolerance;
  const Spectrogram stepped = propagate(h, initial, config);
  const std::vector<cplx> exact = evolve_dense(h, initial, t);

  const auto last = stepped.row(stepped.samples() - 1);
  double err = 0;
  for (std::size_t i = 0; i < exact.size(); ++i)
    err = std::max(err, std::abs(last[i] - std::norm(exact[i])));
  return err;
}

SpreadSeries centroid_and_spread(const Spectrogram& spec, double threshold)
{
  SpreadSeries s;
  s.times = spec.times;
  for (std::size_t k = 0; k < spec.samples(); ++k)
  {
    const auto row = spec.row(k);
    double total = 0, first = 0, second = 0;
    int lo = 0, hi = 0;
    bool any = false;
    for (int n = -spec.n_max; n <= spec.n_max; ++n)
    {
      const double p = row[static_cast<std::size_t>(n + spec.n_max)];
      total += p;
      first += n * p;
      second += double(n) * n * p;
      if (p >= threshold)
      {
        if (!any)
          lo = n;
        hi = n;
        any = true;
      }
    }
    const double mean = first / total;
    s.mean.push_back(mean);
    s.variance.push_back(std::max(0.0, second / total - mean * mean));
    s.n_min.push_back(lo);
    s.n_max.push_back(hi);
  }
  return s;
}

}  // namespace etrap
