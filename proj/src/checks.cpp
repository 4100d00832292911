#include "etrap/checks.hpp"

#include "etrap/constants.hpp"
#include "etrap/errors.hpp"
#include "etrap/oracles.hpp"
#include "etrap/runner.hpp"

#include <cmath>
#include <cstdio>

namespace etrap
{

using constants::hbar;
using constants::pi;

LadderHamiltonian random_banded_hamiltonian(std::mt19937_64& rng, int n_max)
{
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::size_t dim = 2 * static_cast<std::size_t>(n_max) + 1;
  std::vector<double> diag(dim);
  std::vector<cplx> hop1(dim - 1), hop2(dim - 2);
  for (auto& d : diag)
    d = 4 * unit(rng) - 2;
  for (auto& h : hop1)
    h = std::polar(unit(rng), 2 * pi * unit(rng));
  for (auto& h : hop2)
    h = std::polar(0.5 * unit(rng), 2 * pi * unit(rng));
  return LadderHamiltonian::from_bands(n_max, std::move(diag), std::move(hop1),
                                       std::move(hop2));
}

namespace
{

OracleCheck check(std::string name, double value, double limit,
                  std::string detail = {})
{
  return {std::move(name), value, limit, value < limit, std::move(detail)};
}

std::string describe(const char* format, double a, double b = 0)
{
  char buf[160];
  std::snprintf(buf, sizeof buf, format, a, b);
  return buf;
}

double bessel_sum_rule()
{
  double worst = 0;
  for (double x = 0.5; x <= 50.0; x += 0.5)
  {
    const int cut = static_cast<int>(std::ceil(4 * x)) + 20;
    BesselSolution sol{1.0, 0.0};
    const double t = x * hbar / 2;
    double sum = 0;
    for (int n = -cut; n <= cut; ++n)
      sum += bessel_population(sol, n, t);
    worst = std::max(worst, std::abs(sum - 1));
  }
  return worst;
}

//! max_{n,t} |P_n - J_n^2| over 2|kappa|t/hbar <= x_max.
double raman_nath_error(const ElectronParams& e, const FieldParams& f,
                        bool with_beta, double x_max)
{
  ModelVariant v = ModelVariant::simplified();
  v.detuning_override = 0.0;
  if (!with_beta)
    v.beta_override = 0.0;
  const CouplingSet cs = coupling_set(e, f);
  const BesselSolution sol{cs.kappa_mag, f.initial_phase};
  const double t_end = x_max * hbar / (2 * cs.kappa_mag);
  const int n_max = static_cast<int>(std::ceil(x_max)) + 30;

  PropagationConfig pc;
  pc.t_end = t_end;
  pc.sample_interval = t_end / 100;
  const Spectrogram spec = propagate(build_hamiltonian(e, f, v, n_max),
                                     initial_plane_wave(n_max), pc);
  double err = 0;
  for (std::size_t k = 0; k < spec.samples(); ++k)
    for (int n = -n_max; n <= n_max; ++n)
      err = std::max(err, std::abs(spec.population(k, n)
                                   - bessel_population(sol, n, spec.times[k])));
  return err;
}

double random_suite(std::uint64_t seed, int systems)
{
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> size(4, 256);
  std::uniform_real_distribution<double> duration(0.5, 20.0);
  double worst = 0;
  for (int i = 0; i < systems; ++i)
  {
    const int n_max = size(rng);
    const LadderHamiltonian h = random_banded_hamiltonian(rng, n_max);
    const double t = duration(rng);
    std::uniform_int_distribution<int> site(-n_max / 2, n_max / 2);
    worst = std::max(worst, dense_oracle_compare(h, initial_plane_wave(n_max, site(rng)), t));
  }
  return worst;
}

//! Relative period error of a three-site Bragg ladder against the
//! second-order two-level reduction.
double bragg_reduction_error()
{
  const double beta = 1.0;
  const double kappa = 0.05;
  TwoLevelSolution sol;
  sol.effective_coupling = bragg_effective_coupling(kappa, kappa, beta, 0.0);

  const LadderHamiltonian h = LadderHamiltonian::from_bands(
      1, {beta, 0.0, beta}, {kappa, kappa}, {});
  PropagationConfig pc;
  pc.method = PropagationMethod::DenseExact;
  pc.t_end = 3.2 * sol.period();
  pc.sample_interval = sol.period() / 400;
  const PendellosungReport r
      = pendellosung_report(propagate(h, initial_plane_wave(1, -1), pc), -1, 1);
  if (!r.period)
    return 1;
  return std::abs(*r.period - sol.period()) / sol.period();
}

}  // namespace

std::vector<OracleCheck> run_oracle_suites(const RunConfig& config,
                                           int random_systems)
{
  std::vector<OracleCheck> out;
  const ElectronParams e = config.electron();
  const FieldParams f = config.field();
  const CouplingSet cs = coupling_set(e, f);

  out.push_back(check("bessel-sum-rule", bessel_sum_rule(), 1e-10,
                      "sum_{|n|<=4x+20} J_n(x)^2 for x <= 50"));

  if (cs.kappa_mag > 0)
  {
    out.push_back(check("raman-nath-exact", raman_nath_error(e, f, false, 20),
                        1e-6, "beta = 0, 2|kappa|t/hbar <= 20"));
    out.push_back(check("raman-nath-perturbed", raman_nath_error(e, f, true, 5),
                        1e-3,
                        describe("beta restored (rho = %.3g), 2|kappa|t/hbar <= 5",
                                 cs.nath_rho.value_or(0))));
  }

  {
    const int n_max = std::min(config.n_max.value_or(64), 256);
    const double t = std::min(config.propagation.t_end, 20.0);
    const LadderHamiltonian h = build_hamiltonian(e, f, config.model, n_max);
    RunConfig c = config;
    c.n_max = n_max;
    double err = 0;
    try
    {
      err = dense_oracle_compare(h, make_initial_state(c, n_max), t);
    }
    catch (const TruncationError&)
    {
      err = dense_oracle_compare(h, initial_plane_wave(n_max), t);
    }
    out.push_back(check("stepper-vs-dense", err, 1e-6,
                        describe("configured Hamiltonian, N = %.0f, t = %.3g fs",
                                 n_max, t)));
  }

  out.push_back(check("random-banded", random_suite(config.seed, random_systems),
                      1e-6,
                      describe("%.0f seeded systems, N <= 256, t <= 20 fs",
                               random_systems)));

  out.push_back(check("bragg-two-level", bragg_reduction_error(), 0.15,
                      "three-site ladder, rho = 20, period vs pi hbar / Omega_eff"));
  return out;
}

}  // namespace etrap
