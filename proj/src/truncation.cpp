#include "etrap/errors.hpp"
#include "etrap/ladder.hpp"
#include "etrap/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

namespace etrap
{

namespace
{

//! Smallest N whose guard region the state already leaves empty.
int minimal_holding_size(const LadderState& state, const TruncationPolicy& p)
{
  int n_max = 1;
  while (state.tail_population(std::max(n_max - p.margin, 0)) >= p.guard)
    ++n_max;
  return n_max;
}

bool guard_holds(const Spectrogram& spec, const TruncationPolicy& p)
{
  const int edge = spec.n_max - p.margin;
  for (std::size_t k = 0; k < spec.samples(); ++k)
  {
    double tail = 0;
    for (int n = -spec.n_max; n <= spec.n_max; ++n)
      if (std::abs(n) >= edge)
        tail += spec.population(k, n);
    if (tail >= p.guard)
      return false;
  }
  return true;
}

}  // namespace

int adaptive_truncation(const ElectronParams& e, const FieldParams& f,
                        const ModelVariant& variant, const LadderState& state,
                        double t_max, const TruncationPolicy& policy)
{
  if (!(t_max > 0))
    throw DomainError("truncation horizon must be positive");

  const int holding = minimal_holding_size(state, policy);
  if (f.amplitude == 0)
    return holding;

  PropagationConfig config;
  config.t_end = t_max;
  config.sample_interval = t_max / policy.samples;
  // the guard is a population threshold; amplitude accuracy of 1e-7 suffices
  config.step_tolerance = 1e-7;
  config.norm_drift_limit = 1e-6;

  for (int n_max = std::max(policy.start, holding); n_max <= policy.hard_cap;
       n_max *= 2)
  {
    const LadderHamiltonian h = build_hamiltonian(e, f, variant, n_max);
    config.method = h.dim() <= dense_dimension_cap
                        ? PropagationMethod::DenseExact
                        : PropagationMethod::BandedStepper;
    if (guard_holds(propagate(h, state.resized(n_max), config), policy))
      return n_max;
  }
  throw ResourceError("ladder half-width would exceed the hard cap of "
                      + std::to_string(policy.hard_cap));
}

}  // namespace etrap
