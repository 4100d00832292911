#include "etrap/analysis.hpp"

#include "etrap/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

namespace etrap
{

TrapReport trap_width(const Spectrogram& spec, double threshold,
                      std::optional<TimeWindow> window)
{
  if (spec.samples() == 0)
    throw DomainError("spectrogram has no samples");
  const TimeWindow w
      = window.value_or(TimeWindow{spec.times.front(), spec.times.back()});
  if (w.end < w.start)
    throw DomainError("trap width window is empty");

  std::vector<double> envelope(spec.dim(), 0.0);
  bool any_sample = false;
  for (std::size_t k = 0; k < spec.samples(); ++k)
  {
    if (spec.times[k] < w.start - 1e-12 || spec.times[k] > w.end + 1e-12)
      continue;
    any_sample = true;
    const auto row = spec.row(k);
    for (std::size_t i = 0; i < row.size(); ++i)
      envelope[i] = std::max(envelope[i], row[i]);
  }
  if (!any_sample)
    throw DomainError("trap width window contains no samples");

  TrapReport r;
  r.threshold = threshold;
  r.window = w;
  bool any = false;
  for (int n = -spec.n_max; n <= spec.n_max; ++n)
  {
    if (envelope[static_cast<std::size_t>(n + spec.n_max)] < threshold)
      continue;
    if (!any)
      r.n_min = n;
    r.n_max = n;
    any = true;
  }
  if (!any)
  {
    const auto peak = std::max_element(envelope.begin(), envelope.end());
    r.n_min = r.n_max
        = static_cast<int>(peak - envelope.begin()) - spec.n_max;
    r.degenerate = true;
  }
  r.width = (r.n_max - r.n_min) * spec.photon_energy;
  return r;
}

namespace
{

std::size_t nearest_sample(const Spectrogram& spec, double time)
{
  if (spec.samples() == 0)
    throw DomainError("spectrogram has no samples");
  const auto it = std::lower_bound(spec.times.begin(), spec.times.end(), time);
  if (it == spec.times.end())
    return spec.samples() - 1;
  const auto k = static_cast<std::size_t>(it - spec.times.begin());
  if (k > 0 && time - spec.times[k - 1] < *it - time)
    return k - 1;
  return k;
}

std::vector<Extremum> find_extrema(std::span<const double> times,
                                   std::span<const double> values,
                                   double relative_prominence,
                                   bool maxima)
{
  std::vector<Extremum> out;
  const std::size_t n = values.size();
  if (n < 3)
    return out;
  const auto sign = maxima ? -1.0 : 1.0;
  auto v = [&](std::size_t i) { return sign * values[i]; };

  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  const double min_prominence = relative_prominence * (*hi - *lo);
  if (!(*hi - *lo > 0))
    return out;

  for (std::size_t i = 1; i + 1 < n; ++i)
  {
    if (!(v(i) < v(i - 1) && v(i) <= v(i + 1)))
      continue;
    // prominence: rise to the highest point before a lower value on each side
    double left = v(i);
    for (std::size_t j = i; j-- > 0;)
    {
      if (v(j) < v(i))
        break;
      left = std::max(left, v(j));
    }
    double right = v(i);
    bool closed = false;
    for (std::size_t j = i + 1; j < n; ++j)
    {
      if (v(j) < v(i))
      {
        closed = true;
        break;
      }
      right = std::max(right, v(j));
    }
    const double prominence = std::min(left, right) - v(i);
    if (prominence < min_prominence && !(closed && left - v(i) >= min_prominence
                                         && right - v(i) >= min_prominence))
      continue;

    Extremum e;
    e.index = i;
    const double a = v(i - 1), b = v(i), c = v(i + 1);
    const double curvature = a - 2 * b + c;
    const double h = times[i + 1] - times[i];
    double shift = 0;
    if (curvature > 0)
      shift = 0.5 * (a - c) / curvature;
    e.time = times[i] + shift * h;
    e.value = sign * (b - 0.25 * (a - c) * shift);
    out.push_back(e);
  }
  return out;
}

}  // namespace

std::vector<Extremum> find_minima(std::span<const double> times,
                                  std::span<const double> values,
                                  double relative_prominence)
{
  return find_extrema(times, values, relative_prominence, false);
}

std::vector<Extremum> find_maxima(std::span<const double> times,
                                  std::span<const double> values,
                                  double relative_prominence)
{
  return find_extrema(times, values, relative_prominence, true);
}

AsymmetryReport asymmetry(const Spectrogram& spec, double time, double floor)
{
  const std::size_t k = nearest_sample(spec, time);
  AsymmetryReport r;
  r.time = spec.times[k];

  double best_plus = -1, best_minus = -1;
  for (int n = 1; n <= spec.n_max; ++n)
  {
    const double plus = spec.population(k, n);
    const double minus = spec.population(k, -n);
    if (plus > best_plus)
    {
      best_plus = plus;
      r.absorption_peak = n;
    }
    if (minus > best_minus)
    {
      best_minus = minus;
      r.emission_peak = -n;
    }
  }
  if (best_plus >= floor && best_minus >= floor)
    r.delta_n = std::abs(r.absorption_peak) - std::abs(r.emission_peak);
  return r;
}

CollapseTiming collapse_timing(const Spectrogram& spec)
{
  const SpreadSeries s = centroid_and_spread(spec);
  CollapseTiming c;
  const auto peaks = find_maxima(s.times, s.variance);
  if (!peaks.empty())
    c.expansion_halt = peaks.front().time;
  for (const Extremum& m : find_minima(s.times, s.variance))
    c.collapses.push_back(m.time);
  return c;
}

double revival_period(const Spectrogram& spec)
{
  const CollapseTiming c = collapse_timing(spec);
  if (c.collapses.size() < 2)
    throw InsufficientSpan("revival period needs at least two collapses, found "
                           + std::to_string(c.collapses.size()));
  return (c.collapses.back() - c.collapses.front())
         / static_cast<double>(c.collapses.size() - 1);
}

std::optional<double> trap_oscillation_period(const Spectrogram& spec)
{
  const SpreadSeries s = centroid_and_spread(spec);
  std::vector<double> turns;
  for (const auto& e : find_maxima(s.times, s.mean))
    turns.push_back(e.time);
  for (const auto& e : find_minima(s.times, s.mean))
    turns.push_back(e.time);
  if (turns.size() < 2)
    return std::nullopt;
  std::sort(turns.begin(), turns.end());
  return 2 * (turns.back() - turns.front())
         / static_cast<double>(turns.size() - 1);
}

std::string_view regime_name(Regime regime)
{
  switch (regime)
  {
  case Regime::RamanNath: return "RamanNath";
  case Regime::Intermediate: return "Intermediate";
  case Regime::Bragg: return "Bragg";
  }
  return "unknown";
}

RegimeLabel classify_rho(double rho)
{
  RegimeLabel r;
  r.rho = rho;
  if (rho < 0.1)
    r.label = Regime::RamanNath;
  else if (rho > 10)
    r.label = Regime::Bragg;
  else
    r.label = Regime::Intermediate;
  return r;
}

RegimeLabel classify_regime(const CouplingSet& cs)
{
  if (!cs.nath_rho)
    throw DomainError("regime is unclassifiable without a field (rho absent)");
  return classify_rho(*cs.nath_rho);
}

BlochReport bloch_oscillation_report(const Spectrogram& spec, double threshold)
{
  BlochReport r;
  if (spec.detuning == 0)
  {
    r.phase_matched = true;
    return r;
  }

  std::vector<double> plus(spec.samples()), minus(spec.samples());
  for (std::size_t k = 0; k < spec.samples(); ++k)
  {
    for (int n = 1; n <= spec.n_max; ++n)
    {
      const double pp = spec.population(k, n);
      const double pm = spec.population(k, -n);
      plus[k] += n * pp;
      minus[k] += n * pm;
      if (pp >= threshold)
        r.max_n_absorption = std::max(r.max_n_absorption, n);
      if (pm >= threshold)
        r.max_n_emission = std::max(r.max_n_emission, n);
    }
  }

  auto period = [&](const std::vector<double>& series) -> std::optional<double> {
    const auto peaks = find_maxima(spec.times, series);
    if (peaks.size() < 2)
      return std::nullopt;
    return (peaks.back().time - peaks.front().time)
           / static_cast<double>(peaks.size() - 1);
  };
  r.period_absorption = period(plus);
  r.period_emission = period(minus);
  return r;
}

int edge_fringe_count(std::span<const double> row, int n_max,
                      const FringeOptions& options)
{
  auto p = [&](int n) { return row[static_cast<std::size_t>(n + n_max)]; };
  int lo = 0, hi = 0;
  bool any = false;
  for (int n = -n_max; n <= n_max; ++n)
  {
    if (p(n) < options.threshold)
      continue;
    if (!any)
      lo = n;
    hi = n;
    any = true;
  }
  if (!any)
    return 0;

  auto is_peak = [&](int n) {
    return n > -n_max && n < n_max && p(n) >= options.threshold
           && p(n) > p(n - 1) && p(n) > p(n + 1);
  };
  int upper = 0, lower = 0;
  if (hi > 0)
    for (int n = std::max(hi - options.edge_band, 1); n <= hi; ++n)
      upper += is_peak(n);
  if (lo < 0)
    for (int n = lo; n <= std::min(lo + options.edge_band, -1); ++n)
      lower += is_peak(n);
  return std::max(upper, lower);
}

FringeReport fringe_check(const Spectrogram& spec, const FringeOptions& options)
{
  FringeReport r;
  std::size_t considered = 0, hits = 0;
  for (std::size_t k = 0; k < spec.samples(); ++k)
  {
    if (spec.times[k] < options.t_start)
      continue;
    ++considered;
    const int count = edge_fringe_count(spec.row(k), spec.n_max, options);
    if (count < options.min_count)
      continue;
    ++hits;
    if (!r.detected)
    {
      r.detected = true;
      r.count = count;
      r.first_detection = spec.times[k];
    }
  }
  if (considered > 0)
    r.detected_fraction = static_cast<double>(hits) / considered;
  return r;
}

PendellosungReport pendellosung_report(const Spectrogram& spec, int n1, int n2)
{
  if (n1 == n2)
    throw DomainError("two-level pair must consist of distinct sidebands");
  PendellosungReport r;
  std::vector<double> transfer(spec.samples()), leak(spec.samples());
  for (std::size_t k = 0; k < spec.samples(); ++k)
  {
    transfer[k] = spec.population(k, n2);
    leak[k] = std::max(0.0, 1 - spec.population(k, n1) - transfer[k]);
  }
  r.max_transfer = *std::max_element(transfer.begin(), transfer.end());
  r.max_leak = *std::max_element(leak.begin(), leak.end());

  // hysteresis on the transfer suppresses the fast virtual-population ripple
  const double enter = 0.75 * r.max_transfer;
  const double leave = 0.25 * r.max_transfer;
  bool inside = false;
  std::size_t best = 0;
  for (std::size_t k = 0; k < spec.samples(); ++k)
  {
    if (!inside && transfer[k] > enter)
    {
      inside = true;
      best = k;
    }
    if (inside)
    {
      if (transfer[k] > transfer[best])
        best = k;
      if (transfer[k] < leave)
      {
        inside = false;
        r.transfer_maxima.push_back(spec.times[best]);
      }
    }
  }

  if (r.transfer_maxima.size() >= 2)
  {
    std::vector<double> spacing;
    for (std::size_t i = 1; i < r.transfer_maxima.size(); ++i)
      spacing.push_back(r.transfer_maxima[i] - r.transfer_maxima[i - 1]);
    const double mean = std::accumulate(spacing.begin(), spacing.end(), 0.0)
                        / static_cast<double>(spacing.size());
    const auto [lo, hi] = std::minmax_element(spacing.begin(), spacing.end());
    r.period = mean;
    r.spacing_spread = (*hi - *lo) / mean;

    double first = 0;
    for (std::size_t k = 0; k < spec.samples() && spec.times[k] <= mean; ++k)
      first = std::max(first, leak[k]);
    r.max_leak_first_period = first;
  }
  return r;
}

}  // namespace etrap
