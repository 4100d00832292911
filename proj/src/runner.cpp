#include "etrap/runner.hpp"

#include "etrap/constants.hpp"
#include "etrap/errors.hpp"
#include "etrap/io.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <thread>

namespace etrap
{

using nlohmann::json;

namespace
{

int gaussian_half_extent(const RunConfig& c, double sigma)
{
  // |a|^2 ~ exp(-x^2 / 2 sigma^2) falls below 1e-12 of the peak at 7.43 sigma
  return std::abs(c.initial.center) + static_cast<int>(std::ceil(8 * sigma)) + 2;
}

double gaussian_sigma(const RunConfig& c)
{
  return gaussian_sigma_from_energy_width(
      c.initial.width, c.resolved_photon_energy(), c.initial.convention);
}

}  // namespace

LadderState make_initial_state(const RunConfig& c, int n_max)
{
  if (c.initial.kind == InitialKind::PlaneWave)
    return initial_plane_wave(n_max, c.initial.center);
  return initial_gaussian(n_max, gaussian_sigma(c), c.initial.center,
                          c.initial.chirp, c.initial.offset_phase);
}

int resolve_ladder_size(const RunConfig& c)
{
  if (c.n_max)
    return *c.n_max;

  int seed_size = std::max(1, std::abs(c.initial.center) + 1);
  if (c.initial.kind == InitialKind::Gaussian)
    seed_size = gaussian_half_extent(c, gaussian_sigma(c));

  TruncationPolicy policy;
  policy.start = std::max(policy.start, seed_size);
  return adaptive_truncation(c.electron(), c.field(), c.model,
                             make_initial_state(c, seed_size),
                             c.propagation.t_end, policy);
}

SimulationResult run_simulation(const RunConfig& config)
{
  config.validate();
  SimulationResult r;
  r.config = config;
  r.electron = config.electron();
  r.field = config.field();
  r.couplings = coupling_set(r.electron, r.field);

  const int n_max = resolve_ladder_size(config);
  r.config.n_max = n_max;

  const LadderHamiltonian h = build_hamiltonian(r.electron, r.field,
                                                config.model, n_max);
  r.spectrogram = propagate(h, make_initial_state(config, n_max),
                            config.propagation);

  auto& meta = r.spectrogram.metadata;
  auto num = [](double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  meta["electron_energy_eV"] = num(r.electron.kinetic_energy);
  meta["field_amplitude_V_per_nm"] = num(r.field.amplitude);
  meta["photon_energy_eV"] = num(r.field.photon_energy);
  meta["wavevector_per_nm"] = num(r.field.wavevector);
  meta["phase_rad"] = num(r.field.initial_phase);
  meta["matching"] = std::string(matching_name(config.matching.mode));
  meta["model"] = config.model.kind == ModelKind::Full ? "full" : "simplified";
  meta["method"] = std::string(method_name(config.propagation.method));
  meta["initial"] = config.initial.kind == InitialKind::Gaussian ? "gaussian"
                                                                 : "plane_wave";
  meta["tool_version"] = std::string(tool_version);
  return r;
}

std::string report_json(const SimulationResult& r)
{
  const Spectrogram& spec = r.spectrogram;
  json out;
  out["version"] = std::string(tool_version);
  out["sha256"] = content_hash(spec);
  out["n_max"] = spec.n_max;
  out["couplings"] = {
      {"beta_eV", r.couplings.beta},
      {"kappa_abs_eV", r.couplings.kappa_mag},
      {"kappa_arg_rad", r.couplings.kappa_phase},
      {"delta_eV_nm", r.couplings.delta},
      {"ponderomotive_eV", r.couplings.ponderomotive},
      {"detuning_eV", spec.detuning},
  };
  if (r.couplings.nath_rho)
  {
    const RegimeLabel label = classify_rho(*r.couplings.nath_rho);
    out["regime"] = {{"rho", label.rho},
                     {"label", std::string(regime_name(label.label))}};
  }

  double drift = 0;
  for (double d : spec.norm_drift)
    drift = std::max(drift, std::abs(d));
  out["max_norm_drift"] = drift;

  const TrapReport trap
      = trap_width(spec, r.config.analysis.threshold, r.config.analysis.window);
  out["trap"] = {{"width_eV", trap.width},
                 {"n_min", trap.n_min},
                 {"n_max", trap.n_max},
                 {"threshold", trap.threshold},
                 {"window_fs", {trap.window.start, trap.window.end}},
                 {"degenerate", trap.degenerate}};

  const CollapseTiming collapse = collapse_timing(spec);
  json timing;
  timing["collapses_fs"] = collapse.collapses;
  timing["expansion_halt_fs"]
      = collapse.expansion_halt ? json(*collapse.expansion_halt) : json();
  timing["revival_period_fs"]
      = collapse.collapses.size() >= 2
            ? json((collapse.collapses.back() - collapse.collapses.front())
                   / double(collapse.collapses.size() - 1))
            : json();
  out["collapse"] = timing;

  if (!r.field.phase_matched)
  {
    const BlochReport b = bloch_oscillation_report(spec,
                                                   r.config.analysis.threshold);
    auto opt = [](const std::optional<double>& v) {
      return v ? json(*v) : json();
    };
    out["bloch"] = {{"period_absorption_fs", opt(b.period_absorption)},
                    {"period_emission_fs", opt(b.period_emission)},
                    {"max_n_absorption", b.max_n_absorption},
                    {"max_n_emission", b.max_n_emission}};
  }
  return out.dump(1) + "\n";
}

SweepAxis sweep_axis_from_name(std::string_view name)
{
  static const std::map<std::string_view, SweepAxis> names{
      {"energy", SweepAxis::Energy},
      {"amplitude", SweepAxis::Amplitude},
      {"phase", SweepAxis::Phase},
      {"photon_energy", SweepAxis::PhotonEnergy}};
  const auto it = names.find(name);
  if (it == names.end())
    throw ParseError("axis", "'" + std::string(name)
                                 + "' is not one of energy, amplitude, phase, "
                                   "photon_energy");
  return it->second;
}

Observable observable_from_name(std::string_view name)
{
  static const std::map<std::string_view, Observable> names{
      {"trap_width", Observable::TrapWidth},
      {"revival_period", Observable::RevivalPeriod},
      {"rho", Observable::Rho}};
  const auto it = names.find(name);
  if (it == names.end())
    throw ParseError("observable", "'" + std::string(name)
                                       + "' is not one of trap_width, "
                                         "revival_period, rho");
  return it->second;
}

std::string_view axis_column(SweepAxis axis)
{
  switch (axis)
  {
  case SweepAxis::Energy: return "energy_eV";
  case SweepAxis::Amplitude: return "amplitude_V_per_nm";
  case SweepAxis::Phase: return "phase_rad";
  case SweepAxis::PhotonEnergy: return "photon_energy_eV";
  }
  return "parameter";
}

std::string_view observable_column(Observable observable)
{
  switch (observable)
  {
  case Observable::TrapWidth: return "trap_width_eV";
  case Observable::RevivalPeriod: return "revival_period_fs";
  case Observable::Rho: return "rho";
  }
  return "value";
}

RunConfig with_parameter(const RunConfig& base, SweepAxis axis, double value)
{
  RunConfig c = base;
  switch (axis)
  {
  case SweepAxis::Energy: c.kinetic_energy = value; break;
  case SweepAxis::Amplitude: c.field_amplitude = value; break;
  case SweepAxis::Phase: c.phase = value; break;
  case SweepAxis::PhotonEnergy:
    c.photon_energy = value;
    c.wavelength.reset();
    break;
  }
  return c;
}

unsigned sweep_threads()
{
  if (const char* env = std::getenv("ETRAP_THREADS"))
  {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && n > 0)
      return static_cast<unsigned>(n);
    throw DomainError("ETRAP_THREADS must be a positive integer");
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace
{

SweepRow evaluate(const RunConfig& base, SweepAxis axis, double parameter,
                  Observable observable)
{
  SweepRow row;
  row.parameter = parameter;
  const RunConfig c = with_parameter(base, axis, parameter);
  c.validate();
  if (observable == Observable::Rho)
  {
    const CouplingSet cs = coupling_set(c.electron(), c.field());
    row.value = classify_regime(cs).rho;
    return row;
  }
  const SimulationResult r = run_simulation(c);
  if (observable == Observable::TrapWidth)
  {
    const TrapReport t = trap_width(r.spectrogram, c.analysis.threshold,
                                    c.analysis.window);
    row.value = t.width;
    row.n_min = t.n_min;
    row.n_max = t.n_max;
  }
  else
  {
    row.value = revival_period(r.spectrogram);
  }
  return row;
}

}  // namespace

SweepTable sweep(const RunConfig& base, SweepAxis axis,
                 const std::vector<double>& grid, Observable observable,
                 unsigned threads)
{
  if (grid.empty())
    throw DomainError("sweep grid is empty");
  SweepTable table;
  table.axis = axis;
  table.observable = observable;
  table.rows.resize(grid.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < grid.size(); i = next++)
    {
      SweepRow& row = table.rows[i];
      try
      {
        row = evaluate(base, axis, grid[i], observable);
      }
      catch (const Error& e)
      {
        row = SweepRow{};
        row.parameter = grid[i];
        row.error = std::string(category_name(e.category())) + ": " + e.what();
      }
      catch (const std::exception& e)
      {
        row = SweepRow{};
        row.parameter = grid[i];
        row.error = std::string("internal: ") + e.what();
      }
      row.index = i;
    }
  };

  const unsigned n = std::min<std::size_t>(threads ? threads : sweep_threads(),
                                           grid.size());
  if (n <= 1)
  {
    worker();
  }
  else
  {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n; ++t)
      pool.emplace_back(worker);
    for (auto& t : pool)
      t.join();
  }

  const bool any_ok = std::any_of(table.rows.begin(), table.rows.end(),
                                  [](const SweepRow& r) { return r.error.empty(); });
  if (!any_ok)
    throw NumericalError("every sweep point failed; first: "
                         + table.rows.front().error);
  return table;
}

std::string sweep_csv(const SweepTable& table)
{
  std::string out = "index," + std::string(axis_column(table.axis)) + ","
                    + std::string(observable_column(table.observable))
                    + ",n_min,n_max,status\n";
  char buf[64];
  for (const SweepRow& r : table.rows)
  {
    out += std::to_string(r.index);
    std::snprintf(buf, sizeof buf, ",%.9g,", r.parameter);
    out += buf;
    if (r.value)
    {
      std::snprintf(buf, sizeof buf, "%.9g", *r.value);
      out += buf;
    }
    out += ",";
    if (r.n_min)
      out += std::to_string(*r.n_min);
    out += ",";
    if (r.n_max)
      out += std::to_string(*r.n_max);
    out += ",";
    if (r.error.empty())
      out += "ok";
    else
    {
      std::string msg = r.error;
      for (char& ch : msg)
        if (ch == ',' || ch == '\n')
          ch = ';';
      out += "error[" + msg + "]";
    }
    out += '\n';
  }
  return out;
}

}  // namespace etrap
