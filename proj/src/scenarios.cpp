#include "etrap/scenarios.hpp"

#include "etrap/constants.hpp"
#include "etrap/errors.hpp"
#include "etrap/io.hpp"

#include <cmath>
#include <cstdio>
#include <map>

namespace etrap
{

namespace fs = std::filesystem;

namespace
{

constexpr std::string_view fig1_field = R"(
[electron]
energy = 100 eV
[field]
amplitude = 1 V/nm
photon_energy = 1.54 eV
phase = 0 rad
)";

const std::map<std::string_view, std::string> presets{
    {"fig1c", std::string(fig1_field) + R"(
[matching]
phase_matched = true
[initial]
kind = gaussian
width = 7.5 eV
width_convention = fwhm
[propagation]
t_end = 90 fs
sample_interval = 0.1 fs
)"},
    {"fig1d", std::string(fig1_field) + R"(
[matching]
phase_matched = true
[initial]
kind = plane_wave
[propagation]
t_end = 30 fs
sample_interval = 0.05 fs
)"},
    {"fig2b", R"(
[electron]
energy = 16 eV
[field]
amplitude = 1e8 V/m
photon_energy = 4 eV
phase = 0 rad
[matching]
phase_matched = true
[model]
n_max = 12
[initial]
kind = plane_wave
center = -1
[propagation]
t_end = 4200 fs
sample_interval = 1 fs
)"},
    {"figS1", std::string(fig1_field) + R"(
[matching]
grating_period = 23 nm
[initial]
kind = plane_wave
[propagation]
t_end = 40 fs
sample_interval = 0.02 fs
)"},
};

std::vector<double> linear_grid(double lo, double hi, std::size_t n)
{
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i)
    g[i] = lo + (hi - lo) * double(i) / double(n - 1);
  return g;
}

std::vector<double> log_grid(double lo, double hi, std::size_t n)
{
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i)
    g[i] = lo * std::pow(hi / lo, double(i) / double(n - 1));
  return g;
}

RunConfig sweep_base(bool wavepacket)
{
  RunConfig c = scenario_config(wavepacket ? "fig1c" : "fig1d");
  c.propagation.t_end = 40;
  c.propagation.sample_interval = 0.1;
  return c;
}

std::string fmt(double v)
{
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

}  // namespace

const std::vector<std::string>& figure_names()
{
  static const std::vector<std::string> names{
      "fig1c", "fig1d", "fig2a", "fig2b", "fig3a", "fig3b", "fig3c", "figS1"};
  return names;
}

bool is_figure(std::string_view name)
{
  for (const auto& n : figure_names())
    if (n == name)
      return true;
  return false;
}

RunConfig scenario_config(std::string_view name)
{
  const auto it = presets.find(name);
  if (it == presets.end())
    throw DomainError("no single-run preset named '" + std::string(name)
                      + "' (expected fig1c, fig1d, fig2b or figS1)");
  return parse_config(it->second);
}

std::vector<FigureSweep> figure_sweeps(std::string_view name)
{
  std::vector<FigureSweep> out;
  if (name == "fig3a" || name == "fig3b")
  {
    const bool energy = name == "fig3a";
    for (bool wavepacket : {true, false})
    {
      FigureSweep s;
      s.label = wavepacket ? "wavepacket" : "plane_wave";
      s.base = sweep_base(wavepacket);
      s.axis = energy ? SweepAxis::Energy : SweepAxis::Amplitude;
      s.grid = energy ? linear_grid(20, 200, 10) : linear_grid(0.2, 2.0, 10);
      out.push_back(std::move(s));
    }
  }
  else if (name == "fig3c")
  {
    FigureSweep s;
    s.label = "wavepacket";
    s.base = sweep_base(true);
    s.axis = SweepAxis::Phase;
    // (-pi, pi] in steps of pi/6
    for (int i = -5; i <= 6; ++i)
      s.grid.push_back(i * constants::pi / 6);
    out.push_back(std::move(s));
  }
  else
  {
    throw DomainError("no sweep preset named '" + std::string(name) + "'");
  }
  return out;
}

RhoMap fig2a_rho_map(std::size_t points)
{
  if (points < 2)
    throw DomainError("rho map needs at least two points per axis");
  RhoMap m;
  m.photon_energies = log_grid(0.5, 20, points);
  m.amplitudes = log_grid(1e-3, 10, points);
  const ElectronParams e = electron_from_energy(100);
  for (double hw : m.photon_energies)
    for (double amp : m.amplitudes)
    {
      const FieldParams f = make_phase_matched_field(e, amp, hw, 0);
      m.rho.push_back(*coupling_set(e, f).nath_rho);
    }
  return m;
}

std::vector<fs::path> write_figure(std::string_view name,
                                   const fs::path& directory, unsigned threads)
{
  if (!is_figure(name))
    throw DomainError("unknown figure '" + std::string(name) + "'");

  std::error_code ec;
  fs::create_directories(directory, ec);
  if (ec)
    throw IoError(directory.string(), "cannot create directory: " + ec.message());

  std::vector<fs::path> written;
  const std::string stem(name);

  if (presets.count(name))
  {
    const RunConfig config = scenario_config(name);
    const SimulationResult r = run_simulation(config);
    const fs::path csv = directory / (stem + "_spectrogram.csv");
    const fs::path report = directory / (stem + "_report.json");
    const fs::path echo = directory / (stem + ".conf");
    export_spectrogram(r.spectrogram, csv, ExportFormat::DelimitedText);
    write_atomic(report, report_json(r));
    write_atomic(echo, echo_config(r.config));

    const SpreadSeries s = centroid_and_spread(r.spectrogram,
                                               config.analysis.threshold);
    std::string moments = "t_fs,mean_n,variance_n,n_min,n_max\n";
    for (std::size_t k = 0; k < s.times.size(); ++k)
      moments += fmt(s.times[k]) + "," + fmt(s.mean[k]) + ","
                 + fmt(s.variance[k]) + "," + std::to_string(s.n_min[k]) + ","
                 + std::to_string(s.n_max[k]) + "\n";
    const fs::path mom = directory / (stem + "_moments.csv");
    write_atomic(mom, moments);
    written = {csv, mom, report, echo};
  }
  else if (name == "fig2a")
  {
    const RhoMap m = fig2a_rho_map();
    std::string out = "photon_energy_eV,amplitude_V_per_nm,rho,log10_rho,regime\n";
    std::size_t k = 0;
    for (double hw : m.photon_energies)
      for (double amp : m.amplitudes)
      {
        const double rho = m.rho[k++];
        out += fmt(hw) + "," + fmt(amp) + "," + fmt(rho) + ","
               + fmt(std::log10(rho)) + ","
               + std::string(regime_name(classify_rho(rho).label)) + "\n";
      }
    const fs::path p = directory / "fig2a_rho_map.csv";
    write_atomic(p, out);
    written.push_back(p);
  }
  else
  {
    for (const FigureSweep& s : figure_sweeps(name))
    {
      const SweepTable t = sweep(s.base, s.axis, s.grid, s.observable, threads);
      const fs::path p = directory / (stem + "_" + s.label + ".csv");
      write_atomic(p, sweep_csv(t));
      written.push_back(p);
    }
  }
  return written;
}

}  // namespace etrap
