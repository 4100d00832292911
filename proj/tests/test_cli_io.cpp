#include "etrap/analysis.hpp"
#include "etrap/config.hpp"
#include "etrap/constants.hpp"
#include "etrap/oracles.hpp"
#include "etrap/errors.hpp"
#include "etrap/io.hpp"
#include "etrap/runner.hpp"
#include "etrap/scenarios.hpp"

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <sys/wait.h>

using namespace etrap;
using doctest::Approx;
namespace fs = std::filesystem;

namespace
{

const char* minimal = R"(
electron.energy = 100 eV
field.amplitude = 1 V/nm
field.photon_energy = 1.54 eV
matching.phase_matched = true
initial.kind = plane_wave
propagation.t_end = 20 fs
)";

fs::path scratch(const std::string& name)
{
  const fs::path p = fs::temp_directory_path() / ("etrap_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string expect_parse_error(const std::string& text)
{
  try
  {
    parse_config(text);
  }
  catch (const ParseError& e)
  {
    return e.key;
  }
  return "<no error>";
}

int run_cli(const std::string& args)
{
  const std::string cmd = std::string(ETRAP_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("minimal config parses into the plane-wave run")
{
  const RunConfig c = parse_config(minimal);
  CHECK(c.kinetic_energy == 100);
  CHECK(c.field_amplitude == 1);
  CHECK(*c.photon_energy == 1.54);
  CHECK(c.matching.mode == MatchingMode::PhaseMatched);
  CHECK(c.initial.kind == InitialKind::PlaneWave);
  CHECK(c.propagation.t_end == 20);
  CHECK(c.model.kind == ModelKind::Full);
  CHECK(c.model.include_ponderomotive);
  CHECK_FALSE(c.n_max.has_value());
}

TEST_CASE("section headers and unit conversion")
{
  const RunConfig c = parse_config(R"(
[electron]
energy = 0.016 keV   # 16 eV
[field]
amplitude = 1e8 V/m
wavelength = 800 nm
[matching]
grating_period = 23 nm
[model]
kind = simplified
)");
  CHECK(c.kinetic_energy == Approx(16));
  CHECK(c.field_amplitude == Approx(0.1));
  CHECK(c.resolved_photon_energy() == Approx(1.5498).epsilon(1e-4));
  CHECK(c.matching.mode == MatchingMode::GratingPeriod);
  CHECK_FALSE(c.model.include_ponderomotive);
  CHECK_FALSE(c.field().phase_matched);
}

TEST_CASE("missing unit names the key")
{
  std::string text = minimal;
  text.replace(text.find("1 V/nm"), 6, "1");
  CHECK(expect_parse_error(text) == "field.amplitude");
}

TEST_CASE("unit-stripped config fails")
{
  CHECK(expect_parse_error("electron.energy = 100\n") == "electron.energy");
}

TEST_CASE("empty field amplitude names the key")
{
  std::string text = minimal;
  text.replace(text.find("1 V/nm"), 6, "");
  CHECK(expect_parse_error(text) == "field.amplitude");
}

TEST_CASE("unknown keys, units and duplicates are rejected")
{
  CHECK(expect_parse_error(std::string(minimal) + "field.colour = red\n") == "field.colour");
  std::string text = minimal;
  text.replace(text.find("20 fs"), 5, "20 s");
  CHECK(expect_parse_error(text) == "propagation.t_end");
  CHECK(expect_parse_error(std::string(minimal) + "electron.energy = 5 eV\n")
        == "electron.energy");
}

TEST_CASE("conflicting matching modes are a validation error")
{
  try
  {
    parse_config(std::string(minimal) + "matching.grating_period = 23 nm\n");
    FAIL("expected a validation error");
  }
  catch (const Error& e)
  {
    CHECK(e.category() == ErrorCategory::Validation);
    CHECK(dynamic_cast<const ParseError*>(&e) == nullptr);
  }
}

TEST_CASE("photon energy and wavelength are mutually exclusive")
{
  CHECK_THROWS_AS(parse_config(std::string(minimal) + "field.wavelength = 800 nm\n"),
                  DomainError);
}

TEST_CASE("config echo round-trips bit-exactly")
{
  RunConfig c = parse_config(std::string(minimal) + R"(
field.phase = 0.7853981633974483 rad
initial.offset_phase = 0.1 rad
model.detuning = 0.013 eV
analysis.window_start = 2 fs
analysis.window_end = 9.5 fs
seed = 42
)");
  c.field_amplitude = 0.1 + 0.2;  // not representable in short decimal form
  const RunConfig back = parse_config(echo_config(c));
  CHECK(back.field_amplitude == c.field_amplitude);
  CHECK(back.phase == c.phase);
  CHECK(*back.model.detuning_override == *c.model.detuning_override);
  CHECK(back.analysis.window->end == 9.5);
  CHECK(back.seed == 42);
  CHECK(echo_config(back) == echo_config(c));
}

TEST_CASE("CSV layout and round trip")
{
  RunConfig c = parse_config(minimal);
  c.n_max = 24;
  c.propagation.t_end = 2;
  const SimulationResult r = run_simulation(c);
  const std::string csv = spectrogram_csv(r.spectrogram);
  const std::string header = csv.substr(0, csv.find('\n'));
  CHECK(header.rfind("t_fs,n=-24,", 0) == 0);
  CHECK(header.substr(header.size() - 6) == ",n=+24");
  CHECK(std::count(header.begin(), header.end(), ',') + 1 == 2 * 24 + 2);

  const fs::path dir = scratch("csv");
  export_spectrogram(r.spectrogram, dir / "s.csv", ExportFormat::DelimitedText);
  export_spectrogram(r.spectrogram, dir / "s.json", ExportFormat::StructuredRecord);
  const Spectrogram a = import_spectrogram(dir / "s.csv");
  const Spectrogram b = import_spectrogram(dir / "s.json");
  REQUIRE(a.populations.size() == r.spectrogram.populations.size());
  double err_csv = 0, err_json = 0;
  for (std::size_t i = 0; i < a.populations.size(); ++i)
  {
    err_csv = std::max(err_csv, std::abs(a.populations[i] - r.spectrogram.populations[i]));
    err_json = std::max(err_json, std::abs(b.populations[i] - r.spectrogram.populations[i]));
  }
  CHECK(err_csv < 1e-9);
  CHECK(err_json == 0);
  CHECK(content_hash(b) == content_hash(r.spectrogram));
  CHECK(b.metadata.at("electron_energy_eV") == "100");
  CHECK(!fs::exists(dir / "s.csv.tmp"));
}

TEST_CASE("import failures carry the path")
{
  const fs::path dir = scratch("bad");
  write_atomic(dir / "x.csv", "time,a\n1,2\n");
  try
  {
    import_spectrogram(dir / "x.csv");
    FAIL("expected an I/O error");
  }
  catch (const IoError& e)
  {
    CHECK(std::string(e.what()).find("x.csv") != std::string::npos);
    CHECK(e.category() == ErrorCategory::Io);
  }
  CHECK_THROWS_AS(import_spectrogram(dir / "missing.json"), IoError);
  CHECK_THROWS_AS(write_atomic("/nonexistent_dir/x.csv", "a"), IoError);
}

TEST_CASE("identical configs give identical hashes and replay reproduces them")
{
  RunConfig c = parse_config(minimal);
  c.propagation.t_end = 5;
  const SimulationResult a = run_simulation(c);
  const SimulationResult b = run_simulation(c);
  CHECK(content_hash(a.spectrogram) == content_hash(b.spectrogram));

  const fs::path dir = scratch("bundle");
  const OutputBundle bundle = write_bundle(dir, a.spectrogram, echo_config(a.config),
                                           report_json(a));
  CHECK(fs::exists(bundle.spectrogram));
  CHECK(fs::exists(bundle.record));
  CHECK(fs::exists(bundle.report));
  const SimulationResult replay = run_simulation(load_config(bundle.config_echo));
  CHECK(content_hash(replay.spectrogram) == bundle.hash);
}

TEST_CASE("sweep rows are ordered by grid index and independent of threads")
{
  RunConfig base = parse_config(minimal);
  base.propagation.t_end = 6;
  base.n_max = 40;
  const std::vector<double> grid{1.0, 0.25, 0.5, 2.0};
  const SweepTable one = sweep(base, SweepAxis::Amplitude, grid, Observable::TrapWidth, 1);
  const SweepTable four = sweep(base, SweepAxis::Amplitude, grid, Observable::TrapWidth, 4);
  CHECK(sweep_csv(one) == sweep_csv(four));
  for (std::size_t i = 0; i < grid.size(); ++i)
  {
    CHECK(one.rows[i].index == i);
    CHECK(one.rows[i].parameter == grid[i]);
  }
  CHECK(*one.rows[3].value > *one.rows[1].value);
}

TEST_CASE("sweep records failed points and fails only when all do")
{
  const RunConfig base = parse_config(minimal);
  const SweepTable t = sweep(base, SweepAxis::Energy, {100, -5}, Observable::Rho, 2);
  CHECK(t.rows[0].error.empty());
  CHECK(t.rows[1].error.rfind("validation", 0) == 0);
  CHECK(sweep_csv(t).find("error[") != std::string::npos);
  CHECK_THROWS_AS(sweep(base, SweepAxis::Energy, {-1, -5}, Observable::Rho, 2),
                  NumericalError);
  CHECK_THROWS_AS(sweep(base, SweepAxis::Energy, {}, Observable::Rho), DomainError);
}

TEST_CASE("energy sweep re-solves phase matching per point")
{
  const RunConfig base = parse_config(minimal);
  for (double e : {20.0, 200.0})
  {
    const RunConfig c = with_parameter(base, SweepAxis::Energy, e);
    CHECK(coupling_set(c.electron(), c.field()).detuning == 0);
  }
}

TEST_CASE("figure names and presets")
{
  CHECK(figure_names().size() == 8);
  CHECK(is_figure("figS1"));
  CHECK_FALSE(is_figure("fig9"));
  CHECK_THROWS_AS(write_figure("fig9", scratch("fig")), DomainError);
  const RunConfig fig2b = scenario_config("fig2b");
  CHECK(fig2b.field_amplitude == Approx(0.1));
  CHECK(classify_regime(coupling_set(fig2b.electron(), fig2b.field())).label
        == Regime::Bragg);
  const RunConfig s1 = scenario_config("figS1");
  CHECK(s1.matching.mode == MatchingMode::GratingPeriod);
  CHECK(s1.matching.value == 23);
}

TEST_CASE("fig2a writes a rho map")
{
  const auto files = write_figure("fig2a", scratch("fig2a"));
  REQUIRE(files.size() == 1);
  const std::string text = read_file(files[0]);
  CHECK(text.rfind("photon_energy_eV,amplitude_V_per_nm,rho", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 1 + 25 * 25);
}

TEST_CASE("command-line exit codes")
{
  const fs::path dir = scratch("cli");
  write_atomic(dir / "ok.conf", minimal);
  write_atomic(dir / "bad.conf", "electron.energy = 100\n");
  CHECK(run_cli("figure nonsense -o " + (dir / "f").string()) == 2);
  CHECK(run_cli("classify " + (dir / "ok.conf").string()) == 0);
  CHECK(run_cli("classify " + (dir / "bad.conf").string()) == 2);
  CHECK(run_cli("classify " + (dir / "missing.conf").string()) == 4);
  CHECK(run_cli("no-such-command") == 2);
  CHECK(run_cli("simulate " + (dir / "ok.conf").string() + " -o " + (dir / "out").string())
        == 0);
  CHECK(fs::exists(dir / "out" / "spectrogram.csv"));
}

TEST_CASE("Bragg transfer runs through sequential single-photon hops")
{
  RunConfig c = scenario_config("fig2b");
  c.propagation.t_end = 1500;
  const int N = *c.n_max;
  const LadderState s0 = make_initial_state(c, N);
  const LadderHamiltonian full = build_hamiltonian(c.electron(), c.field(), c.model, N);

  ModelVariant no_up = c.model;
  no_up.include_ponderomotive = false;
  const PendellosungReport a = pendellosung_report(
      propagate(build_hamiltonian(c.electron(), c.field(), no_up, N), s0, c.propagation), -1, 1);
  CHECK(a.max_transfer > 0.95);

  std::vector<double> d(full.diagonal().begin(), full.diagonal().end());
  std::vector<cplx> none(full.hop1().size());
  std::vector<cplx> h2(full.hop2().begin(), full.hop2().end());
  const PendellosungReport b = pendellosung_report(
      propagate(LadderHamiltonian::from_bands(N, d, none, h2), s0, c.propagation), -1, 1);
  CHECK(b.max_transfer < 0.01);

  // first transfer maximum at half the two-level period pi hbar / Omega_eff
  const double omega = std::abs(bragg_effective_coupling(
      std::abs(full.element(-1, 0)), std::abs(full.element(0, 1)),
      full.element(1, 1).real(), full.element(0, 0).real()));
  REQUIRE(a.transfer_maxima.size() == 1);
  CHECK(a.transfer_maxima[0] == Approx(constants::pi * constants::hbar / (2 * omega)).epsilon(0.05));
}
