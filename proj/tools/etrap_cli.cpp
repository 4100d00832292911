// etrap: command-line front end for ladder simulations, sweeps and figures.

#include "etrap/checks.hpp"
#include "etrap/config.hpp"
#include "etrap/errors.hpp"
#include "etrap/io.hpp"
#include "etrap/runner.hpp"
#include "etrap/scenarios.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <sstream>

namespace
{

using namespace etrap;

RunConfig config_or_default(const std::string& path)
{
  return path.empty() ? scenario_config("fig1d") : load_config(path);
}

std::vector<double> parse_grid(const std::string& spec)
{
  // "lo:hi:count" or a comma-separated list
  std::vector<double> grid;
  auto number = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0;
    try
    {
      v = std::stod(s, &used);
    }
    catch (const std::exception&)
    {
      used = 0;
    }
    if (used != s.size() || s.empty())
      throw ParseError("grid", "'" + s + "' is not a number");
    return v;
  };

  if (spec.find(':') != std::string::npos)
  {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    for (std::string p; std::getline(ss, p, ':');)
      parts.push_back(p);
    if (parts.size() != 3)
      throw ParseError("grid", "range form is lo:hi:count");
    const double lo = number(parts[0]), hi = number(parts[1]);
    const double count = number(parts[2]);
    if (count < 1 || count != static_cast<int>(count))
      throw ParseError("grid", "count must be a positive integer");
    const int n = static_cast<int>(count);
    for (int i = 0; i < n; ++i)
      grid.push_back(n == 1 ? lo : lo + (hi - lo) * i / (n - 1));
    return grid;
  }
  std::stringstream ss(spec);
  for (std::string p; std::getline(ss, p, ',');)
    grid.push_back(number(p));
  if (grid.empty())
    throw ParseError("grid", "empty grid");
  return grid;
}

int cmd_simulate(const std::string& config_path, const std::string& out_dir)
{
  const RunConfig config = load_config(config_path);
  const SimulationResult r = run_simulation(config);
  const OutputBundle b = write_bundle(out_dir, r.spectrogram,
                                      echo_config(r.config), report_json(r));
  std::printf("wrote %s (N = %d, %zu samples)\nsha256 %s\n",
              b.directory.string().c_str(), r.spectrogram.n_max,
              r.spectrogram.samples(), b.hash.c_str());
  return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& axis,
              const std::string& grid, const std::string& observable,
              const std::string& out)
{
  const RunConfig base = load_config(config_path);
  const SweepTable t = sweep(base, sweep_axis_from_name(axis), parse_grid(grid),
                             observable_from_name(observable));
  const std::string csv = sweep_csv(t);
  if (out.empty())
    std::fputs(csv.c_str(), stdout);
  else
  {
    write_atomic(out, csv);
    std::printf("wrote %s (%zu rows)\n", out.c_str(), t.rows.size());
  }
  return 0;
}

int cmd_classify(const std::string& config_path)
{
  const RunConfig c = config_or_default(config_path);
  const RegimeLabel label = classify_regime(coupling_set(c.electron(), c.field()));
  std::printf("rho=%.6g label=%s\n", label.rho,
              std::string(regime_name(label.label)).c_str());
  return 0;
}

int cmd_oracle_check(const std::string& config_path, int systems)
{
  const RunConfig c = config_or_default(config_path);
  bool ok = true;
  for (const OracleCheck& check : run_oracle_suites(c, systems))
  {
    std::printf("%s %-22s %.3e < %.1e  %s\n", check.passed ? "PASS" : "FAIL",
                check.name.c_str(), check.value, check.limit,
                check.detail.c_str());
    ok = ok && check.passed;
  }
  if (!ok)
  {
    std::fprintf(stderr, "error[numerical]: oracle suite failed\n");
    return exit_code(ErrorCategory::Numerical);
  }
  return 0;
}

int cmd_figure(const std::string& name, const std::string& out_dir)
{
  if (!is_figure(name))
  {
    std::string names;
    for (const auto& n : figure_names())
      names += (names.empty() ? "" : ", ") + n;
    std::fprintf(stderr, "error[usage]: unknown figure '%s' (expected one of %s)\n",
                 name.c_str(), names.c_str());
    return 2;
  }
  for (const auto& path : write_figure(name, out_dir))
    std::printf("wrote %s\n", path.string().c_str());
  return 0;
}

int cmd_echo(const std::string& config_path)
{
  std::fputs(echo_config(load_config(config_path)).c_str(), stdout);
  return 0;
}

}  // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Spectral dynamics of slow electrons in phase-matched light"};
  app.set_version_flag("--version", std::string(etrap::tool_version));
  app.require_subcommand(1);

  std::string config, out, axis, grid, observable = "trap_width", figure;
  int systems = 50;

  auto* simulate = app.add_subcommand("simulate", "run one configuration");
  simulate->add_option("config", config, "config file")->required();
  simulate->add_option("-o,--out", out, "output directory")->required();

  auto* sweep = app.add_subcommand("sweep", "scan one parameter");
  sweep->add_option("config", config, "base config file")->required();
  sweep->add_option("--axis", axis, "energy | amplitude | phase | photon_energy")
      ->required();
  sweep->add_option("--grid", grid, "lo:hi:count or comma list (axis units)")
      ->required();
  sweep->add_option("--observable", observable,
                    "trap_width | revival_period | rho");
  sweep->add_option("-o,--out", out, "table file (stdout when omitted)");

  auto* classify = app.add_subcommand("classify", "print the Nath regime");
  classify->add_option("config", config, "config file (default: fig1d preset)");

  auto* oracle = app.add_subcommand("oracle-check", "run the oracle suites");
  oracle->add_option("config", config, "config file (default: fig1d preset)");
  oracle->add_option("--systems", systems, "random banded systems")
      ->check(CLI::PositiveNumber);

  auto* fig = app.add_subcommand("figure", "write the data behind a figure");
  fig->add_option("name", figure, "fig1c fig1d fig2a fig2b fig3a fig3b fig3c figS1")
      ->required();
  fig->add_option("-o,--out", out, "output directory")->default_val("figures");

  auto* echo = app.add_subcommand("echo-config", "print the canonical config");
  echo->add_option("config", config, "config file")->required();

  try
  {
    app.parse(argc, argv);
  }
  catch (const CLI::ParseError& e)
  {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try
  {
    if (*simulate)
      return cmd_simulate(config, out);
    if (*sweep)
      return cmd_sweep(config, axis, grid, observable, out);
    if (*classify)
      return cmd_classify(config);
    if (*oracle)
      return cmd_oracle_check(config, systems);
    if (*fig)
      return cmd_figure(figure, out);
    if (*echo)
      return cmd_echo(config);
  }
  catch (const etrap::Error& e)
  {
    std::fprintf(stderr, "error[%s]: %s\n",
                 std::string(etrap::category_name(e.category())).c_str(),
                 e.what());
    return etrap::exit_code(e.category());
  }
  catch (const std::exception& e)
  {
    std::fprintf(stderr, "error[internal]: %s\n", e.what());
    return 1;
  }
  return 2;
}
