#include "etrap/analysis.hpp"
#include "etrap/constants.hpp"
#include "etrap/errors.hpp"

#include <doctest.h>

#include <cmath>
#include <functional>

using namespace etrap;
using doctest::Approx;

namespace
{

Spectrogram synthetic(int N, std::vector<double> times,
                      const std::function<double(double, int)>& p,
                      double hw = 1.5)
{
  Spectrogram s;
  s.n_max = N;
  s.times = std::move(times);
  s.photon_energy = hw;
  for (double t : s.times)
    for (int n = -N; n <= N; ++n)
      s.populations.push_back(p(t, n));
  s.norm_drift.assign(s.samples(), 0);
  return s;
}

std::vector<double> grid(double t_end, double dt)
{
  std::vector<double> t;
  for (int k = 0; k * dt <= t_end + 1e-12; ++k)
    t.push_back(k * dt);
  return t;
}

Spectrogram run(double amplitude, ModelVariant v, LadderState s0, double t_end,
                double dt, std::optional<double> grating = std::nullopt)
{
  const ElectronParams e = electron_from_energy(100);
  const FieldParams f = grating
                            ? make_field(amplitude, 1.54, wavevector_from_period(*grating), 0)
                            : make_phase_matched_field(e, amplitude, 1.54, 0);
  PropagationConfig c;
  c.t_end = t_end;
  c.sample_interval = dt;
  return propagate(build_hamiltonian(e, f, v, s0.n_max()), s0, c);
}

}  // namespace

TEST_CASE("trap width of a field-free plane wave is zero")
{
  const Spectrogram s = run(0, ModelVariant::full(), initial_plane_wave(8), 5, 0.5);
  const TrapReport r = trap_width(s);
  CHECK(r.width == 0);
  CHECK(r.n_min == 0);
  CHECK(r.n_max == 0);
  CHECK_FALSE(r.degenerate);
}

TEST_CASE("trap width uses the envelope inside the window")
{
  const Spectrogram s = synthetic(5, {0, 1, 2}, [](double t, int n) {
    if (t == 1 && (n == -3 || n == 2))
      return 0.5;
    return (t != 1 && n == 0) ? 1.0 : 0.0;
  });
  CHECK(trap_width(s).width == Approx(5 * 1.5));
  CHECK(trap_width(s, 1e-3, TimeWindow{1.5, 2}).width == 0);
  CHECK_THROWS_AS(trap_width(s, 1e-3, TimeWindow{1.2, 1.4}), DomainError);
  CHECK_THROWS_AS(trap_width(s, 1e-3, TimeWindow{2, 1}), DomainError);
}

TEST_CASE("trap width with nothing above threshold is degenerate")
{
  const Spectrogram s = synthetic(3, {0}, [](double, int n) { return n == 1 ? 0.3 : 0.7 / 6; });
  const TrapReport r = trap_width(s, 0.5);
  CHECK(r.degenerate);
  CHECK(r.width == 0);
  CHECK(r.n_min == 1);
}

TEST_CASE("trap width is non-increasing in the threshold")
{
  const Spectrogram s = run(1, ModelVariant::full(), initial_plane_wave(48), 12, 0.2);
  double previous = 1e9;
  for (double thr : {1e-8, 1e-6, 1e-4, 1e-3, 1e-2, 5e-2})
  {
    const double w = trap_width(s, thr).width;
    CHECK(w <= previous);
    previous = w;
  }
}

TEST_CASE("simplified model with symmetric start has no asymmetry")
{
  const Spectrogram s = run(1, ModelVariant::simplified(), initial_plane_wave(48), 20, 0.25);
  for (double t : s.times)
  {
    const AsymmetryReport a = asymmetry(s, t);
    if (a.delta_n)
      CHECK(*a.delta_n == 0);
  }
}

TEST_CASE("field-free asymmetry is flagged absent")
{
  const Spectrogram s = run(0, ModelVariant::full(), initial_plane_wave(8), 5, 0.5);
  CHECK_FALSE(asymmetry(s, 2.5).delta_n.has_value());
}

TEST_CASE("asymmetry sign favours the farther absorption peak")
{
  const Spectrogram s = synthetic(6, {0}, [](double, int n) {
    return n == 5 ? 0.5 : (n == -2 ? 0.5 : 0.0);
  });
  const AsymmetryReport a = asymmetry(s, 0);
  REQUIRE(a.delta_n);
  CHECK(*a.delta_n == 3);
  CHECK(a.absorption_peak == 5);
  CHECK(a.emission_peak == -2);
}

TEST_CASE("extrema finder locates sine turning points with interpolation")
{
  std::vector<double> t, v;
  for (int k = 0; k <= 400; ++k)
  {
    t.push_back(k * 0.05);
    v.push_back(std::sin(t.back()));
  }
  const auto minima = find_minima(t, v);
  const auto maxima = find_maxima(t, v);
  REQUIRE(minima.size() == 3);
  REQUIRE(maxima.size() == 3);
  CHECK(minima[0].time == Approx(3 * constants::pi / 2).epsilon(1e-4));
  CHECK(maxima[1].time == Approx(5 * constants::pi / 2).epsilon(1e-4));
  CHECK(maxima[0].value == Approx(1).epsilon(1e-5));
}

TEST_CASE("extrema finder ignores ripples below the prominence floor")
{
  std::vector<double> t, v;
  for (int k = 0; k <= 1000; ++k)
  {
    t.push_back(k * 0.01);
    v.push_back(std::sin(t.back()) + 0.01 * std::sin(40 * t.back()));
  }
  CHECK(find_maxima(t, v).size() == 2);
}

TEST_CASE("collapse timing of the field-free run is empty")
{
  const Spectrogram s = run(0, ModelVariant::full(), initial_plane_wave(8), 10, 0.5);
  CHECK(collapse_timing(s).collapses.empty());
  CHECK_THROWS_AS(revival_period(s), InsufficientSpan);
}

TEST_CASE("revival period depends on the field amplitude")
{
  const Spectrogram a = run(1, ModelVariant::full(), initial_plane_wave(64), 45, 0.05);
  const Spectrogram b = run(2, ModelVariant::full(), initial_plane_wave(96), 45, 0.05);
  const double pa = revival_period(a);
  const double pb = revival_period(b);
  CHECK(std::abs(pa - pb) > 0.05 * pa);
}

TEST_CASE("regime buckets")
{
  CHECK(classify_rho(0.05).label == Regime::RamanNath);
  CHECK(classify_rho(0.1).label == Regime::Intermediate);
  CHECK(classify_rho(1).label == Regime::Intermediate);
  CHECK(classify_rho(10).label == Regime::Intermediate);
  CHECK(classify_rho(10.5).label == Regime::Bragg);
  CHECK(regime_name(Regime::Bragg) == "Bragg");

  const ElectronParams e = electron_from_energy(100);
  CHECK_THROWS_AS(classify_regime(coupling_set(e, make_phase_matched_field(e, 0, 1.54, 0))),
                  DomainError);
}

TEST_CASE("regime is invariant under scalings that preserve rho")
{
  // rho = beta / kappa with beta ~ hw^2 / E and kappa ~ E_f sqrt(E) / hw;
  // doubling E_f and hw by 2^(1/3) leaves rho unchanged
  const ElectronParams e = electron_from_energy(100);
  const double s = std::cbrt(2.0);
  const double r1 = *coupling_set(e, make_phase_matched_field(e, 1, 1.54, 0)).nath_rho;
  const double r2 = *coupling_set(e, make_phase_matched_field(e, 2, 1.54 * s, 0)).nath_rho;
  CHECK(r1 == Approx(r2).epsilon(1e-9));
}

TEST_CASE("rho grows with photon energy and falls with field")
{
  const ElectronParams e = electron_from_energy(100);
  auto rho = [&](double amp, double hw) {
    return *coupling_set(e, make_phase_matched_field(e, amp, hw, 0)).nath_rho;
  };
  CHECK(rho(1, 3) > rho(1, 1.5));
  CHECK(rho(2, 1.5) < rho(1, 1.5));
}

TEST_CASE("Bloch report flags phase-matched input")
{
  const Spectrogram s = run(1, ModelVariant::full(), initial_plane_wave(32), 4, 0.1);
  CHECK(bloch_oscillation_report(s).phase_matched);
}

TEST_CASE("linear detuning without curvature gives symmetric Bloch breathing")
{
  ModelVariant v = ModelVariant::simplified();
  v.beta_override = 0.0;
  const Spectrogram s = run(1, v, initial_plane_wave(48), 30, 0.02, 23.0);
  const BlochReport b = bloch_oscillation_report(s);
  REQUIRE(b.period_absorption);
  REQUIRE(b.period_emission);
  const double expected = 2 * constants::pi * constants::hbar / std::abs(s.detuning);
  CHECK(*b.period_absorption == Approx(expected).epsilon(0.02));
  CHECK(*b.period_emission == Approx(expected).epsilon(0.02));
  CHECK(b.max_n_absorption == b.max_n_emission);
}

TEST_CASE("edge fringe counter")
{
  std::vector<double> row(41, 0.0);
  // populated from n = -5 to n = 12 with two local maxima near the top edge
  for (int n = -5; n <= 12; ++n)
    row[static_cast<std::size_t>(n + 20)] = 0.01;
  row[static_cast<std::size_t>(9 + 20)] = 0.05;
  row[static_cast<std::size_t>(11 + 20)] = 0.04;
  CHECK(edge_fringe_count(row, 20) == 2);
  FringeOptions narrow;
  narrow.edge_band = 1;
  CHECK(edge_fringe_count(row, 20, narrow) == 1);
}

TEST_CASE("plane wave at early times shows no fringes")
{
  // below the first zero of J1 each side holds a single lobe
  const ElectronParams e = electron_from_energy(100);
  const double kappa = std::abs(coupling_set(e, make_phase_matched_field(e, 1, 1.54, 0)).kappa());
  const double t_early = 3.5 * constants::hbar / (2 * kappa);
  const Spectrogram s = run(1, ModelVariant::full(), initial_plane_wave(40), t_early, 0.01);
  CHECK_FALSE(fringe_check(s).detected);
}

TEST_CASE("Pendellosung report on a synthetic Rabi signal")
{
  std::vector<double> t = grid(300, 0.5);
  const Spectrogram s = synthetic(2, t, [](double time, int n) {
    const double p2 = std::pow(std::sin(time * constants::pi / 100), 2);
    if (n == 1)
      return p2;
    if (n == -1)
      return 1 - p2;
    return 0.0;
  });
  const PendellosungReport r = pendellosung_report(s, -1, 1);
  REQUIRE(r.period);
  CHECK(r.transfer_maxima.size() == 3);
  CHECK(*r.period == Approx(100).epsilon(1e-3));
  CHECK(*r.spacing_spread < 1e-3);
  CHECK(r.max_leak < 1e-12);
  CHECK_THROWS_AS(pendellosung_report(s, 1, 1), DomainError);
}
