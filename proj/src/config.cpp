#include "etrap/config.hpp"

#include "etrap/constants.hpp"
#include "etrap/errors.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <vector>

namespace etrap
{

ElectronParams RunConfig::electron() const
{
  return electron_from_energy(kinetic_energy);
}

double RunConfig::resolved_photon_energy() const
{
  if (photon_energy)
    return *photon_energy;
  if (wavelength)
    return photon_energy_from_wavelength(*wavelength);
  throw DomainError("field needs either photon_energy or wavelength");
}

FieldParams RunConfig::field() const
{
  const double hw = resolved_photon_energy();
  switch (matching.mode)
  {
  case MatchingMode::PhaseMatched:
    return make_phase_matched_field(electron(), field_amplitude, hw, phase);
  case MatchingMode::GratingPeriod:
    return make_field(field_amplitude, hw, wavevector_from_period(matching.value),
                      phase);
  case MatchingMode::Wavevector:
    return make_field(field_amplitude, hw, matching.value, phase);
  }
  throw DomainError("unknown matching mode");
}

void RunConfig::validate() const
{
  if (photon_energy.has_value() == wavelength.has_value())
    throw DomainError(
        "exactly one of field.photon_energy and field.wavelength is required");
  if (n_max && *n_max < 1)
    throw DomainError("model.n_max must be at least 1");
  if (initial.kind == InitialKind::Gaussian && !(initial.width > 0))
    throw DomainError("initial.width must be positive for a gaussian start");
  if (analysis.window && analysis.window->end < analysis.window->start)
    throw DomainError("analysis window ends before it starts");
  if (!(analysis.threshold > 0) || analysis.threshold >= 1)
    throw DomainError("analysis.threshold must lie in (0, 1)");
  model.validate();
  propagation.validate();
  // surfaces kinematic and field errors at parse time
  (void)field();
}

std::string_view matching_name(MatchingMode mode)
{
  switch (mode)
  {
  case MatchingMode::PhaseMatched: return "phase_matched";
  case MatchingMode::GratingPeriod: return "grating_period";
  case MatchingMode::Wavevector: return "wavevector";
  }
  return "unknown";
}

std::string_view method_name(PropagationMethod method)
{
  return method == PropagationMethod::DenseExact ? "dense" : "banded";
}

namespace
{

std::string trim(std::string_view s)
{
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos)
    return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

double parse_number(const std::string& key, std::string_view token)
{
  double v = 0;
  const auto [ptr, ec] = std::from_chars(token.data(),
                                         token.data() + token.size(), v);
  if (ec != std::errc() || ptr != token.data() + token.size())
    throw ParseError(key, "'" + std::string(token) + "' is not a number");
  return v;
}

//! Splits "1.5 V/nm" into number and unit token.
std::pair<std::string, std::string> split_value(const std::string& value)
{
  const auto sp = value.find_first_of(" \t");
  if (sp == std::string::npos)
    return {value, {}};
  return {value.substr(0, sp), trim(std::string_view(value).substr(sp))};
}

using UnitTable = std::map<std::string, double>;

const UnitTable energy_units{{"eV", 1.0}, {"keV", 1e3}, {"MeV", 1e6}};
const UnitTable field_units{{"V/nm", 1.0}, {"V/m", 1e-9}, {"V/um", 1e-3}};
const UnitTable length_units{{"nm", 1.0}, {"um", 1e3}, {"m", 1e9}};
const UnitTable inverse_length_units{{"1/nm", 1.0}, {"1/um", 1e-3}};
const UnitTable time_units{{"fs", 1.0}, {"ps", 1e3}};
const UnitTable angle_units{{"rad", 1.0}, {"deg", constants::pi / 180}};

double quantity(const std::string& key, const std::string& value,
                const UnitTable& units)
{
  const auto [number, unit] = split_value(value);
  if (number.empty())
    throw ParseError(key, "empty value");
  if (unit.empty())
    throw ParseError(key, "missing unit (expected one of "
                              + [&] {
                                  std::string s;
                                  for (const auto& [u, f] : units)
                                    s += (s.empty() ? "" : ", ") + u;
                                  return s;
                                }()
                              + ")");
  const auto it = units.find(unit);
  if (it == units.end())
    throw ParseError(key, "unknown unit '" + unit + "'");
  return parse_number(key, number) * it->second;
}

double scalar(const std::string& key, const std::string& value)
{
  const auto [number, unit] = split_value(value);
  if (number.empty())
    throw ParseError(key, "empty value");
  if (!unit.empty())
    throw ParseError(key, "dimensionless value takes no unit");
  return parse_number(key, number);
}

long long integer(const std::string& key, const std::string& value)
{
  const auto [number, unit] = split_value(value);
  if (number.empty())
    throw ParseError(key, "empty value");
  if (!unit.empty())
    throw ParseError(key, "integer value takes no unit");
  long long v = 0;
  const auto [ptr, ec]
      = std::from_chars(number.data(), number.data() + number.size(), v);
  if (ec != std::errc() || ptr != number.data() + number.size())
    throw ParseError(key, "'" + number + "' is not an integer");
  return v;
}

bool boolean(const std::string& key, const std::string& value)
{
  if (value == "true")
    return true;
  if (value == "false")
    return false;
  throw ParseError(key, value.empty() ? "empty value"
                                      : "expected true or false");
}

template <class T>
T choice(const std::string& key, const std::string& value,
         const std::map<std::string, T>& options)
{
  const auto it = options.find(value);
  if (it != options.end())
    return it->second;
  std::string allowed;
  for (const auto& [name, v] : options)
    allowed += (allowed.empty() ? "" : ", ") + name;
  throw ParseError(key, value.empty() ? "empty value"
                                      : "'" + value + "' is not one of "
                                            + allowed);
}

struct Entry
{
  std::string value;
  int line = 0;
};

std::map<std::string, Entry> tokenize(std::string_view text)
{
  std::map<std::string, Entry> entries;
  std::string section;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw))
  {
    ++line_no;
    std::string line = trim(std::string_view(raw).substr(0, raw.find('#')));
    if (line.empty())
      continue;
    if (line.front() == '[')
    {
      if (line.back() != ']')
        throw ParseError("line " + std::to_string(line_no),
                         "unterminated section header");
      section = trim(std::string_view(line).substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError("line " + std::to_string(line_no),
                       "expected 'key = value'");
    std::string key = trim(std::string_view(line).substr(0, eq));
    if (!section.empty())
      key = section + "." + key;
    if (entries.count(key))
      throw ParseError(key, "duplicate key");
    entries[key] = {trim(std::string_view(line).substr(eq + 1)), line_no};
  }
  return entries;
}

}  // namespace

RunConfig parse_config(std::string_view text)
{
  const auto entries = tokenize(text);
  RunConfig c;
  std::set<std::string> seen;

  std::optional<bool> phase_matched;
  std::optional<double> grating_period, wavevector;
  std::optional<bool> ponderomotive, recoil, gamma_cubed;
  std::optional<double> window_start, window_end;

  using Handler = std::function<void(const std::string&, const std::string&)>;
  const std::map<std::string, Handler> handlers{
      {"electron.energy",
       [&](auto& k, auto& v) { c.kinetic_energy = quantity(k, v, energy_units); }},
      {"field.amplitude",
       [&](auto& k, auto& v) { c.field_amplitude = quantity(k, v, field_units); }},
      {"field.photon_energy",
       [&](auto& k, auto& v) { c.photon_energy = quantity(k, v, energy_units); }},
      {"field.wavelength",
       [&](auto& k, auto& v) { c.wavelength = quantity(k, v, length_units); }},
      {"field.phase",
       [&](auto& k, auto& v) { c.phase = quantity(k, v, angle_units); }},
      {"matching.phase_matched",
       [&](auto& k, auto& v) { phase_matched = boolean(k, v); }},
      {"matching.grating_period",
       [&](auto& k, auto& v) { grating_period = quantity(k, v, length_units); }},
      {"matching.wavevector",
       [&](auto& k, auto& v) {
         wavevector = quantity(k, v, inverse_length_units);
       }},
      {"model.kind",
       [&](auto& k, auto& v) {
         c.model.kind = choice<ModelKind>(
             k, v, {{"full", ModelKind::Full},
                    {"simplified", ModelKind::Simplified}});
       }},
      {"model.ponderomotive",
       [&](auto& k, auto& v) { ponderomotive = boolean(k, v); }},
      {"model.recoil_asymmetry",
       [&](auto& k, auto& v) { recoil = boolean(k, v); }},
      {"model.gamma_cubed",
       [&](auto& k, auto& v) { gamma_cubed = boolean(k, v); }},
      {"model.detuning",
       [&](auto& k, auto& v) {
         c.model.detuning_override = quantity(k, v, energy_units);
       }},
      {"model.beta",
       [&](auto& k, auto& v) {
         c.model.beta_override = quantity(k, v, energy_units);
       }},
      {"model.n_max",
       [&](auto& k, auto& v) { c.n_max = static_cast<int>(integer(k, v)); }},
      {"initial.kind",
       [&](auto& k, auto& v) {
         c.initial.kind = choice<InitialKind>(
             k, v, {{"plane_wave", InitialKind::PlaneWave},
                    {"gaussian", InitialKind::Gaussian}});
       }},
      {"initial.width",
       [&](auto& k, auto& v) { c.initial.width = quantity(k, v, energy_units); }},
      {"initial.width_convention",
       [&](auto& k, auto& v) {
         c.initial.convention = choice<WidthConvention>(
             k, v, {{"fwhm", WidthConvention::Fwhm},
                    {"rms", WidthConvention::Rms}});
       }},
      {"initial.center",
       [&](auto& k, auto& v) {
         c.initial.center = static_cast<int>(integer(k, v));
       }},
      {"initial.chirp",
       [&](auto& k, auto& v) { c.initial.chirp = quantity(k, v, angle_units); }},
      {"initial.offset_phase",
       [&](auto& k, auto& v) {
         c.initial.offset_phase = quantity(k, v, angle_units);
       }},
      {"propagation.t_end",
       [&](auto& k, auto& v) { c.propagation.t_end = quantity(k, v, time_units); }},
      {"propagation.sample_interval",
       [&](auto& k, auto& v) {
         c.propagation.sample_interval = quantity(k, v, time_units);
       }},
      {"propagation.method",
       [&](auto& k, auto& v) {
         c.propagation.method = choice<PropagationMethod>(
             k, v, {{"banded", PropagationMethod::BandedStepper},
                    {"dense", PropagationMethod::DenseExact}});
       }},
      {"propagation.step_tolerance",
       [&](auto& k, auto& v) { c.propagation.step_tolerance = scalar(k, v); }},
      {"propagation.norm_drift_limit",
       [&](auto& k, auto& v) { c.propagation.norm_drift_limit = scalar(k, v); }},
      {"propagation.step_safety",
       [&](auto& k, auto& v) { c.propagation.step_safety = scalar(k, v); }},
      {"propagation.max_refinements",
       [&](auto& k, auto& v) {
         c.propagation.max_refinements = static_cast<int>(integer(k, v));
       }},
      {"analysis.threshold",
       [&](auto& k, auto& v) { c.analysis.threshold = scalar(k, v); }},
      {"analysis.window_start",
       [&](auto& k, auto& v) { window_start = quantity(k, v, time_units); }},
      {"analysis.window_end",
       [&](auto& k, auto& v) { window_end = quantity(k, v, time_units); }},
      {"seed",
       [&](auto& k, auto& v) {
         const long long s = integer(k, v);
         if (s < 0)
           throw ParseError(k, "seed must be non-negative");
         c.seed = static_cast<std::uint64_t>(s);
       }},
  };

  for (const auto& [key, entry] : entries)
  {
    const auto h = handlers.find(key);
    if (h == handlers.end())
      throw ParseError(key, "unknown key (line " + std::to_string(entry.line)
                                + ")");
    h->second(key, entry.value);
    seen.insert(key);
  }

  for (const char* required : {"electron.energy", "field.amplitude"})
    if (!seen.count(required))
      throw ParseError(required, "required key is missing");
  if (!c.photon_energy && !c.wavelength)
    throw ParseError("field.photon_energy",
                     "required (or give field.wavelength)");
  if (c.photon_energy && c.wavelength)
    throw DomainError(
        "field.photon_energy and field.wavelength are mutually exclusive");

  const int modes = (phase_matched.value_or(false) ? 1 : 0)
                    + (grating_period ? 1 : 0) + (wavevector ? 1 : 0);
  if (modes > 1)
    throw DomainError("conflicting matching modes: set exactly one of "
                      "matching.phase_matched, matching.grating_period, "
                      "matching.wavevector");
  if (modes == 0)
    throw ParseError("matching.phase_matched",
                     "a matching mode is required");
  if (grating_period)
    c.matching = {MatchingMode::GratingPeriod, *grating_period};
  else if (wavevector)
    c.matching = {MatchingMode::Wavevector, *wavevector};
  else
    c.matching = {MatchingMode::PhaseMatched, 0};

  const bool full = c.model.kind == ModelKind::Full;
  c.model.include_ponderomotive = ponderomotive.value_or(full);
  c.model.include_recoil_asymmetry = recoil.value_or(full);
  c.model.include_gamma_cubed = gamma_cubed.value_or(full);

  if (window_start || window_end)
  {
    if (!(window_start && window_end))
      throw ParseError(window_start ? "analysis.window_end"
                                    : "analysis.window_start",
                       "window needs both start and end");
    c.analysis.window = TimeWindow{*window_start, *window_end};
  }

  if (c.initial.kind == InitialKind::Gaussian && !seen.count("initial.width"))
    throw ParseError("initial.width", "required for a gaussian start");

  c.validate();
  return c;
}

RunConfig load_config(const std::filesystem::path& path)
{
  std::ifstream in(path);
  if (!in)
    throw IoError(path.string(), "cannot open config file");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

namespace
{

std::string exact(double v)
{
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string echo_config(const RunConfig& c)
{
  std::ostringstream out;
  auto line = [&](std::string_view key, const std::string& value) {
    out << key << " = " << value << '\n';
  };
  auto flag = [](bool b) { return std::string(b ? "true" : "false"); };

  line("seed", std::to_string(c.seed));
  out << "\n[electron]\n";
  line("energy", exact(c.kinetic_energy) + " eV");

  out << "\n[field]\n";
  line("amplitude", exact(c.field_amplitude) + " V/nm");
  if (c.photon_energy)
    line("photon_energy", exact(*c.photon_energy) + " eV");
  if (c.wavelength)
    line("wavelength", exact(*c.wavelength) + " nm");
  line("phase", exact(c.phase) + " rad");

  out << "\n[matching]\n";
  switch (c.matching.mode)
  {
  case MatchingMode::PhaseMatched: line("phase_matched", "true"); break;
  case MatchingMode::GratingPeriod:
    line("grating_period", exact(c.matching.value) + " nm");
    break;
  case MatchingMode::Wavevector:
    line("wavevector", exact(c.matching.value) + " 1/nm");
    break;
  }

  out << "\n[model]\n";
  line("kind", c.model.kind == ModelKind::Full ? "full" : "simplified");
  line("ponderomotive", flag(c.model.include_ponderomotive));
  line("recoil_asymmetry", flag(c.model.include_recoil_asymmetry));
  line("gamma_cubed", flag(c.model.include_gamma_cubed));
  if (c.model.detuning_override)
    line("detuning", exact(*c.model.detuning_override) + " eV");
  if (c.model.beta_override)
    line("beta", exact(*c.model.beta_override) + " eV");
  if (c.n_max)
    line("n_max", std::to_string(*c.n_max));

  out << "\n[initial]\n";
  line("kind", c.initial.kind == InitialKind::Gaussian ? "gaussian"
                                                       : "plane_wave");
  if (c.initial.kind == InitialKind::Gaussian)
  {
    line("width", exact(c.initial.width) + " eV");
    line("width_convention",
         c.initial.convention == WidthConvention::Fwhm ? "fwhm" : "rms");
    line("chirp", exact(c.initial.chirp) + " rad");
    line("offset_phase", exact(c.initial.offset_phase) + " rad");
  }
  line("center", std::to_string(c.initial.center));

  out << "\n[propagation]\n";
  line("t_end", exact(c.propagation.t_end) + " fs");
  line("sample_interval", exact(c.propagation.sample_interval) + " fs");
  line("method", std::string(method_name(c.propagation.method)));
  line("step_tolerance", exact(c.propagation.step_tolerance));
  line("norm_drift_limit", exact(c.propagation.norm_drift_limit));
  line("step_safety", exact(c.propagation.step_safety));
  line("max_refinements", std::to_string(c.propagation.max_refinements));

  out << "\n[analysis]\n";
  line("threshold", exact(c.analysis.threshold));
  if (c.analysis.window)
  {
    line("window_start", exact(c.analysis.window->start) + " fs");
    line("window_end", exact(c.analysis.window->end) + " fs");
  }

  return out.str();
}

}  // namespace etrap
