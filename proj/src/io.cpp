#include "etrap/io.hpp"

#include "etrap/errors.hpp"

#include <json.hpp>
#include <openssl/evp.h>

#include <cerrno>
#include <charconv>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>
#include <sstream>

namespace etrap
{

namespace fs = std::filesystem;
using nlohmann::json;

std::string content_hash(const Spectrogram& spec)
{
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(),
                                                              EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1)
    throw NumericalError("SHA-256 initialisation failed");

  const std::int64_t n = spec.n_max;
  EVP_DigestUpdate(ctx.get(), &n, sizeof n);
  EVP_DigestUpdate(ctx.get(), spec.times.data(),
                   spec.times.size() * sizeof(double));
  EVP_DigestUpdate(ctx.get(), spec.populations.data(),
                   spec.populations.size() * sizeof(double));

  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), digest, &len);

  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i)
  {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 0xf];
  }
  return out;
}

std::string spectrogram_csv(const Spectrogram& spec)
{
  std::string out = "t_fs";
  for (int n = -spec.n_max; n <= spec.n_max; ++n)
    out += ",n=" + std::string(n > 0 ? "+" : "") + std::to_string(n);
  out += '\n';

  char buf[32];
  for (std::size_t k = 0; k < spec.samples(); ++k)
  {
    std::snprintf(buf, sizeof buf, "%.9g", spec.times[k]);
    out += buf;
    for (double p : spec.row(k))
    {
      std::snprintf(buf, sizeof buf, ",%.9g", p);
      out += buf;
    }
    out += '\n';
  }
  return out;
}

std::string spectrogram_json(const Spectrogram& spec)
{
  json record;
  record["format"] = "etrap-spectrogram";
  record["version"] = std::string(tool_version);
  json meta = json::object();
  for (const auto& [k, v] : spec.metadata)
    meta[k] = v;
  meta["n_max"] = spec.n_max;
  meta["photon_energy_eV"] = spec.photon_energy;
  meta["detuning_eV"] = spec.detuning;
  meta["step_fs"] = spec.step;
  meta["sha256"] = content_hash(spec);
  record["metadata"] = meta;
  record["units"] = {{"time", "fs"}, {"population", "1"}};
  record["times_fs"] = spec.times;
  json rows = json::array();
  for (std::size_t k = 0; k < spec.samples(); ++k)
  {
    const auto r = spec.row(k);
    rows.push_back(std::vector<double>(r.begin(), r.end()));
  }
  record["populations"] = std::move(rows);
  record["norm_drift"] = spec.norm_drift;
  return record.dump(1) + "\n";
}

ExportFormat format_from_path(const fs::path& path)
{
  const auto ext = path.extension().string();
  if (ext == ".csv")
    return ExportFormat::DelimitedText;
  if (ext == ".json")
    return ExportFormat::StructuredRecord;
  throw IoError(path.string(), "unknown spectrogram format (use .csv or .json)");
}

void export_spectrogram(const Spectrogram& spec, const fs::path& path,
                        ExportFormat format)
{
  write_atomic(path, format == ExportFormat::DelimitedText
                         ? spectrogram_csv(spec)
                         : spectrogram_json(spec));
}

Spectrogram parse_spectrogram_csv(std::string_view text)
{
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line.rfind("t_fs,", 0) != 0)
    throw ParseError("header", "expected a 't_fs,n=...' header row");

  std::size_t columns = 1;
  for (char ch : line)
    columns += ch == ',';
  if (columns < 4 || columns % 2 != 0)
    throw ParseError("header", "column count must be 2N + 2");

  Spectrogram spec;
  spec.n_max = static_cast<int>((columns - 2) / 2);
  int row_no = 1;
  while (std::getline(in, line))
  {
    ++row_no;
    if (line.empty())
      continue;
    std::size_t col = 0;
    std::size_t pos = 0;
    while (pos <= line.size())
    {
      const auto end = std::min(line.find(',', pos), line.size());
      double v = 0;
      const auto [ptr, ec]
          = std::from_chars(line.data() + pos, line.data() + end, v);
      if (ec != std::errc() || ptr != line.data() + end)
        throw ParseError("row " + std::to_string(row_no), "malformed number");
      if (col == 0)
        spec.times.push_back(v);
      else
        spec.populations.push_back(v);
      ++col;
      pos = end + 1;
    }
    if (col != columns)
      throw ParseError("row " + std::to_string(row_no),
                       "expected " + std::to_string(columns) + " columns");
  }
  spec.norm_drift.resize(spec.samples());
  for (std::size_t k = 0; k < spec.samples(); ++k)
  {
    double total = 0;
    for (double p : spec.row(k))
      total += p;
    spec.norm_drift[k] = total - 1;
  }
  return spec;
}

Spectrogram parse_spectrogram_json(std::string_view text)
{
  json record;
  try
  {
    record = json::parse(text);
  }
  catch (const json::exception& e)
  {
    throw ParseError("record", e.what());
  }
  if (record.value("format", "") != "etrap-spectrogram")
    throw ParseError("format", "not an etrap spectrogram record");

  try
  {
    Spectrogram spec;
    const json& meta = record.at("metadata");
    spec.n_max = meta.at("n_max").get<int>();
    spec.photon_energy = meta.at("photon_energy_eV").get<double>();
    spec.detuning = meta.at("detuning_eV").get<double>();
    spec.step = meta.at("step_fs").get<double>();
    for (const auto& [k, v] : meta.items())
      if (v.is_string() && k != "sha256")
        spec.metadata[k] = v.get<std::string>();
    spec.times = record.at("times_fs").get<std::vector<double>>();
    for (const auto& row : record.at("populations"))
    {
      const auto r = row.get<std::vector<double>>();
      if (r.size() != spec.dim())
        throw ParseError("populations", "row length does not match 2N + 1");
      spec.populations.insert(spec.populations.end(), r.begin(), r.end());
    }
    if (spec.populations.size() != spec.samples() * spec.dim())
      throw ParseError("populations", "row count does not match times_fs");
    spec.norm_drift = record.at("norm_drift").get<std::vector<double>>();
    return spec;
  }
  catch (const json::exception& e)
  {
    throw ParseError("record", e.what());
  }
}

Spectrogram import_spectrogram(const fs::path& path)
{
  const std::string text = read_file(path);
  try
  {
    return format_from_path(path) == ExportFormat::DelimitedText
               ? parse_spectrogram_csv(text)
               : parse_spectrogram_json(text);
  }
  catch (const ParseError& e)
  {
    throw IoError(path.string(), e.what());
  }
}

void write_atomic(const fs::path& path, std::string_view content)
{
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out)
      throw IoError(path.string(), "cannot open for writing: "
                                       + std::string(std::strerror(errno)));
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out)
    {
      std::error_code ignored;
      fs::remove(tmp, ignored);
      throw IoError(path.string(), "write failed");
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec)
  {
    std::error_code ignored;
    fs::remove(tmp, ignored);
    throw IoError(path.string(), "rename failed: " + ec.message());
  }
}

std::string read_file(const fs::path& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw IoError(path.string(), "cannot open for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

OutputBundle write_bundle(const fs::path& directory, const Spectrogram& spec,
                          const std::string& config_echo,
                          const std::string& report_json)
{
  std::error_code ec;
  fs::create_directories(directory, ec);
  if (ec)
    throw IoError(directory.string(), "cannot create directory: " + ec.message());

  OutputBundle b;
  b.directory = directory;
  b.spectrogram = directory / "spectrogram.csv";
  b.record = directory / "spectrogram.json";
  b.report = directory / "report.json";
  b.config_echo = directory / "config.echo";
  b.version = std::string(tool_version);
  b.hash = content_hash(spec);

  export_spectrogram(spec, b.spectrogram, ExportFormat::DelimitedText);
  export_spectrogram(spec, b.record, ExportFormat::StructuredRecord);
  write_atomic(b.report, report_json);
  write_atomic(b.config_echo, config_echo);
  return b;
}

}  // namespace etrap
