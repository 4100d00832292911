//! Spectrogram persistence and output bundles.
#pragma once

#include "etrap/propagator.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace etrap
{

inline constexpr std::string_view tool_version = "0.3.1";

enum class ExportFormat
{
  DelimitedText,   //!< CSV, header "t_fs,n=-N,...,n=+N", 9 significant digits
  StructuredRecord  //!< JSON with a metadata block and exact values
};

//! SHA-256 (hex) over n_max, sample times and populations.
std::string content_hash(const Spectrogram& spec);

std::string spectrogram_csv(const Spectrogram& spec);
std::string spectrogram_json(const Spectrogram& spec);

//! Format chosen from the extension: .csv or .json.
ExportFormat format_from_path(const std::filesystem::path& path);

void export_spectrogram(const Spectrogram& spec,
                        const std::filesystem::path& path,
                        ExportFormat format);
Spectrogram import_spectrogram(const std::filesystem::path& path);

Spectrogram parse_spectrogram_csv(std::string_view text);
Spectrogram parse_spectrogram_json(std::string_view text);

//! Writes to a sibling temporary file, then renames it over `path`.
void write_atomic(const std::filesystem::path& path, std::string_view content);
std::string read_file(const std::filesystem::path& path);

struct OutputBundle
{
  std::filesystem::path directory;
  std::filesystem::path spectrogram;  //!< spectrogram.csv
  std::filesystem::path record;       //!< spectrogram.json
  std::filesystem::path report;       //!< report.json
  std::filesystem::path config_echo;  //!< config.echo
  std::string version;
  std::string hash;
};

OutputBundle write_bundle(const std::filesystem::path& directory,
                          const Spectrogram& spec,
                          const std::string& config_echo,
                          const std::string& report_json);

}  // namespace etrap
