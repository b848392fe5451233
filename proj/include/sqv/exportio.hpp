#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "sqv/fockspace.hpp"
#include "sqv/modeconverter.hpp"
#include "sqv/quadfield.hpp"
#include "sqv/vortexdetect.hpp"

namespace sqv::io {

using Json = nlohmann::ordered_json;

/// I/O failure or unserializable data; what() names the path involved.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr const char* kToolVersion = "0.3.0";

struct OutputEntry {
  std::string filename;
  std::string kind;
  std::uintmax_t bytes = 0;
};

struct RunManifest {
  std::string tool_version = kToolVersion;
  Json config;
  std::vector<OutputEntry> outputs;
  std::string timestamp;  // UTC, ISO-8601
};

std::string utc_timestamp_now();

/// "%.17g", the shortest printf format that round-trips every double.
std::string format_double(double v);

// CSV: "x,y,re,im" header, row-major rows, 17 significant digits, LF endings.
void write_field_csv(const ComplexField& field, const std::filesystem::path& path);
/// Reads a file written by write_field_csv. Errors name the first bad line.
ComplexField read_field_csv(const std::filesystem::path& path);

/// Binary P5, linear min -> 0 / max -> 255; a constant field renders all zeros.
void write_pgm_amplitude(const ComplexField& field, const std::filesystem::path& path);
void write_pgm(std::span<const double> samples, int width, int height, const std::filesystem::path& path);

/// Cyclic hue map, hue = (phase + pi) / 2pi, full saturation and value.
std::array<std::uint8_t, 3> phase_to_rgb(double phase);
void write_ppm_phase(const PhaseMap& phase, const std::filesystem::path& path);
void write_ppm_phase(std::span<const double> phase, int width, int height, const std::filesystem::path& path);

Json to_json(const SqueezeConfig& cfg);
Json to_json(const GridSpec& grid);
Json to_json(const DetectionParams& params);
Json to_json(const VortexReport& report);
Json to_json(const AuditReport& report);
Json to_json(const PhotonDistribution& dist);
Json to_json(const RunManifest& manifest);

/// Serializes with keys in insertion order and floats at 17 significant
/// digits. Rejects NaN/Inf anywhere in the document.
std::string dump_json(const Json& doc);
void write_json(const Json& doc, const std::filesystem::path& path);

template <typename T>
void write_json_report(const T& report, const std::filesystem::path& path) {
  write_json(to_json(report), path);
}

}  // namespace sqv::io
