#include "sqv/exportio.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <numbers>
#include <sstream>

namespace sqv::io {

namespace {

namespace fs = std::filesystem;

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  return out;
}

void finish(std::ofstream& out, const fs::path& path) {
  out.flush();
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

void require_finite(std::span<const double> samples, const fs::path& path) {
  for (double v : samples) {
    if (!std::isfinite(v)) throw IoError("refusing to write non-finite value to '" + path.string() + "'");
  }
}

void dump_value(const Json& j, std::string& out) {
  switch (j.type()) {
    case Json::value_t::object: {
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        out += Json(it.key()).dump();
        out += ':';
        dump_value(it.value(), out);
      }
      out += '}';
      break;
    }
    case Json::value_t::array: {
      out += '[';
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += ',';
        first = false;
        dump_value(v, out);
      }
      out += ']';
      break;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) throw IoError("non-finite number in JSON document");
      out += format_double(v);
      break;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

std::string utc_timestamp_now() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_field_csv(const ComplexField& field, const fs::path& path) {
  const auto& grid = field.grid();
  const int res = field.resolution();
  auto out = open_out(path);
  std::string line;
  out << "x,y,re,im\n";
  for (int i = 0; i < res; ++i) {
    const std::string y = format_double(grid.coord(i));
    for (int j = 0; j < res; ++j) {
      const auto v = field.at(i, j);
      line.clear();
      line += format_double(grid.coord(j));
      line += ',';
      line += y;
      line += ',';
      line += format_double(v.real());
      line += ',';
      line += format_double(v.imag());
      line += '\n';
      out << line;
    }
  }
  finish(out, path);
}

ComplexField read_field_csv(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  auto fail = [&](std::size_t line_no, const std::string& why) -> IoError {
    return IoError(path.string() + ":" + std::to_string(line_no) + ": " + why);
  };

  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line) || line != "x,y,re,im") throw fail(1, "expected header 'x,y,re,im'");

  std::vector<std::array<double, 4>> rows;
  while (std::getline(in, line)) {
    ++line_no;
    std::array<double, 4> row{};
    const char* p = line.data();
    const char* end = line.data() + line.size();
    for (int c = 0; c < 4; ++c) {
      auto [next, ec] = std::from_chars(p, end, row[c]);
      if (ec != std::errc{} || !std::isfinite(row[c])) throw fail(line_no, "malformed number in column " + std::to_string(c + 1));
      p = next;
      if (c < 3) {
        if (p == end || *p != ',') throw fail(line_no, "expected 4 comma-separated values");
        ++p;
      }
    }
    if (p != end) throw fail(line_no, "trailing characters");
    rows.push_back(row);
  }

  const auto n = rows.size();
  const auto res = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));
  if (res < 2 || static_cast<std::size_t>(res) * res != n) {
    throw fail(line_no + 1, std::to_string(n) + " samples is not a square grid (file truncated?)");
  }
  const GridSpec grid{-rows.front()[0], res};
  if (!(grid.extent > 0.0)) throw fail(2, "first sample must sit at x = -extent < 0");
  const double tol = 1e-9 * grid.extent;
  std::vector<cplx> values(n);
  for (std::size_t k = 0; k < n; ++k) {
    const int i = static_cast<int>(k / res);
    const int j = static_cast<int>(k % res);
    if (std::abs(rows[k][0] - grid.coord(j)) > tol || std::abs(rows[k][1] - grid.coord(i)) > tol) {
      throw fail(k + 2, "coordinates do not match a uniform row-major grid");
    }
    values[k] = {rows[k][2], rows[k][3]};
  }
  return ComplexField(grid, std::move(values), FieldProvenance::synthetic);
}

void write_pgm(std::span<const double> samples, int width, int height, const fs::path& path) {
  if (samples.size() != static_cast<std::size_t>(width) * height) throw IoError("PGM size mismatch for '" + path.string() + "'");
  require_finite(samples, path);
  const auto [lo_it, hi_it] = std::minmax_element(samples.begin(), samples.end());
  const double lo = samples.empty() ? 0.0 : *lo_it;
  const double hi = samples.empty() ? 0.0 : *hi_it;
  std::vector<unsigned char> raster(samples.size(), 0);
  if (hi > lo) {
    for (std::size_t k = 0; k < samples.size(); ++k) {
      raster[k] = static_cast<unsigned char>(std::lround((samples[k] - lo) / (hi - lo) * 255.0));
    }
  }
  auto out = open_out(path);
  out << "P5\n" << width << ' ' << height << "\n255\n";
  out.write(reinterpret_cast<const char*>(raster.data()), static_cast<std::streamsize>(raster.size()));
  finish(out, path);
}

void write_pgm_amplitude(const ComplexField& field, const fs::path& path) {
  const auto amp = amplitude_map(field);
  write_pgm(amp, field.resolution(), field.resolution(), path);
}

std::array<std::uint8_t, 3> phase_to_rgb(double phase) {
  double hue = (phase + std::numbers::pi) / (2.0 * std::numbers::pi);
  hue -= std::floor(hue);  // hue 1 wraps onto 0
  const double h6 = hue * 6.0;
  const int sector = static_cast<int>(h6) % 6;
  const double f = h6 - std::floor(h6);
  const double rise = f;
  const double fall = 1.0 - f;
  double r = 0, g = 0, b = 0;
  switch (sector) {
    case 0: r = 1; g = rise; b = 0; break;
    case 1: r = fall; g = 1; b = 0; break;
    case 2: r = 0; g = 1; b = rise; break;
    case 3: r = 0; g = fall; b = 1; break;
    case 4: r = rise; g = 0; b = 1; break;
    default: r = 1; g = 0; b = fall; break;
  }
  auto to_byte = [](double c) { return static_cast<std::uint8_t>(std::lround(c * 255.0)); };
  return {to_byte(r), to_byte(g), to_byte(b)};
}

void write_ppm_phase(std::span<const double> phase, int width, int height, const fs::path& path) {
  if (phase.size() != static_cast<std::size_t>(width) * height) throw IoError("PPM size mismatch for '" + path.string() + "'");
  require_finite(phase, path);
  std::vector<unsigned char> raster(phase.size() * 3);
  for (std::size_t k = 0; k < phase.size(); ++k) {
    const auto rgb = phase_to_rgb(phase[k]);
    std::copy(rgb.begin(), rgb.end(), raster.begin() + static_cast<std::ptrdiff_t>(3 * k));
  }
  auto out = open_out(path);
  out << "P6\n" << width << ' ' << height << "\n255\n";
  out.write(reinterpret_cast<const char*>(raster.data()), static_cast<std::streamsize>(raster.size()));
  finish(out, path);
}

void write_ppm_phase(const PhaseMap& phase, const fs::path& path) {
  write_ppm_phase(phase.values, phase.grid.resolution, phase.grid.resolution, path);
}

Json to_json(const SqueezeConfig& cfg) {
  Json j;
  j["n_total"] = cfg.n_total();
  j["r"] = cfg.r();
  j["phi"] = cfg.phi();
  return j;
}

Json to_json(const GridSpec& grid) {
  Json j;
  j["extent"] = grid.extent;
  j["resolution"] = grid.resolution;
  return j;
}

Json to_json(const DetectionParams& params) {
  Json j;
  j["amplitude_floor"] = params.amplitude_floor;
  j["merge_radius"] = params.merge_radius;
  return j;
}

Json to_json(const VortexReport& report) {
  Json j;
  j["params"] = to_json(report.params);
  j["count"] = report.count;
  j["total_charge"] = report.total_charge;
  j["vortices"] = Json::array();
  for (const auto& v : report.vortices) {
    Json e;
    e["x"] = v.x;
    e["y"] = v.y;
    e["charge"] = v.charge;
    j["vortices"].push_back(std::move(e));
  }
  return j;
}

Json to_json(const AuditReport& report) {
  Json j;
  j["config"] = to_json(report.config);
  j["max_amplitude_deviation"] = report.max_amplitude_deviation;
  j["max_probability_deviation"] = report.max_probability_deviation;
  j["discrepancies"] = Json::array();
  for (const auto& d : report.discrepancies) {
    Json e;
    e["n1"] = d.n1;
    e["n2"] = d.n2;
    e["analytic_re"] = d.analytic.real();
    e["analytic_im"] = d.analytic.imag();
    e["oracle_re"] = d.oracle.real();
    e["oracle_im"] = d.oracle.imag();
    j["discrepancies"].push_back(std::move(e));
  }
  j["notes"] = report.verdict_notes;
  return j;
}

Json to_json(const PhotonDistribution& dist) {
  Json j;
  j["truncation"] = dist.truncation;
  j["joint"] = Json::array();
  for (int k = 0; k <= dist.truncation; ++k) {
    for (int n1 = 0; n1 <= k; ++n1) {
      Json e;
      e["n1"] = n1;
      e["n2"] = k - n1;
      e["p"] = dist.p(n1, k - n1);
      j["joint"].push_back(std::move(e));
    }
  }
  j["marginal_total"] = dist.marginal_total;
  return j;
}

Json to_json(const RunManifest& manifest) {
  Json j;
  j["tool_version"] = manifest.tool_version;
  j["config"] = manifest.config;
  j["outputs"] = Json::array();
  for (const auto& o : manifest.outputs) {
    Json e;
    e["filename"] = o.filename;
    e["kind"] = o.kind;
    e["bytes"] = o.bytes;
    j["outputs"].push_back(std::move(e));
  }
  j["timestamp"] = manifest.timestamp;
  return j;
}

std::string dump_json(const Json& doc) {
  std::string out;
  dump_value(doc, out);
  out += '\n';
  return out;
}

void write_json(const Json& doc, const fs::path& path) {
  std::string text;
  try {
    text = dump_json(doc);
  } catch (const IoError& e) {
    throw IoError(std::string(e.what()) + " ('" + path.string() + "')");
  }
  auto out = open_out(path);
  out << text;
  finish(out, path);
}

}  // namespace sqv::io
