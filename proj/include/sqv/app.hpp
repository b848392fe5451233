#pragma once

#include <filesystem>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "sqv/quadfield.hpp"
#include "sqv/vortexdetect.hpp"

namespace sqv::app {

enum class FieldSource { lg, fock };

struct CliConfig {
  int n_photons = 0;
  double squeeze = 0.0;
  double phi = std::numbers::pi / 4.0;
  int resolution = 512;
  double extent = 6.0;
  double floor = 1e-3;
  double merge_radius = 3.0;
  FieldSource field_source = FieldSource::lg;
  OddNReading odd_reading = kDefaultOddNReading;
  std::filesystem::path out = ".";
  std::filesystem::path input;  // detect only

  GridSpec grid() const { return GridSpec::checked(extent, resolution); }
  DetectionParams detection() const { return {floor, merge_radius}; }
};

// Each command returns a process exit status and reports failures on stderr.
int cmd_simulate(const CliConfig& cfg);
int cmd_stats(const CliConfig& cfg);
int cmd_audit(const CliConfig& cfg);
int cmd_detect(const CliConfig& cfg);

struct Panel {
  std::string name;
  int n_photons;
  double squeeze;
  enum class Kind { input_field, rotated_field, statistics } kind;
  std::optional<int> expected_count;  // vortex count stated for the panel, if any
};

/// Every panel of the figure sweep, in output order.
std::vector<Panel> figure_panels();

/// Runs the sweep into cfg.out. A non-empty `only` restricts it to the named panels.
int cmd_reproduce_figures(const CliConfig& cfg, const std::vector<std::string>& only = {});

/// Parses argv and dispatches to a subcommand.
int run_cli(int argc, const char* const* argv);

}  // namespace sqv::app
