#include "sqv/app.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <exception>
#include <functional>
#include <iostream>
#include <map>

#include "sqv/exportio.hpp"
#include "sqv/fockspace.hpp"
#include "sqv/modeconverter.hpp"

namespace sqv::app {

namespace {

namespace fs = std::filesystem;
using io::Json;

std::string_view to_string(FieldSource s) { return s == FieldSource::lg ? "lg" : "fock"; }

SqueezeConfig squeeze_config(const CliConfig& cfg) { return {cfg.n_photons, cfg.squeeze, cfg.phi}; }

Json config_json(const CliConfig& cfg, std::string_view subcommand) {
  Json j;
  j["subcommand"] = subcommand;
  j["squeeze"] = io::to_json(squeeze_config(cfg));
  j["grid"] = io::to_json(GridSpec{cfg.extent, cfg.resolution});
  j["detection"] = io::to_json(cfg.detection());
  j["field_source"] = to_string(cfg.field_source);
  j["odd_n_reading"] = to_string(cfg.odd_reading);
  return j;
}

// Collects written files so the manifest lists exactly what a run produced.
class OutputLog {
 public:
  explicit OutputLog(fs::path dir) : dir_(std::move(dir)) { fs::create_directories(dir_); }

  fs::path path(const std::string& name) const { return dir_ / name; }

  void record(const std::string& name, const std::string& kind) {
    entries_.push_back({name, kind, fs::file_size(dir_ / name)});
  }

  void write_manifest(Json config) const {
    io::RunManifest m;
    m.config = std::move(config);
    m.outputs = entries_;
    m.timestamp = io::utc_timestamp_now();
    io::write_json(io::to_json(m), dir_ / "manifest.json");
  }

 private:
  fs::path dir_;
  std::vector<io::OutputEntry> entries_;
};

int guarded(const char* what, const std::function<int()>& body) {
  try {
    return body();
  } catch (const std::exception& e) {
    std::cerr << "sqv " << what << ": " << e.what() << '\n';
    return 2;
  }
}

ComplexField make_field(const CliConfig& cfg) {
  const auto sq = squeeze_config(cfg);
  const auto grid = cfg.grid();
  if (cfg.field_source == FieldSource::lg) return eval_lg_superposition(sq, grid, cfg.odd_reading);
  return eval_fock_field(apply_rotation(make_squeezed_input(sq), sq.phi()), grid);
}

VortexReport write_field_outputs(const ComplexField& field, const CliConfig& cfg, OutputLog& log) {
  io::write_field_csv(field, log.path("field.csv"));
  log.record("field.csv", "field_csv");
  io::write_pgm_amplitude(field, log.path("amplitude.pgm"));
  log.record("amplitude.pgm", "amplitude_pgm");
  io::write_ppm_phase(phase_map(field), log.path("phase.ppm"));
  log.record("phase.ppm", "phase_ppm");
  auto report = detect_vortices(field, cfg.detection());
  io::write_json_report(report, log.path("vortices.json"));
  log.record("vortices.json", "vortex_report");
  return report;
}

Json optional_mandel(const std::vector<double>& marginal) {
  try {
    return mandel_q(marginal);
  } catch (const std::domain_error&) {
    return nullptr;  // zero mean photon number
  }
}

Json mode_stats(const PhotonDistribution& d) {
  Json j;
  j["mandel_q_mode1"] = optional_mandel(mode_marginal(d, Mode::first));
  j["mandel_q_mode2"] = optional_mandel(mode_marginal(d, Mode::second));
  double diag = 0.0, total = 0.0;
  for (int k = 0; k <= d.truncation; ++k) {
    for (int n1 = 0; n1 <= k; ++n1) {
      total += d.p(n1, k - n1);
      if (2 * n1 == k) diag += d.p(n1, k - n1);
    }
  }
  j["diagonal_weight"] = diag / total;
  j["off_diagonal_mass"] = (total - diag) / total;
  return j;
}

void write_stats_outputs(const SqueezeConfig& sq, OutputLog& log) {
  const auto input = make_squeezed_input(sq);
  const auto rotated = apply_rotation(input, sq.phi());
  const auto input_pn = joint_distribution(input);
  const auto oracle_pn = joint_distribution(rotated);
  const auto analytic = joint_prob_analytic_table(sq);

  io::write_json_report(input_pn, log.path("input_pn.json"));
  log.record("input_pn.json", "photon_distribution");
  io::write_json_report(oracle_pn, log.path("rotated_pn_oracle.json"));
  log.record("rotated_pn_oracle.json", "photon_distribution");
  io::write_json_report(analytic.distribution, log.path("rotated_pn_analytic.json"));
  log.record("rotated_pn_analytic.json", "photon_distribution");

  Json stats;
  stats["config"] = io::to_json(sq);
  stats["input"] = mode_stats(input_pn);
  stats["rotated_oracle"] = mode_stats(oracle_pn);
  stats["rotated_analytic"] = mode_stats(analytic.distribution);
  stats["rotated_analytic"]["skipped_terms"] = analytic.skipped_terms;
  io::write_json(stats, log.path("stats.json"));
  log.record("stats.json", "statistics");
}

std::string panel_dir_name(const Panel& p) { return p.name; }

}  // namespace

int cmd_simulate(const CliConfig& cfg) {
  return guarded("simulate", [&] {
    OutputLog log(cfg.out);
    const auto report = write_field_outputs(make_field(cfg), cfg, log);
    log.write_manifest(config_json(cfg, "simulate"));
    std::cout << "vortices: " << report.count << " (total charge " << report.total_charge << ")\n";
    return 0;
  });
}

int cmd_stats(const CliConfig& cfg) {
  return guarded("stats", [&] {
    OutputLog log(cfg.out);
    write_stats_outputs(squeeze_config(cfg), log);
    log.write_manifest(config_json(cfg, "stats"));
    return 0;
  });
}

int cmd_audit(const CliConfig& cfg) {
  return guarded("audit", [&] {
    OutputLog log(cfg.out);
    const auto report = run_audit(squeeze_config(cfg));
    io::write_json_report(report, log.path("audit.json"));
    log.record("audit.json", "audit_report");
    log.write_manifest(config_json(cfg, "audit"));
    std::cout << "max amplitude deviation " << io::format_double(report.max_amplitude_deviation)
              << ", max probability deviation " << io::format_double(report.max_probability_deviation) << '\n';
    return 0;
  });
}

int cmd_detect(const CliConfig& cfg) {
  return guarded("detect", [&] {
    const auto field = io::read_field_csv(cfg.input);
    OutputLog log(cfg.out);
    const auto report = detect_vortices(field, cfg.detection());
    io::write_json_report(report, log.path("vortices.json"));
    log.record("vortices.json", "vortex_report");
    Json conf = config_json(cfg, "detect");
    conf["input"] = cfg.input.string();
    log.write_manifest(std::move(conf));
    std::cout << "vortices: " << report.count << " (total charge " << report.total_charge << ")\n";
    return 0;
  });
}

std::vector<Panel> figure_panels() {
  using K = Panel::Kind;
  std::vector<Panel> panels;
  // Input-state fields carry no vortices.
  const char* fig1[] = {"fig1_r1", "fig1_r0.5", "fig1_r0.1"};
  const double fig1_r[] = {1.0, 0.5, 0.1};
  for (int k = 0; k < 3; ++k) panels.push_back({fig1[k], 10, fig1_r[k], K::input_field, 0});

  const double fig2_r[] = {1.0, 0.5, 0.02};
  const char letters[] = "abcdef";
  for (int n = 1; n <= 2; ++n) {
    for (int k = 0; k < 3; ++k) {
      const std::optional<int> expected = fig2_r[k] == 0.02 ? std::optional<int>(n) : std::nullopt;
      panels.push_back({std::string("fig2") + letters[(n - 1) * 3 + k], n, fig2_r[k], K::rotated_field, expected});
    }
  }
  for (int n = 3; n <= 8; ++n) {
    panels.push_back({std::string("fig3") + letters[n - 3], n, 0.02, K::rotated_field, n});
  }
  const char* fig4_r_name[] = {"1.0", "0.5", "0.2", "0.1", "0.05"};
  const double fig4_r[] = {1.0, 0.5, 0.2, 0.1, 0.05};
  for (int n : {5, 10}) {
    for (int k = 0; k < 5; ++k) {
      panels.push_back({"fig4_N" + std::to_string(n) + "_r" + fig4_r_name[k], n, fig4_r[k], K::statistics, std::nullopt});
    }
  }
  return panels;
}

int cmd_reproduce_figures(const CliConfig& cfg, const std::vector<std::string>& only) {
  return guarded("reproduce-figures", [&] {
    fs::create_directories(cfg.out);
    Json summary = Json::object();
    Json discrepancies = Json::array();
    for (const auto& panel : figure_panels()) {
      if (!only.empty() && std::find(only.begin(), only.end(), panel.name) == only.end()) continue;
      CliConfig pc = cfg;
      pc.n_photons = panel.n_photons;
      pc.squeeze = panel.squeeze;
      pc.out = cfg.out / panel_dir_name(panel);
      OutputLog log(pc.out);
      const auto sq = squeeze_config(pc);

      if (panel.kind == Panel::Kind::statistics) {
        write_stats_outputs(sq, log);
        log.write_manifest(config_json(pc, "reproduce-figures"));
        continue;
      }
      const auto field = panel.kind == Panel::Kind::input_field
                             ? eval_fock_field(make_squeezed_input(sq), pc.grid())
                             : make_field(pc);
      if (panel.kind == Panel::Kind::input_field) {
        io::write_json_report(joint_distribution(make_squeezed_input(sq)), log.path("input_pn.json"));
        log.record("input_pn.json", "photon_distribution");
      }
      const auto report = write_field_outputs(field, pc, log);
      log.write_manifest(config_json(pc, "reproduce-figures"));

      Json entry;
      entry["N"] = panel.n_photons;
      entry["r"] = panel.squeeze;
      entry["count"] = report.count;
      summary[panel.name] = std::move(entry);
      if (panel.expected_count && static_cast<int>(report.count) != *panel.expected_count) {
        Json d;
        d["panel"] = panel.name;
        d["N"] = panel.n_photons;
        d["r"] = panel.squeeze;
        d["field_source"] = panel.kind == Panel::Kind::input_field ? "fock_input" : to_string(pc.field_source);
        d["expected_count"] = *panel.expected_count;
        d["detected_count"] = report.count;
        d["total_charge"] = report.total_charge;
        discrepancies.push_back(std::move(d));
      }
      std::cout << panel.name << ": N=" << panel.n_photons << " r=" << panel.squeeze << " vortices=" << report.count
                << '\n';
    }
    io::write_json(summary, cfg.out / "summary.json");
    io::write_json(discrepancies, cfg.out / "discrepancies.json");
    return 0;
  });
}

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Squeezed-state vortex simulator: mode-converter rotation, quadrature fields, vortex counting"};
  app.require_subcommand(1);

  CliConfig cfg;
  std::string source = "lg";
  std::string odd = std::string(to_string(kDefaultOddNReading));

  auto add_physics = [&](CLI::App* sub, bool required) {
    auto* n = sub->add_option("--n-photons", cfg.n_photons, "Photon cap N")->check(CLI::NonNegativeNumber);
    auto* r = sub->add_option("--squeeze", cfg.squeeze, "Squeezing parameter r")->check(CLI::NonNegativeNumber);
    if (required) {
      n->required();
      r->required();
    }
    sub->add_option("--phi", cfg.phi, "Rotation angle in radians")->capture_default_str();
  };
  auto add_grid = [&](CLI::App* sub) {
    sub->add_option("--grid", cfg.resolution, "Points per axis (even, >= 16)")
        ->check(CLI::Range(16, 1 << 14))
        ->capture_default_str();
    sub->add_option("--extent", cfg.extent, "Grid half-width")->check(CLI::PositiveNumber)->capture_default_str();
  };
  auto add_detection = [&](CLI::App* sub) {
    sub->add_option("--floor", cfg.floor, "Relative amplitude floor")->check(CLI::Range(0.0, 1.0))->capture_default_str();
    sub->add_option("--merge-radius", cfg.merge_radius, "Cluster radius in grid spacings")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
  };
  auto add_source = [&](CLI::App* sub) {
    sub->add_option("--field-source", source, "lg: LG superposition; fock: rotated Fock expansion")
        ->check(CLI::IsMember({"lg", "fock"}))
        ->capture_default_str();
    sub->add_option("--odd-n-reading", odd, "Odd-N handling of the LG superposition")
        ->check(CLI::IsMember({"floor", "gamma"}))
        ->capture_default_str();
  };
  auto add_out = [&](CLI::App* sub) { sub->add_option("--out", cfg.out, "Output directory")->capture_default_str(); };

  auto* simulate = app.add_subcommand("simulate", "Render one field and count its vortices");
  add_physics(simulate, true);
  add_grid(simulate);
  add_detection(simulate);
  add_source(simulate);
  add_out(simulate);

  auto* stats = app.add_subcommand("stats", "Photon-number statistics before and after rotation");
  add_physics(stats, true);
  add_out(stats);

  auto* audit = app.add_subcommand("audit", "Compare closed-form coefficients with the exact unitary");
  add_physics(audit, true);
  add_out(audit);

  auto* detect = app.add_subcommand("detect", "Re-run vortex detection on an exported field.csv");
  detect->add_option("input", cfg.input, "field.csv path")->required()->check(CLI::ExistingFile);
  add_detection(detect);
  add_out(detect);

  auto* figures = app.add_subcommand("reproduce-figures", "Run the full figure sweep");
  add_grid(figures);
  add_detection(figures);
  add_source(figures);
  add_out(figures);
  figures->add_option("--phi", cfg.phi, "Rotation angle in radians")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }
  try {
    cfg.field_source = source == "lg" ? FieldSource::lg : FieldSource::fock;
    cfg.odd_reading = odd_n_reading_from_string(odd);
    if (simulate->parsed() || figures->parsed()) (void)cfg.grid();
  } catch (const std::exception& e) {
    std::cerr << "sqv: " << e.what() << '\n';
    return 2;
  }

  if (simulate->parsed()) return cmd_simulate(cfg);
  if (stats->parsed()) return cmd_stats(cfg);
  if (audit->parsed()) return cmd_audit(cfg);
  if (detect->parsed()) return cmd_detect(cfg);
  return cmd_reproduce_figures(cfg);
}

}  // namespace sqv::app
