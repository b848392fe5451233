#include <doctest.h>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <random>
#include <string>
#include <vector>

#include "sqv/app.hpp"
#include "sqv/exportio.hpp"

using namespace sqv;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("sqv_cli_" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

int run(std::vector<std::string> args) {
  args.insert(args.begin(), "sqv");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  return app::run_cli(static_cast<int>(argv.size()), argv.data());
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

io::Json load(const fs::path& p) { return io::Json::parse(slurp(p)); }

io::Json without_timestamp(io::Json j) {
  j.erase("timestamp");
  return j;
}

}  // namespace

TEST_CASE("simulate writes the standard output set") {
  TempDir tmp;
  const auto out = tmp.path / "vac";
  REQUIRE(run({"simulate", "--n-photons", "0", "--squeeze", "0.5", "--grid", "128", "--out", out.string()}) == 0);
  CHECK(load(out / "vortices.json")["count"] == 0);

  const auto manifest = load(out / "manifest.json");
  std::vector<std::string> names;
  for (const auto& o : manifest["outputs"]) {
    names.push_back(o["filename"]);
    CHECK(o["bytes"].get<std::uintmax_t>() == fs::file_size(out / o["filename"].get<std::string>()));
  }
  CHECK(names == std::vector<std::string>{"field.csv", "amplitude.pgm", "phase.ppm", "vortices.json"});
  CHECK(manifest["tool_version"] == io::kToolVersion);
  CHECK(manifest["config"]["grid"]["resolution"] == 128);
  CHECK(manifest["timestamp"].get<std::string>().back() == 'Z');
}

TEST_CASE("simulate: squeezing changes the report") {
  TempDir tmp;
  REQUIRE(run({"simulate", "--n-photons", "2", "--squeeze", "1.0", "--grid", "256", "--out", (tmp.path / "a").string()}) == 0);
  REQUIRE(run({"simulate", "--n-photons", "2", "--squeeze", "0.02", "--grid", "256", "--out", (tmp.path / "b").string()}) == 0);
  CHECK(slurp(tmp.path / "a" / "vortices.json") != slurp(tmp.path / "b" / "vortices.json"));

  const auto field = eval_lg_superposition({2, 0.02, std::numbers::pi / 4}, GridSpec::checked(6.0, 256));
  CHECK(load(tmp.path / "b" / "vortices.json")["count"] == detect_vortices(field).count);
}

TEST_CASE("simulate is deterministic apart from the manifest timestamp") {
  TempDir tmp;
  for (const char* source : {"lg", "fock"}) {
    const auto a = tmp.path / (std::string(source) + "1");
    const auto b = tmp.path / (std::string(source) + "2");
    for (const auto& dir : {a, b}) {
      REQUIRE(run({"simulate", "--n-photons", "3", "--squeeze", "0.7", "--grid", "96", "--field-source", source, "--out",
                   dir.string()}) == 0);
    }
    for (const char* f : {"field.csv", "amplitude.pgm", "phase.ppm", "vortices.json"}) CHECK(slurp(a / f) == slurp(b / f));
    CHECK(without_timestamp(load(a / "manifest.json")) == without_timestamp(load(b / "manifest.json")));
  }
}

TEST_CASE("stats") {
  TempDir tmp;
  REQUIRE(run({"stats", "--n-photons", "5", "--squeeze", "0.1", "--out", (tmp.path / "s5").string()}) == 0);
  const auto s5 = load(tmp.path / "s5" / "stats.json");
  CHECK(s5["input"]["diagonal_weight"].get<double>() == 1.0);
  CHECK(s5["input"]["mandel_q_mode1"].is_number());

  REQUIRE(run({"stats", "--n-photons", "10", "--squeeze", "0.05", "--out", (tmp.path / "s10").string()}) == 0);
  for (const char* f : {"input_pn.json", "rotated_pn_oracle.json", "rotated_pn_analytic.json"}) {
    const auto d = load(tmp.path / "s10" / f);
    double joint = 0.0, marginal = 0.0;
    for (const auto& e : d["joint"]) joint += e["p"].get<double>();
    for (const auto& p : d["marginal_total"]) marginal += p.get<double>();
    CHECK(std::abs(joint - 1.0) <= 1e-12);
    CHECK(std::abs(marginal - 1.0) <= 1e-12);
  }

  REQUIRE(run({"stats", "--n-photons", "5", "--squeeze", "1.0", "--out", (tmp.path / "r1").string()}) == 0);
  CHECK(load(tmp.path / "r1" / "stats.json")["rotated_oracle"]["off_diagonal_mass"].get<double>() > 0.0);

  REQUIRE(run({"stats", "--n-photons", "0", "--squeeze", "0.3", "--out", (tmp.path / "v").string()}) == 0);
  CHECK(load(tmp.path / "v" / "stats.json")["input"]["mandel_q_mode1"].is_null());
}

TEST_CASE("audit") {
  TempDir tmp;
  REQUIRE(run({"audit", "--n-photons", "0", "--squeeze", "0.3", "--out", (tmp.path / "a0").string()}) == 0);
  const auto a0 = load(tmp.path / "a0" / "audit.json");
  CHECK(a0["max_amplitude_deviation"].get<double>() <= 1e-14);

  REQUIRE(run({"audit", "--n-photons", "2", "--squeeze", "0.5", "--out", (tmp.path / "a2").string()}) == 0);
  const auto a2 = load(tmp.path / "a2" / "audit.json");
  REQUIRE(a2["discrepancies"].size() > 1);
  auto mag = [](const io::Json& d) {
    return std::hypot(d["analytic_re"].get<double>() - d["oracle_re"].get<double>(),
                      d["analytic_im"].get<double>() - d["oracle_im"].get<double>());
  };
  for (std::size_t k = 1; k < a2["discrepancies"].size(); ++k) {
    CHECK(mag(a2["discrepancies"][k - 1]) >= mag(a2["discrepancies"][k]));
  }

  const auto start = std::chrono::steady_clock::now();
  REQUIRE(run({"audit", "--n-photons", "8", "--squeeze", "0.1", "--out", (tmp.path / "a8").string()}) == 0);
  CHECK(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() < 5.0);
}

TEST_CASE("detect re-analyses exported fields") {
  TempDir tmp;
  const auto sim = tmp.path / "sim";
  REQUIRE(run({"simulate", "--n-photons", "4", "--squeeze", "1.0", "--grid", "128", "--out", sim.string()}) == 0);
  REQUIRE(run({"detect", (sim / "field.csv").string(), "--out", (tmp.path / "det").string()}) == 0);
  CHECK(slurp(sim / "vortices.json") == slurp(tmp.path / "det" / "vortices.json"));

  const auto vortex = make_synthetic(GridSpec::checked(3.0, 64), [](double x, double y) { return cplx(x, y); });
  io::write_field_csv(vortex, tmp.path / "v.csv");
  REQUIRE(run({"detect", (tmp.path / "v.csv").string(), "--out", (tmp.path / "vd").string()}) == 0);
  const auto rep = load(tmp.path / "vd" / "vortices.json");
  CHECK(rep["count"] == 1);
  CHECK(rep["vortices"][0]["charge"] == 1);

  const auto text = slurp(tmp.path / "v.csv");
  std::ofstream(tmp.path / "cut.csv", std::ios::binary) << text.substr(0, text.size() / 3);
  CHECK(run({"detect", (tmp.path / "cut.csv").string(), "--out", (tmp.path / "x").string()}) != 0);
}

TEST_CASE("flag handling") {
  TempDir tmp;
  for (const char* sub : {"simulate", "stats", "audit", "detect", "reproduce-figures"}) CHECK(run({sub, "--help"}) == 0);
  CHECK(run({"simulate", "--n-photons", "2", "--squeeze", "0.1", "--bogus", "1"}) != 0);
  CHECK(run({"simulate", "--n-photons", "2"}) != 0);
  CHECK(run({"simulate", "--n-photons", "-1", "--squeeze", "0.1"}) != 0);
  CHECK(run({"simulate", "--n-photons", "2", "--squeeze", "0.1", "--grid", "63", "--out", tmp.path.string()}) != 0);
  CHECK(run({"simulate", "--n-photons", "2", "--squeeze", "0.1", "--extent", "0"}) != 0);
  CHECK(run({"simulate", "--n-photons", "2", "--squeeze", "0.1", "--field-source", "hg"}) != 0);
  CHECK(run({"stats", "--n-photons", "2", "--squeeze", "0.1", "--grid", "64"}) != 0);
  CHECK(run({}) != 0);
}

TEST_CASE("reproduce-figures panel subset") {
  TempDir tmp;
  app::CliConfig cfg;
  cfg.resolution = 128;
  cfg.out = tmp.path;
  REQUIRE(app::cmd_reproduce_figures(cfg, {"fig1_r0.5", "fig2c", "fig4_N5_r0.1"}) == 0);
  const auto summary = load(tmp.path / "summary.json");
  CHECK(summary["fig2c"]["N"] == 1);
  CHECK(summary["fig2c"]["r"].get<double>() == 0.02);
  CHECK(summary["fig1_r0.5"]["count"] == 0);
  CHECK_FALSE(summary.contains("fig4_N5_r0.1"));
  CHECK(fs::exists(tmp.path / "fig4_N5_r0.1" / "rotated_pn_analytic.json"));
  CHECK(fs::exists(tmp.path / "fig2c" / "phase.ppm"));
  CHECK(fs::exists(tmp.path / "fig1_r0.5" / "input_pn.json"));
  const auto disc = load(tmp.path / "discrepancies.json");
  CHECK(disc.is_array());
  const bool listed = std::any_of(disc.begin(), disc.end(), [](const io::Json& d) { return d["panel"] == "fig2c"; });
  CHECK(listed == (summary["fig2c"]["count"] != 1));

  const auto panels = app::figure_panels();
  CHECK(panels.size() == 3 + 6 + 6 + 10);
}
