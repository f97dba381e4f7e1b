#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "switchtel/sweep.hpp"
#include "test_helpers.hpp"

using namespace switchtel;
using switchtel::testing::kPi;

namespace {

SweepConfig small_grid() {
  SweepConfig config;
  config.theta_points = 9;
  config.phi_points = 12;
  return config;
}

std::string csv_of(const SweepConfig& config, const std::vector<FidelityReport>& rows) {
  std::ostringstream out;
  write_csv(out, config, rows);
  return out.str();
}

}  // namespace

TEST_CASE("linspace: closed endpoints") {
  const auto pts = linspace(0.0, 2.0 * kPi, 360);
  CHECK(pts.front() == 0.0);
  CHECK(pts.back() == 2.0 * kPi);
  CHECK(pts.size() == 360);
}

TEST_CASE("run_sweep: 2x2 corner grid") {
  SweepConfig config;
  config.theta_points = 2;
  config.phi_points = 2;
  const auto rows = run_sweep(config, nullptr);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].theta == 0.0);
  CHECK(rows[0].phi == 0.0);
  CHECK(rows[1].theta == 0.0);
  CHECK(rows[1].phi == 2.0 * kPi);
  CHECK(rows[2].theta == kPi);
  CHECK(rows[2].phi == 0.0);
  CHECK(rows[3].theta == kPi);
  CHECK(rows[3].phi == 2.0 * kPi);
}

TEST_CASE("run_sweep: byte-identical output across worker counts") {
  SweepConfig config = small_grid();
  config.with_numeric = true;
  const NumericEngine engine;

  config.jobs = 1;
  const std::string serial = csv_of(config, run_sweep(config, &engine));
  config.jobs = 2;
  const std::string two = csv_of(config, run_sweep(config, &engine));
  config.jobs = 5;
  const std::string five = csv_of(config, run_sweep(config, &engine));
  CHECK(serial == two);
  CHECK(serial == five);
  CHECK(serial.find('\r') == std::string::npos);  // LF only
}

TEST_CASE("write_csv: header layout and printed precision round-trip") {
  SweepConfig config = small_grid();
  config.with_numeric = true;
  const NumericEngine engine;
  const auto rows = run_sweep(config, &engine);
  const std::string csv = csv_of(config, rows);

  std::istringstream in(csv);
  std::string header;
  std::getline(in, header);
  CHECK(header.rfind("theta,phi,f_p1pa1,", 0) == 0);
  CHECK(header.find("c_x") != std::string::npos);
  CHECK(header.find("f_p1pa1_num") != std::string::npos);
  CHECK(header.find("f_p1pa1_err") != std::string::npos);

  // Every printed value must reproduce the source double to the printed
  // 15 significant digits.
  std::string line;
  std::size_t row_index = 0;
  const auto columns = selected_columns(config);
  while (std::getline(in, line)) {
    std::stringstream fields(line);
    std::string field;
    std::vector<double> parsed;
    while (std::getline(fields, field, ',')) parsed.push_back(std::stod(field));
    REQUIRE(parsed.size() == 2 + columns.size() * 3);
    const FidelityReport& row = rows[row_index++];
    CHECK(std::abs(parsed[0] - row.theta) <= 1e-14 * std::max(1.0, std::abs(row.theta)));
    CHECK(std::abs(parsed[2] - row.f_p1pa1) <= 1e-14);
  }
  CHECK(row_index == rows.size());
}

TEST_CASE("write_json: re-parsing reproduces the values") {
  SweepConfig config = small_grid();
  config.format = SweepConfig::Format::Json;
  const auto rows = run_sweep(config, nullptr);

  std::ostringstream out;
  write_json(out, config, rows);
  const nlohmann::json parsed = nlohmann::json::parse(out.str());
  REQUIRE(parsed.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(std::abs(parsed[i]["theta"].get<double>() - rows[i].theta) <= 1e-15);
    CHECK(std::abs(parsed[i]["f_p1pa2_on"].get<double>() - rows[i].f_p1pa2_on) <= 1e-15);
    CHECK(std::abs(parsed[i]["d2max"].get<double>() - rows[i].d2max) <= 1e-15);
  }
}

TEST_CASE("selected_columns: defaults, filters and validation") {
  SweepConfig config;
  const auto defaults = selected_columns(config);
  CHECK(defaults.size() == 13);
  CHECK(defaults.front() == "f_p1pa1");
  CHECK(defaults.back() == "c_x");

  config.protocols = {1};
  const auto p1_only = selected_columns(config);
  for (const std::string& name : p1_only) {
    CHECK(name.find("p2") == std::string::npos);
    CHECK(name.find("d2") == std::string::npos);
  }

  config.protocols = {1, 2};
  config.outcome_filter = SwitchOutcome::On;
  const auto on_only = selected_columns(config);
  for (const std::string& name : on_only) {
    CHECK_FALSE(name.ends_with("_off"));
  }
  config.outcome_filter = SwitchOutcome::Off;
  const auto off_only = selected_columns(config);
  for (const std::string& name : off_only) {
    CHECK_FALSE(name.ends_with("_on"));
    CHECK(name != "p_on_p1");
  }

  config.outcome_filter.reset();
  config.outputs = {"d1max", "c_z"};
  const auto subset = selected_columns(config);
  REQUIRE(subset.size() == 2);
  CHECK(subset[0] == "d1max");
  CHECK(subset[1] == "c_z");

  config.outputs = {"no_such_column"};
  CHECK_THROWS_AS(selected_columns(config), std::invalid_argument);
}

TEST_CASE("SweepConfig: validation") {
  SweepConfig config;
  config.theta_points = 1;
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);

  config = SweepConfig{};
  config.theta_max = 4.0;
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);

  config = SweepConfig{};
  config.tolerance = 0.0;
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);

  config = SweepConfig{};
  config.protocols = {3};
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
}

TEST_CASE("negative_regions: component counting without wrap-around") {
  // 3x4 grid, negatives at both phi edges of one theta row; they must count
  // as two regions since the grid does not wrap.
  const std::vector<double> values = {
      -1.0, 1.0, 1.0, -1.0,  //
      1.0,  1.0, 1.0, 1.0,   //
      -1.0, -1.0, 1.0, 1.0,  //
  };
  const NegativeRegionStats stats = negative_regions(values, 3, 4);
  CHECK(stats.fraction == doctest::Approx(4.0 / 12.0));
  REQUIRE(stats.region_fractions.size() == 3);
  CHECK(stats.region_fractions[0] == doctest::Approx(2.0 / 12.0));
  CHECK(stats.region_fractions[1] == doctest::Approx(1.0 / 12.0));
  CHECK(stats.region_fractions[2] == doctest::Approx(1.0 / 12.0));
}

TEST_CASE("run_verify: passes on a small grid, fails under an injected fault") {
  SweepConfig config = small_grid();
  config.jobs = 2;
  const VerifySummary clean = run_verify(config);
  CHECK(clean.all_passed());
  CHECK(clean.max_formula_discrepancy <= 1e-12);

  config.perturb = 1e-6;
  const VerifySummary faulty = run_verify(config);
  CHECK_FALSE(faulty.all_passed());
  CHECK(faulty.max_formula_discrepancy > 1e-10);
}

TEST_CASE("run_verify: protocol filter reports skipped checks") {
  SweepConfig config = small_grid();
  config.protocols = {1};
  const VerifySummary summary = run_verify(config);
  CHECK(summary.all_passed());
  bool saw_skipped = false;
  for (const CheckResult& check : summary.checks) {
    if (check.protocol == 2) {
      CHECK(check.skipped);
      saw_skipped = true;
    } else {
      CHECK_FALSE(check.skipped);
    }
  }
  CHECK(saw_skipped);

  const std::string json_text = verify_summary_json(summary, config);
  const nlohmann::json doc = nlohmann::json::parse(json_text);
  CHECK(doc["passed"].get<bool>());
  bool json_skip = false;
  for (const auto& item : doc["checks"]) {
    if (item["status"] == "skipped") json_skip = true;
  }
  CHECK(json_skip);
}

TEST_CASE("write_figures: emits the seven files with sane qualitative stats") {
  const std::filesystem::path dir =
      std::filesystem::temp_directory_path() / "switchtel_fig_test";
  std::filesystem::remove_all(dir);

  SweepConfig config;
  config.theta_points = 46;
  config.phi_points = 90;
  config.jobs = 2;
  const FigureStats stats = write_figures(dir.string(), config);

  for (const char* name : {"fig1.csv", "fig2a.csv", "fig2b.csv", "fig3.csv", "fig4.csv",
                           "fig5a.csv", "fig5b.csv"}) {
    CAPTURE(name);
    CHECK(std::filesystem::exists(dir / name));
  }

  // fig5a values stay non-negative; fig2b carries both signs.
  std::ifstream fig5a(dir / "fig5a.csv");
  std::string line;
  std::getline(fig5a, line);  // header
  while (std::getline(fig5a, line)) {
    const double value = std::stod(line.substr(line.rfind(',') + 1));
    CHECK(value >= -1e-12);
  }

  CHECK(stats.fig2a.fraction > 0.0);
  CHECK(stats.fig2a.region_fractions.size() == 2);
  CHECK(stats.fig2b.fraction > 0.05);
  CHECK(stats.fig2b.fraction < 1.0);
  CHECK(stats.fig4.fraction > 0.0);
  CHECK(stats.fig4.fraction < 0.05);

  // fig2b carries both signs: the path-2 fidelity dips below 2/3 somewhere
  // and exceeds it elsewhere.
  std::ifstream fig2b(dir / "fig2b.csv");
  std::getline(fig2b, line);  // header
  bool saw_negative = false, saw_positive = false;
  while (std::getline(fig2b, line)) {
    const double value = std::stod(line.substr(line.rfind(',') + 1));
    saw_negative = saw_negative || value < 0.0;
    saw_positive = saw_positive || value > 0.0;
  }
  CHECK(saw_negative);
  CHECK(saw_positive);

  std::filesystem::remove_all(dir);
}
