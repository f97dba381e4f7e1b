// Command-line front end: point evaluation, grid sweeps, verification and
// figure-data emission for the switch-controlled teleportation simulator.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "switchtel/analytic.hpp"
#include "switchtel/protocols.hpp"
#include "switchtel/report.hpp"
#include "switchtel/sweep.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitVerifyFailed = 2;
constexpr int kExitIo = 3;

constexpr double kPi = std::numbers::pi;

struct AngleFlags {
  double theta = 0.0;
  double phi = 0.0;
  double theta_prime = switchtel::kProbeThetaPrime;
  double phi_prime = switchtel::kProbePhiPrime;
};

double to_radians(double value, bool degrees) { return degrees ? value * kPi / 180.0 : value; }

std::string fmt(double v) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.15g", v);
  return buffer;
}

void parse_grid(const std::string& text, switchtel::SweepConfig& config) {
  const auto x = text.find('x');
  if (x == std::string::npos) {
    throw CLI::ValidationError("--grid", "expected THETAxPHI, e.g. 181x360");
  }
  try {
    config.theta_points = std::stoi(text.substr(0, x));
    config.phi_points = std::stoi(text.substr(x + 1));
  } catch (const std::exception&) {
    throw CLI::ValidationError("--grid", "expected THETAxPHI, e.g. 181x360");
  }
}

void parse_range(const std::string& text, bool degrees, double& lo, double& hi) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw CLI::ValidationError("range", "expected MIN:MAX");
  }
  try {
    lo = to_radians(std::stod(text.substr(0, colon)), degrees);
    hi = to_radians(std::stod(text.substr(colon + 1)), degrees);
  } catch (const std::exception&) {
    throw CLI::ValidationError("range", "expected MIN:MAX");
  }
}

void apply_protocol(const std::string& choice, switchtel::SweepConfig& config) {
  if (choice == "1") {
    config.protocols = {1};
  } else if (choice == "2") {
    config.protocols = {2};
  } else if (choice == "all") {
    config.protocols = {1, 2};
  } else {
    throw CLI::ValidationError("--protocol", "must be 1, 2 or all");
  }
}

void apply_outcome(const std::string& choice, switchtel::SweepConfig& config) {
  if (choice == "on") {
    config.outcome_filter = switchtel::SwitchOutcome::On;
  } else if (choice == "off") {
    config.outcome_filter = switchtel::SwitchOutcome::Off;
  } else if (!choice.empty()) {
    throw CLI::ValidationError("--outcome", "must be on or off");
  }
}

/// Flat key=value config support: returns argv with `--key=value` tokens
/// inserted right after the subcommand for every config key the command line
/// does not already carry, so explicit flags always win. Lines starting with
/// '#' or ';' and blank lines are skipped; a bare `key` line sets a flag.
std::vector<std::string> expand_config_args(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);

  std::string config_path;
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      config_path = args[i + 1];
    } else if (args[i].rfind("--config=", 0) == 0) {
      config_path = args[i].substr(9);
    }
  }
  if (config_path.empty()) return args;

  std::ifstream file(config_path);
  if (!file) throw std::invalid_argument("cannot read config file: " + config_path);

  const auto user_has = [&](const std::string& key) {
    const std::string flag = "--" + key;
    for (std::size_t i = 1; i < args.size(); ++i) {
      if (args[i] == flag || args[i].rfind(flag + "=", 0) == 0) return true;
    }
    return false;
  };

  std::vector<std::string> injected;
  std::string line;
  while (std::getline(file, line)) {
    const auto begin = line.find_first_not_of(" \t\r");
    if (begin == std::string::npos) continue;
    const auto end = line.find_last_not_of(" \t\r");
    line = line.substr(begin, end - begin + 1);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;

    const auto eq = line.find('=');
    const std::string key = eq == std::string::npos ? line : line.substr(0, eq);
    if (key.empty() || key == "config") continue;
    if (user_has(key)) continue;
    if (eq == std::string::npos) {
      injected.push_back("--" + key);
    } else {
      injected.push_back("--" + key + "=" + line.substr(eq + 1));
    }
  }

  // Insert after the subcommand token (the first non-flag argument).
  std::size_t position = args.size();
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (!args[i].empty() && args[i][0] != '-') {
      position = i + 1;
      break;
    }
  }
  args.insert(args.begin() + position, injected.begin(), injected.end());
  return args;
}

/// Writes `body(stream)` to `path`, or to stdout when path is empty.
template <typename Body>
void with_output(const std::string& path, const Body& body) {
  if (path.empty()) {
    body(std::cout);
    if (!std::cout) throw std::ios_base::failure("write to stdout failed");
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::ios_base::failure("cannot open for writing: " + path);
  body(out);
  if (!out) throw std::ios_base::failure("write failed: " + path);
}

void print_point_text(std::ostream& out, const switchtel::FidelityReport& report,
                      const switchtel::SweepConfig& config) {
  const double unit = config.degrees ? 180.0 / kPi : 1.0;
  out << "point: theta = " << fmt(report.theta * unit) << ", phi = "
      << fmt(report.phi * unit) << (config.degrees ? " deg" : " rad") << "\n\n";

  const auto names = switchtel::selected_columns(config);
  for (const std::string& name : names) {
    for (const switchtel::ReportColumn& col : switchtel::report_columns()) {
      if (name != col.name) continue;
      out << "  " << name;
      for (std::size_t pad = name.size(); pad < 14; ++pad) out << ' ';
      out << " = " << fmt(report.*(col.analytic));
      if (report.has_numeric && !std::isnan(report.*(col.numeric))) {
        out << "   numeric " << fmt(report.*(col.numeric)) << "   |err| "
            << fmt(std::abs(report.*(col.analytic) - report.*(col.numeric)));
      }
      out << '\n';
    }
  }
  if (report.has_numeric) {
    out << "\n  max |analytic - numeric| = " << fmt(report.max_abs_discrepancy)
        << "  (tolerance " << fmt(config.tolerance) << ")\n";
  }
}

void print_point_runs(std::ostream& out, const switchtel::SweepConfig& config,
                      const switchtel::SwitchParams& s, const switchtel::InputParams& q) {
  out << "\npointwise evolution at input theta' = "
      << fmt(config.degrees ? q.theta_prime * 180.0 / kPi : q.theta_prime) << ", phi' = "
      << fmt(config.degrees ? q.phi_prime * 180.0 / kPi : q.phi_prime) << ":\n";
  for (int protocol : config.protocols) {
    const switchtel::RunResult path1 = switchtel::run({protocol, 1, std::nullopt, s, q});
    out << "  protocol " << protocol << " path 1:       fidelity " << fmt(path1.fidelity)
        << '\n';
    for (switchtel::SwitchOutcome outcome :
         {switchtel::SwitchOutcome::On, switchtel::SwitchOutcome::Off}) {
      if (config.outcome_filter && *config.outcome_filter != outcome) continue;
      const switchtel::RunResult r = switchtel::run({protocol, 2, outcome, s, q});
      out << "  protocol " << protocol << " path 2 (" << switchtel::outcome_name(outcome)
          << "):" << (outcome == switchtel::SwitchOutcome::On ? " " : "") << " fidelity "
          << fmt(r.fidelity) << "  probability " << fmt(r.probability) << '\n';
    }
  }
}

nlohmann::json point_json(const switchtel::FidelityReport& report,
                          const switchtel::SweepConfig& config) {
  nlohmann::json doc;
  const double unit = config.degrees ? 180.0 / kPi : 1.0;
  doc["theta"] = report.theta * unit;
  doc["phi"] = report.phi * unit;
  nlohmann::json analytic, numeric, err;
  for (const std::string& name : switchtel::selected_columns(config)) {
    for (const switchtel::ReportColumn& col : switchtel::report_columns()) {
      if (name != col.name) continue;
      analytic[name] = report.*(col.analytic);
      if (report.has_numeric && !std::isnan(report.*(col.numeric))) {
        numeric[name] = report.*(col.numeric);
        err[name] = std::abs(report.*(col.analytic) - report.*(col.numeric));
      }
    }
  }
  doc["analytic"] = std::move(analytic);
  if (report.has_numeric) {
    doc["numeric"] = std::move(numeric);
    doc["abs_error"] = std::move(err);
    doc["max_abs_discrepancy"] = report.max_abs_discrepancy;
  }
  return doc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Switch-controlled teleportation: exact simulator and closed-form calculator"};
  app.require_subcommand(1);

  // Shared option state; each subcommand registers the flags it supports.
  AngleFlags angles;
  switchtel::SweepConfig config;
  bool degrees = false;
  bool with_verify = false;
  std::string grid_text, protocol_choice = "all", outcome_choice, format_choice = "text";
  std::string out_path, theta_range_text, phi_range_text, outputs_text, config_path;
  bool probe_given = false;
  static constexpr const char* kConfigHelp =
      "Flat key=value config file; command-line flags override it";

  CLI::App* point = app.add_subcommand("point", "Evaluate one (theta, phi) point");
  point->add_option("--theta", angles.theta, "Switch polar angle")->required();
  point->add_option("--phi", angles.phi, "Switch azimuthal angle")->required();
  point->add_option("--theta-prime", angles.theta_prime, "Input-qubit polar angle")
      ->each([&](const std::string&) { probe_given = true; });
  point->add_option("--phi-prime", angles.phi_prime, "Input-qubit azimuthal angle")
      ->each([&](const std::string&) { probe_given = true; });
  point->add_flag("--degrees", degrees, "Angles in degrees (input and output)");
  point->add_flag("--verify", with_verify, "Also run the numeric pipeline and report errors");
  point->add_option("--protocol", protocol_choice, "Protocol selection: 1, 2 or all");
  point->add_option("--outcome", outcome_choice, "Restrict path-2 columns: on or off");
  point->add_option("--format", format_choice, "Output format: text, csv or json");
  point->add_option("--tolerance", config.tolerance, "Verification tolerance");
  point->add_option("--out", out_path, "Write the report to a file instead of stdout");
  point->add_option("--config", config_path, kConfigHelp);

  CLI::App* sweep = app.add_subcommand("sweep", "Evaluate a (theta, phi) grid");
  sweep->add_option("--grid", grid_text, "Grid size THETAxPHI (default 181x360)");
  sweep->add_option("--theta-range", theta_range_text, "Closed theta interval MIN:MAX");
  sweep->add_option("--phi-range", phi_range_text, "Closed phi interval MIN:MAX");
  sweep->add_option("--protocol", protocol_choice, "Protocol selection: 1, 2 or all");
  sweep->add_option("--outcome", outcome_choice, "Restrict path-2 columns: on or off");
  sweep->add_option("--outputs", outputs_text, "Comma-separated column subset");
  sweep->add_option("--format", format_choice, "Output format: csv or json");
  sweep->add_option("--out", out_path, "Output file (default stdout)");
  sweep->add_flag("--degrees", degrees, "Emit theta/phi in degrees");
  sweep->add_flag("--verify", with_verify, "Append *_num and *_err columns");
  sweep->add_option("--tolerance", config.tolerance, "Verification tolerance");
  sweep->add_option("--jobs", config.jobs, "Worker thread count (0 = hardware)");
  sweep->add_option("--perturb", config.perturb, "Inject a Kraus fault of this size");
  sweep->add_option("--config", config_path, kConfigHelp);

  CLI::App* verify = app.add_subcommand(
      "verify", "Run the analytic-vs-numeric suite and all invariants on the grid");
  verify->add_option("--grid", grid_text, "Grid size THETAxPHI (default 181x360)");
  verify->add_option("--protocol", protocol_choice, "Protocol selection: 1, 2 or all");
  verify->add_option("--tolerance", config.tolerance, "Formula agreement tolerance");
  verify->add_option("--jobs", config.jobs, "Worker thread count (0 = hardware)");
  verify->add_option("--perturb", config.perturb, "Inject a Kraus fault of this size");
  verify->add_option("--out", out_path, "Write the JSON summary to a file");
  verify->add_option("--config", config_path, kConfigHelp);

  CLI::App* figures = app.add_subcommand("figures", "Emit per-figure CSV data");
  figures->add_option("--out", out_path, "Output directory")->required();
  figures->add_option("--grid", grid_text, "Grid size THETAxPHI (default 181x360)");
  figures->add_option("--jobs", config.jobs, "Worker thread count (0 = hardware)");
  figures->add_flag("--degrees", degrees, "Emit theta/phi in degrees");
  figures->add_option("--config", config_path, kConfigHelp);

  try {
    std::vector<std::string> args = expand_config_args(argc, argv);
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    reversed.pop_back();  // program name
    app.parse(std::move(reversed));
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    config.degrees = degrees;
    apply_protocol(protocol_choice, config);
    apply_outcome(outcome_choice, config);
    if (!grid_text.empty()) parse_grid(grid_text, config);
    if (!theta_range_text.empty()) {
      parse_range(theta_range_text, degrees, config.theta_min, config.theta_max);
    }
    if (!phi_range_text.empty()) {
      parse_range(phi_range_text, degrees, config.phi_min, config.phi_max);
    }
    if (!outputs_text.empty()) {
      std::stringstream ss(outputs_text);
      std::string item;
      while (std::getline(ss, item, ',')) {
        if (!item.empty()) config.outputs.push_back(item);
      }
    }
    config.with_numeric = with_verify;

    if (point->parsed()) {
      const double theta = to_radians(angles.theta, degrees);
      const double phi = to_radians(angles.phi, degrees);
      const switchtel::InputParams probe(to_radians(angles.theta_prime, degrees),
                                         to_radians(angles.phi_prime, degrees));
      config.probe = probe;
      config.validate();

      switchtel::FidelityReport report;
      if (with_verify) {
        const switchtel::NumericEngine engine;
        report = engine.report(theta, phi, true, probe, config.protocols.contains(1),
                               config.protocols.contains(2));
      } else {
        report = switchtel::analytic_report(theta, phi);
      }

      with_output(out_path, [&](std::ostream& out) {
        if (format_choice == "json") {
          out << point_json(report, config).dump(2) << '\n';
        } else if (format_choice == "csv") {
          switchtel::write_csv(out, config, {report});
        } else if (format_choice == "text") {
          print_point_text(out, report, config);
          if (probe_given) {
            print_point_runs(out, config, switchtel::SwitchParams(theta, phi), probe);
          }
        } else {
          throw std::invalid_argument("unknown format: " + format_choice);
        }
      });
      if (with_verify && report.max_abs_discrepancy > config.tolerance) {
        std::cerr << "verification failed: max discrepancy "
                  << fmt(report.max_abs_discrepancy) << " > tolerance "
                  << fmt(config.tolerance) << '\n';
        return kExitVerifyFailed;
      }
      return kExitOk;
    }

    if (sweep->parsed()) {
      if (format_choice == "text") format_choice = "csv";
      config.validate();
      std::optional<switchtel::NumericEngine> engine;
      if (config.with_numeric) {
        engine.emplace(config.perturb != 0.0
                           ? switchtel::KrausBundle::with_teleport_fault(config.perturb)
                           : switchtel::KrausBundle::standard());
      }
      const auto rows = switchtel::run_sweep(config, engine ? &*engine : nullptr);
      with_output(out_path, [&](std::ostream& out) {
        if (format_choice == "json") {
          switchtel::write_json(out, config, rows);
        } else if (format_choice == "csv") {
          switchtel::write_csv(out, config, rows);
        } else {
          throw std::invalid_argument("unknown format: " + format_choice);
        }
      });
      return kExitOk;
    }

    if (verify->parsed()) {
      config.validate();
      const switchtel::VerifySummary summary = switchtel::run_verify(config);
      for (const switchtel::CheckResult& check : summary.checks) {
        std::cerr << (check.skipped ? "SKIP" : (check.passed ? "PASS" : "FAIL")) << ' '
                  << check.name;
        if (!check.skipped) {
          std::cerr << "  worst " << fmt(check.worst) << "  threshold "
                    << fmt(check.threshold);
        }
        std::cerr << '\n';
      }
      with_output(out_path, [&](std::ostream& out) {
        out << switchtel::verify_summary_json(summary, config) << '\n';
      });
      return summary.all_passed() ? kExitOk : kExitVerifyFailed;
    }

    if (figures->parsed()) {
      config.validate();
      const switchtel::FigureStats stats = switchtel::write_figures(out_path, config);
      const auto describe = [](const char* name, const switchtel::NegativeRegionStats& s) {
        std::cout << name << ": negative fraction " << fmt(s.fraction) << " in "
                  << s.region_fractions.size() << " region(s)";
        if (!s.region_fractions.empty()) {
          std::cout << " [";
          for (std::size_t i = 0; i < s.region_fractions.size(); ++i) {
            std::cout << (i ? ", " : "") << fmt(s.region_fractions[i]);
          }
          std::cout << ']';
        }
        std::cout << '\n';
      };
      describe("fig2a (f_p1pa2_on - 1/2)", stats.fig2a);
      describe("fig2b (f_p1pa2_on - 2/3)", stats.fig2b);
      describe("fig4 (f_p2pa2_on - 2/3)", stats.fig4);
      return kExitOk;
    }

    return kExitUsage;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}
