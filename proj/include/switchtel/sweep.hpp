#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "switchtel/report.hpp"

namespace switchtel {

/// Grid sweep configuration. Ranges are closed intervals in radians; the
/// default 181 × 360 grid spans the full parameter space at about one degree
/// of spacing.
struct SweepConfig {
  int theta_points = 181;
  int phi_points = 360;
  double theta_min = 0.0;
  double theta_max = 3.141592653589793;
  double phi_min = 0.0;
  double phi_max = 6.283185307179586;

  std::set<int> protocols = {1, 2};
  std::vector<std::string> outputs;  // empty = default column set
  std::optional<SwitchOutcome> outcome_filter;

  enum class Format { Csv, Json };
  Format format = Format::Csv;

  double tolerance = 1e-10;
  int jobs = 0;  // 0 = hardware concurrency
  bool with_numeric = false;
  double perturb = 0.0;
  bool degrees = false;  // presentation of theta/phi in emitted output

  InputParams probe{kProbeThetaPrime, kProbePhiPrime};

  void validate() const;  // throws std::invalid_argument
};

std::vector<double> linspace(double lo, double hi, int n);

/// Runs fn(0..n-1) across `jobs` threads; any exception is rethrown.
void parallel_for(int n, int jobs, const std::function<void(int)>& fn);

/// Evaluates the θ-major grid. `engine` may be null when
/// config.with_numeric is false.
std::vector<FidelityReport> run_sweep(const SweepConfig& config, const NumericEngine* engine);

/// Column names actually emitted for a config (after protocol/outcome and
/// outputs filtering). Throws on an unknown name in config.outputs.
std::vector<std::string> selected_columns(const SweepConfig& config);

/// CSV with a header row, LF line endings, 15 significant digits.
void write_csv(std::ostream& out, const SweepConfig& config,
               const std::vector<FidelityReport>& rows);

/// JSON array of row objects, same columns as the CSV.
void write_json(std::ostream& out, const SweepConfig& config,
                const std::vector<FidelityReport>& rows);

struct CheckResult {
  std::string name;
  int protocol;       // 0 = protocol-independent
  double worst;       // worst observed value (meaning depends on the check)
  double threshold;   // pass when worst <= threshold
  bool skipped;
  bool passed;
};

struct VerifySummary {
  std::vector<CheckResult> checks;
  double max_formula_discrepancy = 0.0;

  bool all_passed() const;
};

/// The full analytic-vs-numeric suite plus the module invariants, evaluated
/// on the configured grid. config.perturb != 0 injects the Kraus fault.
VerifySummary run_verify(const SweepConfig& config);

/// JSON rendering of a verify summary (worst-case discrepancy per formula).
std::string verify_summary_json(const VerifySummary& summary, const SweepConfig& config);

struct NegativeRegionStats {
  double fraction = 0.0;              // grid fraction with value < 0
  std::vector<double> region_fractions;  // per connected region, descending
};

/// Connected-component analysis (4-neighbor) of the negative set of a
/// θ-major grid of values.
NegativeRegionStats negative_regions(const std::vector<double>& values, int theta_points,
                                     int phi_points);

struct FigureStats {
  NegativeRegionStats fig2a;  // F_Pr1Pa2(on) − 1/2
  NegativeRegionStats fig2b;  // F_Pr1Pa2(on) − 2/3
  NegativeRegionStats fig4;   // F_Pr2Pa2(on) − 2/3
};

/// Writes fig1.csv, fig2a.csv, fig2b.csv, fig3.csv, fig4.csv, fig5a.csv and
/// fig5b.csv under out_dir and returns the negative-region statistics.
/// Throws std::ios_base::failure on I/O errors.
FigureStats write_figures(const std::string& out_dir, const SweepConfig& config);

}  // namespace switchtel
