#pragma once

#include <cstddef>
#include <span>

#include "switchtel/channels.hpp"
#include "switchtel/parameters.hpp"
#include "switchtel/protocols.hpp"

namespace switchtel {

/// Every closed-form value at one (θ, φ) point, the matching value from the
/// numeric pipeline, and the worst absolute disagreement between the two.
/// Numeric fields are NaN until filled. The numeric counterparts of delta1,
/// delta2, g1 and g2 are the corresponding numeric advantages d1/d2.
struct FidelityReport {
  double theta = 0;
  double phi = 0;

  double f_p1pa1 = 0, f_p1pa2_on = 0, f_p1pa2_off = 0, p_on_p1 = 0;
  double d1 = 0, d1max = 0;
  double f_p2pa1 = 0, f_p2pa2_on = 0, f_p2pa2_off = 0;
  double d2 = 0, d2max = 0;
  double c_z = 0, c_x = 0;
  double delta1 = 0, delta2 = 0, g1 = 0, g2 = 0;

  double f_p1pa1_num = 0, f_p1pa2_on_num = 0, f_p1pa2_off_num = 0, p_on_p1_num = 0;
  double d1_num = 0, d1max_num = 0;
  double f_p2pa1_num = 0, f_p2pa2_on_num = 0, f_p2pa2_off_num = 0;
  double d2_num = 0, d2max_num = 0;
  double c_z_num = 0, c_x_num = 0;
  double delta1_num = 0, delta2_num = 0, g1_num = 0, g2_num = 0;

  bool has_numeric = false;
  double max_abs_discrepancy = 0;
};

struct ReportColumn {
  const char* name;
  double FidelityReport::*analytic;
  double FidelityReport::*numeric;
  int protocol;        // 0 = protocol-independent, else 1 or 2
  bool default_output; // part of the default sweep column set
};

/// All value columns in canonical CSV order.
std::span<const ReportColumn> report_columns();

/// Probe input used for the pointwise (protocol 1) numeric columns; any
/// choice works since those fidelities are input-independent.
inline constexpr double kProbeThetaPrime = 1.0471975511965976;  // π/3
inline constexpr double kProbePhiPrime = 0.7853981633974483;    // π/4

/// Owns the six precomputed pipeline responses (protocol × branch) and
/// fills the numeric side of reports. Protocol-2 columns are Bloch-sphere
/// quadrature averages; protocol-1 columns are pointwise at the probe input.
class NumericEngine {
 public:
  NumericEngine();
  explicit NumericEngine(const KrausBundle& kraus);

  /// `include_p1` / `include_p2` restrict the (costly) numeric work to the
  /// selected protocols; excluded numeric fields stay NaN.
  FidelityReport report(double theta, double phi, bool with_numeric,
                        const InputParams& probe = InputParams(kProbeThetaPrime,
                                                               kProbePhiPrime),
                        bool include_p1 = true, bool include_p2 = true) const;

  const ChannelResponse& response(int protocol, int path,
                                  std::optional<SwitchOutcome> outcome) const;

 private:
  ChannelResponse p1_pa1_, p1_on_, p1_off_;
  ChannelResponse p2_pa1_, p2_on_, p2_off_;
};

/// Analytic side only (numeric fields NaN, has_numeric false).
FidelityReport analytic_report(double theta, double phi);

}  // namespace switchtel
