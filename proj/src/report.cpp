#include "switchtel/report.hpp"

#include <array>
#include <cmath>
#include <limits>

#include "switchtel/analytic.hpp"
#include "switchtel/linalg.hpp"
#include "switchtel/states.hpp"

namespace switchtel {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

constexpr std::array<ReportColumn, 17> kColumns = {{
    {"f_p1pa1", &FidelityReport::f_p1pa1, &FidelityReport::f_p1pa1_num, 1, true},
    {"f_p1pa2_on", &FidelityReport::f_p1pa2_on, &FidelityReport::f_p1pa2_on_num, 1, true},
    {"f_p1pa2_off", &FidelityReport::f_p1pa2_off, &FidelityReport::f_p1pa2_off_num, 1, true},
    {"p_on_p1", &FidelityReport::p_on_p1, &FidelityReport::p_on_p1_num, 1, true},
    {"d1", &FidelityReport::d1, &FidelityReport::d1_num, 1, true},
    {"d1max", &FidelityReport::d1max, &FidelityReport::d1max_num, 1, true},
    {"f_p2pa1", &FidelityReport::f_p2pa1, &FidelityReport::f_p2pa1_num, 2, true},
    {"f_p2pa2_on", &FidelityReport::f_p2pa2_on, &FidelityReport::f_p2pa2_on_num, 2, true},
    {"f_p2pa2_off", &FidelityReport::f_p2pa2_off, &FidelityReport::f_p2pa2_off_num, 2, true},
    {"d2", &FidelityReport::d2, &FidelityReport::d2_num, 2, true},
    {"d2max", &FidelityReport::d2max, &FidelityReport::d2max_num, 2, true},
    {"c_z", &FidelityReport::c_z, &FidelityReport::c_z_num, 0, true},
    {"c_x", &FidelityReport::c_x, &FidelityReport::c_x_num, 0, true},
    {"delta1", &FidelityReport::delta1, &FidelityReport::delta1_num, 1, false},
    {"delta2", &FidelityReport::delta2, &FidelityReport::delta2_num, 2, false},
    {"g1", &FidelityReport::g1, &FidelityReport::g1_num, 1, false},
    {"g2", &FidelityReport::g2, &FidelityReport::g2_num, 2, false},
}};

// l1 coherence of a pure qubit state in the computational basis, and in the
// Hadamard-rotated basis; the numeric cross-check of c_z and c_x.
void numeric_coherences(const SwitchParams& s, double& c_z, double& c_x) {
  const ComplexMatrix rho = projector(switch_state(s));
  c_z = std::abs(rho(0, 1)) + std::abs(rho(1, 0));
  const ComplexMatrix h = hadamard();
  const ComplexMatrix rotated = h * rho * h;
  c_x = std::abs(rotated(0, 1)) + std::abs(rotated(1, 0));
}

}  // namespace

std::span<const ReportColumn> report_columns() { return kColumns; }

FidelityReport analytic_report(double theta, double phi) {
  namespace an = analytic;
  FidelityReport r;
  r.theta = theta;
  r.phi = phi;

  r.f_p1pa1 = an::f_pr1_pa1(theta);
  r.f_p1pa2_on = an::f_pr1_pa2(theta, phi, SwitchOutcome::On);
  r.f_p1pa2_off = an::f_pr1_pa2(theta, phi, SwitchOutcome::Off);
  r.p_on_p1 = an::p_on_pr1(theta, phi);
  r.d1 = an::d1(theta, phi);
  r.d1max = an::d1_max(theta, phi);
  r.f_p2pa1 = an::f_pr2_pa1(theta);
  r.f_p2pa2_on = an::f_pr2_pa2(theta, phi, SwitchOutcome::On);
  r.f_p2pa2_off = an::f_pr2_pa2(theta, phi, SwitchOutcome::Off);
  r.d2 = an::d2(theta, phi);
  r.d2max = an::d2_max(theta, phi);

  const an::CoherencePair coh = an::coherences(theta, phi);
  r.c_z = coh.c_z;
  r.c_x = coh.c_x;

  const an::Region region = an::classify_region(theta, phi);
  r.delta1 = an::delta1(coh.c_z, phi, region.theta_half);
  r.delta2 = an::delta2(coh.c_z, phi, region.theta_half);
  r.g1 = an::g1_branch(coh.c_z, coh.c_x, region);
  r.g2 = an::g2_branch(coh.c_z, coh.c_x, region);

  for (const ReportColumn& col : kColumns) r.*(col.numeric) = kNan;
  r.has_numeric = false;
  r.max_abs_discrepancy = kNan;
  return r;
}

NumericEngine::NumericEngine() : NumericEngine(standard_kraus()) {}

NumericEngine::NumericEngine(const KrausBundle& kraus)
    : p1_pa1_(1, 1, std::nullopt, kraus),
      p1_on_(1, 2, SwitchOutcome::On, kraus),
      p1_off_(1, 2, SwitchOutcome::Off, kraus),
      p2_pa1_(2, 1, std::nullopt, kraus),
      p2_on_(2, 2, SwitchOutcome::On, kraus),
      p2_off_(2, 2, SwitchOutcome::Off, kraus) {}

const ChannelResponse& NumericEngine::response(int protocol, int path,
                                               std::optional<SwitchOutcome> outcome) const {
  if (protocol == 1) {
    if (path == 1) return p1_pa1_;
    return outcome == SwitchOutcome::On ? p1_on_ : p1_off_;
  }
  if (path == 1) return p2_pa1_;
  return outcome == SwitchOutcome::On ? p2_on_ : p2_off_;
}

FidelityReport NumericEngine::report(double theta, double phi, bool with_numeric,
                                     const InputParams& probe, bool include_p1,
                                     bool include_p2) const {
  FidelityReport r = analytic_report(theta, phi);
  if (!with_numeric) return r;

  const SwitchParams s(theta, phi);

  if (include_p1) {
    // Protocol 1 is input-independent, so pointwise runs at the probe input
    // are the numeric counterparts of the closed forms.
    r.f_p1pa1_num = p1_pa1_.fidelity(s, probe);
    const RunResult on1 = p1_on_.evaluate(s, probe);
    const RunResult off1 = p1_off_.evaluate(s, probe);
    r.f_p1pa2_on_num = on1.fidelity;
    r.f_p1pa2_off_num = off1.fidelity;
    r.p_on_p1_num = on1.probability;
    r.d1_num = r.f_p1pa2_on_num - r.f_p1pa1_num;
    r.d1max_num = std::max(r.f_p1pa2_on_num, r.f_p1pa2_off_num) - r.f_p1pa1_num;
    r.delta1_num = r.d1_num;
    r.g1_num = r.d1_num;
  }

  if (include_p2) {
    // Protocol 2 closed forms are Bloch-sphere averages; so are their
    // numeric counterparts.
    r.f_p2pa1_num = p2_pa1_.average_fidelity(s);
    r.f_p2pa2_on_num = p2_on_.average_fidelity(s);
    r.f_p2pa2_off_num = p2_off_.average_fidelity(s);
    r.d2_num = r.f_p2pa2_on_num - r.f_p2pa1_num;
    r.d2max_num = std::max(r.f_p2pa2_on_num, r.f_p2pa2_off_num) - r.f_p2pa1_num;
    r.delta2_num = r.d2_num;
    r.g2_num = r.d2_num;
  }

  numeric_coherences(s, r.c_z_num, r.c_x_num);

  r.has_numeric = true;
  r.max_abs_discrepancy = 0.0;
  for (const ReportColumn& col : kColumns) {
    if (col.protocol == 1 && !include_p1) continue;
    if (col.protocol == 2 && !include_p2) continue;
    r.max_abs_discrepancy =
        std::max(r.max_abs_discrepancy, std::abs(r.*(col.analytic) - r.*(col.numeric)));
  }
  return r;
}

}  // namespace switchtel
