#include "switchtel/analytic.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace switchtel {
namespace analytic {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2 = std::numbers::sqrt2;

void check_theta(double theta) {
  if (!std::isfinite(theta) || theta < 0.0 || theta > kPi) {
    throw std::invalid_argument("theta out of [0, pi]: " + std::to_string(theta));
  }
}

void check_phi(double phi) {
  if (!std::isfinite(phi) || phi < 0.0 || phi > 2.0 * kPi) {
    throw std::invalid_argument("phi out of [0, 2pi]: " + std::to_string(phi));
  }
}

void check_cz(double c_z) {
  if (!std::isfinite(c_z) || c_z < 0.0 || c_z > 1.0) {
    throw std::invalid_argument("c_z out of [0, 1]: " + std::to_string(c_z));
  }
}

// sinθcosφ, the one combination every path-2 expression depends on.
double phase_term(double theta, double phi) { return std::sin(theta) * std::cos(phi); }

double outcome_sign(SwitchOutcome outcome) {
  return outcome == SwitchOutcome::On ? 1.0 : -1.0;
}

}  // namespace

double f_pr1_pa1(double theta) {
  check_theta(theta);
  const double c = std::cos(theta / 2.0);
  return 0.5 * (1.0 + c * c);
}

double f_pr1_pa2(double theta, double phi, SwitchOutcome outcome) {
  check_theta(theta);
  check_phi(phi);
  const double x = outcome_sign(outcome) * phase_term(theta, phi);
  return (3.0 + std::cos(theta) - x) / (4.0 - x);
}

double p_on_pr1(double theta, double phi) {
  check_theta(theta);
  check_phi(phi);
  return (4.0 - phase_term(theta, phi)) / 8.0;
}

double d1(double theta, double phi) {
  check_theta(theta);
  check_phi(phi);
  const double x = phase_term(theta, phi);
  return x * (std::cos(theta) - 1.0) / (4.0 * (4.0 - x));
}

double d1_max(double theta, double phi) {
  const double on = f_pr1_pa2(theta, phi, SwitchOutcome::On);
  const double off = f_pr1_pa2(theta, phi, SwitchOutcome::Off);
  return std::max(on, off) - f_pr1_pa1(theta);
}

double f_pr2_pa1(double theta) {
  check_theta(theta);
  const double c = std::cos(theta / 2.0);
  return (2.0 + c * c) / 3.0;
}

double f_pr2_pa2(double theta, double phi, SwitchOutcome outcome) {
  check_theta(theta);
  check_phi(phi);
  const double x = outcome_sign(outcome) * phase_term(theta, phi);
  return (40.0 + 8.0 * std::cos(theta) - 3.0 * kSqrt2 * x) / (48.0 - 3.0 * kSqrt2 * x);
}

double d2(double theta, double phi) {
  check_theta(theta);
  check_phi(phi);
  const double x = phase_term(theta, phi);
  return x * (std::cos(theta) - 1.0) / (kSqrt2 * (48.0 - 3.0 * kSqrt2 * x));
}

double d2_max(double theta, double phi) {
  const double on = f_pr2_pa2(theta, phi, SwitchOutcome::On);
  const double off = f_pr2_pa2(theta, phi, SwitchOutcome::Off);
  return std::max(on, off) - f_pr2_pa1(theta);
}

CoherencePair coherences(double theta, double phi) {
  check_theta(theta);
  check_phi(phi);
  // c_x = sqrt(1 - sin^2 theta cos^2 phi), evaluated as the modulus
  // |cos theta + i sin theta sin phi| to stay exact where the radicand
  // cancels (sin theta |cos phi| near 1).
  return {std::sin(theta), std::hypot(std::cos(theta), std::sin(theta) * std::sin(phi))};
}

Region classify_region(double theta, double phi) {
  check_theta(theta);
  check_phi(phi);
  Region region;
  region.theta_half = theta <= kPi / 2.0 ? ThetaHalf::First : ThetaHalf::Second;
  region.phi_half =
      (phi >= kPi / 2.0 && phi <= 3.0 * kPi / 2.0) ? PhiHalf::Inner : PhiHalf::Outer;
  return region;
}

// sqrt(1 - u^2) in product form; keeps full relative accuracy when u is
// within an ulp of 1, where the naive radicand cancels.
static double complement_root(double u) { return std::sqrt((1.0 - u) * (1.0 + u)); }

double delta1(double c_z, double phi, ThetaHalf branch) {
  check_cz(c_z);
  check_phi(phi);
  const double k = std::cos(phi);
  const double root = complement_root(c_z);
  if (branch == ThetaHalf::First) {
    return c_z * k * (root - 1.0) / (4.0 * (4.0 - c_z * k));
  }
  return -c_z * k * (root + 1.0) / (4.0 * (4.0 - c_z * k));
}

double delta2(double c_z, double phi, ThetaHalf branch) {
  check_cz(c_z);
  check_phi(phi);
  const double k = std::cos(phi);
  const double root = complement_root(c_z);
  const double denominator = kSqrt2 * (48.0 - 3.0 * kSqrt2 * c_z * k);
  if (branch == ThetaHalf::First) {
    return c_z * k * (root - 1.0) / denominator;
  }
  return -c_z * k * (root + 1.0) / denominator;
}

double ddelta1_dcz(double c_z, double phi, ThetaHalf branch) {
  check_phi(phi);
  if (!std::isfinite(c_z) || c_z < 0.0 || c_z >= 1.0) {
    throw std::invalid_argument("ddelta1_dcz: c_z must lie in [0, 1)");
  }
  const double k = std::cos(phi);
  const double root = complement_root(c_z);
  const double denominator = 4.0 * (4.0 - c_z * k) * (4.0 - c_z * k) * root;
  const double cz2 = c_z * c_z;
  const double cz3 = cz2 * c_z;
  if (branch == ThetaHalf::First) {
    return k * (4.0 - 4.0 * root - 8.0 * cz2 + cz3 * k) / denominator;
  }
  return -k * (4.0 + 4.0 * root - 8.0 * cz2 + cz3 * k) / denominator;
}

namespace {

double g_common(double c_z, double c_x, Region region, bool protocol2) {
  check_cz(c_z);
  if (!std::isfinite(c_x) || c_x < 0.0 || c_x > 1.0) {
    throw std::invalid_argument("c_x out of [0, 1]: " + std::to_string(c_x));
  }
  const double phase_sq = (1.0 - c_x) * (1.0 + c_x);  // sin²θ cos²φ
  if (phase_sq > c_z * c_z + 1e-12) {
    throw std::invalid_argument("inconsistent coherence pair: 1-c_x^2 > c_z^2");
  }
  const double mag = std::sqrt(std::max(phase_sq, 0.0));  // |sinθ cosφ|
  const double root = complement_root(c_z);

  // Sign structure of the four ranges: the θ half fixes root ∓ 1, the φ half
  // fixes the overall sign and the denominator's ∓|sinθcosφ|.
  const double vertical = region.theta_half == ThetaHalf::First ? root - 1.0 : root + 1.0;
  const double theta_sign = region.theta_half == ThetaHalf::First ? 1.0 : -1.0;
  const double phi_sign = region.phi_half == PhiHalf::Outer ? 1.0 : -1.0;
  const double mag_signed = region.phi_half == PhiHalf::Outer ? mag : -mag;

  const double denominator = protocol2 ? kSqrt2 * (48.0 - 3.0 * kSqrt2 * mag_signed)
                                       : 4.0 * (4.0 - mag_signed);
  return theta_sign * phi_sign * mag * vertical / denominator;
}

}  // namespace

double g1_branch(double c_z, double c_x, Region region) {
  return g_common(c_z, c_x, region, /*protocol2=*/false);
}

double g2_branch(double c_z, double c_x, Region region) {
  return g_common(c_z, c_x, region, /*protocol2=*/true);
}

double classical_threshold_pr1pa1() { return 2.0 * std::acos(1.0 / std::sqrt(3.0)); }

}  // namespace analytic
}  // namespace switchtel
