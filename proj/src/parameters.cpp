#include "switchtel/parameters.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace switchtel {

namespace {

void check_angle(double value, double lo, double hi, const char* what) {
  if (!std::isfinite(value) || value < lo || value > hi) {
    throw std::invalid_argument(std::string(what) + " out of range [" +
                                std::to_string(lo) + ", " + std::to_string(hi) +
                                "]: " + std::to_string(value));
  }
}

}  // namespace

const char* outcome_name(SwitchOutcome o) {
  return o == SwitchOutcome::On ? "on" : "off";
}

SwitchParams::SwitchParams(double theta_, double phi_) : theta(theta_), phi(phi_) {
  check_angle(theta, 0.0, std::numbers::pi, "switch theta");
  check_angle(phi, 0.0, 2.0 * std::numbers::pi, "switch phi");
}

std::complex<double> SwitchParams::alpha() const { return std::cos(theta / 2.0); }

std::complex<double> SwitchParams::beta() const {
  return std::polar(std::sin(theta / 2.0), phi);
}

InputParams::InputParams(double theta_prime_, double phi_prime_)
    : theta_prime(theta_prime_), phi_prime(phi_prime_) {
  check_angle(theta_prime, 0.0, std::numbers::pi, "input theta'");
  check_angle(phi_prime, 0.0, 2.0 * std::numbers::pi, "input phi'");
}

std::complex<double> InputParams::a() const { return std::cos(theta_prime / 2.0); }

std::complex<double> InputParams::b() const {
  return std::polar(std::sin(theta_prime / 2.0), phi_prime);
}

}  // namespace switchtel
