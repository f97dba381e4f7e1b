#pragma once

#include <complex>

namespace switchtel {

/// Measurement outcome of the switch qubit after the Hadamard rotation.
enum class SwitchOutcome { On, Off };

const char* outcome_name(SwitchOutcome o);

/// Bloch angles of the switch state cos(θ/2)|on⟩ + e^{iφ} sin(θ/2)|off⟩.
/// θ must lie in [0, π] and φ in [0, 2π]; out-of-range values are rejected,
/// never wrapped (φ = 2π is accepted as an alias of φ = 0 so that closed
/// sweep grids can include both endpoints).
struct SwitchParams {
  SwitchParams(double theta, double phi);

  double theta;
  double phi;

  std::complex<double> alpha() const;  // cos(θ/2)
  std::complex<double> beta() const;   // e^{iφ} sin(θ/2)
};

/// Bloch angles of the unknown input qubit a|0⟩ + b|1⟩, with
/// a = cos(θ'/2) and b = e^{iφ'} sin(θ'/2). Same domain rules as above.
struct InputParams {
  InputParams(double theta_prime, double phi_prime);

  double theta_prime;
  double phi_prime;

  std::complex<double> a() const;
  std::complex<double> b() const;
};

}  // namespace switchtel
