#pragma once

#include "switchtel/parameters.hpp"

namespace switchtel {
namespace analytic {

// Closed forms for every fidelity, probability and advantage expression, as
// pure scalar functions of the switch angles. Arguments are radians with
// θ ∈ [0, π], φ ∈ [0, 2π]; out-of-domain values throw std::invalid_argument.

/// Protocol 1, path 1: (1 + cos²(θ/2)) / 2. Input-independent.
double f_pr1_pa1(double theta);

/// Protocol 1, path 2, conditioned on `outcome`:
/// (3 + cosθ ∓ sinθcosφ) / (4 ∓ sinθcosφ). Input-independent.
double f_pr1_pa2(double theta, double phi, SwitchOutcome outcome);

/// Probability of the |on⟩ outcome in protocol 1, path 2:
/// (4 − sinθcosφ) / 8.
double p_on_pr1(double theta, double phi);

/// Path-2-minus-path-1 advantage of protocol 1:
/// sinθcosφ(cosθ − 1) / (4(4 − sinθcosφ)).
double d1(double theta, double phi);

/// max{F_on, F_off} − F_path1 for protocol 1; non-negative everywhere.
double d1_max(double theta, double phi);

/// Protocol 2, path 1, input-averaged: (2 + cos²(θ/2)) / 3.
double f_pr2_pa1(double theta);

/// Protocol 2, path 2, input-averaged, conditioned on `outcome`:
/// (40 + 8cosθ ∓ 3√2 sinθcosφ) / (48 ∓ 3√2 sinθcosφ).
double f_pr2_pa2(double theta, double phi, SwitchOutcome outcome);

/// Path-2-minus-path-1 advantage of protocol 2:
/// sinθcosφ(cosθ − 1) / (√2(48 − 3√2 sinθcosφ)).
double d2(double theta, double phi);

/// max{F_on, F_off} − F_path1 for protocol 2; non-negative everywhere.
double d2_max(double theta, double phi);

/// l1-norm coherences of the switch state: c_z in the {|on⟩, |off⟩} basis
/// and c_x in the Hadamard-rotated basis.
struct CoherencePair {
  double c_z;  // sinθ
  double c_x;  // √(1 − sin²θ cos²φ)
};

CoherencePair coherences(double theta, double phi);

/// The advantage expressions are 2-to-1 in θ for fixed c_z = sinθ, so the
/// θ half-range is an explicit parameter: First covers θ ≤ π/2, Second
/// covers θ ≥ π/2.
enum class ThetaHalf { First, Second };

/// φ half: Inner is the band π/2 ≤ φ ≤ 3π/2, Outer its complement.
enum class PhiHalf { Inner, Outer };

struct Region {
  ThetaHalf theta_half;
  PhiHalf phi_half;
};

/// Region of (θ, φ); boundary angles are assigned to First/Inner. The
/// piecewise expressions agree on the boundaries, so the tie-break is
/// observationally irrelevant.
Region classify_region(double theta, double phi);

/// d1 expressed through the σ_z coherence:
///   ±c_z cosφ (√(1−c_z²) ∓ 1) / (4(4 − c_z cosφ))
/// with the sign pattern fixed by the θ half-range.
double delta1(double c_z, double phi, ThetaHalf branch);

/// d2 analog: ±c_z cosφ (√(1−c_z²) ∓ 1) / (√2(48 − 3√2 c_z cosφ)).
double delta2(double c_z, double phi, ThetaHalf branch);

/// ∂Δ1/∂c_z. Defined for c_z ∈ [0, 1); the derivative is singular at
/// c_z = 1 and such input throws.
double ddelta1_dcz(double c_z, double phi, ThetaHalf branch);

/// d1 expressed through both coherences; requires 1 − c_x² ≤ c_z² (any pair
/// derived from real angles satisfies it) and both in [0, 1].
double g1_branch(double c_z, double c_x, Region region);

/// d2 analog of g1_branch.
double g2_branch(double c_z, double c_x, Region region);

/// The θ below which the protocol-1 path-1 fidelity beats the classical
/// measure-and-prepare bound 2/3: returns 2·arccos(1/√3) ≈ 1.910633 rad
/// (109.4712°), the angle where (1 + cos²(θ/2))/2 crosses 2/3.
double classical_threshold_pr1pa1();

}  // namespace analytic
}  // namespace switchtel
