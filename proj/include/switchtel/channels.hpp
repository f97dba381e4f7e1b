#pragma once

#include <vector>

#include "switchtel/complex_matrix.hpp"
#include "switchtel/layout.hpp"
#include "switchtel/parameters.hpp"

namespace switchtel {

/// A set of Kraus operators of one common square dimension. The validated
/// factory enforces completeness ‖∑E†E − I‖_max ≤ 1e-12 at construction, so
/// trace preservation downstream never rests on an unchecked set.
class KrausSet {
 public:
  static constexpr double kCompletenessTol = 1e-12;

  static KrausSet validated(std::vector<ComplexMatrix> ops, SubsystemLayout layout);
  /// Skips the completeness check; used only for fault injection.
  static KrausSet unchecked(std::vector<ComplexMatrix> ops, SubsystemLayout layout);

  const std::vector<ComplexMatrix>& ops() const { return ops_; }
  const SubsystemLayout& layout() const { return layout_; }

  /// ‖∑E†E − I‖_max, recomputed on demand.
  double completeness_residual() const;

 private:
  KrausSet(std::vector<ComplexMatrix> ops, SubsystemLayout layout);

  std::vector<ComplexMatrix> ops_;
  SubsystemLayout layout_;
};

/// Standard teleportation with Alice's final correction: four operators
/// K_1..K_4 on A' ⊗ A ⊗ B that map |ψ⟩⟨ψ| ⊗ |ψ−⟩⟨ψ−| to
/// |ψ−⟩⟨ψ−| ⊗ |ψ⟩⟨ψ| deterministically.
KrausSet kraus_teleport();

/// Switch-controlled teleportation, off branch idle:
/// M_μ = |on⟩⟨on| ⊗ K_μ + |off⟩⟨off| ⊗ I/2 on S ⊗ A' ⊗ A ⊗ B.
KrausSet kraus_protocol1();
KrausSet kraus_protocol1(const KrausSet& teleport, bool validate = true);

/// Measure-and-prepare fallback: eight operators L_1..L_8 on A' ⊗ A ⊗ B.
/// L_1..L_4 realize the computational-basis measurement of A' followed by
/// Bob preparing the outcome; L_5..L_8 complete the set and annihilate every
/// valid input |ψ⟩ ⊗ |ψ−⟩.
KrausSet kraus_measure_prepare();

/// Switch-controlled teleportation, classical fallback when off:
/// N_μν = (1/√8)|on⟩⟨on| ⊗ K_μ + (1/2)|off⟩⟨off| ⊗ L_ν, 32 operators.
KrausSet kraus_protocol2();
KrausSet kraus_protocol2(const KrausSet& teleport, const KrausSet& measure_prepare,
                         bool validate = true);

struct PostselectResult {
  ComplexMatrix state;  // normalized 8×8 state of A' ⊗ A ⊗ B
  double probability;
};

/// Hadamard-rotates the switch of a 16×16 density matrix (S first), projects
/// it onto the requested outcome, and returns the normalized remainder with
/// the outcome probability. Throws when the probability is below 1e-14.
PostselectResult postselect_switch(const ComplexMatrix& rho, SwitchOutcome outcome);

/// The four Kraus families used by the numeric pipeline, constructed
/// together so a perturbed teleportation set propagates consistently.
struct KrausBundle {
  KrausSet teleport;
  KrausSet protocol1;
  KrausSet measure_prepare;
  KrausSet protocol2;

  static KrausBundle standard();
  /// Standard bundle with `epsilon` added to the largest-magnitude entry of
  /// the first teleportation operator. Assembled unchecked; the resulting
  /// completeness violation is the point of the fault.
  static KrausBundle with_teleport_fault(double epsilon);
};

/// Shared immutable standard bundle.
const KrausBundle& standard_kraus();

}  // namespace switchtel
