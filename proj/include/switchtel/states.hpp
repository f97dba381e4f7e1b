#pragma once

#include "switchtel/complex_matrix.hpp"
#include "switchtel/parameters.hpp"

namespace switchtel {

enum class BellState { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

enum class PauliAxis { X, Y, Z };

/// The four Bell vectors on a qubit pair, e.g. |ψ−⟩ = (|01⟩ − |10⟩)/√2.
ComplexMatrix bell(BellState kind);

/// cos(θ/2)|on⟩ + e^{iφ} sin(θ/2)|off⟩ with |on⟩ = (1,0)ᵀ, |off⟩ = (0,1)ᵀ.
ComplexMatrix switch_state(const SwitchParams& p);

/// cos(θ'/2)|0⟩ + e^{iφ'} sin(θ'/2)|1⟩.
ComplexMatrix input_qubit(const InputParams& p);

/// |ξ⟩ = (switch state) ⊗ (input qubit) ⊗ |ψ−⟩, a unit 16-vector in
/// S ⊗ A' ⊗ A ⊗ B order.
ComplexMatrix initial_joint(const SwitchParams& s, const InputParams& q);

ComplexMatrix hadamard();
ComplexMatrix pauli(PauliAxis axis);
ComplexMatrix identity(std::size_t n);

/// Computational basis column |index⟩ in a `dim`-dimensional space.
ComplexMatrix basis_ket(std::size_t dim, std::size_t index);

}  // namespace switchtel
