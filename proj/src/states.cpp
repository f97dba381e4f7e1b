#include "switchtel/states.hpp"

#include <cmath>
#include <stdexcept>

#include "switchtel/linalg.hpp"

namespace switchtel {

namespace {
constexpr double kInvSqrt2 = 0.7071067811865475244;
}

ComplexMatrix bell(BellState kind) {
  switch (kind) {
    case BellState::PhiPlus:
      return ComplexMatrix::column({kInvSqrt2, 0.0, 0.0, kInvSqrt2});
    case BellState::PhiMinus:
      return ComplexMatrix::column({kInvSqrt2, 0.0, 0.0, -kInvSqrt2});
    case BellState::PsiPlus:
      return ComplexMatrix::column({0.0, kInvSqrt2, kInvSqrt2, 0.0});
    case BellState::PsiMinus:
      return ComplexMatrix::column({0.0, kInvSqrt2, -kInvSqrt2, 0.0});
  }
  throw std::invalid_argument("bell: unknown kind");
}

ComplexMatrix switch_state(const SwitchParams& p) {
  return ComplexMatrix::column({p.alpha(), p.beta()});
}

ComplexMatrix input_qubit(const InputParams& p) {
  return ComplexMatrix::column({p.a(), p.b()});
}

ComplexMatrix initial_joint(const SwitchParams& s, const InputParams& q) {
  return tensor(switch_state(s), tensor(input_qubit(q), bell(BellState::PsiMinus)));
}

ComplexMatrix hadamard() {
  return ComplexMatrix(2, 2, {kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2});
}

ComplexMatrix pauli(PauliAxis axis) {
  switch (axis) {
    case PauliAxis::X:
      return ComplexMatrix(2, 2, {0.0, 1.0, 1.0, 0.0});
    case PauliAxis::Y:
      return ComplexMatrix(2, 2, {0.0, cdouble(0.0, -1.0), cdouble(0.0, 1.0), 0.0});
    case PauliAxis::Z:
      return ComplexMatrix(2, 2, {1.0, 0.0, 0.0, -1.0});
  }
  throw std::invalid_argument("pauli: unknown axis");
}

ComplexMatrix identity(std::size_t n) { return ComplexMatrix::identity(n); }

ComplexMatrix basis_ket(std::size_t dim, std::size_t index) {
  if (index >= dim) throw std::invalid_argument("basis_ket: index out of range");
  ComplexMatrix v(dim, 1);
  v(index, 0) = 1.0;
  return v;
}

}  // namespace switchtel
