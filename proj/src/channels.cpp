#include "switchtel/channels.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "switchtel/linalg.hpp"
#include "switchtel/states.hpp"

namespace switchtel {

KrausSet::KrausSet(std::vector<ComplexMatrix> ops, SubsystemLayout layout)
    : ops_(std::move(ops)), layout_(std::move(layout)) {
  if (ops_.empty()) throw std::invalid_argument("KrausSet: empty operator list");
  const std::size_t dim = layout_.dimension();
  for (const ComplexMatrix& e : ops_) {
    if (!e.is_square() || e.rows() != dim) {
      throw std::invalid_argument("KrausSet: operator does not match layout dimension");
    }
  }
}

KrausSet KrausSet::validated(std::vector<ComplexMatrix> ops, SubsystemLayout layout) {
  KrausSet set(std::move(ops), std::move(layout));
  const double residual = set.completeness_residual();
  if (residual > kCompletenessTol) {
    throw std::invalid_argument("KrausSet: completeness residual " +
                                std::to_string(residual) + " exceeds tolerance");
  }
  return set;
}

KrausSet KrausSet::unchecked(std::vector<ComplexMatrix> ops, SubsystemLayout layout) {
  return KrausSet(std::move(ops), std::move(layout));
}

double KrausSet::completeness_residual() const {
  const std::size_t dim = layout_.dimension();
  ComplexMatrix sum(dim, dim);
  for (const ComplexMatrix& e : ops_) sum += e.dagger() * e;
  return (sum - ComplexMatrix::identity(dim)).max_abs();
}

KrausSet kraus_teleport() {
  const ComplexMatrix i2 = identity(2);
  const ComplexMatrix sx = pauli(PauliAxis::X);
  const ComplexMatrix sy = pauli(PauliAxis::Y);
  const ComplexMatrix sz = pauli(PauliAxis::Z);

  // Bell projector on A'A times Bob's correction, then Alice's correction
  // on A that restores the singlet.
  const auto op = [&](BellState outcome, const ComplexMatrix& correction) {
    const ComplexMatrix measure = tensor(projector(bell(outcome)), correction);
    const ComplexMatrix alice_fix = tensor(i2, tensor(correction, i2));
    return alice_fix * measure;
  };

  std::vector<ComplexMatrix> ops;
  ops.push_back(tensor(projector(bell(BellState::PsiMinus)), i2));
  ops.push_back(op(BellState::PsiPlus, sz));
  ops.push_back(op(BellState::PhiMinus, sx));
  ops.push_back(op(BellState::PhiPlus, sy));
  return KrausSet::validated(std::move(ops), SubsystemLayout::alice_bob());
}

KrausSet kraus_protocol1() { return kraus_protocol1(kraus_teleport()); }

KrausSet kraus_protocol1(const KrausSet& teleport, bool validate) {
  const ComplexMatrix on = projector(basis_ket(2, 0));
  const ComplexMatrix off = projector(basis_ket(2, 1));
  const ComplexMatrix idle = 0.5 * identity(8);

  std::vector<ComplexMatrix> ops;
  for (const ComplexMatrix& k : teleport.ops()) {
    ops.push_back(tensor(on, k) + tensor(off, idle));
  }
  auto layout = SubsystemLayout::switch_alice_bob();
  return validate ? KrausSet::validated(std::move(ops), layout)
                  : KrausSet::unchecked(std::move(ops), layout);
}

KrausSet kraus_measure_prepare() {
  const auto ket = [](std::size_t index) { return basis_ket(8, index); };
  const auto transfer = [&](std::size_t to, std::size_t from) {
    return ket(to) * ket(from).dagger();  // |to⟩⟨from|
  };

  std::vector<ComplexMatrix> ops;
  ops.push_back(transfer(0b000, 0b001));
  ops.push_back(transfer(0b010, 0b010));
  ops.push_back(transfer(0b101, 0b101));
  ops.push_back(transfer(0b111, 0b110));
  // Completion operators; the target states may be any normalized choice
  // since these annihilate every valid input, and are pinned to the source
  // kets so intermediate matrices are reproducible.
  ops.push_back(transfer(0b000, 0b000));
  ops.push_back(transfer(0b011, 0b011));
  ops.push_back(transfer(0b100, 0b100));
  ops.push_back(transfer(0b111, 0b111));
  return KrausSet::validated(std::move(ops), SubsystemLayout::alice_bob());
}

KrausSet kraus_protocol2() {
  return kraus_protocol2(kraus_teleport(), kraus_measure_prepare());
}

KrausSet kraus_protocol2(const KrausSet& teleport, const KrausSet& measure_prepare,
                         bool validate) {
  const ComplexMatrix on = projector(basis_ket(2, 0));
  const ComplexMatrix off = projector(basis_ket(2, 1));
  const double inv_sqrt8 = 1.0 / std::sqrt(8.0);

  std::vector<ComplexMatrix> ops;
  ops.reserve(teleport.ops().size() * measure_prepare.ops().size());
  for (const ComplexMatrix& k : teleport.ops()) {
    for (const ComplexMatrix& l : measure_prepare.ops()) {
      ops.push_back(tensor(on, inv_sqrt8 * k) + tensor(off, 0.5 * l));
    }
  }
  auto layout = SubsystemLayout::switch_alice_bob();
  return validate ? KrausSet::validated(std::move(ops), layout)
                  : KrausSet::unchecked(std::move(ops), layout);
}

PostselectResult postselect_switch(const ComplexMatrix& rho, SwitchOutcome outcome) {
  const std::size_t dim = SubsystemLayout::switch_alice_bob().dimension();
  if (!rho.is_square() || rho.rows() != dim) {
    throw std::invalid_argument("postselect_switch: expected a 16x16 density matrix");
  }

  static const ComplexMatrix h_on_switch = tensor(hadamard(), identity(8));
  const ComplexMatrix rotated = h_on_switch * rho * h_on_switch.dagger();

  // With S the leading factor, the (s, s) block of the 16×16 matrix is the
  // unnormalized conditional state of A'AB for switch outcome s.
  const std::size_t offset = (outcome == SwitchOutcome::On) ? 0 : 8;
  ComplexMatrix block(8, 8);
  for (std::size_t i = 0; i < 8; ++i) {
    for (std::size_t j = 0; j < 8; ++j) {
      block(i, j) = rotated(offset + i, offset + j);
    }
  }

  const double probability = block.trace().real();
  if (probability < 1e-14) {
    throw std::runtime_error("postselect_switch: outcome probability below 1e-14, "
                             "conditional state undefined");
  }
  block *= cdouble(1.0 / probability);
  return {std::move(block), probability};
}

KrausBundle KrausBundle::standard() {
  KrausSet teleport = kraus_teleport();
  KrausSet mp = kraus_measure_prepare();
  KrausSet p1 = kraus_protocol1(teleport);
  KrausSet p2 = kraus_protocol2(teleport, mp);
  return KrausBundle{std::move(teleport), std::move(p1), std::move(mp), std::move(p2)};
}

KrausBundle KrausBundle::with_teleport_fault(double epsilon) {
  KrausSet clean = kraus_teleport();
  std::vector<ComplexMatrix> ops = clean.ops();

  std::size_t best_r = 0, best_c = 0;
  double best = -1.0;
  for (std::size_t r = 0; r < ops[0].rows(); ++r) {
    for (std::size_t c = 0; c < ops[0].cols(); ++c) {
      if (std::abs(ops[0](r, c)) > best) {
        best = std::abs(ops[0](r, c));
        best_r = r;
        best_c = c;
      }
    }
  }
  ops[0](best_r, best_c) += epsilon;

  KrausSet faulty = KrausSet::unchecked(std::move(ops), SubsystemLayout::alice_bob());
  KrausSet mp = kraus_measure_prepare();
  KrausSet p1 = kraus_protocol1(faulty, /*validate=*/false);
  KrausSet p2 = kraus_protocol2(faulty, mp, /*validate=*/false);
  return KrausBundle{std::move(faulty), std::move(p1), std::move(mp), std::move(p2)};
}

const KrausBundle& standard_kraus() {
  static const KrausBundle bundle = KrausBundle::standard();
  return bundle;
}

}  // namespace switchtel
