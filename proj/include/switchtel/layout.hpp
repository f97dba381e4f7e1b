#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

namespace switchtel {

/// Tensor factors of the four-qubit register, in the fixed global order
/// S ⊗ A' ⊗ A ⊗ B (switch, Alice's unknown qubit, Alice's resource half,
/// Bob's resource half).
enum class Qubit { S, APrime, A, B };

const char* qubit_name(Qubit q);

/// Ordered list of distinct qubit labels; fixes how a matrix index maps to
/// tensor factors. Each factor has local dimension 2.
class SubsystemLayout {
 public:
  SubsystemLayout(std::initializer_list<Qubit> labels);
  explicit SubsystemLayout(std::vector<Qubit> labels);

  std::size_t count() const { return labels_.size(); }
  std::size_t dimension() const { return std::size_t{1} << labels_.size(); }
  const std::vector<Qubit>& labels() const { return labels_; }
  bool contains(Qubit q) const;
  /// Position of `q` in the layout; throws if absent.
  std::size_t index_of(Qubit q) const;

  /// {S, A', A, B}
  static const SubsystemLayout& switch_alice_bob();
  /// {A', A, B}
  static const SubsystemLayout& alice_bob();

 private:
  void validate() const;
  std::vector<Qubit> labels_;
};

}  // namespace switchtel
