#include "switchtel/layout.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace switchtel {

const char* qubit_name(Qubit q) {
  switch (q) {
    case Qubit::S: return "S";
    case Qubit::APrime: return "A'";
    case Qubit::A: return "A";
    case Qubit::B: return "B";
  }
  return "?";
}

SubsystemLayout::SubsystemLayout(std::initializer_list<Qubit> labels)
    : labels_(labels) {
  validate();
}

SubsystemLayout::SubsystemLayout(std::vector<Qubit> labels) : labels_(std::move(labels)) {
  validate();
}

void SubsystemLayout::validate() const {
  if (labels_.empty()) throw std::invalid_argument("SubsystemLayout: no labels");
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    for (std::size_t j = i + 1; j < labels_.size(); ++j) {
      if (labels_[i] == labels_[j]) {
        throw std::invalid_argument("SubsystemLayout: duplicate label");
      }
    }
  }
}

bool SubsystemLayout::contains(Qubit q) const {
  return std::find(labels_.begin(), labels_.end(), q) != labels_.end();
}

std::size_t SubsystemLayout::index_of(Qubit q) const {
  const auto it = std::find(labels_.begin(), labels_.end(), q);
  if (it == labels_.end()) {
    throw std::invalid_argument("SubsystemLayout: label not present");
  }
  return static_cast<std::size_t>(it - labels_.begin());
}

const SubsystemLayout& SubsystemLayout::switch_alice_bob() {
  static const SubsystemLayout layout{Qubit::S, Qubit::APrime, Qubit::A, Qubit::B};
  return layout;
}

const SubsystemLayout& SubsystemLayout::alice_bob() {
  static const SubsystemLayout layout{Qubit::APrime, Qubit::A, Qubit::B};
  return layout;
}

}  // namespace switchtel
