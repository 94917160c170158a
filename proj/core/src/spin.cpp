#include "qdcnot/spin.hpp"

#include <cmath>
#include <numbers>

namespace qdcnot {

char axis_name(Axis axis) {
  switch (axis) {
    case Axis::X:
      return 'X';
    case Axis::Y:
      return 'Y';
    case Axis::Z:
      return 'Z';
  }
  return '?';
}

Eigen::Matrix2cd rotation_matrix(const Rotation& r) {
  Eigen::Matrix2cd sigma;
  switch (r.axis) {
    case Axis::X:
      sigma = pauli_x();
      break;
    case Axis::Y:
      sigma = pauli_y();
      break;
    case Axis::Z:
      sigma = pauli_z();
      break;
  }
  const double half = 0.5 * r.angle;
  return std::cos(half) * Eigen::Matrix2cd::Identity() - Complex{0.0, std::sin(half)} * sigma;
}

DeviceOperator conditional_rotation(Dot dot, const Rotation& r) {
  SpinTarget target;
  for (const auto& config : all_charge_configs()) {
    const bool occupied =
        dot == Dot::A ? config.cell1 == Cell1Site::A : config.cell2 == Cell2Site::C;
    if (occupied) target.branches.push_back(config);
  }
  target.slot = dot == Dot::A ? SpinSlot::spin1 : SpinSlot::spin2;
  return embed_spin_operator(SpinOperator(rotation_matrix(r)), target);
}

DeviceOperator local_rotation(Cell cell, const Rotation& r) {
  SpinTarget target;
  target.slot = cell == Cell::one ? SpinSlot::spin1 : SpinSlot::spin2;
  return embed_spin_operator(SpinOperator(rotation_matrix(r)), target);
}

Eigen::Matrix2cd compose(std::span<const Rotation> rotations, ProductOrder order) {
  Eigen::Matrix2cd product = Eigen::Matrix2cd::Identity();
  for (const auto& r : rotations) {
    if (order == ProductOrder::sequence) {
      product = rotation_matrix(r) * product;
    } else {
      product = product * rotation_matrix(r);
    }
  }
  return product;
}

PhaseMatch check_decomposition(const Rotation& lhs, std::span<const Rotation> rhs, double tol,
                               ProductOrder order) {
  if (rhs.empty()) {
    throw std::invalid_argument("decomposition needs at least one rotation");
  }
  return equal_up_to_global_phase(rotation_matrix(lhs), compose(rhs, order), tol);
}

SpinMatrix cnot() {
  SpinMatrix m = SpinMatrix::Zero();
  m(0, 0) = 1.0;
  m(1, 1) = 1.0;
  m(2, 3) = 1.0;
  m(3, 2) = 1.0;
  return m;
}

SpinMatrix zx_entangler() {
  const double c = std::cos(std::numbers::pi / 4.0);
  const double s = std::sin(std::numbers::pi / 4.0);
  return c * SpinMatrix::Identity() - Complex{0.0, s} * kron(pauli_z(), pauli_x());
}

}  // namespace qdcnot
