#pragma once

// Single-spin rotations R_a(theta) = exp(-i theta sigma_a / 2), their
// charge-conditioned embeddings on dots A and C, and decomposition checks.

#include <span>
#include <string>
#include <vector>

#include "qdcnot/statespace.hpp"

namespace qdcnot {

enum class Axis { X, Y, Z };

[[nodiscard]] char axis_name(Axis axis);

struct Rotation {
  Axis axis = Axis::X;
  /// Radians.
  double angle = 0.0;
};

/// cos(theta/2) I - i sin(theta/2) sigma_axis.
[[nodiscard]] Eigen::Matrix2cd rotation_matrix(const Rotation& r);

/// Laser-addressable dots inside the CQCA square that carry a spin rotation.
enum class Dot { A, C };
enum class Cell { one, two };

/// Rotation of spin 1 on every charge configuration with the cell-1 electron on
/// dot A, or of spin 2 on every configuration with the cell-2 electron on dot C.
/// Identity elsewhere.
[[nodiscard]] DeviceOperator conditional_rotation(Dot dot, const Rotation& r);

/// Rotation of one cell's spin irrespective of where its electron sits.
[[nodiscard]] DeviceOperator local_rotation(Cell cell, const Rotation& r);

/// How a written rotation list is turned into a matrix.
///  - sequence: listed left to right in time, so the leftmost factor acts first
///    and the matrix is r[n-1] ... r[1] r[0].
///  - operator_notation: the list is an operator product, rightmost acts first,
///    matrix r[0] r[1] ... r[n-1].
enum class ProductOrder { sequence, operator_notation };

[[nodiscard]] Eigen::Matrix2cd compose(std::span<const Rotation> rotations, ProductOrder order);

/// Compares rotation_matrix(lhs) against the composed `rhs` up to global phase.
/// Throws std::invalid_argument when `rhs` is empty.
[[nodiscard]] PhaseMatch check_decomposition(const Rotation& lhs, std::span<const Rotation> rhs,
                                             double tol = kDefaultTol,
                                             ProductOrder order = ProductOrder::sequence);

/// CNOT with spin 1 as control.
[[nodiscard]] SpinMatrix cnot();
/// exp(-i (pi/4) sigma_z (x) sigma_x) = cos(pi/4) I - i sin(pi/4) sigma_z (x) sigma_x.
[[nodiscard]] SpinMatrix zx_entangler();

}  // namespace qdcnot
