#include "qdcnot/spin.hpp"

#include <gtest/gtest.h>

#include <array>

#include "qdcnot/cqca.hpp"
#include "test_support.hpp"

namespace qdcnot {
namespace {

using testing::Cx;
using testing::kPi;
using testing::Rng;

constexpr double kTol = 1e-12;
const Cx kI{0.0, 1.0};

Axis random_axis(Rng& rng) { return static_cast<Axis>(rng.integer(0, 2)); }

TEST(RotationMatrix, Examples) {
  EXPECT_LE(testing::max_abs(rotation_matrix({Axis::X, kPi}) - (-kI) * pauli_x()), kTol);
  EXPECT_LE(testing::max_abs(rotation_matrix({Axis::Z, 3.0 * kPi}) - kI * pauli_z()), kTol);

  const Eigen::Matrix2cd rx32 = rotation_matrix({Axis::X, 1.5 * kPi});
  const Eigen::Matrix2cd expected =
      -(Eigen::Matrix2cd::Identity() + kI * pauli_x()) / std::sqrt(2.0);
  EXPECT_LE(testing::max_abs(rx32 - expected), kTol);
  EXPECT_LE(testing::max_abs(rx32 * rx32 - rotation_matrix({Axis::X, 3.0 * kPi})), kTol);
}

TEST(RotationMatrix, MatchesExponentialOracle) {
  Rng rng(31);
  const std::array<Eigen::Matrix2cd, 3> sigma = {pauli_x(), pauli_y(), pauli_z()};
  for (int trial = 0; trial < 1000; ++trial) {
    const Axis axis = random_axis(rng);
    const double theta = rng.uniform(-8.0 * kPi, 8.0 * kPi);
    const Eigen::MatrixXcd oracle =
        testing::expm_i(sigma[static_cast<std::size_t>(axis)], 0.5 * theta);
    EXPECT_LE(testing::max_abs(rotation_matrix({axis, theta}) - oracle), 1e-12);
  }
}

TEST(RotationMatrix, InverseAndDoubleCover) {
  Rng rng(32);
  for (int trial = 0; trial < 1000; ++trial) {
    const Axis axis = random_axis(rng);
    const double theta = rng.uniform(-4.0 * kPi, 4.0 * kPi);
    const Eigen::Matrix2cd r = rotation_matrix({axis, theta});
    EXPECT_LE(testing::max_abs(r * rotation_matrix({axis, -theta}) -
                               Eigen::Matrix2cd::Identity()),
              kTol);
    EXPECT_LE(testing::max_abs(rotation_matrix({axis, theta + 4.0 * kPi}) - r), kTol);
    EXPECT_LE(testing::max_abs(rotation_matrix({axis, theta + 2.0 * kPi}) + r), kTol);
  }
}

TEST(ConditionalRotation, LeavesOtherBranchUntouched) {
  const auto op = conditional_rotation(Dot::A, {Axis::Z, 3.0 * kPi});
  Rng rng(33);
  const SpinVector s = rng.state<4>();
  const auto in = JointState::product(kMinusBranch, s);
  EXPECT_LE((op.apply(in).amplitudes() - in.amplitudes()).cwiseAbs().maxCoeff(), 0.0);
}

TEST(ConditionalRotation, ActsOnEveryConfigWithThatSite) {
  const Eigen::Matrix2cd rx = rotation_matrix({Axis::X, 0.7});
  const auto op = conditional_rotation(Dot::C, {Axis::X, 0.7});
  for (const auto& c : all_charge_configs()) {
    const SpinMatrix expected = c.cell2 == Cell2Site::C
                                    ? kron(Eigen::Matrix2cd::Identity(), rx)
                                    : SpinMatrix(SpinMatrix::Identity());
    EXPECT_LE(testing::max_abs(op.block(c, c) - expected), kTol) << c.label();
  }
}

TEST(ConditionalRotation, ProducesEntanglingBranchState) {
  Rng rng(34);
  const auto phased = bias_phase_ideal(kPi / 4.0) * split_operator();
  const auto rotations = conditional_rotation(Dot::A, {Axis::Z, 3.0 * kPi}) *
                         conditional_rotation(Dot::C, {Axis::X, kPi});
  const SpinMatrix rz_rx =
      kron(rotation_matrix({Axis::Z, 3.0 * kPi}), rotation_matrix({Axis::X, kPi}));
  for (int trial = 0; trial < 50; ++trial) {
    const SpinVector s = rng.state<4>();
    const auto out = (rotations * phased).apply(JointState::product(kGroundCharge, s));
    const Cx g = std::polar(1.0, kPi / 4.0) / std::sqrt(2.0);
    EXPECT_LE((out.charge_block(kPlusBranch) - g * (-kI) * rz_rx * s).cwiseAbs().maxCoeff(), kTol);
    EXPECT_LE((out.charge_block(kMinusBranch) - g * s).cwiseAbs().maxCoeff(), kTol);
  }
}

TEST(ConditionalRotation, BranchActionIsZX) {
  const auto op = conditional_rotation(Dot::A, {Axis::Z, 3.0 * kPi}) *
                  conditional_rotation(Dot::C, {Axis::X, kPi});
  const auto m = equal_up_to_global_phase(op.block(kPlusBranch, kPlusBranch),
                                          kron(pauli_z(), pauli_x()), kTol);
  EXPECT_TRUE(m.equal);
  EXPECT_NEAR(m.phase, 0.0, kTol);
}

TEST(ConditionalRotation, UnitaryAndCommutesAcrossDots) {
  Rng rng(35);
  for (int trial = 0; trial < 1000; ++trial) {
    const Rotation ra{random_axis(rng), rng.uniform(-4.0 * kPi, 4.0 * kPi)};
    const Rotation rc{random_axis(rng), rng.uniform(-4.0 * kPi, 4.0 * kPi)};
    const auto a = conditional_rotation(Dot::A, ra);
    const auto c = conditional_rotation(Dot::C, rc);
    EXPECT_TRUE(testing::is_unitary(a.matrix(), kTol));
    EXPECT_LE(testing::max_abs((a * c).matrix() - (c * a).matrix()), kTol);
  }
}

TEST(Compose, OrderConventions) {
  const std::array<Rotation, 2> seq = {Rotation{Axis::X, 0.3}, Rotation{Axis::Y, 1.1}};
  const Eigen::Matrix2cd rx = rotation_matrix(seq[0]);
  const Eigen::Matrix2cd ry = rotation_matrix(seq[1]);
  EXPECT_LE(testing::max_abs(compose(seq, ProductOrder::sequence) - ry * rx), 0.0);
  EXPECT_LE(testing::max_abs(compose(seq, ProductOrder::operator_notation) - rx * ry), 0.0);
}

TEST(CheckDecomposition, FirstIdentity) {
  const std::array<Rotation, 2> rhs = {Rotation{Axis::X, 3.0 * kPi}, Rotation{Axis::Y, kPi}};
  const Rotation lhs{Axis::Z, 3.0 * kPi};

  const auto op = check_decomposition(lhs, rhs, kTol, ProductOrder::operator_notation);
  EXPECT_TRUE(op.equal);
  EXPECT_NEAR(op.phase, 0.0, kTol);

  const auto seq = check_decomposition(lhs, rhs, kTol, ProductOrder::sequence);
  EXPECT_TRUE(seq.equal);
  EXPECT_NEAR(std::abs(seq.phase), kPi, kTol);
}

TEST(CheckDecomposition, SecondIdentityHoldsOnlyAsTimeSequence) {
  const std::array<Rotation, 3> rhs = {Rotation{Axis::Y, 1.5 * kPi}, Rotation{Axis::X, 0.5 * kPi},
                                       Rotation{Axis::Y, 0.5 * kPi}};
  const Rotation lhs{Axis::Z, 1.5 * kPi};

  const auto seq = check_decomposition(lhs, rhs, kTol, ProductOrder::sequence);
  EXPECT_TRUE(seq.equal);
  EXPECT_NEAR(seq.phase, 0.0, kTol);

  const auto op = check_decomposition(lhs, rhs, kTol, ProductOrder::operator_notation);
  EXPECT_FALSE(op.equal);
  EXPECT_NEAR(op.max_error, 2.0, 1e-9);
}

TEST(CheckDecomposition, NoOrderGivesBothIdentitiesWithZeroPhase) {
  const std::array<Rotation, 2> first = {Rotation{Axis::X, 3.0 * kPi}, Rotation{Axis::Y, kPi}};
  const std::array<Rotation, 3> second = {Rotation{Axis::Y, 1.5 * kPi},
                                          Rotation{Axis::X, 0.5 * kPi},
                                          Rotation{Axis::Y, 0.5 * kPi}};
  for (const auto order : {ProductOrder::sequence, ProductOrder::operator_notation}) {
    const auto a = check_decomposition({Axis::Z, 3.0 * kPi}, first, kTol, order);
    const auto b = check_decomposition({Axis::Z, 1.5 * kPi}, second, kTol, order);
    const bool both_exact = a.equal && b.equal && std::abs(a.phase) <= kTol &&
                            std::abs(b.phase) <= kTol;
    EXPECT_FALSE(both_exact);
  }
}

TEST(CheckDecomposition, DifferentAxesFailAndEmptyThrows) {
  const std::array<Rotation, 1> rhs = {Rotation{Axis::X, kPi}};
  EXPECT_FALSE(check_decomposition({Axis::Z, kPi}, rhs).equal);
  EXPECT_THROW((void)check_decomposition({Axis::Z, kPi}, std::span<const Rotation>{}),
               std::invalid_argument);
}

TEST(Gates, CnotAndEntangler) {
  const SpinMatrix c = cnot();
  EXPECT_LE(testing::max_abs(c * c - SpinMatrix::Identity()), 0.0);
  EXPECT_EQ(c(3, 2), Cx{1.0});
  const Eigen::MatrixXcd oracle = testing::expm_i(kron(pauli_z(), pauli_x()), kPi / 4.0);
  EXPECT_LE(testing::max_abs(zx_entangler() - oracle), 1e-12);
}

}  // namespace
}  // namespace qdcnot
