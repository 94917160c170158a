#pragma once

// Joint charge x spin state space of the two-cell device.
//
// Each unit cell holds exactly one excess electron. Cell 1 has sites
// {G1, A, B}, cell 2 has sites {G2, C, D}; G1/G2 are the initial ("ground")
// dots 1 and 2. A joint basis state is |charge> (x) |s1 s2>, giving
// 9 charge configurations x 4 spin configurations = 36 states.
//
// Ordering is charge-major, spin-minor:
//   index = 4 * (3 * cell1 + cell2) + (2 * s1 + s2)
// with cell1 in (G1, A, B) -> (0, 1, 2) and cell2 in (G2, C, D) -> (0, 1, 2).
// Spin 1 is the left tensor factor, so a 4x4 spin operator is kron(op1, op2).

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qdcnot {

using Complex = std::complex<double>;

inline constexpr std::size_t kChargeDim = 9;
inline constexpr std::size_t kSpinDim = 4;
inline constexpr std::size_t kDeviceDim = kChargeDim * kSpinDim;

/// Default tolerance for closed-form (algebraic) operators.
inline constexpr double kDefaultTol = 1e-12;
/// Below this probability a projected branch is treated as empty.
inline constexpr double kVanishingProbability = 1e-15;

using SpinVector = Eigen::Vector4cd;
using SpinMatrix = Eigen::Matrix4cd;
using DeviceVector = Eigen::Matrix<Complex, static_cast<int>(kDeviceDim), 1>;
using DeviceMatrix =
    Eigen::Matrix<Complex, static_cast<int>(kDeviceDim), static_cast<int>(kDeviceDim)>;

/// Raised when a physical operation cannot produce a defined result,
/// e.g. projecting onto a branch that carries no probability.
class GateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Cell1Site : std::uint8_t { G1 = 0, A = 1, B = 2 };
enum class Cell2Site : std::uint8_t { G2 = 0, C = 1, D = 2 };

struct ChargeConfig {
  Cell1Site cell1 = Cell1Site::G1;
  Cell2Site cell2 = Cell2Site::G2;

  [[nodiscard]] constexpr std::size_t index() const {
    return 3 * static_cast<std::size_t>(cell1) + static_cast<std::size_t>(cell2);
  }
  [[nodiscard]] static ChargeConfig from_index(std::size_t index);
  /// "G1,G2", "A,C", ...
  [[nodiscard]] std::string label() const;

  friend constexpr bool operator==(const ChargeConfig&, const ChargeConfig&) = default;
};

inline constexpr ChargeConfig kGroundCharge{Cell1Site::G1, Cell2Site::G2};
/// Full polarization states of the four-dot CQCA square: sigma_z = +1 on (A,C),
/// -1 on (B,D).
inline constexpr ChargeConfig kPlusBranch{Cell1Site::A, Cell2Site::C};
inline constexpr ChargeConfig kMinusBranch{Cell1Site::B, Cell2Site::D};

[[nodiscard]] std::array<ChargeConfig, kChargeDim> all_charge_configs();
/// True for (G1,G2), (A,C) and (B,D).
[[nodiscard]] bool in_protocol_subspace(ChargeConfig config);

/// Spin qubit bits; 0 = spin-up |0>, 1 = spin-down |1>.
class SpinConfig {
 public:
  constexpr SpinConfig() = default;
  SpinConfig(int s1, int s2);

  [[nodiscard]] constexpr int s1() const { return s1_; }
  [[nodiscard]] constexpr int s2() const { return s2_; }
  [[nodiscard]] constexpr std::size_t index() const {
    return static_cast<std::size_t>(2 * s1_ + s2_);
  }
  [[nodiscard]] static SpinConfig from_index(std::size_t index);
  /// "00", "01", "10", "11".
  [[nodiscard]] std::string label() const;

  friend constexpr bool operator==(const SpinConfig&, const SpinConfig&) = default;

 private:
  int s1_ = 0;
  int s2_ = 0;
};

[[nodiscard]] std::size_t basis_index(ChargeConfig charge, SpinConfig spin);

struct BasisEntry {
  ChargeConfig charge;
  SpinConfig spin;
};
[[nodiscard]] BasisEntry basis_entry(std::size_t index);
/// "A,C|01" style label for a joint basis index.
[[nodiscard]] std::string basis_label(std::size_t index);

// ---------------------------------------------------------------------------
// Spin-space helpers

[[nodiscard]] Eigen::Matrix2cd pauli_x();
[[nodiscard]] Eigen::Matrix2cd pauli_y();
[[nodiscard]] Eigen::Matrix2cd pauli_z();
[[nodiscard]] SpinMatrix kron(const Eigen::Matrix2cd& first, const Eigen::Matrix2cd& second);
[[nodiscard]] SpinVector spin_basis_state(SpinConfig spin);

/// 2x2 (single spin) or 4x4 (both spins) operator acting on spin space only.
class SpinOperator {
 public:
  explicit SpinOperator(Eigen::MatrixXcd matrix);

  [[nodiscard]] int dimension() const { return static_cast<int>(matrix_.rows()); }
  [[nodiscard]] const Eigen::MatrixXcd& matrix() const { return matrix_; }
  [[nodiscard]] bool is_unitary(double tol = kDefaultTol) const;

 private:
  Eigen::MatrixXcd matrix_;
};

// ---------------------------------------------------------------------------
// States and operators on the full 36-dimensional space

class JointState {
 public:
  /// |charge> (x) spin; `spin` must be normalized.
  static JointState product(ChargeConfig charge, const SpinVector& spin,
                            double tol = kDefaultTol);
  /// Physical state; throws std::invalid_argument unless the norm is 1 within tol.
  static JointState from_amplitudes(const DeviceVector& amplitudes, double tol = kDefaultTol);
  /// Output of a projection; norm may be below 1.
  static JointState subnormalized(const DeviceVector& amplitudes);

  [[nodiscard]] const DeviceVector& amplitudes() const { return amplitudes_; }
  [[nodiscard]] Complex amplitude(ChargeConfig charge, SpinConfig spin) const;
  [[nodiscard]] bool is_subnormalized() const { return subnormalized_; }
  [[nodiscard]] double norm_squared() const { return amplitudes_.squaredNorm(); }
  /// The 4 spin amplitudes of one charge block (not renormalized).
  [[nodiscard]] SpinVector charge_block(ChargeConfig charge) const;

 private:
  JointState(const DeviceVector& amplitudes, bool subnormalized)
      : amplitudes_(amplitudes), subnormalized_(subnormalized) {}

  DeviceVector amplitudes_;
  bool subnormalized_ = false;
};

enum class OperatorKind { unitary, partial_isometry, general };

class DeviceOperator {
 public:
  /// Validates the kind invariant: unitary => U^dag U = I, partial isometry =>
  /// U^dag U is an orthogonal projector, both to `tol`.
  DeviceOperator(const DeviceMatrix& matrix, OperatorKind kind, double tol = kDefaultTol);

  static DeviceOperator identity();

  [[nodiscard]] const DeviceMatrix& matrix() const { return matrix_; }
  [[nodiscard]] OperatorKind kind() const { return kind_; }
  [[nodiscard]] DeviceOperator adjoint() const;

  /// Unitary operators keep physical states physical; anything else yields a
  /// sub-normalized state.
  [[nodiscard]] JointState apply(const JointState& state) const;

  /// 4x4 block mapping spin amplitudes of charge `from` to charge `to`.
  [[nodiscard]] SpinMatrix block(ChargeConfig to, ChargeConfig from) const;

  friend DeviceOperator operator*(const DeviceOperator& lhs, const DeviceOperator& rhs);

 private:
  struct Unchecked {};
  DeviceOperator(const DeviceMatrix& matrix, OperatorKind kind, Unchecked)
      : matrix_(matrix), kind_(kind) {}

  DeviceMatrix matrix_;
  OperatorKind kind_;
};

[[nodiscard]] std::string to_string(OperatorKind kind);

enum class SpinSlot { spin1, spin2, both };

/// Which spin(s) an embedded operator acts on, and on which charge branches.
/// An empty branch list means every charge configuration.
struct SpinTarget {
  SpinSlot slot = SpinSlot::spin1;
  std::vector<ChargeConfig> branches;
};

/// Acts as `op` on the targeted spin factor inside the listed charge branches
/// and as the identity everywhere else. Throws std::invalid_argument when the
/// operator dimension does not match the slot (2 for one spin, 4 for both).
[[nodiscard]] DeviceOperator embed_spin_operator(const SpinOperator& op, const SpinTarget& target);

/// |<a|b>|^2. Both states must be normalized within `tol`.
[[nodiscard]] double fidelity(const JointState& a, const JointState& b, double tol = kDefaultTol);

struct PhaseMatch {
  bool equal = false;
  /// phi such that u ~ e^{i phi} v, wrapped to (-pi, pi].
  double phase = 0.0;
  /// max-norm of u - e^{i phi} v.
  double max_error = 0.0;
};

/// Phase-insensitive comparison. The phase is read off the largest-magnitude
/// entry of `v` (first in row-major order on ties). Throws std::invalid_argument
/// on shape mismatch or when `v` is identically zero.
[[nodiscard]] PhaseMatch equal_up_to_global_phase(const Eigen::Ref<const Eigen::MatrixXcd>& u,
                                                  const Eigen::Ref<const Eigen::MatrixXcd>& v,
                                                  double tol = kDefaultTol);
[[nodiscard]] PhaseMatch equal_up_to_global_phase(const DeviceOperator& u, const DeviceOperator& v,
                                                  double tol = kDefaultTol);
[[nodiscard]] PhaseMatch equal_up_to_global_phase(const SpinOperator& u, const SpinOperator& v,
                                                  double tol = kDefaultTol);

struct ChargeProjection {
  double probability = 0.0;
  /// Renormalized spin state; empty when the branch probability is below
  /// kVanishingProbability.
  std::optional<SpinVector> conditional;
};

[[nodiscard]] ChargeProjection project_charge(const JointState& state, ChargeConfig config);

/// Total probability on charge configurations outside {(G1,G2), (A,C), (B,D)}.
[[nodiscard]] double leakage(const DeviceVector& amplitudes);

/// Process fidelity |Tr(target^dag map)|^2 / (d Tr(map^dag map)) of a linear
/// map against a unitary target. For unitary maps this is |Tr(target^dag map)|^2 / d^2.
/// Insensitive to global phase and overall scale of `map`.
[[nodiscard]] double process_fidelity(const Eigen::Ref<const Eigen::MatrixXcd>& map,
                                      const Eigen::Ref<const Eigen::MatrixXcd>& target);

/// Wraps an angle to (-pi, pi].
[[nodiscard]] double wrap_phase(double phase);

}  // namespace qdcnot
