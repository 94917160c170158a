#include "qdcnot/statespace.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qdcnot {

namespace {

constexpr std::array<const char*, 3> kCell1Names = {"G1", "A", "B"};
constexpr std::array<const char*, 3> kCell2Names = {"G2", "C", "D"};

bool is_identity(const Eigen::MatrixXcd& m, double tol) {
  const auto n = m.rows();
  return (m - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace

ChargeConfig ChargeConfig::from_index(std::size_t index) {
  if (index >= kChargeDim) {
    throw std::out_of_range("charge index out of range: " + std::to_string(index));
  }
  return ChargeConfig{static_cast<Cell1Site>(index / 3), static_cast<Cell2Site>(index % 3)};
}

std::string ChargeConfig::label() const {
  return std::string(kCell1Names[static_cast<std::size_t>(cell1)]) + "," +
         kCell2Names[static_cast<std::size_t>(cell2)];
}

std::array<ChargeConfig, kChargeDim> all_charge_configs() {
  std::array<ChargeConfig, kChargeDim> configs{};
  for (std::size_t i = 0; i < kChargeDim; ++i) configs[i] = ChargeConfig::from_index(i);
  return configs;
}

bool in_protocol_subspace(ChargeConfig config) {
  return config == kGroundCharge || config == kPlusBranch || config == kMinusBranch;
}

SpinConfig::SpinConfig(int s1, int s2) : s1_(s1), s2_(s2) {
  if ((s1 != 0 && s1 != 1) || (s2 != 0 && s2 != 1)) {
    throw std::invalid_argument("spin bits must be 0 or 1");
  }
}

SpinConfig SpinConfig::from_index(std::size_t index) {
  if (index >= kSpinDim) {
    throw std::out_of_range("spin index out of range: " + std::to_string(index));
  }
  return SpinConfig{static_cast<int>(index / 2), static_cast<int>(index % 2)};
}

std::string SpinConfig::label() const { return std::to_string(s1_) + std::to_string(s2_); }

std::size_t basis_index(ChargeConfig charge, SpinConfig spin) {
  return kSpinDim * charge.index() + spin.index();
}

BasisEntry basis_entry(std::size_t index) {
  if (index >= kDeviceDim) {
    throw std::out_of_range("basis index out of range: " + std::to_string(index));
  }
  return BasisEntry{ChargeConfig::from_index(index / kSpinDim),
                    SpinConfig::from_index(index % kSpinDim)};
}

std::string basis_label(std::size_t index) {
  const auto entry = basis_entry(index);
  return entry.charge.label() + "|" + entry.spin.label();
}

Eigen::Matrix2cd pauli_x() {
  Eigen::Matrix2cd m;
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

Eigen::Matrix2cd pauli_y() {
  const Complex i{0.0, 1.0};
  Eigen::Matrix2cd m;
  m << 0.0, -i, i, 0.0;
  return m;
}

Eigen::Matrix2cd pauli_z() {
  Eigen::Matrix2cd m;
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

SpinMatrix kron(const Eigen::Matrix2cd& first, const Eigen::Matrix2cd& second) {
  SpinMatrix out;
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      out.block<2, 2>(2 * r, 2 * c) = first(r, c) * second;
    }
  }
  return out;
}

SpinVector spin_basis_state(SpinConfig spin) {
  SpinVector v = SpinVector::Zero();
  v(static_cast<Eigen::Index>(spin.index())) = 1.0;
  return v;
}

SpinOperator::SpinOperator(Eigen::MatrixXcd matrix) : matrix_(std::move(matrix)) {
  const bool square = matrix_.rows() == matrix_.cols();
  if (!square || (matrix_.rows() != 2 && matrix_.rows() != 4)) {
    throw std::invalid_argument("spin operator must be 2x2 or 4x4");
  }
}

bool SpinOperator::is_unitary(double tol) const {
  return is_identity(matrix_.adjoint() * matrix_, tol);
}

// ---------------------------------------------------------------------------

JointState JointState::product(ChargeConfig charge, const SpinVector& spin, double tol) {
  if (std::abs(spin.squaredNorm() - 1.0) > tol) {
    throw std::invalid_argument("spin state is not normalized");
  }
  DeviceVector amps = DeviceVector::Zero();
  amps.segment<kSpinDim>(static_cast<Eigen::Index>(kSpinDim * charge.index())) = spin;
  return JointState(amps, false);
}

JointState JointState::from_amplitudes(const DeviceVector& amplitudes, double tol) {
  if (std::abs(amplitudes.squaredNorm() - 1.0) > tol) {
    throw std::invalid_argument("joint state is not normalized");
  }
  return JointState(amplitudes, false);
}

JointState JointState::subnormalized(const DeviceVector& amplitudes) {
  return JointState(amplitudes, true);
}

Complex JointState::amplitude(ChargeConfig charge, SpinConfig spin) const {
  return amplitudes_(static_cast<Eigen::Index>(basis_index(charge, spin)));
}

SpinVector JointState::charge_block(ChargeConfig charge) const {
  return amplitudes_.segment<kSpinDim>(static_cast<Eigen::Index>(kSpinDim * charge.index()));
}

DeviceOperator::DeviceOperator(const DeviceMatrix& matrix, OperatorKind kind, double tol)
    : matrix_(matrix), kind_(kind) {
  if (kind == OperatorKind::general) return;
  const DeviceMatrix gram = matrix_.adjoint() * matrix_;
  if (kind == OperatorKind::unitary) {
    if ((gram - DeviceMatrix::Identity()).cwiseAbs().maxCoeff() > tol) {
      throw std::invalid_argument("operator tagged unitary is not unitary");
    }
    return;
  }
  const double hermitian_err = (gram - gram.adjoint()).cwiseAbs().maxCoeff();
  const double idempotent_err = (gram * gram - gram).cwiseAbs().maxCoeff();
  if (hermitian_err > tol || idempotent_err > tol) {
    throw std::invalid_argument("operator tagged partial isometry is not one");
  }
}

DeviceOperator DeviceOperator::identity() {
  return DeviceOperator(DeviceMatrix::Identity(), OperatorKind::unitary, Unchecked{});
}

DeviceOperator DeviceOperator::adjoint() const {
  // The adjoint of a partial isometry is again one.
  return DeviceOperator(matrix_.adjoint(), kind_, Unchecked{});
}

JointState DeviceOperator::apply(const JointState& state) const {
  const DeviceVector out = matrix_ * state.amplitudes();
  if (kind_ == OperatorKind::unitary && !state.is_subnormalized()) {
    return JointState::from_amplitudes(out, 1e-10);
  }
  return JointState::subnormalized(out);
}

SpinMatrix DeviceOperator::block(ChargeConfig to, ChargeConfig from) const {
  return matrix_.block<kSpinDim, kSpinDim>(static_cast<Eigen::Index>(kSpinDim * to.index()),
                                           static_cast<Eigen::Index>(kSpinDim * from.index()));
}

DeviceOperator operator*(const DeviceOperator& lhs, const DeviceOperator& rhs) {
  using K = OperatorKind;
  K kind = K::general;
  if (lhs.kind_ == K::unitary && rhs.kind_ == K::unitary) {
    kind = K::unitary;
  } else if ((lhs.kind_ == K::unitary && rhs.kind_ == K::partial_isometry) ||
             (lhs.kind_ == K::partial_isometry && rhs.kind_ == K::unitary)) {
    kind = K::partial_isometry;
  }
  return DeviceOperator(lhs.matrix_ * rhs.matrix_, kind, DeviceOperator::Unchecked{});
}

std::string to_string(OperatorKind kind) {
  switch (kind) {
    case OperatorKind::unitary:
      return "unitary";
    case OperatorKind::partial_isometry:
      return "partial-isometry";
    case OperatorKind::general:
      return "general";
  }
  return "general";
}

DeviceOperator embed_spin_operator(const SpinOperator& op, const SpinTarget& target) {
  const int expected = target.slot == SpinSlot::both ? 4 : 2;
  if (op.dimension() != expected) {
    throw std::invalid_argument("spin operator dimension " + std::to_string(op.dimension()) +
                                " does not match target (expected " +
                                std::to_string(expected) + ")");
  }

  SpinMatrix local;
  const Eigen::Matrix2cd id2 = Eigen::Matrix2cd::Identity();
  switch (target.slot) {
    case SpinSlot::spin1:
      local = kron(op.matrix(), id2);
      break;
    case SpinSlot::spin2:
      local = kron(id2, op.matrix());
      break;
    case SpinSlot::both:
      local = op.matrix();
      break;
  }

  std::array<bool, kChargeDim> active{};
  if (target.branches.empty()) {
    active.fill(true);
  } else {
    for (const auto& c : target.branches) active[c.index()] = true;
  }

  DeviceMatrix m = DeviceMatrix::Identity();
  for (std::size_t c = 0; c < kChargeDim; ++c) {
    if (!active[c]) continue;
    const auto offset = static_cast<Eigen::Index>(kSpinDim * c);
    m.block<kSpinDim, kSpinDim>(offset, offset) = local;
  }
  const OperatorKind kind = op.is_unitary() ? OperatorKind::unitary : OperatorKind::general;
  return DeviceOperator(m, kind);
}

double fidelity(const JointState& a, const JointState& b, double tol) {
  if (std::abs(a.norm_squared() - 1.0) > tol || std::abs(b.norm_squared() - 1.0) > tol) {
    throw std::invalid_argument("fidelity requires normalized states");
  }
  return std::norm(a.amplitudes().dot(b.amplitudes()));
}

double wrap_phase(double phase) {
  constexpr double pi = std::numbers::pi;
  double wrapped = std::remainder(phase, 2.0 * pi);
  if (wrapped <= -pi) wrapped += 2.0 * pi;
  return wrapped;
}

PhaseMatch equal_up_to_global_phase(const Eigen::Ref<const Eigen::MatrixXcd>& u,
                                    const Eigen::Ref<const Eigen::MatrixXcd>& v, double tol) {
  if (u.rows() != v.rows() || u.cols() != v.cols()) {
    throw std::invalid_argument("phase comparison requires equal shapes");
  }
  Eigen::Index best_r = 0;
  Eigen::Index best_c = 0;
  double best = -1.0;
  for (Eigen::Index r = 0; r < v.rows(); ++r) {
    for (Eigen::Index c = 0; c < v.cols(); ++c) {
      const double mag = std::abs(v(r, c));
      if (mag > best) {
        best = mag;
        best_r = r;
        best_c = c;
      }
    }
  }
  if (best <= 0.0) {
    throw std::invalid_argument("reference operator is identically zero");
  }
  PhaseMatch match;
  match.phase = wrap_phase(std::arg(u(best_r, best_c)) - std::arg(v(best_r, best_c)));
  const Complex factor = std::polar(1.0, match.phase);
  match.max_error = (u - factor * v).cwiseAbs().maxCoeff();
  match.equal = match.max_error <= tol;
  return match;
}

PhaseMatch equal_up_to_global_phase(const DeviceOperator& u, const DeviceOperator& v,
                                    double tol) {
  return equal_up_to_global_phase(u.matrix(), v.matrix(), tol);
}

PhaseMatch equal_up_to_global_phase(const SpinOperator& u, const SpinOperator& v, double tol) {
  return equal_up_to_global_phase(u.matrix(), v.matrix(), tol);
}

ChargeProjection project_charge(const JointState& state, ChargeConfig config) {
  const SpinVector block = state.charge_block(config);
  ChargeProjection result;
  result.probability = block.squaredNorm();
  if (result.probability >= kVanishingProbability) {
    result.conditional = block / std::sqrt(result.probability);
  }
  return result;
}

double leakage(const DeviceVector& amplitudes) {
  double total = 0.0;
  for (const auto& config : all_charge_configs()) {
    if (in_protocol_subspace(config)) continue;
    total += amplitudes.segment<kSpinDim>(static_cast<Eigen::Index>(kSpinDim * config.index()))
                 .squaredNorm();
  }
  return total;
}

double process_fidelity(const Eigen::Ref<const Eigen::MatrixXcd>& map,
                        const Eigen::Ref<const Eigen::MatrixXcd>& target) {
  if (map.rows() != target.rows() || map.cols() != target.cols() || map.rows() != map.cols()) {
    throw std::invalid_argument("process fidelity requires square maps of equal size");
  }
  const double d = static_cast<double>(map.rows());
  const double norm = (map.adjoint() * map).trace().real();
  if (norm <= 0.0) return 0.0;
  const double overlap = std::norm((target.adjoint() * map).trace());
  return std::clamp(overlap / (d * norm), 0.0, 1.0);
}

}  // namespace qdcnot
