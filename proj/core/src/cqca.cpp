#include "qdcnot/cqca.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "qdcnot/spin.hpp"

namespace qdcnot {

namespace {

DeviceMatrix kron_charge(const Eigen::Matrix<Complex, 9, 9>& charge) {
  DeviceMatrix m = DeviceMatrix::Zero();
  for (Eigen::Index r = 0; r < 9; ++r) {
    for (Eigen::Index c = 0; c < 9; ++c) {
      if (charge(r, c) == Complex{}) continue;
      m.block<4, 4>(4 * r, 4 * c) = charge(r, c) * SpinMatrix::Identity();
    }
  }
  return m;
}

/// Embeds a 2x2 matrix acting on ((A,C), (B,D)) into the charge space.
DeviceMatrix embed_polarization(const Eigen::Matrix2cd& u) {
  Eigen::Matrix<Complex, 9, 9> charge = Eigen::Matrix<Complex, 9, 9>::Identity();
  const auto p = static_cast<Eigen::Index>(kPlusBranch.index());
  const auto q = static_cast<Eigen::Index>(kMinusBranch.index());
  charge(p, p) = u(0, 0);
  charge(p, q) = u(0, 1);
  charge(q, p) = u(1, 0);
  charge(q, q) = u(1, 1);
  return kron_charge(charge);
}

}  // namespace

BiasPulse::BiasPulse(std::vector<BiasSegment> segments, double gamma)
    : segments_(std::move(segments)), gamma_(gamma) {
  if (!std::isfinite(gamma) || gamma < 0.0) {
    throw std::invalid_argument("gamma must be finite and non-negative");
  }
  for (const auto& s : segments_) {
    if (!std::isfinite(s.duration) || s.duration <= 0.0) {
      throw std::invalid_argument("bias segment durations must be positive");
    }
    if (!std::isfinite(s.bias_energy)) {
      throw std::invalid_argument("bias energy must be finite");
    }
  }
}

double BiasPulse::area() const {
  double total = 0.0;
  for (const auto& s : segments_) total += s.duration * s.bias_energy;
  return total;
}

double BiasPulse::total_duration() const {
  double total = 0.0;
  for (const auto& s : segments_) total += s.duration;
  return total;
}

DeviceOperator split_operator() {
  const double h = 1.0 / std::numbers::sqrt2;
  const auto g = static_cast<Eigen::Index>(kGroundCharge.index());
  const auto p = static_cast<Eigen::Index>(kPlusBranch.index());
  const auto q = static_cast<Eigen::Index>(kMinusBranch.index());

  Eigen::Matrix<Complex, 9, 9> charge = Eigen::Matrix<Complex, 9, 9>::Identity();
  charge(g, g) = 0.0;
  charge(p, p) = 0.0;
  charge(q, q) = 0.0;
  // column g: |G> -> (|AC> + |BD>)/sqrt2
  charge(p, g) = h;
  charge(q, g) = h;
  // column p: |AC> -> (|AC> - |BD>)/sqrt2
  charge(p, p) = h;
  charge(q, p) = -h;
  // column q: |BD> -> |G>
  charge(g, q) = 1.0;
  return DeviceOperator(kron_charge(charge), OperatorKind::unitary);
}

DeviceOperator bias_phase_ideal(double area) {
  Eigen::Matrix2cd u = Eigen::Matrix2cd::Zero();
  u(0, 0) = std::polar(1.0, -area);
  u(1, 1) = std::polar(1.0, area);
  return DeviceOperator(embed_polarization(u), OperatorKind::unitary);
}

Eigen::Matrix2cd polarization_propagator(const BiasPulse& pulse) {
  const Complex i{0.0, 1.0};
  const double gamma = pulse.gamma();
  Eigen::Matrix2cd total = Eigen::Matrix2cd::Identity();
  for (const auto& seg : pulse.segments()) {
    // exp(-i t (e sz + g sx)) = cos(w t) I - i sin(w t) (e sz + g sx) / w
    const double e = seg.bias_energy;
    const double w = std::hypot(e, gamma);
    Eigen::Matrix2cd step = Eigen::Matrix2cd::Identity();
    if (w > 0.0) {
      const double c = std::cos(w * seg.duration);
      const double s = std::sin(w * seg.duration) / w;
      step(0, 0) = c - i * s * e;
      step(1, 1) = c + i * s * e;
      step(0, 1) = -i * s * gamma;
      step(1, 0) = -i * s * gamma;
    }
    total = step * total;
  }
  return total;
}

DeviceOperator bias_evolve(const BiasPulse& pulse) {
  if (pulse.segments().empty()) {
    throw std::invalid_argument("bias pulse has no segments");
  }
  return DeviceOperator(embed_polarization(polarization_propagator(pulse)),
                        OperatorKind::unitary);
}

std::string to_string(RecombineMode mode) {
  return mode == RecombineMode::ideal ? "ideal" : "unitary";
}

DeviceOperator recombine_operator(RecombineMode mode) {
  const DeviceOperator adjoint = split_operator().adjoint();
  if (mode == RecombineMode::unitary) return adjoint;

  DeviceMatrix projector = DeviceMatrix::Zero();
  const auto g = static_cast<Eigen::Index>(kSpinDim * kGroundCharge.index());
  projector.block<4, 4>(g, g) = SpinMatrix::Identity();
  return DeviceOperator(projector * adjoint.matrix(), OperatorKind::partial_isometry);
}

RecombineOutcome recombine(const JointState& state, RecombineMode mode) {
  if (mode == RecombineMode::unitary) {
    const JointState out = split_operator().adjoint().apply(state);
    return RecombineOutcome{out, project_charge(out, kGroundCharge).probability};
  }
  const DeviceVector projected = recombine_operator(RecombineMode::ideal).matrix() *
                                 state.amplitudes();
  const double p = projected.squaredNorm();
  if (p < kVanishingProbability) {
    throw GateError("ideal recombination: ground charge branch is empty");
  }
  return RecombineOutcome{JointState::from_amplitudes(projected / std::sqrt(p), 1e-10), p};
}

BiasPulse pulse_for_ratio(double ratio, double area) {
  if (std::isnan(ratio) || ratio < 0.0) {
    throw std::invalid_argument("bias ratio must be non-negative");
  }
  const double duration = std::abs(area);
  if (duration == 0.0) {
    throw std::invalid_argument("bias area must be non-zero");
  }
  const double sign = area > 0.0 ? 1.0 : -1.0;
  if (ratio == 0.0) return BiasPulse({{duration, 0.0}}, 1.0);
  if (std::isinf(ratio)) return BiasPulse({{duration, sign}}, 0.0);
  return BiasPulse({{duration, sign}}, 1.0 / ratio);
}

std::vector<BiasSweepRow> bias_ratio_sweep(std::span<const double> ratios, double area) {
  const DeviceOperator split = split_operator();
  const DeviceOperator rotations =
      conditional_rotation(Dot::A, {Axis::Z, 3.0 * std::numbers::pi}) *
      conditional_rotation(Dot::C, {Axis::X, std::numbers::pi});
  const DeviceOperator unsplit = recombine_operator(RecombineMode::unitary);
  const SpinMatrix target = zx_entangler();

  std::vector<BiasSweepRow> rows;
  rows.reserve(ratios.size());
  for (const double ratio : ratios) {
    const DeviceOperator total =
        unsplit * rotations * bias_evolve(pulse_for_ratio(ratio, area)) * split;
    const SpinMatrix heralded = total.block(kGroundCharge, kGroundCharge);
    rows.push_back({ratio, process_fidelity(heralded, target)});
  }
  return rows;
}

}  // namespace qdcnot
