#pragma once

// Charge dynamics of the coherent quantum-dot cellular automata (CQCA) square
// formed by dots A, B (cell 1) and C, D (cell 2).
//
// The two diagonal ("full polarization") configurations form a pseudo-spin:
// (A,C) has sigma_z = +1 and (B,D) has sigma_z = -1. A bias polarization couples
// as E0*P_bias*sigma_z; vertical tunneling gamma enters as gamma*sigma_x.
// Units have hbar = 1: energies are angular frequencies, durations are in the
// reciprocal unit.

#include <span>
#include <vector>

#include "qdcnot/statespace.hpp"

namespace qdcnot {

struct BiasSegment {
  double duration = 0.0;
  /// E0 * P_bias during the segment.
  double bias_energy = 0.0;
};

/// Piecewise-constant bias schedule plus the (fixed) vertical tunneling energy.
class BiasPulse {
 public:
  /// Throws std::invalid_argument for non-positive or non-finite durations,
  /// non-finite bias energies, or negative gamma. An empty segment list is
  /// representable but rejected by bias_evolve.
  BiasPulse(std::vector<BiasSegment> segments, double gamma);

  [[nodiscard]] const std::vector<BiasSegment>& segments() const { return segments_; }
  [[nodiscard]] double gamma() const { return gamma_; }
  /// Sum of duration * bias_energy.
  [[nodiscard]] double area() const;
  [[nodiscard]] double total_duration() const;

 private:
  std::vector<BiasSegment> segments_;
  double gamma_ = 0.0;
};

/// Unitary charge step that sends |G1,G2> to (|A,C> + |B,D>)/sqrt(2) with the
/// spins untouched. Completion on the rest of the charge space:
///   |A,C> -> (|A,C> - |B,D>)/sqrt(2),   |B,D> -> |G1,G2>,
/// identity on the other six configurations.
[[nodiscard]] DeviceOperator split_operator();

/// e^{-i area} on the (A,C) block and e^{+i area} on the (B,D) block.
[[nodiscard]] DeviceOperator bias_phase_ideal(double area);

/// Time-ordered 2x2 propagator of H = bias(t) sigma_z + gamma sigma_x on the
/// polarization pair, basis order ((A,C), (B,D)).
[[nodiscard]] Eigen::Matrix2cd polarization_propagator(const BiasPulse& pulse);

/// polarization_propagator embedded on the device; identity on the other
/// charge configurations. Throws std::invalid_argument for an empty pulse.
[[nodiscard]] DeviceOperator bias_evolve(const BiasPulse& pulse);

enum class RecombineMode {
  /// Deterministic return to (G1,G2): split^dag followed by projection onto the
  /// ground charge configuration and renormalization.
  ideal,
  /// Exact adjoint of the split; the ground configuration is reached only with
  /// some probability (heralded operation).
  unitary,
};

[[nodiscard]] std::string to_string(RecombineMode mode);

/// ideal -> P_ground * split^dag (partial isometry); unitary -> split^dag.
[[nodiscard]] DeviceOperator recombine_operator(RecombineMode mode);

struct RecombineOutcome {
  JointState state;
  /// Probability on (G1,G2) right after split^dag, before any renormalization.
  double ground_probability = 0.0;
};

/// Applies the recombination to a state. In ideal mode the result is
/// renormalized; throws GateError when the ground branch probability is below
/// kVanishingProbability.
[[nodiscard]] RecombineOutcome recombine(const JointState& state, RecombineMode mode);

/// Single-segment pulse with bias/gamma = ratio and the requested area.
/// ratio = +inf gives gamma = 0; ratio = 0 gives a pure tunneling pulse
/// (bias 0, gamma 1) lasting `area`.
[[nodiscard]] BiasPulse pulse_for_ratio(double ratio, double area);

struct BiasSweepRow {
  double ratio = 0.0;
  double fidelity = 0.0;
};

/// For each ratio, composes split -> bias_evolve -> conditional rotations
/// R_Z^A(3 pi), R_X^C(pi) -> split^dag and reports the process fidelity of the
/// heralded spin map on (G1,G2) against zx_entangler(). Throws
/// std::invalid_argument for negative or NaN ratios.
[[nodiscard]] std::vector<BiasSweepRow> bias_ratio_sweep(std::span<const double> ratios,
                                                         double area);

}  // namespace qdcnot
