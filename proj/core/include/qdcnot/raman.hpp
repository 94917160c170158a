#pragma once

// Two-laser Raman drive of a single dot's spin.
//
// Full model: a Lambda system {|0>, |1>, |e>} in the rotating frame of both
// lasers. Laser 1 couples |0> <-> |e> with Rabi frequency Omega1, laser 2 couples
// |1> <-> |e> with Omega2 and carries the relative drive phase phi:
//
//   H = (Delta1 - Delta2) |1><1| - Delta1 |e><e|
//       + Omega1 (|0><e| + |e><0|) + Omega2 (e^{i phi} |e><1| + e^{-i phi} |1><e|)
//
// Eliminating |e> for Delta1 = Delta2 = Delta >> Omega gives the qubit coupling
//
//   H_eff = Omega_eff (e^{i phi} |0><1| + e^{-i phi} |1><0|),  Omega_eff = Omega1 Omega2 / Delta
//
// plus equal light shifts Omega^2/Delta on both levels when Omega1 = Omega2.
// In the qubit frame (Raman resonance, omega1 - omega2 = qubit splitting) the
// coupling phase is the end-of-pulse value phi = (omega1 - omega2) T + dphi12.
// With this sign, phi = 2n pi yields R_X(theta) and phi = 2n pi + 3 pi / 2 yields
// R_Y(theta) when the effective pulse area is theta / 2.

#include <vector>

#include "qdcnot/spin.hpp"
#include "qdcnot/statespace.hpp"

namespace qdcnot {

struct RamanSegment {
  double duration = 0.0;
  double omega1 = 0.0;
  double omega2 = 0.0;
};

struct RamanPulsePair {
  /// Common segmentation of both envelopes.
  std::vector<RamanSegment> segments;
  double delta1 = 0.0;
  double delta2 = 0.0;
  /// omega1 - omega2.
  double freq_diff = 0.0;
  /// Initial phase difference dphi12 between the lasers.
  double phase_diff = 0.0;

  [[nodiscard]] double duration() const;
  /// (omega1 - omega2) T + dphi12.
  [[nodiscard]] double drive_phase() const;
  /// Integral of Omega1 Omega2 / Delta1 over the pulse.
  [[nodiscard]] double effective_area() const;
  [[nodiscard]] bool raman_resonant(double tol = kDefaultTol) const;
  /// Throws std::invalid_argument on negative envelopes, non-positive
  /// segment durations or an empty/zero-length pulse.
  void validate() const;
};

/// Omega1 Omega2 / Delta. Throws std::invalid_argument for zero detuning.
[[nodiscard]] double effective_rabi(double omega1, double omega2, double delta);

enum class EnvelopeShape {
  /// Constant Omega1 = Omega2 = sqrt(omega_bar * Delta) for the whole pulse.
  square,
  /// Omega1 = Omega2 proportional to sin(pi t / T), sampled at segment midpoints,
  /// so Omega_eff follows sin^2. Same duration and area as the square pulse;
  /// omega_bar is then the mean effective Rabi frequency.
  sine,
};

struct EnvelopeSpec {
  EnvelopeShape shape = EnvelopeShape::square;
  /// Number of piecewise-constant segments for the sine shape.
  int segments = 64;
};

/// Pulse pair realizing R_axis(theta) with T = theta / (2 omega_bar) and the
/// end-phase condition phi = 2n pi (X) or 2n pi + 3 pi/2 (Y), given freq_diff.
/// Throws std::invalid_argument for theta <= 0, omega_bar <= 0, delta <= 0,
/// axis Z, or fewer than one envelope segment.
[[nodiscard]] RamanPulsePair synthesize(Axis axis, double theta, double omega_bar, double delta,
                                        int n, double freq_diff = 0.0,
                                        EnvelopeSpec envelope = {});

/// Propagator of H_eff, segment by segment. Throws std::invalid_argument for
/// pulses that are not Raman resonant.
[[nodiscard]] Eigen::Matrix2cd simulate_effective(const RamanPulsePair& pulse);

/// Amplitudes on (|0>, |1>, |e>).
struct LambdaState {
  Eigen::Vector3cd amplitudes = Eigen::Vector3cd(1.0, 0.0, 0.0);

  [[nodiscard]] double excited_population() const { return std::norm(amplitudes(2)); }
};

struct LambdaResult {
  LambdaState final_state;
  /// 1 - |Tr(U_eff^dag M)|^2 / 4 with M the qubit block of the full propagator.
  double infidelity_vs_effective = 0.0;
  /// Largest excited population of the trajectory from `initial`, sampled at every sub-step.
  double max_excited_population = 0.0;
  Eigen::Matrix3cd propagator = Eigen::Matrix3cd::Identity();
};

/// Integrates the Lambda model with symmetric (Strang) splitting of the
/// diagonal and coupling parts, each exponentiated exactly, using
/// `steps_per_segment` equal sub-steps per envelope segment. Every sub-step is
/// unitary. Throws std::invalid_argument for steps_per_segment < 1.
[[nodiscard]] LambdaResult simulate_lambda(const RamanPulsePair& pulse,
                                           const LambdaState& initial, int steps_per_segment);

}  // namespace qdcnot
