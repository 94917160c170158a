#pragma once

// The four-step CNOT sequence on the two-cell device:
//   1. split both electrons into the diagonal CQCA superposition
//   2. bias phase (area pi/4), then R_Z(3 pi) on dot A and R_X(pi) on dot C
//   3. recombine back to dots 1 and 2
//   4. R_Z(3 pi/2) on spin 1 and R_X(3 pi/2) on spin 2
// Step durations are bookkeeping only; operators are composed ideally and the
// physical time is priced separately against the spin coherence time.

#include <array>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "qdcnot/cqca.hpp"
#include "qdcnot/spin.hpp"
#include "qdcnot/statespace.hpp"

namespace qdcnot {

/// Times in picoseconds.
struct TimingBudget {
  double t2_spin = 50.0e6;
  /// One split or one recombination.
  double t_tunnel = 100.0;
  /// One laser spin rotation.
  double t_pulse = 5.0;
  /// The CQCA bias pulse.
  double t_bias = 100.0;
  /// total_time / t2_spin must stay below this.
  double threshold = 1e-3;

  /// Throws std::invalid_argument unless t2_spin > 0, threshold > 0 and the
  /// step times are finite and >= 0.
  void validate() const;
};

struct Split {};
struct BiasPhase {
  /// Ideal phase area in radians, or an explicit pulse.
  std::variant<double, BiasPulse> bias;
};
struct ConditionalRotation {
  Dot dot = Dot::A;
  Rotation rotation;
};
struct Recombine {
  RecombineMode mode = RecombineMode::ideal;
};
struct LocalRotation {
  Cell cell = Cell::one;
  Rotation rotation;
};

using StepAction = std::variant<Split, BiasPhase, ConditionalRotation, Recombine, LocalRotation>;

struct ProtocolStep {
  StepAction action;
  double physical_duration = 0.0;

  /// "split", "bias", "rotate-A", "rotate-C", "recombine", "local-1" or "local-2".
  [[nodiscard]] std::string name() const;
};

using BiasChoice = std::variant<double, BiasPulse>;

inline constexpr double kEntanglingArea = std::numbers::pi / 4.0;

/// [Split, BiasPhase, rot A R_Z(3pi), rot C R_X(pi), Recombine(mode),
///  local 1 R_Z(3pi/2), local 2 R_X(3pi/2)] with durations from `budget`.
[[nodiscard]] std::vector<ProtocolStep> cnot_sequence(RecombineMode mode,
                                                      const BiasChoice& bias = kEntanglingArea,
                                                      const TimingBudget& budget = {});

/// Throws std::invalid_argument for negative durations or a Recombine that is
/// not preceded by a Split.
void validate_sequence(std::span<const ProtocolStep> steps);

/// Linear operator of a step; Recombine(ideal) gives the partial isometry.
[[nodiscard]] DeviceOperator step_operator(const ProtocolStep& step);

struct StepSnapshot {
  std::string step;
  DeviceVector amplitudes;
  /// Ground-branch probability at an ideal recombination, before renormalizing.
  std::optional<double> recombine_ground_probability;
};

/// State after every step, starting from (G1,G2) (x) initial_spin. Ideal
/// recombination renormalizes. Throws GateError when an ideal recombination
/// finds an empty ground branch.
[[nodiscard]] std::vector<StepSnapshot> trace(std::span<const ProtocolStep> steps,
                                              const SpinVector& initial_spin);

/// Raw (G1,G2) -> (G1,G2) block of the composed sequence operator.
[[nodiscard]] SpinMatrix heralded_block(std::span<const ProtocolStep> steps);

struct GateReport {
  /// Heralded spin map rescaled so that Tr(M^dag M) = 4.
  SpinMatrix spin_map = SpinMatrix::Zero();
  double process_fidelity = 0.0;
  /// Probability that the device ends in (G1,G2) for this input; 1 in ideal mode.
  double success_probability = 0.0;
  /// 1 - success_probability.
  double discarded_probability = 0.0;
  /// Probability outside the protocol charge configurations just before recombination.
  double leakage = 0.0;
  /// Sum of the step durations (ps).
  double total_time = 0.0;
  /// arg Tr(target^dag spin_map).
  double global_phase = 0.0;
  /// Normalized spin state on (G1,G2) for this input.
  SpinVector output_state = SpinVector::Zero();
  /// Ideal mode only: ground probability found at recombination before renormalizing.
  std::optional<double> recombine_ground_probability;
};

/// Runs the sequence on (G1,G2) (x) initial_spin. Throws std::invalid_argument
/// for a non-normalized input, GateError when the ground branch ends up empty.
[[nodiscard]] GateReport execute(std::span<const ProtocolStep> steps,
                                 const SpinVector& initial_spin,
                                 const SpinMatrix& target = cnot());

struct EntanglerCheck {
  bool passed = false;
  PhaseMatch match;
  /// Mean ground-branch probability over the four basis inputs.
  double success_probability = 0.0;
  SpinMatrix spin_map = SpinMatrix::Zero();
};

/// Steps 1-3 against cos(pi/4) I - i sin(pi/4) sigma_z (x) sigma_x.
[[nodiscard]] EntanglerCheck entangler_check(double tol = kDefaultTol,
                                             RecombineMode mode = RecombineMode::ideal,
                                             const BiasChoice& bias = kEntanglingArea);

struct TruthRow {
  SpinConfig input;
  SpinConfig expected;
  SpinVector output = SpinVector::Zero();
  /// arg of the output amplitude on the expected basis state.
  double phase = 0.0;
  /// max |output - e^{i common_phase} |expected>|.
  double max_error = 0.0;
  double success_probability = 0.0;
  bool match = false;
};

struct TruthTable {
  std::array<TruthRow, 4> rows{};
  /// Phase of row |00>, applied to every row.
  double common_phase = 0.0;
  bool all_match = false;
};

[[nodiscard]] TruthTable truth_table(std::span<const ProtocolStep> steps, double tol = kDefaultTol);
[[nodiscard]] TruthTable truth_table(double tol = kDefaultTol);

struct BudgetResult {
  double total_time = 0.0;
  double ratio_to_t2 = 0.0;
  bool ok = false;
};

[[nodiscard]] BudgetResult timing_budget(const TimingBudget& budget,
                                         std::span<const ProtocolStep> steps);

}  // namespace qdcnot
