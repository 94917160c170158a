#include "qdcnot/protocol.hpp"

#include <cmath>
#include <numbers>

namespace qdcnot {

namespace {

constexpr double kPi = std::numbers::pi;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

bool is_recombine(const ProtocolStep& step) {
  return std::holds_alternative<Recombine>(step.action);
}

void check_finite_nonnegative(double value, const char* what) {
  if (!std::isfinite(value) || value < 0.0) {
    throw std::invalid_argument(std::string(what) + " must be finite and >= 0");
  }
}

struct StatePass {
  std::vector<StepSnapshot> snapshots;
  double leakage = 0.0;
  std::optional<double> recombine_ground_probability;
  JointState final_state = JointState::product(kGroundCharge, spin_basis_state({0, 0}));
};

StatePass run_states(std::span<const ProtocolStep> steps, const SpinVector& initial_spin) {
  validate_sequence(steps);
  StatePass pass;
  JointState state = JointState::product(kGroundCharge, initial_spin);
  bool leakage_recorded = false;

  for (const auto& step : steps) {
    StepSnapshot snap{step.name(), DeviceVector::Zero(), std::nullopt};
    if (const auto* r = std::get_if<Recombine>(&step.action)) {
      if (!leakage_recorded) {
        pass.leakage = leakage(state.amplitudes());
        leakage_recorded = true;
      }
      const RecombineOutcome outcome = recombine(state, r->mode);
      if (r->mode == RecombineMode::ideal) {
        snap.recombine_ground_probability = outcome.ground_probability;
        pass.recombine_ground_probability = outcome.ground_probability;
      }
      state = outcome.state;
    } else {
      state = step_operator(step).apply(state);
    }
    snap.amplitudes = state.amplitudes();
    pass.snapshots.push_back(std::move(snap));
  }
  if (!leakage_recorded) pass.leakage = leakage(state.amplitudes());
  pass.final_state = state;
  return pass;
}

}  // namespace

void TimingBudget::validate() const {
  if (!std::isfinite(t2_spin) || t2_spin <= 0.0) {
    throw std::invalid_argument("t2_spin must be positive");
  }
  if (!std::isfinite(threshold) || threshold <= 0.0) {
    throw std::invalid_argument("threshold must be positive");
  }
  check_finite_nonnegative(t_tunnel, "t_tunnel");
  check_finite_nonnegative(t_pulse, "t_pulse");
  check_finite_nonnegative(t_bias, "t_bias");
}

std::string ProtocolStep::name() const {
  return std::visit(
      Overloaded{
          [](const Split&) -> std::string { return "split"; },
          [](const BiasPhase&) -> std::string { return "bias"; },
          [](const ConditionalRotation& r) -> std::string {
            return std::string("rotate-") + (r.dot == Dot::A ? "A" : "C");
          },
          [](const Recombine&) -> std::string { return "recombine"; },
          [](const LocalRotation& r) -> std::string {
            return std::string("local-") + (r.cell == Cell::one ? "1" : "2");
          },
      },
      action);
}

std::vector<ProtocolStep> cnot_sequence(RecombineMode mode, const BiasChoice& bias,
                                        const TimingBudget& budget) {
  budget.validate();
  std::vector<ProtocolStep> steps;
  steps.push_back({Split{}, budget.t_tunnel});
  steps.push_back({BiasPhase{bias}, budget.t_bias});
  steps.push_back({ConditionalRotation{Dot::A, {Axis::Z, 3.0 * kPi}}, budget.t_pulse});
  steps.push_back({ConditionalRotation{Dot::C, {Axis::X, kPi}}, budget.t_pulse});
  steps.push_back({Recombine{mode}, budget.t_tunnel});
  steps.push_back({LocalRotation{Cell::one, {Axis::Z, 1.5 * kPi}}, budget.t_pulse});
  steps.push_back({LocalRotation{Cell::two, {Axis::X, 1.5 * kPi}}, budget.t_pulse});
  return steps;
}

void validate_sequence(std::span<const ProtocolStep> steps) {
  bool split_seen = false;
  for (const auto& step : steps) {
    check_finite_nonnegative(step.physical_duration, "step duration");
    if (std::holds_alternative<Split>(step.action)) split_seen = true;
    if (is_recombine(step) && !split_seen) {
      throw std::invalid_argument("recombine step must follow a split");
    }
  }
}

DeviceOperator step_operator(const ProtocolStep& step) {
  return std::visit(
      Overloaded{
          [](const Split&) { return split_operator(); },
          [](const BiasPhase& b) {
            return std::visit(Overloaded{[](double area) { return bias_phase_ideal(area); },
                                         [](const BiasPulse& p) { return bias_evolve(p); }},
                              b.bias);
          },
          [](const ConditionalRotation& r) { return conditional_rotation(r.dot, r.rotation); },
          [](const Recombine& r) { return recombine_operator(r.mode); },
          [](const LocalRotation& r) { return local_rotation(r.cell, r.rotation); },
      },
      step.action);
}

std::vector<StepSnapshot> trace(std::span<const ProtocolStep> steps,
                                const SpinVector& initial_spin) {
  return run_states(steps, initial_spin).snapshots;
}

SpinMatrix heralded_block(std::span<const ProtocolStep> steps) {
  validate_sequence(steps);
  DeviceOperator total = DeviceOperator::identity();
  for (const auto& step : steps) total = step_operator(step) * total;
  return total.block(kGroundCharge, kGroundCharge);
}

GateReport execute(std::span<const ProtocolStep> steps, const SpinVector& initial_spin,
                   const SpinMatrix& target) {
  if (std::abs(initial_spin.squaredNorm() - 1.0) > kDefaultTol) {
    throw std::invalid_argument("initial spin state is not normalized");
  }
  const StatePass pass = run_states(steps, initial_spin);

  GateReport report;
  const ChargeProjection ground = project_charge(pass.final_state, kGroundCharge);
  if (!ground.conditional) {
    throw GateError("sequence leaves no probability on the (G1,G2) charge configuration");
  }
  report.output_state = *ground.conditional;
  report.success_probability = ground.probability;
  report.discarded_probability = 1.0 - ground.probability;
  report.leakage = pass.leakage;
  report.recombine_ground_probability = pass.recombine_ground_probability;

  const SpinMatrix block = heralded_block(steps);
  const double scale = (block.adjoint() * block).trace().real() / 4.0;
  if (scale < kVanishingProbability) {
    throw GateError("heralded spin map vanishes");
  }
  report.spin_map = block / std::sqrt(scale);
  report.process_fidelity = process_fidelity(report.spin_map, target);
  report.global_phase = std::arg((target.adjoint() * report.spin_map).trace());

  for (const auto& step : steps) report.total_time += step.physical_duration;
  return report;
}

EntanglerCheck entangler_check(double tol, RecombineMode mode, const BiasChoice& bias) {
  std::vector<ProtocolStep> steps = cnot_sequence(mode, bias);
  steps.resize(5);  // through Recombine

  EntanglerCheck check;
  const SpinMatrix block = heralded_block(steps);
  const double mean_success = (block.adjoint() * block).trace().real() / 4.0;
  if (mean_success < kVanishingProbability) {
    throw GateError("entangling steps leave the ground branch empty");
  }
  check.success_probability = mode == RecombineMode::ideal ? 1.0 : mean_success;
  check.spin_map = block / std::sqrt(mean_success);
  check.match = equal_up_to_global_phase(check.spin_map, zx_entangler(), tol);
  check.passed = check.match.equal;
  return check;
}

TruthTable truth_table(std::span<const ProtocolStep> steps, double tol) {
  const SpinMatrix gate = cnot();
  TruthTable table;
  for (std::size_t j = 0; j < 4; ++j) {
    TruthRow& row = table.rows[j];
    row.input = SpinConfig::from_index(j);
    Eigen::Index image = 0;
    gate.col(static_cast<Eigen::Index>(j)).cwiseAbs().maxCoeff(&image);
    row.expected = SpinConfig::from_index(static_cast<std::size_t>(image));

    const GateReport report = execute(steps, spin_basis_state(row.input));
    row.output = report.output_state;
    row.success_probability = report.success_probability;
    row.phase = std::arg(row.output(image));
  }
  table.common_phase = table.rows[0].phase;
  table.all_match = true;
  const Complex factor = std::polar(1.0, table.common_phase);
  for (auto& row : table.rows) {
    row.max_error = (row.output - factor * spin_basis_state(row.expected)).cwiseAbs().maxCoeff();
    row.match = row.max_error <= tol;
    table.all_match = table.all_match && row.match;
  }
  return table;
}

TruthTable truth_table(double tol) {
  const auto steps = cnot_sequence(RecombineMode::ideal);
  return truth_table(steps, tol);
}

BudgetResult timing_budget(const TimingBudget& budget, std::span<const ProtocolStep> steps) {
  budget.validate();
  validate_sequence(steps);
  BudgetResult result;
  for (const auto& step : steps) result.total_time += step.physical_duration;
  result.ratio_to_t2 = result.total_time / budget.t2_spin;
  result.ok = result.ratio_to_t2 < budget.threshold;
  return result;
}

}  // namespace qdcnot
