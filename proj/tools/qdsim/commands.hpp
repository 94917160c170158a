#pragma once

#include <optional>
#include <string>
#include <vector>

#include "config.hpp"
#include "report.hpp"

namespace qdsim {

/// Protocol on |00>, |01>, |10>, |11>; pass iff all rows match CNOT under one common phase.
[[nodiscard]] Report cmd_truth_table(const RunConfig& config);

struct TraceArgs {
  /// Basis label "00".."11"; ignored when amplitudes are given.
  std::string input = "00";
  /// Eight numbers: re, im of |00>, |01>, |10>, |11>. Must be normalized.
  std::optional<std::vector<double>> amplitudes;
};

/// All 36 amplitudes after every protocol step. Throws UsageError for a bad input state.
[[nodiscard]] Report cmd_trace(const RunConfig& config, const TraceArgs& args);

enum class SweepKind { bias_ratio, raman_detuning };

struct SweepArgs {
  SweepKind kind = SweepKind::bias_ratio;
  /// Empty selects the default points (10,30,100,300,1000 or 20,50,100,200).
  std::vector<double> points;
};

/// Pass iff the figure of merit improves monotonically with the parameter.
/// Throws UsageError for fewer than two points or non-positive values.
[[nodiscard]] Report cmd_sweep(const RunConfig& config, const SweepArgs& args);

/// Pass iff the two sides agree up to a global phase.
[[nodiscard]] Report cmd_decompose(const RunConfig& config, const std::string& expression,
                                   qdcnot::ProductOrder order);

/// Pass iff total time / T2 is below the threshold.
[[nodiscard]] Report cmd_budget(const RunConfig& config);

/// Synthesizes the configured pulse; pass iff the effective map matches the rotation.
[[nodiscard]] Report cmd_raman(const RunConfig& config);

}  // namespace qdsim
