#include "cli.hpp"

#include <cmath>
#include <optional>
#include <ostream>

#include <CLI11.hpp>

#include "commands.hpp"

namespace qdsim {

namespace {

struct Overrides {
  std::string config_path;
  std::optional<std::string> format;
  std::optional<double> tol;
  std::optional<std::string> recombine;
};

RunConfig effective_config(const Overrides& o) {
  RunConfig config;
  if (const auto path = resolve_config_path(o.config_path)) config = load_config(*path);
  if (o.format) config.format = parse_format(*o.format);
  if (o.recombine) config.recombine_mode = parse_recombine(*o.recombine);
  if (o.tol) {
    if (!(*o.tol > 0.0) || !std::isfinite(*o.tol)) throw UsageError("--tol must be positive");
    config.tolerance.closed_form = *o.tol;
    config.tolerance.integrated = *o.tol;
  }
  return config;
}

void positive(const std::optional<double>& v, const char* flag) {
  if (v && (!(*v > 0.0) || !std::isfinite(*v))) {
    throw UsageError(std::string(flag) + " must be positive");
  }
}

}  // namespace

int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Simulator and checker for the quantum-dot CNOT protocol", "qdsim"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", kToolVersion);

  Overrides o;
  app.add_option("--config", o.config_path, "JSON config file (fallback: $QDSIM_CONFIG)");
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--tol", o.tol, "Comparison tolerance (overrides both config tolerances)");
  app.add_option("--recombine", o.recombine, "Recombination mode")
      ->check(CLI::IsMember({"ideal", "unitary"}));

  auto* truth = app.add_subcommand("truth-table", "CNOT truth table under one common phase");

  TraceArgs trace_args;
  std::string amplitudes_text;
  auto* trace = app.add_subcommand("trace", "All 36 amplitudes after every protocol step");
  trace->add_option("--input", trace_args.input, "Basis input 00, 01, 10 or 11");
  auto* amp_opt = trace->add_option("--amplitudes", amplitudes_text,
                                    "re,im for |00>,|01>,|10>,|11> (8 comma-separated numbers)");
  trace->get_option("--input")->excludes(amp_opt);

  std::string sweep_kind;
  std::string sweep_points;
  auto* sweep = app.add_subcommand("sweep", "Bias-ratio or Raman-detuning sweep");
  sweep->add_option("kind", sweep_kind, "bias-ratio or raman-detuning")
      ->required()
      ->check(CLI::IsMember({"bias-ratio", "raman-detuning"}));
  sweep->add_option("--points", sweep_points, "Comma-separated parameter values");

  std::vector<std::string> expression;
  std::string order_text = "sequence";
  auto* decompose = app.add_subcommand("decompose", "Check a rotation identity, e.g. \"Z:3 = X:3 Y:1\"");
  decompose->add_option("expression", expression, "LHS = R1 R2 ... (angles in units of pi)")
      ->required();
  decompose->add_option("--order", order_text, "sequence: leftmost acts first; operator: rightmost")
      ->check(CLI::IsMember({"sequence", "operator"}));

  std::optional<double> t2, t_tunnel, t_pulse, t_bias, threshold;
  auto* budget = app.add_subcommand("budget", "Gate duration against the spin coherence time");
  budget->add_option("--t2-ps", t2);
  budget->add_option("--t-tunnel-ps", t_tunnel);
  budget->add_option("--t-pulse-ps", t_pulse);
  budget->add_option("--t-bias-ps", t_bias);
  budget->add_option("--threshold", threshold);

  std::optional<std::string> axis;
  std::optional<double> theta_pi, delta;
  std::optional<int> n, steps;
  auto* raman = app.add_subcommand("raman", "Synthesize one Raman pulse and validate it");
  raman->add_option("--axis", axis)->check(CLI::IsMember({"X", "Y"}));
  raman->add_option("--theta-pi", theta_pi);
  raman->add_option("--delta", delta);
  raman->add_option("--n", n);
  raman->add_option("--steps", steps, "Integrator steps per envelope segment");

  std::vector<const char*> raw;
  raw.reserve(argv.size());
  for (const auto& a : argv) raw.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(raw.size()), raw.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion& e) {
    out << kToolVersion << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "qdsim: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    RunConfig config = effective_config(o);
    Report report;
    if (truth->parsed()) {
      report = cmd_truth_table(config);
    } else if (trace->parsed()) {
      if (!amplitudes_text.empty()) trace_args.amplitudes = parse_number_list(amplitudes_text);
      report = cmd_trace(config, trace_args);
    } else if (sweep->parsed()) {
      SweepArgs args;
      args.kind = sweep_kind == "bias-ratio" ? SweepKind::bias_ratio : SweepKind::raman_detuning;
      if (!sweep_points.empty()) args.points = parse_number_list(sweep_points);
      report = cmd_sweep(config, args);
    } else if (decompose->parsed()) {
      std::string joined;
      for (const auto& part : expression) joined += (joined.empty() ? "" : " ") + part;
      const auto order = order_text == "sequence" ? qdcnot::ProductOrder::sequence
                                                  : qdcnot::ProductOrder::operator_notation;
      report = cmd_decompose(config, joined, order);
    } else if (budget->parsed()) {
      positive(t2, "--t2-ps");
      positive(threshold, "--threshold");
      if (t2) config.timing.t2_spin = *t2;
      if (t_tunnel) config.timing.t_tunnel = *t_tunnel;
      if (t_pulse) config.timing.t_pulse = *t_pulse;
      if (t_bias) config.timing.t_bias = *t_bias;
      if (threshold) config.timing.threshold = *threshold;
      try {
        config.timing.validate();
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      report = cmd_budget(config);
    } else if (raman->parsed()) {
      positive(theta_pi, "--theta-pi");
      positive(delta, "--delta");
      if (steps && *steps < 1) throw UsageError("--steps must be >= 1");
      if (axis) config.raman.axis = *axis == "X" ? qdcnot::Axis::X : qdcnot::Axis::Y;
      if (theta_pi) config.raman.theta_pi = *theta_pi;
      if (delta) config.raman.delta = *delta;
      if (n) config.raman.n = *n;
      if (steps) config.raman.steps_per_segment = *steps;
      report = cmd_raman(config);
    }
    out << render(report, config.format);
    return report.exit_code();
  } catch (const UsageError& e) {
    err << "qdsim: " << e.what() << "\n";
    return kExitUsage;
  } catch (const qdcnot::GateError& e) {
    err << "qdsim: physics check failed: " << e.what() << "\n";
    return kExitPhysics;
  } catch (const std::invalid_argument& e) {
    err << "qdsim: invalid input: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace qdsim
