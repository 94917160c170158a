#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace qdsim {

namespace {

using qdcnot::Complex;
constexpr double kPi = std::numbers::pi;

Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

template <class Vec>
Json amplitudes_json(const Vec& v) {
  Json a = Json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) a.push_back(complex_json(v(k)));
  return a;
}

Report make_report(std::string command, const RunConfig& config) {
  Report r;
  r.command = std::move(command);
  r.config = to_json(config);
  return r;
}

std::vector<qdcnot::ProtocolStep> sequence(const RunConfig& config) {
  return qdcnot::cnot_sequence(config.recombine_mode, config.bias.choice(), config.timing);
}

std::string order_name(qdcnot::ProductOrder order) {
  return order == qdcnot::ProductOrder::sequence ? "sequence" : "operator";
}

/// Indices that sort `points` ascending; ties keep input order.
std::vector<std::size_t> ascending(const std::vector<double>& points) {
  std::vector<std::size_t> idx(points.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return points[a] < points[b]; });
  return idx;
}

Json phase_match_json(const qdcnot::PhaseMatch& m) {
  Json j;
  j["equal"] = m.equal;
  j["phase"] = m.phase;
  j["max_error"] = m.max_error;
  return j;
}

}  // namespace

Report cmd_truth_table(const RunConfig& config) {
  Report r = make_report("truth-table", config);
  const auto steps = sequence(config);
  const auto table = qdcnot::truth_table(steps, config.tolerance.closed_form);
  const auto gate = qdcnot::execute(steps, qdcnot::spin_basis_state({0, 0}));

  Json rows = Json::array();
  r.table.header = {"input", "expected", "phase", "max_error", "success_probability", "match"};
  double mean_success = 0.0;
  for (const auto& row : table.rows) {
    Json j;
    j["input"] = row.input.label();
    j["expected"] = row.expected.label();
    j["output"] = amplitudes_json(row.output);
    j["phase"] = row.phase;
    j["max_error"] = row.max_error;
    j["success_probability"] = row.success_probability;
    j["match"] = row.match;
    rows.push_back(std::move(j));
    r.table.rows.push_back({row.input.label(), row.expected.label(), row.phase, row.max_error,
                            row.success_probability, row.match});
    mean_success += row.success_probability / 4.0;
  }
  r.result["rows"] = std::move(rows);
  r.result["common_phase"] = table.common_phase;
  r.result["all_match"] = table.all_match;
  r.result["process_fidelity"] = gate.process_fidelity;
  r.result["global_phase"] = gate.global_phase;
  r.result["success_probability"] = mean_success;
  r.pass = table.all_match;
  return r;
}

Report cmd_trace(const RunConfig& config, const TraceArgs& args) {
  Report r = make_report("trace", config);
  qdcnot::SpinVector input = qdcnot::SpinVector::Zero();
  if (args.amplitudes) {
    const auto& a = *args.amplitudes;
    if (a.size() != 8) throw UsageError("--amplitudes needs exactly 8 numbers (re,im x4)");
    for (Eigen::Index k = 0; k < 4; ++k) {
      input(k) = Complex{a[static_cast<std::size_t>(2 * k)], a[static_cast<std::size_t>(2 * k + 1)]};
    }
    if (std::abs(input.squaredNorm() - 1.0) > 1e-9) {
      throw UsageError("--amplitudes must describe a normalized state");
    }
    r.arguments["amplitudes"] = Json(a);
  } else {
    const std::string& s = args.input;
    if (s.size() != 2 || (s[0] != '0' && s[0] != '1') || (s[1] != '0' && s[1] != '1')) {
      throw UsageError("--input must be one of 00, 01, 10, 11");
    }
    input = qdcnot::spin_basis_state({s[0] - '0', s[1] - '0'});
    r.arguments["input"] = s;
  }

  const auto steps = sequence(config);
  const auto snaps = qdcnot::trace(steps, input);

  Json basis = Json::array();
  for (std::size_t k = 0; k < qdcnot::kDeviceDim; ++k) basis.push_back(qdcnot::basis_label(k));

  r.table.header = {"step", "index", "label", "re", "im"};
  Json out_steps = Json::array();
  bool normalized = true;
  for (const auto& snap : snaps) {
    Json j;
    j["step"] = snap.step;
    j["amplitudes"] = amplitudes_json(snap.amplitudes);
    const double norm = snap.amplitudes.squaredNorm();
    j["norm"] = norm;
    j["recombine_ground_probability"] =
        snap.recombine_ground_probability ? Json(*snap.recombine_ground_probability) : Json();
    normalized = normalized && std::abs(norm - 1.0) <= config.tolerance.closed_form * 10.0;
    out_steps.push_back(std::move(j));
    for (std::size_t k = 0; k < qdcnot::kDeviceDim; ++k) {
      const Complex z = snap.amplitudes(static_cast<Eigen::Index>(k));
      r.table.rows.push_back({snap.step, static_cast<int>(k), qdcnot::basis_label(k), z.real(),
                              z.imag()});
    }
  }
  r.result["input"] = amplitudes_json(input);
  r.result["basis"] = std::move(basis);
  r.result["bias_global_phase"] = config.bias.area();
  r.result["steps"] = std::move(out_steps);
  r.pass = normalized;
  return r;
}

Report cmd_sweep(const RunConfig& config, const SweepArgs& args) {
  Report r = make_report("sweep", config);
  std::vector<double> points = args.points;
  if (points.empty()) {
    points = args.kind == SweepKind::bias_ratio ? std::vector<double>{10, 30, 100, 300, 1000}
                                                : std::vector<double>{20, 50, 100, 200};
  }
  if (points.size() < 2) throw UsageError("a sweep needs at least two points");
  for (const double p : points) {
    if (!(p > 0.0) || !std::isfinite(p)) throw UsageError("sweep points must be positive and finite");
  }
  r.arguments["kind"] = args.kind == SweepKind::bias_ratio ? "bias-ratio" : "raman-detuning";
  r.arguments["points"] = Json(points);
  r.result["kind"] = r.arguments["kind"];

  const auto order = ascending(points);
  bool monotone = true;
  Json rows = Json::array();

  if (args.kind == SweepKind::bias_ratio) {
    const auto sweep = qdcnot::bias_ratio_sweep(points, config.bias.area());
    r.table.header = {"ratio", "fidelity"};
    for (const auto& row : sweep) {
      Json j;
      j["ratio"] = row.ratio;
      j["fidelity"] = row.fidelity;
      rows.push_back(std::move(j));
      r.table.rows.push_back({row.ratio, row.fidelity});
    }
    for (std::size_t k = 1; k < order.size(); ++k) {
      monotone = monotone && sweep[order[k]].fidelity >= sweep[order[k - 1]].fidelity;
    }
    r.result["area"] = config.bias.area();
    r.result["criterion"] = "fidelity non-decreasing in ratio";
  } else {
    const auto& rs = config.raman;
    std::vector<double> infidelity;
    r.table.header = {"ratio", "delta", "infidelity", "max_excited_population"};
    for (const double ratio : points) {
      const double delta = ratio * rs.omega_bar;
      const auto pulse = qdcnot::synthesize(rs.axis, rs.theta_pi * kPi, rs.omega_bar, delta, rs.n,
                                            rs.freq_diff, rs.envelope_spec());
      const auto lambda = qdcnot::simulate_lambda(pulse, {}, rs.steps_per_segment);
      infidelity.push_back(lambda.infidelity_vs_effective);
      Json j;
      j["ratio"] = ratio;
      j["delta"] = delta;
      j["infidelity"] = lambda.infidelity_vs_effective;
      j["max_excited_population"] = lambda.max_excited_population;
      rows.push_back(std::move(j));
      r.table.rows.push_back({ratio, delta, lambda.infidelity_vs_effective,
                              lambda.max_excited_population});
    }
    for (std::size_t k = 1; k < order.size(); ++k) {
      monotone = monotone && infidelity[order[k]] < infidelity[order[k - 1]];
    }
    r.result["criterion"] = "infidelity strictly decreasing in ratio";
  }
  r.result["rows"] = std::move(rows);
  r.result["monotone"] = monotone;
  r.pass = monotone;
  return r;
}

Report cmd_decompose(const RunConfig& config, const std::string& expression,
                     qdcnot::ProductOrder order) {
  Report r = make_report("decompose", config);
  const Decomposition d = parse_decomposition(expression);
  r.arguments["expression"] = expression;
  r.arguments["order"] = order_name(order);

  const auto match = qdcnot::check_decomposition(d.lhs, d.rhs, config.tolerance.closed_form, order);
  r.result["lhs"] = d.lhs_text;
  r.result["rhs"] = Json(d.rhs_text);
  r.result["order"] = order_name(order);
  r.result["equal"] = match.equal;
  r.result["phase"] = match.phase;
  r.result["max_error"] = match.max_error;

  std::string rhs;
  for (const auto& t : d.rhs_text) rhs += (rhs.empty() ? "" : " ") + t;
  r.table.header = {"lhs", "rhs", "order", "equal", "phase", "max_error"};
  r.table.rows.push_back({d.lhs_text, rhs, order_name(order), match.equal, match.phase,
                          match.max_error});
  r.pass = match.equal;
  return r;
}

Report cmd_budget(const RunConfig& config) {
  Report r = make_report("budget", config);
  const auto steps = sequence(config);
  const auto result = qdcnot::timing_budget(config.timing, steps);

  Json list = Json::array();
  for (const auto& s : steps) {
    Json j;
    j["step"] = s.name();
    j["duration_ps"] = s.physical_duration;
    list.push_back(std::move(j));
  }
  r.result["steps"] = std::move(list);
  r.result["total_time_ps"] = result.total_time;
  r.result["t2_spin_ps"] = config.timing.t2_spin;
  r.result["ratio_to_t2"] = result.ratio_to_t2;
  r.result["threshold"] = config.timing.threshold;
  r.result["ok"] = result.ok;

  r.table.header = {"total_time_ps", "t2_spin_ps", "ratio_to_t2", "threshold", "ok"};
  r.table.rows.push_back({result.total_time, config.timing.t2_spin, result.ratio_to_t2,
                          config.timing.threshold, result.ok});
  r.pass = result.ok;
  return r;
}

Report cmd_raman(const RunConfig& config) {
  Report r = make_report("raman", config);
  const auto& rs = config.raman;
  const double theta = rs.theta_pi * kPi;
  const auto pulse = qdcnot::synthesize(rs.axis, theta, rs.omega_bar, rs.delta, rs.n,
                                        rs.freq_diff, rs.envelope_spec());
  const auto effective = qdcnot::simulate_effective(pulse);
  const auto match = qdcnot::equal_up_to_global_phase(
      effective, qdcnot::rotation_matrix({rs.axis, theta}), config.tolerance.integrated);
  const auto lambda = qdcnot::simulate_lambda(pulse, {}, rs.steps_per_segment);

  double peak = 0.0;
  for (const auto& s : pulse.segments) peak = std::max(peak, s.omega1);

  Json p;
  p["axis"] = std::string(1, qdcnot::axis_name(rs.axis));
  p["theta_pi"] = rs.theta_pi;
  p["duration"] = pulse.duration();
  p["drive_phase"] = pulse.drive_phase();
  p["phase_diff"] = pulse.phase_diff;
  p["effective_area"] = pulse.effective_area();
  p["segments"] = static_cast<int>(pulse.segments.size());
  p["peak_omega"] = peak;
  r.result["pulse"] = std::move(p);
  r.result["effective"] = phase_match_json(match);

  const auto& amps = lambda.final_state.amplitudes;
  Json l;
  l["infidelity_vs_effective"] = lambda.infidelity_vs_effective;
  l["max_excited_population"] = lambda.max_excited_population;
  l["final_populations"] = Json::array({std::norm(amps(0)), std::norm(amps(1)), std::norm(amps(2))});
  l["norm"] = amps.squaredNorm();
  r.result["lambda"] = std::move(l);

  r.table.header = {"axis", "theta_pi", "delta", "effective_equal", "effective_error",
                    "infidelity_vs_effective", "max_excited_population"};
  r.table.rows.push_back({std::string(1, qdcnot::axis_name(rs.axis)), rs.theta_pi, rs.delta,
                          match.equal, match.max_error, lambda.infidelity_vs_effective,
                          lambda.max_excited_population});
  r.pass = match.equal;
  return r;
}

}  // namespace qdsim
