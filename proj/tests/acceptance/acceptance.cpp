// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <array>
#include <cstdio>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "qdcnot/qdcnot.hpp"
#include "test_support.hpp"

namespace {

using namespace qdcnot;
using qdcnot::testing::Cx;
using qdcnot::testing::kPi;
using qdcnot::testing::Rng;

// Tolerances, pinned.
constexpr double kClosedForm = 1e-12;
constexpr double kSuccessTol = 1e-12;
constexpr double kSweepOracleTol = 1e-10;
constexpr double kSweepFloor = 0.999;
constexpr double kEffectiveTol = 1e-9;
constexpr double kStepDoublingRatio = 1.8;
constexpr double kNormTol = 1e-10;
constexpr int kPropertyCases = 1000;

const Cx kI{0.0, 1.0};
const double kH = 1.0 / std::sqrt(2.0);

struct Outcome {
  bool pass = true;
  std::string detail;
};

void require(Outcome& o, bool ok, const std::string& what) {
  if (!ok) {
    o.pass = false;
    if (!o.detail.empty()) o.detail += "; ";
    o.detail += what;
  }
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// ---------------------------------------------------------------------------
// Brute-force 36x36 composition, built from index arithmetic only.

using Big = Eigen::Matrix<Cx, 36, 36>;

// charge index c = 3*cell1 + cell2 with G=0, A/C=1, B/D=2; state = 4*c + 2*s1 + s2
constexpr int kG = 0, kAC = 4, kBD = 8;

Big brute_split() {
  Big m = Big::Zero();
  for (int c = 0; c < 9; ++c) {
    for (int s = 0; s < 4; ++s) {
      const int col = 4 * c + s;
      if (c == kG) {
        m(4 * kAC + s, col) = kH;
        m(4 * kBD + s, col) = kH;
      } else if (c == kAC) {
        m(4 * kAC + s, col) = kH;
        m(4 * kBD + s, col) = -kH;
      } else if (c == kBD) {
        m(4 * kG + s, col) = 1.0;
      } else {
        m(col, col) = 1.0;
      }
    }
  }
  return m;
}

Big brute_bias(double area) {
  Big m = Big::Identity();
  for (int s = 0; s < 4; ++s) {
    m(4 * kAC + s, 4 * kAC + s) = std::exp(-kI * area);
    m(4 * kBD + s, 4 * kBD + s) = std::exp(kI * area);
  }
  return m;
}

// R_Z(3pi) on spin 1 where cell 1 sits on A: diag(e^{-i 3pi/2}, e^{+i 3pi/2}).
Big brute_rz_on_a() {
  Big m = Big::Identity();
  for (int c = 0; c < 9; ++c) {
    if (c / 3 != 1) continue;
    for (int s = 0; s < 4; ++s) {
      const int s1 = s / 2;
      m(4 * c + s, 4 * c + s) = std::exp((s1 == 0 ? -1.0 : 1.0) * kI * 1.5 * kPi);
    }
  }
  return m;
}

// R_X(pi) on spin 2 where cell 2 sits on C: -i times a bit flip of s2.
Big brute_rx_on_c() {
  Big m = Big::Identity();
  for (int c = 0; c < 9; ++c) {
    if (c % 3 != 1) continue;
    for (int s = 0; s < 4; ++s) {
      m(4 * c + s, 4 * c + s) = 0.0;
      m(4 * c + (s ^ 1), 4 * c + s) = -kI;
    }
  }
  return m;
}

Eigen::Matrix4cd brute_entangler_block(bool project) {
  const Big split = brute_split();
  Big total = split.adjoint() * brute_rx_on_c() * brute_rz_on_a() * brute_bias(kPi / 4.0) * split;
  if (project) {
    // Projection onto (G1,G2) followed by renormalization of the block.
    const Eigen::Matrix4cd block = total.block<4, 4>(4 * kG, 4 * kG);
    return block / std::sqrt((block.adjoint() * block).trace().real() / 4.0);
  }
  return total.block<4, 4>(4 * kG, 4 * kG);
}

Eigen::Matrix4cd target_entangler() {
  Eigen::Matrix4cd zx = Eigen::Matrix4cd::Zero();
  // sigma_z (x) sigma_x: |s1 s2> -> (-1)^{s1} |s1, 1-s2>
  for (int s = 0; s < 4; ++s) zx(s ^ 1, s) = (s / 2 == 0) ? 1.0 : -1.0;
  return std::cos(kPi / 4.0) * Eigen::Matrix4cd::Identity() - kI * std::sin(kPi / 4.0) * zx;
}

// ---------------------------------------------------------------------------

Outcome criterion1() {
  Outcome o;
  const auto table = truth_table(kClosedForm);
  double worst = 0.0;
  for (const auto& row : table.rows) worst = std::max(worst, row.max_error);
  const std::array<std::size_t, 4> image = {0, 1, 3, 2};
  for (std::size_t j = 0; j < 4; ++j) {
    require(o, table.rows[j].expected.index() == image[j], "wrong CNOT image");
  }
  require(o, table.all_match, "rows do not match under one common phase");
  o.detail = (o.pass ? "" : o.detail + "; ") + "max amplitude error " + fmt("%.3e", worst) +
             ", common phase " + fmt("%.17g", table.common_phase);
  return o;
}

Outcome criterion2() {
  Outcome o;
  std::array<SpinVector, 4> rows;
  rows[0] << kH, -kI * kH, 0.0, 0.0;
  rows[1] << -kI * kH, kH, 0.0, 0.0;
  rows[2] << 0.0, 0.0, kH, kI * kH;
  rows[3] << 0.0, 0.0, kI * kH, kH;
  const auto steps = cnot_sequence(RecombineMode::ideal);
  const Cx discarded = std::polar(1.0, -kPi / 4.0);
  double worst = 0.0;
  for (std::size_t j = 0; j < 4; ++j) {
    const auto snaps = trace(steps, spin_basis_state(SpinConfig::from_index(j)));
    const DeviceVector& after = snaps.at(4).amplitudes;
    DeviceVector expected = DeviceVector::Zero();
    expected.segment<4>(0) = rows[j];
    const double err = (discarded * after - expected).cwiseAbs().maxCoeff();
    worst = std::max(worst, err);
  }
  require(o, worst < kClosedForm, "post-recombination state mismatch");
  o.detail += (o.detail.empty() ? "" : "; ") + std::string("max amplitude error ") +
              fmt("%.3e", worst) + " after removing e^{i pi/4}";
  return o;
}

Outcome criterion3() {
  Outcome o;
  const auto check = entangler_check(kClosedForm);
  require(o, check.passed, "library entangler check failed");
  const Eigen::Matrix4cd oracle = brute_entangler_block(true);
  const auto vs_target = equal_up_to_global_phase(oracle, target_entangler(), kClosedForm);
  require(o, vs_target.equal, "brute-force composition differs from entangler");
  const double lib_vs_oracle = (check.spin_map - oracle).cwiseAbs().maxCoeff();
  require(o, lib_vs_oracle < kClosedForm, "library map differs from brute-force map");
  o.detail += (o.detail.empty() ? "" : "; ") + std::string("error ") +
              fmt("%.3e", check.match.max_error) + ", oracle diff " +
              fmt("%.3e", lib_vs_oracle);
  return o;
}

Outcome criterion4() {
  Outcome o;
  const std::array<Rotation, 2> first = {Rotation{Axis::X, 3.0 * kPi}, Rotation{Axis::Y, kPi}};
  const std::array<Rotation, 3> second = {Rotation{Axis::Y, 1.5 * kPi},
                                          Rotation{Axis::X, 0.5 * kPi},
                                          Rotation{Axis::Y, 0.5 * kPi}};
  std::string detail;
  bool any = false;
  for (const auto order : {ProductOrder::operator_notation, ProductOrder::sequence}) {
    const auto a = check_decomposition({Axis::Z, 3.0 * kPi}, first, kClosedForm, order);
    const auto b = check_decomposition({Axis::Z, 1.5 * kPi}, second, kClosedForm, order);
    const bool ok = a.equal && b.equal && std::abs(wrap_phase(a.phase)) < kClosedForm &&
                    std::abs(wrap_phase(b.phase)) < kClosedForm;
    any = any || ok;
    auto describe = [](const PhaseMatch& m) {
      return m.equal ? "phase " + fmt("%.6g", m.phase) : "unequal (error " + fmt("%.3g", m.max_error) + ")";
    };
    detail += std::string(order == ProductOrder::sequence ? "sequence" : "operator") + ": " +
              describe(a) + " / " + describe(b) + "; ";
  }
  require(o, any, "no product order yields both identities with phase 0");
  o.detail = detail + o.detail;
  return o;
}

Outcome criterion5() {
  Outcome o;
  const auto steps = cnot_sequence(RecombineMode::unitary);
  Rng rng(5005);
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    const auto report = execute(steps, rng.state<4>());
    worst = std::max(worst, std::abs(report.success_probability - 0.5));
  }
  require(o, worst <= kSuccessTol, "success probability off 0.5");
  const auto check = entangler_check(kClosedForm, RecombineMode::unitary);
  require(o, check.passed, "heralded map is not the entangler");
  const auto vs_oracle =
      equal_up_to_global_phase(check.spin_map, brute_entangler_block(true), kClosedForm);
  require(o, vs_oracle.equal, "heralded map differs from brute-force oracle");
  o.detail += (o.detail.empty() ? "" : "; ") + std::string("max |p - 0.5| ") +
              fmt("%.3e", worst) + " over 20 inputs";
  return o;
}

Outcome criterion6() {
  Outcome o;
  const std::vector<double> ratios = {10.0, 30.0, 100.0, 300.0, 1000.0};
  const auto rows = bias_ratio_sweep(ratios, kEntanglingArea);
  double worst_oracle = 0.0;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (k > 0) require(o, rows[k].fidelity >= rows[k - 1].fidelity, "fidelity decreases");
    // Closed-form two-level Rabi solution for a single segment.
    const double gamma = 1.0 / ratios[k];
    const double w = std::hypot(1.0, gamma);
    const double t = kEntanglingArea;
    const Cx c = std::cos(w * t);
    const Cx s = std::sin(w * t) / w;
    const Cx a = (c - kI * s) - kI * s * gamma;  // w11 + w12
    const Cx b = -kI * s * gamma + (c + kI * s);  // w21 + w22
    const double oracle = std::norm(b + kI * a) / (2.0 * (std::norm(a) + std::norm(b)));
    worst_oracle = std::max(worst_oracle, std::abs(rows[k].fidelity - oracle));
  }
  require(o, worst_oracle <= kSweepOracleTol, "sweep differs from closed form");
  require(o, rows.back().fidelity >= kSweepFloor, "fidelity at ratio 1000 below floor");
  o.detail += (o.detail.empty() ? "" : "; ") + std::string("F(1000) = ") +
              fmt("%.17g", rows.back().fidelity) + ", oracle diff " + fmt("%.3e", worst_oracle);
  return o;
}

Outcome criterion7() {
  Outcome o;
  const EnvelopeSpec envelope{EnvelopeShape::sine, 64};
  constexpr int kSteps = 2000;
  double previous = std::numeric_limits<double>::infinity();
  std::string values;
  for (const double ratio : {20.0, 50.0, 100.0, 200.0}) {
    const auto pulse = synthesize(Axis::X, kPi, 1.0, ratio, 0, 0.0, envelope);
    const auto r = simulate_lambda(pulse, {}, kSteps);
    require(o, r.infidelity_vs_effective < previous, "infidelity not decreasing");
    previous = r.infidelity_vs_effective;
    values += fmt("%.3e", r.infidelity_vs_effective) + " ";

    const auto eff = equal_up_to_global_phase(simulate_effective(pulse),
                                              rotation_matrix({Axis::X, kPi}), kEffectiveTol);
    require(o, eff.equal, "effective map differs from R_X(pi)");
  }

  const auto pulse = synthesize(Axis::X, kPi, 1.0, 100.0, 0, 0.0, envelope);
  std::vector<Eigen::Matrix3cd> maps;
  for (int n = 125; n <= 1000; n *= 2) maps.push_back(simulate_lambda(pulse, {}, n).propagator);
  std::string ratios;
  for (std::size_t k = 2; k < maps.size(); ++k) {
    const double coarse = (maps[k - 1] - maps[k - 2]).cwiseAbs().maxCoeff();
    const double fine = (maps[k] - maps[k - 1]).cwiseAbs().maxCoeff();
    require(o, coarse / fine >= kStepDoublingRatio, "step doubling ratio too small");
    ratios += fmt("%.2f", coarse / fine) + " ";
  }
  o.detail += (o.detail.empty() ? "" : "; ") + std::string("infidelity ") + values +
              "| doubling ratios " + ratios;
  return o;
}

Outcome criterion8() {
  Outcome o;
  const TimingBudget budget;
  const auto steps = cnot_sequence(RecombineMode::ideal, kEntanglingArea, budget);
  const auto result = timing_budget(budget, steps);
  require(o, result.total_time == 320.0, "total time is not 320 ps");
  require(o, result.ratio_to_t2 == 6.4e-6, "ratio is not 6.4e-6");
  require(o, result.ok, "budget verdict not ok");
  o.detail += (o.detail.empty() ? "" : "; ") + std::string("total ") +
              fmt("%.17g", result.total_time) + " ps, ratio " + fmt("%.17g", result.ratio_to_t2);
  return o;
}

Outcome criterion9() {
  Outcome o;
  Rng rng(9009);
  int cases = 0;

  // Bijective indexing.
  std::array<bool, 36> hit{};
  for (const auto& c : all_charge_configs()) {
    for (std::size_t s = 0; s < 4; ++s) {
      const std::size_t idx = basis_index(c, SpinConfig::from_index(s));
      const auto back = basis_entry(idx);
      require(o, !hit[idx] && back.charge == c && back.spin.index() == s, "indexing");
      hit[idx] = true;
    }
  }

  const std::array<Axis, 3> axes = {Axis::X, Axis::Y, Axis::Z};
  for (int k = 0; k < kPropertyCases; ++k, ++cases) {
    const Axis axis = axes[static_cast<std::size_t>(rng.integer(0, 2))];
    const double theta = rng.uniform(-4.0 * kPi, 4.0 * kPi);
    const auto r = rotation_matrix({axis, theta});
    // Spinor double cover and inverse.
    require(o, (rotation_matrix({axis, theta + 2.0 * kPi}) + r).cwiseAbs().maxCoeff() < kClosedForm,
            "2pi sign flip");
    require(o, (rotation_matrix({axis, theta + 4.0 * kPi}) - r).cwiseAbs().maxCoeff() < kClosedForm,
            "4pi periodicity");
    require(o, (r * rotation_matrix({axis, -theta}) - Eigen::Matrix2cd::Identity())
                       .cwiseAbs().maxCoeff() < kClosedForm,
            "inverse");

    // Unitarity of embedded and conditional operators.
    const Rotation other{axes[static_cast<std::size_t>(rng.integer(0, 2))], rng.uniform(-kPi, kPi)};
    const auto a = conditional_rotation(Dot::A, {axis, theta});
    const auto c = conditional_rotation(Dot::C, other);
    require(o, qdcnot::testing::is_unitary(a.matrix(), kClosedForm), "conditional unitarity");
    require(o, ((a * c).matrix() - (c * a).matrix()).cwiseAbs().maxCoeff() < kClosedForm,
            "disjoint rotations commute");

    // Bias evolution unitarity.
    const BiasPulse pulse({{rng.uniform(0.01, 2.0), rng.uniform(-2.0, 2.0)},
                           {rng.uniform(0.01, 2.0), rng.uniform(-2.0, 2.0)}},
                          rng.uniform(0.0, 1.0));
    require(o, qdcnot::testing::is_unitary(bias_evolve(pulse).matrix(), kClosedForm),
            "bias unitarity");

    // Projection probabilities sum to one; fidelity symmetry.
    const auto s1 = JointState::from_amplitudes(rng.state<36>());
    const auto s2 = JointState::from_amplitudes(rng.state<36>());
    double total = 0.0;
    for (const auto& cfg : all_charge_configs()) total += project_charge(s1, cfg).probability;
    require(o, std::abs(total - 1.0) < kClosedForm, "projection norm accounting");
    require(o, std::abs(fidelity(s1, s2) - fidelity(s2, s1)) < kClosedForm, "fidelity symmetry");

    // Protocol norm accounting and ordering equivalence.
    const auto mode = k % 2 == 0 ? RecombineMode::ideal : RecombineMode::unitary;
    auto steps = cnot_sequence(mode);
    const SpinVector input = rng.state<4>();
    const auto report = execute(steps, input);
    require(o, std::abs(report.success_probability * report.output_state.squaredNorm() +
                        report.discarded_probability - 1.0) < kClosedForm,
            "execute norm accounting");
    if (k % 50 == 0) {
      std::swap(steps[2], steps[3]);
      std::swap(steps[5], steps[6]);
      require(o, (execute(steps, input).spin_map - report.spin_map).cwiseAbs().maxCoeff() <
                     kClosedForm,
              "ordering equivalence");
    }

    // Lambda integrator norm.
    if (k % 10 == 0) {
      RamanPulsePair p;
      p.segments = {{rng.uniform(0.05, 0.5), rng.uniform(0.0, 10.0), rng.uniform(0.0, 10.0)}};
      p.delta1 = rng.uniform(10.0, 100.0);
      p.delta2 = p.delta1;
      p.phase_diff = rng.uniform(-kPi, kPi);
      const auto lr = simulate_lambda(p, {}, 50);
      require(o, std::abs(lr.final_state.amplitudes.squaredNorm() - 1.0) < kNormTol,
              "lambda norm");
    }
  }
  o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(cases) + " randomized cases";
  return o;
}

}  // namespace

int main() {
  const std::array<std::pair<const char*, std::function<Outcome()>>, 9> criteria = {{
      {"truth table under one common phase", criterion1},
      {"post-recombination states", criterion2},
      {"entangler identity and brute-force oracle", criterion3},
      {"rotation decompositions with phase 0", criterion4},
      {"heralded unitary recombination", criterion5},
      {"finite-bias sweep", criterion6},
      {"Raman adiabatic elimination", criterion7},
      {"timing budget", criterion8},
      {"invariant suite", criterion9},
  }};
  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("criterion %zu %s: %s (%s)\n", k + 1, o.pass ? "PASS" : "FAIL", criteria[k].first,
                o.detail.c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
