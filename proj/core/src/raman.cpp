#include "qdcnot/raman.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace qdcnot {

namespace {

constexpr double kPi = std::numbers::pi;

/// exp(-i tau V) for V = Omega1 (|0><e| + h.c.) + Omega2 (e^{i phi}|e><1| + h.c.).
/// V = g (|e><c| + |c><e|) with |c> = (Omega1 |0> + Omega2 e^{-i phi} |1>) / g.
Eigen::Matrix3cd coupling_step(double omega1, double omega2, double phi, double tau) {
  const double g = std::hypot(omega1, omega2);
  if (g == 0.0) return Eigen::Matrix3cd::Identity();
  Eigen::Vector3cd c(omega1 / g, omega2 / g * std::polar(1.0, -phi), 0.0);
  const Eigen::Vector3cd e(0.0, 0.0, 1.0);
  const Eigen::Matrix3cd pc = c * c.adjoint();
  const Eigen::Matrix3cd pe = e * e.adjoint();
  const Eigen::Matrix3cd flip = e * c.adjoint() + c * e.adjoint();
  return Eigen::Matrix3cd::Identity() + (std::cos(g * tau) - 1.0) * (pc + pe) -
         Complex{0.0, std::sin(g * tau)} * flip;
}

}  // namespace

double RamanPulsePair::duration() const {
  double total = 0.0;
  for (const auto& s : segments) total += s.duration;
  return total;
}

double RamanPulsePair::drive_phase() const { return freq_diff * duration() + phase_diff; }

double RamanPulsePair::effective_area() const {
  double area = 0.0;
  for (const auto& s : segments) area += s.duration * effective_rabi(s.omega1, s.omega2, delta1);
  return area;
}

bool RamanPulsePair::raman_resonant(double tol) const { return std::abs(delta1 - delta2) <= tol; }

void RamanPulsePair::validate() const {
  if (segments.empty()) throw std::invalid_argument("Raman pulse has no segments");
  for (const auto& s : segments) {
    if (!std::isfinite(s.duration) || s.duration <= 0.0) {
      throw std::invalid_argument("Raman segment durations must be positive");
    }
    if (!(s.omega1 >= 0.0) || !(s.omega2 >= 0.0) || !std::isfinite(s.omega1) ||
        !std::isfinite(s.omega2)) {
      throw std::invalid_argument("Rabi envelopes must be finite and non-negative");
    }
  }
  if (!std::isfinite(delta1) || !std::isfinite(delta2) || !std::isfinite(freq_diff) ||
      !std::isfinite(phase_diff)) {
    throw std::invalid_argument("Raman pulse parameters must be finite");
  }
}

double effective_rabi(double omega1, double omega2, double delta) {
  if (delta == 0.0) throw std::invalid_argument("effective Rabi frequency needs non-zero detuning");
  return omega1 * omega2 / delta;
}

RamanPulsePair synthesize(Axis axis, double theta, double omega_bar, double delta, int n,
                          double freq_diff, EnvelopeSpec envelope) {
  if (!(theta > 0.0)) throw std::invalid_argument("rotation angle must be positive");
  if (!(omega_bar > 0.0)) throw std::invalid_argument("omega_bar must be positive");
  if (!(delta > 0.0)) throw std::invalid_argument("detuning must be positive");
  if (axis == Axis::Z) {
    throw std::invalid_argument("a single Raman pulse pair realizes X or Y rotations only");
  }

  RamanPulsePair pulse;
  pulse.delta1 = delta;
  pulse.delta2 = delta;
  pulse.freq_diff = freq_diff;
  const double duration = theta / (2.0 * omega_bar);

  if (envelope.shape == EnvelopeShape::square) {
    const double omega = std::sqrt(omega_bar * delta);
    pulse.segments.push_back({duration, omega, omega});
  } else {
    if (envelope.segments < 1) throw std::invalid_argument("envelope needs at least one segment");
    const auto k = static_cast<std::size_t>(envelope.segments);
    const double dt = duration / static_cast<double>(k);
    std::vector<double> profile(k);
    double sum = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      const double s = std::sin(kPi * (static_cast<double>(j) + 0.5) / static_cast<double>(k));
      profile[j] = s * s;
      sum += profile[j] * dt;
    }
    // Scale Omega_eff so that its integral is theta / 2.
    const double scale = 0.5 * theta / sum;
    for (const double p : profile) {
      const double omega = std::sqrt(scale * p * delta);
      pulse.segments.push_back({dt, omega, omega});
    }
  }

  const double target = (axis == Axis::X ? 0.0 : 1.5 * kPi) + 2.0 * kPi * n;
  pulse.phase_diff = target - freq_diff * pulse.duration();
  return pulse;
}

Eigen::Matrix2cd simulate_effective(const RamanPulsePair& pulse) {
  pulse.validate();
  if (!pulse.raman_resonant()) {
    throw std::invalid_argument("effective model requires Raman resonance (delta1 == delta2)");
  }
  const double phi = pulse.drive_phase();
  // Unit generator e^{i phi}|0><1| + h.c. = cos(phi) X - sin(phi) Y.
  const Eigen::Matrix2cd generator = std::cos(phi) * pauli_x() - std::sin(phi) * pauli_y();
  Eigen::Matrix2cd total = Eigen::Matrix2cd::Identity();
  for (const auto& s : pulse.segments) {
    const double a = effective_rabi(s.omega1, s.omega2, pulse.delta1) * s.duration;
    const Eigen::Matrix2cd step =
        std::cos(a) * Eigen::Matrix2cd::Identity() - Complex{0.0, std::sin(a)} * generator;
    total = step * total;
  }
  return total;
}

LambdaResult simulate_lambda(const RamanPulsePair& pulse, const LambdaState& initial,
                             int steps_per_segment) {
  if (steps_per_segment < 1) throw std::invalid_argument("steps_per_segment must be >= 1");
  pulse.validate();

  const double phi = pulse.drive_phase();
  const Eigen::Vector3d energies(0.0, pulse.delta1 - pulse.delta2, -pulse.delta1);

  LambdaResult result;
  Eigen::Vector3cd psi = initial.amplitudes;
  result.max_excited_population = std::norm(psi(2));
  Eigen::Matrix3cd total = Eigen::Matrix3cd::Identity();

  for (const auto& s : pulse.segments) {
    const double dt = s.duration / steps_per_segment;
    Eigen::Matrix3cd half_drift = Eigen::Matrix3cd::Zero();
    for (int k = 0; k < 3; ++k) half_drift(k, k) = std::polar(1.0, -0.5 * dt * energies(k));
    const Eigen::Matrix3cd step =
        half_drift * coupling_step(s.omega1, s.omega2, phi, dt) * half_drift;
    for (int j = 0; j < steps_per_segment; ++j) {
      psi = step * psi;
      total = step * total;
      result.max_excited_population = std::max(result.max_excited_population, std::norm(psi(2)));
    }
  }

  result.final_state.amplitudes = psi;
  result.propagator = total;
  if (pulse.raman_resonant()) {
    const Eigen::Matrix2cd effective = simulate_effective(pulse);
    const Eigen::Matrix2cd qubit = total.topLeftCorner<2, 2>();
    const double overlap = std::norm((effective.adjoint() * qubit).trace());
    result.infidelity_vs_effective = std::max(0.0, 1.0 - overlap / 4.0);
  } else {
    result.infidelity_vs_effective = std::numeric_limits<double>::quiet_NaN();
  }
  return result;
}

}  // namespace qdcnot
