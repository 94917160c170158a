#pragma once

// Run configuration for qdsim: JSON file <-> RunConfig, plus the small text
// grammars used on the command line (rotations, decompositions, number lists).
//
// Angles are written in units of pi everywhere ("area_pi": 0.25 is pi/4,
// "Z:1.5" is R_Z(3 pi/2)).

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "qdcnot/qdcnot.hpp"

namespace qdsim {

using Json = nlohmann::ordered_json;

/// Bad flags, unreadable or invalid configs, malformed arguments. Exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Format { json, csv };

struct BiasSpec {
  enum class Kind { ideal, pulse };
  Kind kind = Kind::ideal;
  /// Ideal phase area in units of pi.
  double area_pi = 0.25;
  /// Pulse form.
  double gamma = 0.0;
  std::vector<qdcnot::BiasSegment> segments;

  [[nodiscard]] qdcnot::BiasChoice choice() const;
  /// Radians; pulse area for the pulse form.
  [[nodiscard]] double area() const;
};

struct RamanSpec {
  double omega_bar = 1.0;
  double delta = 100.0;
  qdcnot::Axis axis = qdcnot::Axis::X;
  double theta_pi = 1.0;
  int n = 0;
  double freq_diff = 0.0;
  qdcnot::EnvelopeShape envelope = qdcnot::EnvelopeShape::sine;
  int envelope_segments = 64;
  int steps_per_segment = 2000;

  [[nodiscard]] qdcnot::EnvelopeSpec envelope_spec() const {
    return {envelope, envelope_segments};
  }
};

struct Tolerances {
  /// Algebraic operator comparisons.
  double closed_form = 1e-12;
  /// Comparisons involving integrated evolutions.
  double integrated = 1e-9;
};

struct RunConfig {
  qdcnot::RecombineMode recombine_mode = qdcnot::RecombineMode::ideal;
  BiasSpec bias;
  RamanSpec raman;
  /// Picoseconds.
  qdcnot::TimingBudget timing;
  Format format = Format::json;
  Tolerances tolerance;
};

/// Canonical form: fixed key order, every field present.
[[nodiscard]] Json to_json(const RunConfig& config);

/// Missing keys keep their defaults; unknown keys, wrong types and
/// out-of-range values throw UsageError.
[[nodiscard]] RunConfig config_from_json(const nlohmann::json& j);

[[nodiscard]] RunConfig load_config(const std::string& path);

/// The --config value if given, else $QDSIM_CONFIG if set and non-empty.
[[nodiscard]] std::optional<std::string> resolve_config_path(const std::string& flag_value);

[[nodiscard]] std::string to_string(Format format);
[[nodiscard]] Format parse_format(std::string_view text);
[[nodiscard]] qdcnot::RecombineMode parse_recombine(std::string_view text);

/// "AXIS:MULTIPLE" with AXIS one of X, Y, Z (upper case) and MULTIPLE a finite
/// decimal number, no surrounding spaces: "Z:1.5" -> R_Z(1.5 pi).
[[nodiscard]] qdcnot::Rotation parse_rotation(std::string_view text);

struct Decomposition {
  qdcnot::Rotation lhs;
  std::vector<qdcnot::Rotation> rhs;
  std::string lhs_text;
  std::vector<std::string> rhs_text;
};

/// "LHS = R1 R2 ..." with whitespace-separated rotation tokens.
[[nodiscard]] Decomposition parse_decomposition(std::string_view text);

/// Comma-separated finite numbers, e.g. "10,30,100".
[[nodiscard]] std::vector<double> parse_number_list(std::string_view text);

}  // namespace qdsim
