#include "config.hpp"

#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>

namespace qdsim {

namespace {

using nlohmann::json;
constexpr double kPi = std::numbers::pi;

void check_object(const json& j, const std::string& where) {
  if (!j.is_object()) throw UsageError(where + ": expected an object");
}

void check_keys(const json& j, std::initializer_list<std::string_view> allowed,
                const std::string& where) {
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (const auto a : allowed) known = known || key == a;
    if (!known) throw UsageError(where + ": unknown key \"" + key + "\"");
  }
}

double number(const json& j, const char* key, double fallback, const std::string& where) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_number()) throw UsageError(where + "." + key + ": expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw UsageError(where + "." + key + ": must be finite");
  return x;
}

int integer(const json& j, const char* key, int fallback, const std::string& where) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_number_integer()) throw UsageError(where + "." + key + ": expected an integer");
  return v.get<int>();
}

std::string text(const json& j, const char* key, const std::string& fallback,
                 const std::string& where) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_string()) throw UsageError(where + "." + key + ": expected a string");
  return v.get<std::string>();
}

void require(bool ok, const std::string& message) {
  if (!ok) throw UsageError(message);
}

std::string axis_text(qdcnot::Axis a) { return std::string(1, qdcnot::axis_name(a)); }

BiasSpec read_bias(const json& j, BiasSpec spec) {
  check_object(j, "bias");
  const std::string kind = text(j, "kind", spec.kind == BiasSpec::Kind::ideal ? "ideal" : "pulse",
                                "bias");
  if (kind == "ideal") {
    check_keys(j, {"kind", "area_pi"}, "bias");
    spec.kind = BiasSpec::Kind::ideal;
    spec.area_pi = number(j, "area_pi", spec.area_pi, "bias");
  } else if (kind == "pulse") {
    check_keys(j, {"kind", "gamma", "segments"}, "bias");
    spec.kind = BiasSpec::Kind::pulse;
    spec.gamma = number(j, "gamma", spec.gamma, "bias");
    require(spec.gamma >= 0.0, "bias.gamma must be >= 0");
    if (j.contains("segments")) {
      const json& segs = j.at("segments");
      require(segs.is_array(), "bias.segments: expected an array");
      spec.segments.clear();
      for (const auto& s : segs) {
        check_object(s, "bias.segments[]");
        check_keys(s, {"duration", "bias_energy"}, "bias.segments[]");
        require(s.contains("duration") && s.contains("bias_energy"),
                "bias.segments[]: duration and bias_energy are required");
        const double d = number(s, "duration", 0.0, "bias.segments[]");
        require(d > 0.0, "bias.segments[].duration must be > 0");
        spec.segments.push_back({d, number(s, "bias_energy", 0.0, "bias.segments[]")});
      }
    }
    require(!spec.segments.empty(), "bias.segments must not be empty for a pulse");
  } else {
    throw UsageError("bias.kind must be \"ideal\" or \"pulse\"");
  }
  return spec;
}

RamanSpec read_raman(const json& j, RamanSpec spec) {
  const std::string where = "raman";
  check_object(j, where);
  check_keys(j,
             {"omega_bar", "delta", "axis", "theta_pi", "n", "freq_diff", "envelope",
              "envelope_segments", "steps_per_segment"},
             where);
  spec.omega_bar = number(j, "omega_bar", spec.omega_bar, where);
  spec.delta = number(j, "delta", spec.delta, where);
  const std::string axis = text(j, "axis", axis_text(spec.axis), where);
  if (axis == "X") {
    spec.axis = qdcnot::Axis::X;
  } else if (axis == "Y") {
    spec.axis = qdcnot::Axis::Y;
  } else {
    throw UsageError("raman.axis must be \"X\" or \"Y\"");
  }
  spec.theta_pi = number(j, "theta_pi", spec.theta_pi, where);
  spec.n = integer(j, "n", spec.n, where);
  spec.freq_diff = number(j, "freq_diff", spec.freq_diff, where);
  const std::string env =
      text(j, "envelope", spec.envelope == qdcnot::EnvelopeShape::sine ? "sine" : "square", where);
  if (env == "sine") {
    spec.envelope = qdcnot::EnvelopeShape::sine;
  } else if (env == "square") {
    spec.envelope = qdcnot::EnvelopeShape::square;
  } else {
    throw UsageError("raman.envelope must be \"sine\" or \"square\"");
  }
  spec.envelope_segments = integer(j, "envelope_segments", spec.envelope_segments, where);
  spec.steps_per_segment = integer(j, "steps_per_segment", spec.steps_per_segment, where);

  require(spec.omega_bar > 0.0, "raman.omega_bar must be > 0");
  require(spec.delta > 0.0, "raman.delta must be > 0");
  require(spec.theta_pi > 0.0, "raman.theta_pi must be > 0");
  require(spec.envelope_segments >= 1, "raman.envelope_segments must be >= 1");
  require(spec.steps_per_segment >= 1, "raman.steps_per_segment must be >= 1");
  return spec;
}

qdcnot::TimingBudget read_timing(const json& j, qdcnot::TimingBudget t) {
  const std::string where = "timing";
  check_object(j, where);
  check_keys(j, {"t2_spin_ps", "t_tunnel_ps", "t_pulse_ps", "t_bias_ps", "threshold"}, where);
  t.t2_spin = number(j, "t2_spin_ps", t.t2_spin, where);
  t.t_tunnel = number(j, "t_tunnel_ps", t.t_tunnel, where);
  t.t_pulse = number(j, "t_pulse_ps", t.t_pulse, where);
  t.t_bias = number(j, "t_bias_ps", t.t_bias, where);
  t.threshold = number(j, "threshold", t.threshold, where);
  try {
    t.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("timing: ") + e.what());
  }
  return t;
}

Tolerances read_tolerance(const json& j, Tolerances t) {
  check_object(j, "tolerance");
  check_keys(j, {"closed_form", "integrated"}, "tolerance");
  t.closed_form = number(j, "closed_form", t.closed_form, "tolerance");
  t.integrated = number(j, "integrated", t.integrated, "tolerance");
  require(t.closed_form > 0.0 && t.integrated > 0.0, "tolerances must be > 0");
  return t;
}

double parse_finite(std::string_view token, const std::string& what) {
  const std::string s(token);
  const bool decimal = !s.empty() && s.find_first_not_of("0123456789+-.eE") == std::string::npos;
  if (!decimal) throw UsageError("malformed " + what + ": \"" + s + "\"");
  char* end = nullptr;
  errno = 0;
  const double x = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || errno == ERANGE || !std::isfinite(x)) {
    throw UsageError("malformed " + what + ": \"" + s + "\"");
  }
  return x;
}

}  // namespace

qdcnot::BiasChoice BiasSpec::choice() const {
  if (kind == Kind::ideal) return area_pi * kPi;
  return qdcnot::BiasPulse(segments, gamma);
}

double BiasSpec::area() const {
  if (kind == Kind::ideal) return area_pi * kPi;
  return qdcnot::BiasPulse(segments, gamma).area();
}

std::string to_string(Format format) { return format == Format::json ? "json" : "csv"; }

Format parse_format(std::string_view t) {
  if (t == "json") return Format::json;
  if (t == "csv") return Format::csv;
  throw UsageError("format must be \"json\" or \"csv\"");
}

qdcnot::RecombineMode parse_recombine(std::string_view t) {
  if (t == "ideal") return qdcnot::RecombineMode::ideal;
  if (t == "unitary") return qdcnot::RecombineMode::unitary;
  throw UsageError("recombine mode must be \"ideal\" or \"unitary\"");
}

Json to_json(const RunConfig& c) {
  Json j;
  j["recombine_mode"] = qdcnot::to_string(c.recombine_mode);

  Json bias;
  if (c.bias.kind == BiasSpec::Kind::ideal) {
    bias["kind"] = "ideal";
    bias["area_pi"] = c.bias.area_pi;
  } else {
    bias["kind"] = "pulse";
    bias["gamma"] = c.bias.gamma;
    Json segs = Json::array();
    for (const auto& s : c.bias.segments) {
      Json seg;
      seg["duration"] = s.duration;
      seg["bias_energy"] = s.bias_energy;
      segs.push_back(std::move(seg));
    }
    bias["segments"] = std::move(segs);
  }
  j["bias"] = std::move(bias);

  Json raman;
  raman["omega_bar"] = c.raman.omega_bar;
  raman["delta"] = c.raman.delta;
  raman["axis"] = axis_text(c.raman.axis);
  raman["theta_pi"] = c.raman.theta_pi;
  raman["n"] = c.raman.n;
  raman["freq_diff"] = c.raman.freq_diff;
  raman["envelope"] = c.raman.envelope == qdcnot::EnvelopeShape::sine ? "sine" : "square";
  raman["envelope_segments"] = c.raman.envelope_segments;
  raman["steps_per_segment"] = c.raman.steps_per_segment;
  j["raman"] = std::move(raman);

  Json timing;
  timing["t2_spin_ps"] = c.timing.t2_spin;
  timing["t_tunnel_ps"] = c.timing.t_tunnel;
  timing["t_pulse_ps"] = c.timing.t_pulse;
  timing["t_bias_ps"] = c.timing.t_bias;
  timing["threshold"] = c.timing.threshold;
  j["timing"] = std::move(timing);

  j["format"] = to_string(c.format);

  Json tol;
  tol["closed_form"] = c.tolerance.closed_form;
  tol["integrated"] = c.tolerance.integrated;
  j["tolerance"] = std::move(tol);
  return j;
}

RunConfig config_from_json(const nlohmann::json& j) {
  check_object(j, "config");
  check_keys(j, {"recombine_mode", "bias", "raman", "timing", "format", "tolerance"}, "config");
  RunConfig c;
  c.recombine_mode = parse_recombine(text(j, "recombine_mode", "ideal", "config"));
  if (j.contains("bias")) c.bias = read_bias(j.at("bias"), c.bias);
  if (j.contains("raman")) c.raman = read_raman(j.at("raman"), c.raman);
  if (j.contains("timing")) c.timing = read_timing(j.at("timing"), c.timing);
  c.format = parse_format(text(j, "format", "json", "config"));
  if (j.contains("tolerance")) c.tolerance = read_tolerance(j.at("tolerance"), c.tolerance);
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(buffer.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError("config " + path + " is not valid JSON: " + e.what());
  }
  return config_from_json(j);
}

std::optional<std::string> resolve_config_path(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  const char* env = std::getenv("QDSIM_CONFIG");
  if (env != nullptr && *env != '\0') return std::string(env);
  return std::nullopt;
}

qdcnot::Rotation parse_rotation(std::string_view t) {
  if (t.size() < 3 || t[1] != ':') throw UsageError("malformed rotation \"" + std::string(t) + "\"");
  qdcnot::Rotation r;
  switch (t[0]) {
    case 'X':
      r.axis = qdcnot::Axis::X;
      break;
    case 'Y':
      r.axis = qdcnot::Axis::Y;
      break;
    case 'Z':
      r.axis = qdcnot::Axis::Z;
      break;
    default:
      throw UsageError("malformed rotation \"" + std::string(t) + "\": axis must be X, Y or Z");
  }
  r.angle = parse_finite(t.substr(2), "rotation angle") * kPi;
  return r;
}

Decomposition parse_decomposition(std::string_view t) {
  std::vector<std::string> tokens;
  std::string current;
  for (const char ch : t) {
    if (std::isspace(static_cast<unsigned char>(ch)) || ch == '=') {
      if (!current.empty()) tokens.push_back(std::move(current));
      current.clear();
      if (ch == '=') tokens.emplace_back("=");
    } else {
      current.push_back(ch);
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));

  if (tokens.size() < 3 || tokens[1] != "=") {
    throw UsageError("decomposition must look like \"Z:3 = X:3 Y:1\"");
  }
  Decomposition d;
  d.lhs_text = tokens[0];
  d.lhs = parse_rotation(tokens[0]);
  for (std::size_t k = 2; k < tokens.size(); ++k) {
    if (tokens[k] == "=") throw UsageError("decomposition has more than one '='");
    d.rhs_text.push_back(tokens[k]);
    d.rhs.push_back(parse_rotation(tokens[k]));
  }
  return d;
}

std::vector<double> parse_number_list(std::string_view t) {
  std::vector<double> values;
  std::size_t start = 0;
  while (start <= t.size()) {
    const std::size_t comma = t.find(',', start);
    const std::size_t stop = comma == std::string_view::npos ? t.size() : comma;
    values.push_back(parse_finite(t.substr(start, stop - start), "number"));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return values;
}

}  // namespace qdsim
