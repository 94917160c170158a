#pragma once

// Report assembly and serialization. JSON is canonical; CSV is a flat
// projection of the command's main table. Floating-point values are printed
// with 17 significant digits so reruns diff cleanly.

#include <string>
#include <vector>

#include "config.hpp"

namespace qdsim {

inline constexpr const char* kToolName = "qdsim";
inline constexpr const char* kToolVersion = "0.1.0";

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<Json>> rows;
};

struct Report {
  std::string command;
  /// Subcommand arguments after parsing.
  Json arguments = Json::object();
  /// Canonical config echo.
  Json config = Json::object();
  Json result = Json::object();
  Table table;
  bool pass = false;

  [[nodiscard]] int exit_code() const { return pass ? 0 : 1; }
};

[[nodiscard]] Json to_json(const Report& report);

/// "%.17g"; NaN and infinities are written as null by the JSON writer.
[[nodiscard]] std::string format_number(double x);

/// Pretty JSON with two-space indentation; arrays of scalars stay on one line.
[[nodiscard]] std::string write_json(const Json& j);

[[nodiscard]] std::string write_csv(const Table& table);

[[nodiscard]] std::string render(const Report& report, Format format);

}  // namespace qdsim
