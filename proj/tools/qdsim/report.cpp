#include "report.hpp"

#include <cmath>
#include <cstdio>

namespace qdsim {

namespace {

bool is_scalar(const Json& j) { return !j.is_object() && !j.is_array(); }

void write_scalar(const Json& j, std::string& out) {
  switch (j.type()) {
    case Json::value_t::number_float: {
      const double x = j.get<double>();
      out += std::isfinite(x) ? format_number(x) : "null";
      break;
    }
    default:
      out += j.dump();
  }
}

void write_value(const Json& j, int depth, std::string& out) {
  const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
  const std::string close_pad(static_cast<std::size_t>(2 * depth), ' ');
  if (j.is_object()) {
    if (j.empty()) {
      out += "{}";
      return;
    }
    out += "{\n";
    bool first = true;
    for (const auto& [key, value] : j.items()) {
      if (!first) out += ",\n";
      first = false;
      out += pad + Json(key).dump() + ": ";
      write_value(value, depth + 1, out);
    }
    out += "\n" + close_pad + "}";
  } else if (j.is_array()) {
    if (j.empty()) {
      out += "[]";
      return;
    }
    bool flat = true;
    for (const auto& v : j) flat = flat && is_scalar(v);
    if (flat) {
      out += "[";
      for (std::size_t k = 0; k < j.size(); ++k) {
        if (k > 0) out += ", ";
        write_scalar(j[k], out);
      }
      out += "]";
      return;
    }
    out += "[\n";
    for (std::size_t k = 0; k < j.size(); ++k) {
      if (k > 0) out += ",\n";
      out += pad;
      write_value(j[k], depth + 1, out);
    }
    out += "\n" + close_pad + "]";
  } else {
    write_scalar(j, out);
  }
}

std::string csv_cell(const Json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (const char c : s) {
      if (c == '"') quoted += '"';
      quoted += c;
    }
    return quoted + "\"";
  }
  if (j.is_null()) return "";
  if (j.is_number_float()) {
    const double x = j.get<double>();
    return std::isfinite(x) ? format_number(x) : "nan";
  }
  return j.dump();
}

}  // namespace

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Json to_json(const Report& r) {
  Json j;
  j["tool"] = kToolName;
  j["version"] = kToolVersion;
  j["command"] = r.command;
  j["arguments"] = r.arguments;
  j["config"] = r.config;
  j["result"] = r.result;
  j["pass"] = r.pass;
  j["exit_code"] = r.exit_code();
  return j;
}

std::string write_json(const Json& j) {
  std::string out;
  write_value(j, 0, out);
  out += "\n";
  return out;
}

std::string write_csv(const Table& table) {
  std::string out;
  for (std::size_t k = 0; k < table.header.size(); ++k) {
    if (k > 0) out += ",";
    out += table.header[k];
  }
  out += "\n";
  for (const auto& row : table.rows) {
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (k > 0) out += ",";
      out += csv_cell(row[k]);
    }
    out += "\n";
  }
  return out;
}

std::string render(const Report& report, Format format) {
  return format == Format::json ? write_json(to_json(report)) : write_csv(report.table);
}

}  // namespace qdsim
