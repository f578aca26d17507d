#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "fbcalc/errors.hpp"
#include "fbcalc/geometry.hpp"

namespace fbcalc {

enum class Verdict { Pass, Fail, Info, Error };

inline const char* toString(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Info: return "info";
    case Verdict::Error: return "error";
  }
  return "error";
}

inline Verdict verdictFromString(const std::string& s) {
  if (s == "pass") return Verdict::Pass;
  if (s == "fail") return Verdict::Fail;
  if (s == "info") return Verdict::Info;
  if (s == "error") return Verdict::Error;
  fail(ErrorKind::InvalidArgument, "unknown verdict '" + s + "'");
}

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Check {
  std::string scenario;
  std::string name;
  double value = kNaN;
  double benchmark = kNaN;
  double margin = kNaN;
  double tolerance = kNaN;
  Verdict verdict = Verdict::Info;
  std::string note;

};

struct VerificationReport {
  std::string scenario;
  std::map<std::string, std::string> inputs;
  std::map<std::string, double> values;
  std::vector<Check> checks;
  std::vector<std::string> limitations;
  std::optional<double> runtime_seconds;  // left out unless asked for, so output stays reproducible

  void setValue(const std::string& key, double v) { values[key] = v; }
  void setValue(const std::string& key, cplx v) {
    values[key + ".re"] = v.real();
    values[key + ".im"] = v.imag();
  }

  Check& addCheck(std::string name, double value, double benchmark, double margin, double tolerance, Verdict verdict,
                  std::string note = {}) {
    checks.push_back({scenario, std::move(name), value, benchmark, margin, tolerance, verdict, std::move(note)});
    return checks.back();
  }

  // Pass iff value <= bound + tol; margin = bound + tol - value.
  Check& addUpperBound(std::string name, double value, double bound, double tol, std::string note = {}) {
    const bool ok = value <= bound + tol;
    return addCheck(std::move(name), value, bound, bound + tol - value, tol, ok ? Verdict::Pass : Verdict::Fail,
                    std::move(note));
  }

  // Pass iff |value - target| <= tol; margin = tol - |value - target|.
  Check& addNear(std::string name, double value, double target, double tol, std::string note = {}) {
    const double gap = std::abs(value - target);
    return addCheck(std::move(name), value, target, tol - gap, tol, gap <= tol ? Verdict::Pass : Verdict::Fail,
                    std::move(note));
  }

  Check& addError(std::string name, const std::string& what) {
    return addCheck(std::move(name), kNaN, kNaN, kNaN, kNaN, Verdict::Error, what);
  }

  bool anyFailed() const {
    for (const auto& c : checks)
      if (c.verdict == Verdict::Fail) return true;
    return false;
  }
  bool anyError() const {
    for (const auto& c : checks)
      if (c.verdict == Verdict::Error) return true;
    return false;
  }

  void append(const VerificationReport& other) {
    for (const auto& [k, v] : other.inputs) inputs[other.scenario + "." + k] = v;
    for (const auto& [k, v] : other.values) values[other.scenario + "." + k] = v;
    checks.insert(checks.end(), other.checks.begin(), other.checks.end());
    for (const auto& l : other.limitations) limitations.push_back(other.scenario + ": " + l);
  }

};

// ---- JSON -----------------------------------------------------------------------------

// JSON has no NaN or infinity: NaN becomes null, infinities become strings.
inline nlohmann::json numberToJson(double v) {
  if (std::isnan(v)) return nullptr;
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

inline double numberFromJson(const nlohmann::json& j) {
  if (j.is_null()) return kNaN;
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    fail(ErrorKind::InvalidArgument, "expected a number, got '" + s + "'");
  }
  if (!j.is_number()) fail(ErrorKind::InvalidArgument, "expected a number");
  return j.get<double>();
}

inline nlohmann::json toJson(const VerificationReport& r) {
  nlohmann::json j;
  j["scenario"] = r.scenario;
  j["inputs"] = r.inputs;
  nlohmann::json values = nlohmann::json::object();
  for (const auto& [k, v] : r.values) values[k] = numberToJson(v);
  j["values"] = values;
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : r.checks) {
    checks.push_back({{"scenario", c.scenario},
                      {"check", c.name},
                      {"value", numberToJson(c.value)},
                      {"benchmark", numberToJson(c.benchmark)},
                      {"margin", numberToJson(c.margin)},
                      {"tolerance", numberToJson(c.tolerance)},
                      {"verdict", toString(c.verdict)},
                      {"note", c.note}});
  }
  j["checks"] = checks;
  j["limitations"] = r.limitations;
  if (r.runtime_seconds) j["runtime_seconds"] = *r.runtime_seconds;
  return j;
}

inline VerificationReport reportFromJson(const nlohmann::json& j) {
  try {
    VerificationReport r;
    r.scenario = j.at("scenario").get<std::string>();
    r.inputs = j.at("inputs").get<std::map<std::string, std::string>>();
    for (const auto& [k, v] : j.at("values").items()) r.values[k] = numberFromJson(v);
    for (const auto& c : j.at("checks")) {
      r.checks.push_back({c.at("scenario").get<std::string>(), c.at("check").get<std::string>(),
                          numberFromJson(c.at("value")), numberFromJson(c.at("benchmark")),
                          numberFromJson(c.at("margin")), numberFromJson(c.at("tolerance")),
                          verdictFromString(c.at("verdict").get<std::string>()), c.at("note").get<std::string>()});
    }
    r.limitations = j.at("limitations").get<std::vector<std::string>>();
    if (j.contains("runtime_seconds")) r.runtime_seconds = j.at("runtime_seconds").get<double>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::InvalidArgument, std::string("malformed report JSON: ") + e.what());
  }
}

// ---- CSV ------------------------------------------------------------------------------

inline std::string formatNumber(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string csvField(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

inline std::string toCsv(const VerificationReport& r) {
  std::ostringstream os;
  os << "scenario,check,value,benchmark,margin,tolerance,verdict,note\n";
  for (const auto& c : r.checks) {
    os << csvField(c.scenario) << ',' << csvField(c.name) << ',' << formatNumber(c.value) << ','
       << formatNumber(c.benchmark) << ',' << formatNumber(c.margin) << ',' << formatNumber(c.tolerance) << ','
       << toString(c.verdict) << ',' << csvField(c.note) << '\n';
  }
  return os.str();
}

enum class ReportFormat { Json, Csv };

inline std::string renderReport(const VerificationReport& r, ReportFormat format) {
  return format == ReportFormat::Json ? toJson(r).dump(2) + "\n" : toCsv(r);
}

inline void emitReport(const VerificationReport& r, ReportFormat format, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::IoError, "cannot open '" + path + "' for writing");
  out << renderReport(r, format);
  out.flush();
  if (!out) fail(ErrorKind::IoError, "write to '" + path + "' failed");
}

inline VerificationReport loadReport(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::IoError, "cannot open '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::InvalidArgument, std::string("malformed report JSON: ") + e.what());
  }
  return reportFromJson(j);
}

}  // namespace fbcalc
