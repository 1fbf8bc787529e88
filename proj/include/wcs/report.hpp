#pragma once

#include <chrono>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace wcs {

// Round a double to 15 significant digits so every number in the emitted
// JSON honours the output precision contract.
inline double sig15(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.15g", v);
  return std::strtod(buf, nullptr);
}

struct Check {
  std::string name;
  double expected = 0.0;
  double actual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct RunReport {
  std::string command;
  std::map<std::string, nlohmann::json> inputs;
  std::map<std::string, double> outputs;
  std::vector<Check> checks;
  long long elapsed_ms = 0;

  void check(const std::string& name, double expected, double actual,
             double tolerance) {
    checks.push_back({name, expected, actual, tolerance,
                      std::abs(actual - expected) <= tolerance});
  }

  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["command"] = command;
    j["inputs"] = nlohmann::json::object();
    for (const auto& [k, v] : inputs) j["inputs"][k] = v;
    j["outputs"] = nlohmann::json::object();
    for (const auto& [k, v] : outputs) j["outputs"][k] = sig15(v);
    j["checks"] = nlohmann::json::array();
    for (const auto& c : checks)
      j["checks"].push_back({{"name", c.name},
                             {"expected", sig15(c.expected)},
                             {"actual", sig15(c.actual)},
                             {"tolerance", sig15(c.tolerance)},
                             {"pass", c.pass}});
    j["elapsed_ms"] = elapsed_ms;
    return j;
  }
};

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  long long elapsed_ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace wcs
