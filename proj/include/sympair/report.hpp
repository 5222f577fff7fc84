#pragma once

#include <chrono>
#include <string>
#include <vector>

#include "json.hpp"
#include "sympair/version.hpp"

namespace sympair {

struct CheckResult {
  std::string name;
  bool pass = false;
  double value = 0.0;      // the measured quantity
  double limit = 0.0;      // the configured tolerance it is held against
  std::string detail;      // free-form context (counts, sub-values)
  double seconds = 0.0;
};

struct SuiteResult {
  std::string suite;
  std::vector<CheckResult> checks;
  bool pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

inline nlohmann::ordered_json report_json(const std::vector<SuiteResult>& suites,
                                          std::uint64_t seed,
                                          const nlohmann::ordered_json& inputs) {
  nlohmann::ordered_json out;
  out["version"] = kVersion;
  out["seed"] = seed;
  out["inputs"] = inputs;
  out["timestamp"] = static_cast<std::int64_t>(
      std::chrono::duration_cast<std::chrono::seconds>(
          std::chrono::system_clock::now().time_since_epoch())
          .count());
  // wall-clock values are collected into the single volatile "timings"
  // field so that fixed-seed reports are byte-identical apart from it and
  // the timestamp
  bool all = true;
  std::string timings;
  nlohmann::ordered_json js = nlohmann::ordered_json::array();
  for (const auto& s : suites) {
    nlohmann::ordered_json jsuite;
    jsuite["suite"] = s.suite;
    jsuite["pass"] = s.pass();
    all = all && s.pass();
    nlohmann::ordered_json jchecks = nlohmann::ordered_json::array();
    for (const auto& c : s.checks) {
      nlohmann::ordered_json jc;
      jc["name"] = c.name;
      jc["pass"] = c.pass;
      if (c.name == "runtime") {
        timings += s.suite + "=" + std::to_string(c.value) + "s;";
      } else {
        jc["value"] = c.value;
      }
      jc["tolerance"] = c.limit;
      if (!c.detail.empty()) jc["detail"] = c.detail;
      jchecks.push_back(std::move(jc));
    }
    jsuite["checks"] = std::move(jchecks);
    js.push_back(std::move(jsuite));
  }
  out["timings"] = timings;
  out["suites"] = std::move(js);
  out["pass"] = all;
  return out;
}

}  // namespace sympair
