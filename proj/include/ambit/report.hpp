#pragma once

#include <algorithm>
#include <ostream>
#include <string>
#include <vector>

namespace ambit {

struct CheckOutcome {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct Report {
  std::vector<CheckOutcome> checks;

  void add(std::string name, bool passed, std::string detail = {}) {
    checks.push_back({std::move(name), passed, std::move(detail)});
  }
  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
  }
  const CheckOutcome* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
};

/// One `CHECK <name> PASS|FAIL <detail>` line per outcome.
inline void print(std::ostream& out, const Report& report) {
  for (const auto& c : report.checks) {
    out << "CHECK " << c.name << (c.passed ? " PASS" : " FAIL");
    if (!c.detail.empty()) out << ' ' << c.detail;
    out << '\n';
  }
}

}  // namespace ambit
