#pragma once

#include <string>
#include <vector>

namespace amalgam {

// A named list of pass/fail findings, used by the structure-verification
// routines.  Failures are findings, not exceptions: callers decide whether a
// failed line is fatal.
struct CheckReport {
  struct Line {
    std::string name;
    bool pass = false;
    std::string detail;
  };

  std::string title;
  std::vector<Line> lines;

  CheckReport() = default;
  explicit CheckReport(std::string t) : title(std::move(t)) {}

  void check(const std::string& name, bool pass, const std::string& detail = "") {
    lines.push_back({name, pass, detail});
  }

  bool all_pass() const {
    for (const auto& l : lines)
      if (!l.pass) return false;
    return true;
  }

  std::string to_string() const {
    std::string out = title + "\n";
    for (const auto& l : lines) {
      out += l.pass ? "  [ok]   " : "  [FAIL] ";
      out += l.name;
      if (!l.detail.empty()) out += "  (" + l.detail + ")";
      out += "\n";
    }
    return out;
  }
};

}  // namespace amalgam
