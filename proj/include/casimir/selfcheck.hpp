#pragma once

#include <functional>
#include <string>
#include <vector>

namespace casimir::selfcheck {

/// Result of one built-in check.
struct Outcome {
  std::string id;      // "AC1" ... "AC9"
  std::string title;
  bool passed = false;
  std::string detail;  // measured values against targets
  double seconds = 0.0;
};

/// One line: "PASS AC1 <title>: <detail> (<seconds> s)".
std::string format(const Outcome& o);

/// Runs every check in order, reporting each outcome as soon as it is known.
std::vector<Outcome> run_all(const std::function<void(const Outcome&)>& report = {});

}  // namespace casimir::selfcheck
