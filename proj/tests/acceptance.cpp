#include <algorithm>
#include <iostream>

#include "casimir/selfcheck.hpp"

int main() {
  const auto outcomes = casimir::selfcheck::run_all([](const casimir::selfcheck::Outcome& o) {
    std::cout << casimir::selfcheck::format(o) << std::endl;
  });
  const auto passed = std::count_if(outcomes.begin(), outcomes.end(), [](const auto& o) { return o.passed; });
  std::cout << passed << "/" << outcomes.size() << " criteria passed" << std::endl;
  return passed == static_cast<long>(outcomes.size()) ? 0 : 1;
}
