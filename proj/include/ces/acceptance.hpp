#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ces/quasi_exact.hpp"

namespace ces::acceptance {

enum class Scope { Tables, Oracle, All };
Scope parse_scope(const std::string& text);

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct Options {
  // Source of quasi-exact states; replaced only for fault injection.
  std::function<quasi_exact::CesState(int, int, double)> make_state = quasi_exact::make_state;
  std::optional<int> only;  // run a single criterion
};

// Criteria 1-4, 6, 7 and 10 are table checks; 5, 8 and 9 run the oracle.
bool in_scope(int id, Scope scope);

std::vector<CriterionResult> run(Scope scope, const Options& options = {});

// One "[PASS]/[FAIL]" line per criterion plus a summary line.
void print(std::ostream& os, const std::vector<CriterionResult>& results);

}  // namespace ces::acceptance
