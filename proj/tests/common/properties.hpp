#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace chabauty::testing {

struct PropertyOutcome {
  std::string name;
  long cases = 0;
  long failures = 0;
  std::string first_failure;
};

// Randomized identity checks shared by the unit tests and the acceptance run.
std::vector<PropertyOutcome> run_property_suite(long cases, std::uint64_t seed);

}  // namespace chabauty::testing
