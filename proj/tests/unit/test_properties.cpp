#include "doctest.h"

#include "../common/properties.hpp"

TEST_CASE("randomized identities (short run)") {
  for (const auto& o : chabauty::testing::run_property_suite(60, 2024)) {
    CAPTURE(o.name);
    CAPTURE(o.first_failure);
    CHECK(o.cases == 60);
    CHECK(o.failures == 0);
  }
}
