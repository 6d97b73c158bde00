#include "doctest.h"

TEST_CASE("placeholder test_derived") { CHECK(true); }
