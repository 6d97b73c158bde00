#include "doctest.h"

TEST_CASE("placeholder test_interp") { CHECK(true); }
