#include "doctest.h"

TEST_CASE("placeholder test_polycheck") { CHECK(true); }
