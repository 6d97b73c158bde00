#include "doctest.h"

TEST_CASE("placeholder test_relcore") { CHECK(true); }
