#include "doctest.h"

TEST_CASE("placeholder test_cli_formats") { CHECK(true); }
