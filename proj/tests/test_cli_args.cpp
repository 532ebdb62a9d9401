#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "arg_lists.hpp"

using namespace curvlab;
using namespace curvlab::cli;

TEST_CASE("repeat lists") {
    CHECK(parse_repeat_list("1.2x6") == std::vector<double>(6, 1.2));
    CHECK(parse_repeat_list("1,2,3") == std::vector<double>{1, 2, 3});
    CHECK(parse_repeat_list("1x2,3") == std::vector<double>{1, 1, 3});
    CHECK_THROWS_AS(parse_repeat_list(""), InvalidInput);
    CHECK_THROWS_AS(parse_repeat_list("1.2x"), InvalidInput);
    CHECK_THROWS_AS(parse_repeat_list("1.2x0"), InvalidInput);
    CHECK_THROWS_AS(parse_repeat_list("abc"), InvalidInput);
    CHECK_THROWS_AS(parse_repeat_list("1,,2"), InvalidInput);
}

TEST_CASE("range lists") {
    CHECK(parse_range_list("10:30:5") == std::vector<double>{10, 15, 20, 25, 30});
    CHECK(parse_range_list("10,20") == std::vector<double>{10, 20});
    CHECK(parse_range_list("1:1:1") == std::vector<double>{1});
    CHECK_THROWS_AS(parse_range_list("10:5:1"), InvalidInput);
    CHECK_THROWS_AS(parse_range_list("1:2"), InvalidInput);
    CHECK_THROWS_AS(parse_range_list("1:2:0"), InvalidInput);
}
