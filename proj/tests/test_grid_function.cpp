#include <catch2/catch_amalgamated.hpp>

#include <sstream>
#include <fracvar/grid_function.hpp>

using namespace fracvar;

TEST_CASE("construction validates the domain") {
    REQUIRE_THROWS_AS(GridFunction(1.0, 0.0, 16), std::invalid_argument);
    REQUIRE_THROWS_AS(GridFunction(0.0, 1.0, 1), std::invalid_argument);
    GridFunction g(0.0, 2.0, 4);
    REQUIRE(g.n() == 4);
    REQUIRE(g.step() == Catch::Approx(0.5));
    REQUIRE(g.t(3) == Catch::Approx(1.5));
}

TEST_CASE("csv round trip is byte identical") {
    auto g = GridFunction::sample(0.0, 1.0, 17, [](double t) { return std::sin(7.0 * t) / 3.0; });
    std::ostringstream first;
    write_csv(g, first);
    std::istringstream back(first.str());
    GridFunction g2 = read_csv(back);
    std::ostringstream second;
    write_csv(g2, second);
    REQUIRE(first.str() == second.str());
}

TEST_CASE("csv reader rejects non-uniform spacing") {
    std::string text = "t,u\n0,1\n0.1,1\n0.21,1\n0.3,1\n";
    std::istringstream is(text);
    REQUIRE_THROWS_AS(read_csv(is), std::invalid_argument);
}

TEST_CASE("csv reader rejects malformed input") {
    std::istringstream empty("");
    REQUIRE_THROWS_AS(read_csv(empty), std::invalid_argument);
    std::istringstream norow("t,u\n0,1\n");
    REQUIRE_THROWS_AS(read_csv(norow), std::invalid_argument);
    std::istringstream nocomma("t,u\n0 1\n0.5 1\n1 1\n");
    REQUIRE_THROWS_AS(read_csv(nocomma), std::invalid_argument);
}

TEST_CASE("masking and interior sup") {
    GridFunction g(0.0, 1.0, 100);
    g.values[0] = 100.0;
    g.values[100] = -100.0;
    g.values[50] = 2.0;
    auto [lo, hi] = g.unmasked_range(0.05);
    REQUIRE(lo == 5);
    REQUIRE(hi == 95);
    REQUIRE(g.interior_sup(0.05) == Catch::Approx(2.0));
}

TEST_CASE("reversal swaps tags and mirrors values") {
    auto g = GridFunction::sample(0.0, 1.0, 8, [](double t) { return t * t; });
    g.singular_a = 0.5;
    auto r = reversed(g);
    REQUIRE(r.values.front() == g.values.back());
    REQUIRE(r.singular_b.has_value());
    REQUIRE_FALSE(r.singular_a.has_value());
    auto rr = reversed(r);
    REQUIRE(rr.values == g.values);
}
