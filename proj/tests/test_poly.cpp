#include <doctest.h>

#include <random>

#include "superopt/poly.hpp"

using namespace superopt;

TEST_CASE("roots of a product are recovered") {
    std::vector<Root> roots = {{{0.3, 0.1}, 1}, {{-0.7, 0.0}, 1}, {{1.5, -2.0}, 1}, {{0.0, 0.9}, 1}};
    auto found = poly_roots(poly_from_roots(roots));
    REQUIRE(total_multiplicity(found) == 4);
    for (const auto& r : roots) {
        bool hit = false;
        for (const auto& f : found) hit = hit || std::abs(f.loc - r.loc) < 1e-12;
        CHECK(hit);
    }
}

TEST_CASE("multiple roots cluster") {
    auto found = poly_roots(poly_from_roots({{0.5, 3}, {{-0.2, 0.4}, 1}}));
    REQUIRE(found.size() == 2);
    int m = 0;
    for (const auto& f : found) {
        if (std::abs(f.loc - Complex(0.5)) < 1e-8) m = f.mult;
    }
    CHECK(m == 3);
}

TEST_CASE("roots at the origin") {
    Poly p = poly_from_roots({{0.0, 2}, {2.0, 1}});
    auto found = poly_roots(p);
    REQUIRE(found.size() == 2);
    CHECK(found[0].loc == Complex(0.0));
    CHECK(found[0].mult == 2);
}

TEST_CASE("deflation removes known roots only when present") {
    Poly p = poly_from_roots({{0.5, 2}, {-0.25, 1}});
    auto removed = deflate_known_roots(p, {{0.5, 3}, {0.1, 1}});
    REQUIRE(removed.size() == 1);
    CHECK(removed[0].mult == 2);
    CHECK(poly_degree(p) == 1);
    CHECK(std::abs(-p(0) / p(1) - Complex(-0.25)) < 1e-14);
}

TEST_CASE("random degree-10 polynomials: companion roots vs product oracle") {
    std::mt19937 gen(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Root> roots;
        for (int j = 0; j < 10; ++j) roots.push_back({{1.5 * u(gen), 1.5 * u(gen)}, 1});
        Poly p = poly_from_roots(roots);
        auto found = poly_roots(p);
        CHECK(total_multiplicity(found) == 10);
        for (const auto& f : found) CHECK(poly_relative_residual(p, f.loc) < 1e-10);
    }
}
