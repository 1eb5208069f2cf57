#include <doctest.h>

#include <cmath>

#include "superopt/random.hpp"
#include "superopt/thematic.hpp"

using namespace superopt;

namespace {

ThematicData diag_data() {
    ThematicData d;
    d.t0 = 2.0;
    d.t1 = 1.0;
    d.u0 = RatFun::factored(1.0, {}, {{0.0, 1}});
    d.u1 = d.u0;
    d.v = {RatFun::constant(1.0), RatFun::zero()};
    d.w = d.v;
    return d;
}

// Smallest instance of the two-sided Blaschke construction: B1 = z^2, B2 = 1,
// a = 2, B0 vanishing at the root 1/sqrt(2) of 1 - t a^2 z^2 with t = 1/2.
ThematicData sharp_k2() {
    const double a = 2.0, c = std::sqrt(1.0 + a * a);
    const RatFun b0 = blaschke({1.0 / std::sqrt(2.0)});
    const RatFun b1 = blaschke({0.0, 0.0});
    ThematicData d;
    d.t0 = c * c;
    d.t1 = 0.5 * c * c;
    d.u0 = b0 / b1;
    d.u1 = RatFun::constant(1.0) / b0;
    d.v = {Complex(1.0 / c) * b0, RatFun::constant(a / c)};
    d.w = {Complex(1.0 / c) * b0, RatFun::constant(-a / c)};
    return d;
}

}  // namespace

TEST_CASE("diagonal data assembles to diag(t0/z, t/z)") {
    const auto d = diag_data();
    const RatMat psi = assemble(d, 1.0);
    for (auto z : {Complex(0.3, 0.4), Complex(-2.0, 1.0)}) {
        const MatrixXc m = psi.at(z);
        CHECK(std::abs(m(0, 0) - 2.0 / z) < 1e-14);
        CHECK(std::abs(m(1, 1) - 1.0 / z) < 1e-14);
        CHECK(std::abs(m(0, 1)) < 1e-14);
        CHECK(std::abs(m(1, 0)) < 1e-14);
    }
    const auto rep = verify_identities(d, 1.0);
    CHECK(rep.pass);
    CHECK(rep.worst < 1e-14);
}

TEST_CASE("diagonal data satisfies every bound") {
    const auto v = check_bounds(diag_data());
    CHECK(v.pass());
    CHECK(v.disturbing.events.empty());
    CHECK(v.disturbing.generic_minus == 2);
    CHECK(v.disturbing.generic_plus == 0);
    CHECK_NOTHROW(v.require_pass());
}

TEST_CASE("identity suite on random data") {
    Rng rng(11);
    for (int n = 0; n < 8; ++n) {
        const auto d = random_thematic(rng, 6);
        CHECK_NOTHROW(validate(d));
        for (double s : {0.3, 1.0}) {
            const auto rep = verify_identities(d, s * d.t0);
            INFO("instance " << n << " s " << s << " worst " << rep.worst);
            CHECK(rep.pass);
        }
    }
}

TEST_CASE("corrupted column fails validation and the identity suite") {
    Rng rng5(5);
    auto d = random_thematic(rng5, 4);
    d.v = {Complex(1.1) * d.v[0], Complex(1.1) * d.v[1]};
    CHECK_THROWS_AS(validate(d), Error);
    const auto rep = verify_identities(d, d.t1);
    CHECK_FALSE(rep.pass);
    CHECK(rep.worst >= 1e-3);
}

TEST_CASE("validation rejects bad factors") {
    auto d = diag_data();
    d.u1 = RatFun::factored(1.0, {{0.0, 1}}, {});  // z: analytic, not badly approximable
    CHECK_THROWS_AS(validate(d), Error);
    d = diag_data();
    d.v = {RatFun::factored(1.0, {{0.5, 1}}, {}), RatFun::factored(1.0, {{0.5, 1}}, {})};
    CHECK_THROWS_AS(validate(d), Error);
    d = diag_data();
    d.t1 = 3.0;
    CHECK_THROWS_AS(validate(d), Error);
}

TEST_CASE("random data has no disturbing numbers and margin at least two") {
    Rng rng(23);
    for (int n = 0; n < 5; ++n) {
        const auto d = random_thematic(rng, 6);
        const auto v = check_bounds(d, 30);
        INFO("instance " << n);
        CHECK(v.pass());
        CHECK(v.disturbing.disk_events() == 0);
        CHECK(v.violations == 0);
        for (const auto& row : v.scan) CHECK(row.margin() >= 2);
    }
}

TEST_CASE("two-sided construction with k = 2 has one disturbing number") {
    const auto d = sharp_k2();
    CHECK_NOTHROW(validate(d));
    CHECK(verify_identities(d, d.t1).pass);
    const auto rep = disturbing_numbers(d);
    REQUIRE(rep.disk_events() == 1);
    CHECK(rep.events[0].t_star == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(std::abs(rep.events[0].lambda - 1.0 / std::sqrt(2.0)) < 1e-8);
    CHECK(rep.events[0].drop == 1);
    CHECK(rep.generic_minus == 3);
    CHECK(rep.generic_plus == 1);

    const auto rows = degree_profile(d, {d.t1, 0.25 * d.t0, d.t0});
    CHECK(rows[0].deg_minus == 2);
    CHECK(rows[0].deg_plus == 1);
    CHECK(rows[1].margin() == 2);
    CHECK(rows[2].margin() >= 2);

    const auto v = check_bounds(d);
    CHECK(v.pass());
    CHECK(v.violations == 1);
    CHECK(v.deficit_sum == v.deg_minus_u1);
}
