#include <doctest.h>

#include <random>

#include "superopt/ratfun.hpp"

using namespace superopt;

namespace {

double sup_diff(const RatFun& f, const RatFun& g, int n = 256) {
    double d = 0.0;
    for (auto z : circle_grid(n)) d = std::max(d, std::abs(f(z) - g(z)));
    return d;
}

RatFun random_ratfun(std::mt19937& gen, int max_deg) {
    std::uniform_int_distribution<int> deg(0, max_deg);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    auto point = [&](bool inside) {
        const double r = inside ? 0.05 + 0.8 * u(gen) : 1.2 + 2.0 * u(gen);
        return std::polar(r, 2.0 * std::numbers::pi * u(gen));
    };
    std::vector<Root> zs, ps;
    const int nz = deg(gen), np = deg(gen);
    for (int j = 0; j < nz; ++j) zs.push_back({point(u(gen) < 0.5), 1});
    for (int j = 0; j < np; ++j) ps.push_back({point(u(gen) < 0.5), 1});
    return RatFun::factored({0.5 + u(gen), u(gen) - 0.5}, zs, ps);
}

}  // namespace

TEST_CASE("construction from coefficients") {
    auto f = RatFun::from_coefficients(poly_from_roots({{0.3, 1}}), poly_constant(1.0));
    CHECK(f.gain() == Complex(1.0));
    REQUIRE(f.zeros().size() == 1);
    CHECK(std::abs(f.zeros()[0].loc - 0.3) < 1e-15);
    CHECK(f.order_at_infinity() == 1);
    CHECK(degree_at(f, kInfinity) == 1);

    Poly z(2);
    z << 0.0, 1.0;
    auto g = RatFun::from_coefficients(poly_constant(1.0), z);
    CHECK(g.order_at_infinity() == -1);
    CHECK(degree_at(g, 0.0) == 1);
    CHECK(g(2.0) == Complex(0.5));

    auto h = RatFun::from_coefficients(poly_from_roots({{0.5, 1}, {2.0, 1}}), poly_from_roots({{0.5, 1}}));
    CHECK(h.poles().empty());
    REQUIRE(h.zeros().size() == 1);
    CHECK(std::abs(h.zeros()[0].loc - 2.0) < 1e-14);

    CHECK_THROWS_AS(RatFun::from_coefficients(poly_constant(0.0), poly_constant(0.0)), Error);
}

TEST_CASE("evaluation") {
    auto b = blaschke({0.5});
    CHECK(std::abs(b(1.0) - Complex(-1.0)) < 1e-15);
    CHECK(RatFun::constant(3.0)(Complex(0.2, 7.0)) == Complex(3.0));
    auto inv = RatFun::factored(1.0, {}, {{0.0, 1}});
    CHECK_THROWS_AS(inv(0.0), Error);
    try {
        inv(0.0);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::PoleEvaluation);
    }
}

TEST_CASE("factored vs expanded evaluation") {
    std::mt19937 gen(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        auto f = random_ratfun(gen, 6);
        const Poly n = f.numerator(), d = f.denominator();
        for (int j = 0; j < 64; ++j) {
            const Complex z = std::polar(1.0, 2.0 * std::numbers::pi * u(gen));
            const Complex e = poly_eval(n, z) / poly_eval(d, z);
            CHECK(std::abs(f(z) - e) <= 1e-10 * std::abs(e));
        }
    }
}

TEST_CASE("combine") {
    auto inv = RatFun::factored(1.0, {}, {{0.0, 1}});
    auto one = inv * RatFun::identity();
    CHECK(one.zeros().empty());
    CHECK(one.poles().empty());
    CHECK(one.gain() == Complex(1.0));

    auto a = RatFun::factored(1.0, {}, {{0.5, 1}});
    auto b = RatFun::factored(1.0, {}, {{2.0, 1}});
    auto s = a + b;
    // (2z - 2.5) / ((z - 0.5)(z - 2))
    REQUIRE(s.zeros().size() == 1);
    CHECK(std::abs(s.zeros()[0].loc - 1.25) < 1e-14);
    CHECK(std::abs(s.gain() - 2.0) < 1e-14);
    CHECK(s.poles().size() == 2);

    auto bl = blaschke({0.5});
    auto p = bl * reflect_sharp(bl);
    CHECK(p.zeros().empty());
    CHECK(p.poles().empty());
    CHECK(std::abs(p.gain() - 1.0) < 1e-14);

    CHECK((a - a).is_zero());
}

TEST_CASE("additive cancellation lowers the degree") {
    // 1/(z-0.5) - 1/(z-0.5) + 1/(z-0.2) has one pole.
    auto a = RatFun::factored(1.0, {}, {{0.5, 1}});
    auto c = RatFun::factored(1.0, {}, {{0.2, 1}});
    auto f = (a + c) - a;
    CHECK(f.poles().size() == 1);
    CHECK(sup_diff(f, c) < 1e-12);
}

TEST_CASE("reflect_sharp") {
    auto z = RatFun::identity();
    auto zs = reflect_sharp(z);
    CHECK(degree_at(zs, 0.0) == 1);
    CHECK(zs.order_at_infinity() == -1);
    CHECK(std::abs(zs(2.0) - 0.5) < 1e-15);

    auto c = reflect_sharp(RatFun::constant({1.0, 2.0}));
    CHECK(c.gain() == Complex(1.0, -2.0));

    auto b = blaschke({0.3, {0.1, -0.4}});
    CHECK(sup_diff(reflect_sharp(b), RatFun::constant(1.0) / b) < 1e-12);

    std::mt19937 gen(3);
    for (int trial = 0; trial < 30; ++trial) {
        auto f = random_ratfun(gen, 5);
        auto fs = reflect_sharp(f);
        for (auto t : circle_grid(64)) CHECK(std::abs(fs(t) - std::conj(f(t))) <= 1e-10 * (1.0 + std::abs(f(t))));
        CHECK(sup_diff(reflect_sharp(fs), f) <= 1e-10 * (1.0 + sup_diff(f, RatFun())));
        CHECK(degree_region(f, Region::sphere()) == degree_region(fs, Region::sphere()));
    }
}

TEST_CASE("riesz_split examples") {
    auto f = RatFun::factored(1.0, {}, {{0.3, 1}});
    auto s = riesz_split(f);
    CHECK(s.plus.is_zero());
    CHECK(sup_diff(s.minus, f) < 1e-14);

    auto g = RatFun::factored(1.0, {}, {{2.0, 1}});
    auto sg = riesz_split(g);
    CHECK(sg.minus.is_zero());

    auto z = RatFun::identity();
    auto h = z + reflect_sharp(z);
    auto sh = riesz_split(h);
    CHECK(sup_diff(sh.minus, reflect_sharp(z)) < 1e-14);
    CHECK(sup_diff(sh.plus, z) < 1e-14);

    CHECK_THROWS_AS(riesz_split(RatFun::factored(1.0, {}, {{{0.0, 1.0}, 1}})), Error);
}

TEST_CASE("riesz_split matches Fourier coefficients") {
    std::mt19937 gen(5);
    const int n = 1024;
    const auto grid = circle_grid(n);
    for (int trial = 0; trial < 100; ++trial) {
        auto f = random_ratfun(gen, 8);
        auto s = riesz_split(f);
        CHECK(sup_diff(s.minus + s.plus, f) <= 1e-9 * (1.0 + sup_diff(f, RatFun())));
        CHECK(s.minus.order_at_infinity() <= -1 + (s.minus.is_zero() ? 1 : 0));
        // Oracle: negative Fourier coefficients of f by DFT equal those of the minus part.
        for (int j = 1; j <= 3; ++j) {
            Complex cf = 0.0, cm = 0.0;
            for (int i = 0; i < n; ++i) {
                const Complex w = std::pow(grid[static_cast<std::size_t>(i)], j);
                cf += f(grid[static_cast<std::size_t>(i)]) * w;
                cm += s.minus(grid[static_cast<std::size_t>(i)]) * w;
            }
            CHECK(std::abs(cf - cm) / n <= 1e-8 * (1.0 + sup_diff(f, RatFun())));
        }
    }
}

TEST_CASE("degrees") {
    auto f = RatFun::factored(1.0, {}, {{0.3, 2}});
    CHECK(degree_at(f, 0.3) == 2);
    auto z2 = RatFun::factored(1.0, {{0.0, 2}}, {});
    CHECK(degree_at(z2, kInfinity) == 2);
    auto b = blaschke({0.1, 0.2, 0.3});
    CHECK(degree_region(b, Region::inside()) == 0);
    CHECK(degree_region(b, Region::outside()) == 3);
}

TEST_CASE("winding number") {
    auto z = RatFun::identity();
    CHECK(winding_number(z) == 1);
    CHECK(winding_number(reflect_sharp(z)) == -1);
    CHECK(winding_number(blaschke({0.1, -0.5, {0.2, 0.6}})) == 3);
    // (1 - 2z)/(z - 2): zero at 0.5 outside? no, 0.5 is inside; pole at 2 outside -> +1.
    auto f = RatFun::from_coefficients(poly_from_roots({{0.5, 1}}) * Complex(-2.0), poly_from_roots({{2.0, 1}}));
    // Argument-increment oracle.
    const auto grid = circle_grid(4096);
    double total = 0.0;
    for (std::size_t k = 0; k < grid.size(); ++k) total += std::arg(f(grid[(k + 1) % grid.size()]) / f(grid[k]));
    CHECK(winding_number(f) == std::lround(total / (2.0 * std::numbers::pi)));
    CHECK_THROWS_AS(winding_number(RatFun::factored(1.0, {{1.0, 1}}, {})), Error);

    std::mt19937 gen(9);
    for (int trial = 0; trial < 20; ++trial) {
        auto a = random_ratfun(gen, 4), c = random_ratfun(gen, 4);
        CHECK(winding_number(a * c) == winding_number(a) + winding_number(c));
    }
}

TEST_CASE("badly approximable") {
    auto zbar = reflect_sharp(RatFun::identity());
    auto c1 = is_badly_approximable(zbar);
    CHECK(c1.badly_approximable);
    CHECK(c1.deg_minus == 1);
    CHECK(c1.deg_plus == 0);
    CHECK_FALSE(is_badly_approximable(RatFun::identity()).badly_approximable);
    auto f = Complex(2.5, 1.0) * reflect_sharp(blaschke({0.4, {-0.3, 0.2}}));
    auto c2 = is_badly_approximable(f);
    CHECK(c2.badly_approximable);
    CHECK(c2.deg_minus == 2);
    CHECK(c2.deg_plus == 0);
    CHECK(std::abs(c2.modulus_max - std::abs(Complex(2.5, 1.0))) < 1e-12);
}

TEST_CASE("blaschke") {
    auto b = blaschke({0.5});
    CHECK(sup_diff(b, RatFun::from_coefficients(poly_from_roots({{0.5, 1}}) * Complex(-1.0),
                                                poly_from_roots({{2.0, 1}}) * Complex(-0.5))) < 1e-14);
    auto c = blaschke({}, Complex(0.0, 1.0));
    CHECK(c(0.3) == Complex(0.0, 1.0));
    auto b2 = blaschke({0.0, 0.5});
    CHECK(winding_number(b2) == 2);
    for (auto t : circle_grid(256)) CHECK(std::abs(std::abs(b2(t)) - 1.0) < 1e-10);
    CHECK_THROWS_AS(blaschke({1.2}), Error);
}

TEST_CASE("spectral factor") {
    auto h = spectral_factor(RatFun::constant(4.0));
    CHECK(std::abs(h(0.0) - 2.0) < 1e-14);

    auto lin = RatFun::from_coefficients(poly_from_roots({{0.5, 1}}), poly_constant(1.0));
    auto s = lin * reflect_sharp(lin);
    auto h2 = spectral_factor(s);
    // Oracle: |1 - 0.5 z|^2 = 1.25 - 0.5 (z + 1/z) = (z - 0.5)(1/z - 0.5).
    Poly expect(2);
    expect << 1.0, -0.5;
    for (auto t : circle_grid(256)) CHECK(std::abs(h2(t) - poly_eval(expect, t)) < 1e-12);

    auto b = blaschke({0.3, -0.6});
    auto h3 = spectral_factor(b * reflect_sharp(b));
    CHECK(sup_diff(h3, RatFun::constant(1.0)) < 1e-12);

    CHECK_THROWS_AS(spectral_factor(RatFun::constant(-1.0)), Error);
    CHECK_THROWS_AS(spectral_factor(RatFun::identity()), Error);

    std::mt19937 gen(21);
    for (int trial = 0; trial < 20; ++trial) {
        auto g = random_ratfun(gen, 4);
        auto sq = g * reflect_sharp(g) + RatFun::constant(0.1);
        auto hf = spectral_factor(sq);
        for (const auto& r : hf.zeros()) CHECK(std::abs(r.loc) > 1.0);
        for (const auto& r : hf.poles()) CHECK(std::abs(r.loc) > 1.0);
        for (auto t : circle_grid(256)) CHECK(std::abs(std::norm(hf(t)) - sq(t).real()) <= 1e-9 * sq(t).real());
    }
}

TEST_CASE("fit_with_poles recovers a known function") {
    auto f = RatFun::factored({1.0, 0.5}, {{0.2, 1}, {3.0, 2}}, {{0.5, 2}, {{0.0, 1.5}, 1}});
    FitReport rep;
    auto g = fit_with_poles([&](Complex z) { return f(z); }, {{0.5, 2}, {{0.0, 1.5}, 1}, {0.9, 1}}, 0, &rep);
    CHECK(rep.residual < 1e-12);
    CHECK(sup_diff(f, g) < 1e-11);
    CHECK(degree_region(g, Region::sphere()) == 3);
}
