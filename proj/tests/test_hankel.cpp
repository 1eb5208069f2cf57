#include <doctest.h>

#include <Eigen/SVD>

#include "superopt/hankel.hpp"
#include "superopt/random.hpp"

using namespace superopt;

namespace {

RatMat scalar(const RatFun& f) { return RatMat::scalar(f, 1); }

RatFun pole(Complex l, int m = 1, Complex c = 1.0) { return RatFun::factored(c, {}, {{l, m}}); }

double sup_abs(const RatFun& f) {
    double s = 0.0;
    for (auto z : circle_grid(256)) s = std::max(s, std::abs(f(z)));
    return s;
}

}  // namespace

TEST_CASE("Markov coefficients") {
    const Complex l(0.4, -0.3);
    auto m = markov_coeffs(scalar(pole(l)), 6);
    for (int j = 1; j <= 6; ++j) CHECK(std::abs(m[static_cast<std::size_t>(j - 1)](0, 0) - std::pow(l, j - 1)) < 1e-15);

    Rng rng(1);
    auto g = random_analytic(rng, 2, 2, 3);
    for (const auto& c : markov_coeffs(g, 5)) CHECK(c.norm() == 0.0);

    auto z2 = markov_coeffs(scalar(pole(0.0, 2)), 4);
    CHECK(z2[1](0, 0) == Complex(1.0));
    CHECK(z2[0](0, 0) == Complex(0.0));
    CHECK(z2[2](0, 0) == Complex(0.0));

    for (int trial = 0; trial < 20; ++trial) {
        auto a = random_ratmat(rng, 2, 2, 8);
        auto c1 = markov_coeffs(a, 12);
        auto c2 = markov_coeffs_dft(a, 12);
        for (std::size_t j = 0; j < c1.size(); ++j) CHECK((c1[j] - c2[j]).cwiseAbs().maxCoeff() < 1e-9);
    }
}

TEST_CASE("build_hankel examples") {
    auto zinv = pole(0.0);
    auto h = build_hankel(RatMat::scalar(zinv, 2));
    CHECK(h.rank == 2);
    CHECK(std::abs(h.singular_values(0) - 1.0) < 1e-12);

    const Complex c(0.3, -2.0);
    auto hc = build_hankel(scalar(c * zinv));
    CHECK(hc.rank == 1);
    CHECK(std::abs(hc.singular_values(0) - std::abs(c)) < 1e-12);

    const Complex a(0.7, 0.2), b(-0.4, 1.1);
    auto f = a * zinv + b * pole(0.0, 2);
    auto hf = build_hankel(scalar(f));
    Eigen::Matrix2cd m;
    m << a, b, b, 0.0;
    Eigen::JacobiSVD<Eigen::Matrix2cd> svd(m);
    REQUIRE(hf.singular_values.size() == 2);
    CHECK(std::abs(hf.singular_values(0) - svd.singularValues()(0)) < 1e-12);
    CHECK(std::abs(hf.singular_values(1) - svd.singularValues()(1)) < 1e-12);

    auto mixed = zinv + 5.0 * RatFun::identity();
    CHECK(std::abs(hankel_norm(scalar(mixed)) - 1.0) < 1e-12);
}

TEST_CASE("HankelData invariants on random symbols") {
    Rng rng(2);
    for (int trial = 0; trial < 30; ++trial) {
        auto a = random_ratmat(rng, 2, 2, 8);
        auto h = build_hankel(a);
        CHECK(h.rank == mcmillan_degree(a, Region::inside()));
        CHECK(h.rank == h.singular_values.size());
        if (h.rank > 0) {
            CHECK(std::abs(h.power_sigma0 - h.finite_singular_values(0)) <= 1e-10 * h.finite_singular_values(0));
            CHECK(std::abs(h.singular_values(0) - h.finite_singular_values(0)) <= 1e-9 * h.singular_values(0));
            // Longer truncation leaves the singular values unchanged.
            double rho = 0.0;
            for (const auto& c : pole_candidates(a)) {
                if (!is_infinite(c.loc) && std::abs(c.loc) < 1.0) rho = std::max(rho, std::abs(c.loc));
            }
            const int n = rho > 0.0 ? static_cast<int>(std::ceil(std::log(1e-14) / std::log(rho))) + 2 : 4;
            Eigen::BDCSVD<MatrixXc> s1(block_hankel(markov_coeffs(a, 2 * n), n));
            Eigen::BDCSVD<MatrixXc> s2(block_hankel(markov_coeffs(a, 2 * n + 8), n + 4));
            for (int j = 0; j < h.rank; ++j) CHECK(std::abs(s1.singularValues()(j) - s2.singularValues()(j)) < 1e-9);
        }
    }
}

TEST_CASE("Schmidt pairs satisfy H f = sigma g on the long truncation") {
    Rng rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        auto a = random_ratmat(rng, 2, 2, 6);
        auto svd = hankel_svd(a);
        if (svd.sigma.size() == 0) continue;
        const int n = 160, pts = 1024;
        const MatrixXc h = block_hankel(markov_coeffs(a, 2 * n), n);
        // Taylor coefficients of f and coefficients of z^{-i} of g by transform.
        VectorXc f = VectorXc::Zero(2 * n), g = VectorXc::Zero(2 * n);
        const auto grid = circle_grid(pts);
        for (auto z : grid) {
            const VectorXc fv = svd.right(0, z), gv = svd.left(0, z);
            Complex zk = 1.0;
            for (int k = 0; k < n; ++k) {
                f.segment(2 * k, 2) += fv * std::conj(zk);
                zk *= z;
                g.segment(2 * k, 2) += gv * zk;
            }
        }
        f /= static_cast<double>(pts);
        g /= static_cast<double>(pts);
        CHECK(std::abs(f.norm() - 1.0) < 1e-8);
        CHECK((h * f - svd.sigma(0) * g).norm() < 1e-8 * svd.sigma(0));
    }
}

TEST_CASE("aak examples") {
    const Complex c(1.5, -0.5);
    auto r1 = aak_scalar(c * pole(0.0));
    CHECK(std::abs(r1.sigma0 - std::abs(c)) < 1e-12);
    CHECK(sup_abs(r1.best) < 1e-10);

    auto an = RatFun::factored(2.0, {{0.5, 1}}, {{3.0, 1}});
    auto r2 = aak_scalar(an);
    CHECK(r2.sigma0 == 0.0);
    CHECK(sup_abs(r2.best - an) == 0.0);

    auto f = pole(0.0) + 0.5 * pole(0.0, 2);
    auto r3 = aak_scalar(f);
    Eigen::Matrix2d m;
    m << 1.0, 0.5, 0.5, 0.0;
    Eigen::JacobiSVD<Eigen::Matrix2d> svd(m);
    CHECK(std::abs(r3.sigma0 - svd.singularValues()(0)) < 1e-12);
    for (auto z : circle_grid(256)) CHECK(std::abs(std::abs(f(z) - r3.best(z)) - r3.sigma0) < 1e-8);
}

TEST_CASE("aak on random symbols") {
    Rng rng(4);
    for (int trial = 0; trial < 30; ++trial) {
        const int d = 1 + trial % 6;
        auto phi = random_symbol(rng, d);
        auto r = aak_scalar(phi);
        double lo = 1e300, hi = 0.0;
        for (auto z : circle_grid(256)) {
            const double e = std::abs(phi(z) - r.best(z));
            lo = std::min(lo, e);
            hi = std::max(hi, e);
        }
        CHECK(hi <= lo * (1.0 + 1e-7));
        CHECK(std::abs(hi - r.sigma0) <= 1e-8 * std::max(1.0, r.sigma0));
        CHECK(degree_region(r.best, Region::inside()) == 0);
        CHECK(degree_region(r.best, Region::sphere()) <= degree_region(phi, Region::sphere()) - 1);
        CHECK(winding_number(r.error) < 0);
        CHECK(is_badly_approximable(r.error).badly_approximable);
        CHECK(std::abs(r.sigma0 - hankel_norm(scalar(phi))) == 0.0);
    }
}

TEST_CASE("singular shift") {
    auto zbar = RatMat::scalar(pole(0.0), 1);
    auto s = singular_shift_check(zbar);
    CHECK(s.mu == 1);
    CHECK(s.s_ustar.empty());
    CHECK(s.max_mismatch < 1e-12);

    Rng rng(5);
    auto c = singular_shift_check(RatMat::constant(random_unitary(rng, 2)));
    CHECK(c.mu == 0);
    CHECK(c.s_u.empty());
    CHECK(c.s_ustar.empty());

    // Blaschke quotient: scalar unimodular with poles on both sides.
    auto u = blaschke({0.3, {0.1, 0.5}}) / blaschke({-0.6, 0.2, {0.0, -0.4}});
    auto su = singular_shift_check(RatMat::scalar(u, 1));
    CHECK(su.max_mismatch < 1e-7);

    CHECK_THROWS_AS(singular_shift_check(RatMat::scalar(2.0 * pole(0.0), 1)), Error);
}
