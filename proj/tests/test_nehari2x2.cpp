#include <doctest.h>

#include <cmath>

#include <Eigen/LU>
#include <Eigen/SVD>

#include "superopt/counterexample.hpp"
#include "superopt/nehari2x2.hpp"
#include "superopt/random.hpp"

using namespace superopt;

namespace {

RatFun inv_z() { return RatFun::factored(1.0, {}, {{0.0, 1}}); }

double sup_distance(const RatMat& a, const RatMat& b) {
    double d = 0.0;
    for (auto z : circle_grid(kDefaultGrid)) d = std::max(d, (a.at(z) - b.at(z)).cwiseAbs().maxCoeff());
    return d;
}

Eigen::Vector2d sv(const MatrixXc& m) { return Eigen::JacobiSVD<MatrixXc>(m).singularValues().head<2>(); }

}  // namespace

TEST_CASE("diagonal symbol with distinct singular values") {
    RatMat phi(2, 2);
    phi(0, 0) = Complex(2.0) * inv_z();
    phi(1, 1) = inv_z();
    const auto r = superoptimal(phi);
    CHECK(r.t0 == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(r.t1 == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(!r.degenerate);
    CHECK(sup_distance(r.approximant, RatMat(2, 2)) < 1e-9);
    CHECK(r.certified());
}

TEST_CASE("rank-one symbol gives t1 = 0") {
    RatMat phi(2, 2);
    phi(0, 0) = inv_z();
    const auto r = superoptimal(phi);
    CHECK(r.t0 == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(r.t1 == 0.0);
    CHECK(r.degenerate);
    CHECK(sup_distance(r.approximant, RatMat(2, 2)) < 1e-9);
}

TEST_CASE("analytic symbol is its own approximant") {
    Rng rng(11);
    const RatMat phi = random_analytic(rng, 2, 2, 3);
    const auto r = superoptimal(phi);
    CHECK(r.identity_case);
    CHECK(sup_distance(r.approximant, phi) < 1e-12);
    const auto rep = superopt_degree_report(phi);
    CHECK(rep.identity_case);
    CHECK(rep.holds);
}

TEST_CASE("round trip from thematic data") {
    Rng rng(5);
    for (int trial = 0; trial < 6; ++trial) {
        INFO("trial " << trial);
        const ThematicData th = random_thematic(rng, 6);
        const RatMat psi = assemble(th, th.t1);
        const RatMat g = random_analytic(rng, 2, 2, trial % 5);
        const auto split = riesz_split_mat(psi);
        const RatMat phi = split.minus + g;
        const auto r = superoptimal(phi);
        CHECK(r.t0 == doctest::Approx(th.t0).epsilon(1e-8));
        CHECK(r.t1 == doctest::Approx(th.t1).epsilon(1e-8));
        CHECK(sup_distance(r.approximant, g - split.plus) < 1e-7);
        CHECK(r.certified());
    }
}

TEST_CASE("very badly approximable certificates") {
    Rng rng(17);
    const ThematicData th = random_thematic(rng, 6);
    const auto good = verify_very_bad(assemble(th, th.t1));
    CHECK(good.pass);

    RatMat bad(2, 2);
    bad(0, 0) = inv_z();
    bad(1, 1) = RatFun::identity();
    const auto no = verify_very_bad(bad);
    CHECK(!no.pass);

    // conj(z) U with U a constant unitary.
    const MatrixXc u = random_unitary(rng, 2);
    const RatMat zu = inv_z() * RatMat::constant(u);
    CHECK(verify_very_bad(zu).pass);
}

TEST_CASE("degree report on the construction") {
    for (int k = 2; k <= 4; ++k) {
        INFO("k = " << k);
        const auto kp = build_kp(k, 2.0, 0.5, default_b1_zeros(k), default_b2_zeros(k));
        const auto rep = superopt_degree_report(kp.phi);
        CHECK(rep.deg_phi == k);
        CHECK(rep.deg_approximant == 2 * k - 3);
        CHECK(!rep.t1_zero);
        CHECK(rep.holds);
    }
}

TEST_CASE("rank-one symbol meets the k - 1 bound") {
    Rng rng(23);
    for (int d = 1; d <= 4; ++d) {
        RatMat phi(2, 2);
        phi(0, 0) = random_symbol(rng, d);
        const auto rep = superopt_degree_report(phi);
        CHECK(rep.t1_zero);
        CHECK(rep.deg_approximant <= rep.deg_phi - 1);
        CHECK(rep.holds);
    }
}

TEST_CASE("superoptimal error dominates other analytic corrections") {
    Rng rng(29);
    const RatMat phi = random_ratmat(rng, 2, 2, 4);
    const auto r = superoptimal(phi);
    const auto grid = circle_grid(kDefaultGrid);
    for (int trial = 0; trial < 10; ++trial) {
        const RatMat q = r.approximant + Complex(0.05) * random_analytic(rng, 2, 2, 2);
        double s0 = 0.0, s1 = 0.0;
        for (auto z : grid) {
            const Eigen::Vector2d s = sv(phi.at(z) - q.at(z));
            s0 = std::max(s0, s(0));
            s1 = std::max(s1, s(1));
        }
        const bool dominated = s0 > r.t0 + 1e-9 || (s0 >= r.t0 - 1e-9 && s1 >= r.t1 - 1e-9);
        CHECK(dominated);
    }
}

TEST_CASE("determinant of the error has constant modulus") {
    Rng rng(31);
    const RatMat phi = random_ratmat(rng, 2, 2, 3);
    const auto r = superoptimal(phi);
    for (auto z : circle_grid(64)) {
        const MatrixXc e = phi.at(z) - r.approximant.at(z);
        const Complex d = e.determinant();
        CHECK(std::abs(std::abs(d) - r.t0 * r.t1) < 1e-7 * std::max(1.0, r.t0 * r.t0));
    }
}

TEST_CASE("unitary families with a double top singular value") {
    Rng rng(313);
    int doubles = 0;
    for (int i = 0; i < 10; ++i) {
        ThematicData d = random_thematic(rng, 6);
        d.t0 = 1.0;
        d.t1 = 1.0;
        const RatMat u = assemble(d, 1.0);
        const auto r = superoptimal(u);
        if (r.certificates.multiple_top) ++doubles;
        CHECK(r.t1 == doctest::Approx(1.0).epsilon(1e-8));
        CHECK(sup_distance(r.approximant, RatMat(2, 2)) < 1e-9);
    }
    CHECK(doubles == 10);
}
