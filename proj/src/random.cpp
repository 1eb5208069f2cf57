#include "superopt/random.hpp"

#include <Eigen/QR>

namespace superopt {

namespace {

double uniform(Rng& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

int uniform_int(Rng& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

Complex random_complex(Rng& rng) {
    return {uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0)};
}

MatrixXc random_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
    MatrixXc m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = random_complex(rng);
    }
    return m;
}

// Point at least `gap` away from every point already taken.
Complex separated_point(Rng& rng, double r_min, double r_max, std::vector<Complex>& taken, double gap = 0.1) {
    for (;;) {
        const Complex z = random_point(rng, r_min, r_max);
        bool ok = true;
        for (auto t : taken) ok = ok && std::abs(z - t) > gap;
        if (ok) {
            taken.push_back(z);
            return z;
        }
    }
}

}  // namespace

Complex random_point(Rng& rng, double r_min, double r_max) {
    return std::polar(uniform(rng, r_min, r_max), uniform(rng, 0.0, 2.0 * std::numbers::pi));
}

RatFun random_ratfun(Rng& rng, int inside, int outside, int zeros) {
    std::vector<Complex> taken;
    std::vector<Root> zs, ps;
    for (int j = 0; j < inside; ++j) ps.push_back({separated_point(rng, 0.0, 0.8, taken), 1});
    for (int j = 0; j < outside; ++j) ps.push_back({separated_point(rng, 1.25, 3.0, taken), 1});
    for (int j = 0; j < zeros; ++j) zs.push_back({separated_point(rng, 0.0, 3.0, taken), 1});
    return RatFun::factored(random_complex(rng) + Complex(0.5, 0.0), zs, ps);
}

RatFun random_symbol(Rng& rng, int d) {
    std::vector<Complex> taken;
    RatFun f;
    for (int j = 0; j < d; ++j) {
        const Complex p = separated_point(rng, 0.0, 0.8, taken, 0.15);
        f = f + RatFun::factored(random_complex(rng), {}, {{p, 1}});
    }
    const int outside = uniform_int(rng, 0, 2);
    for (int j = 0; j < outside; ++j) {
        const Complex p = separated_point(rng, 1.3, 3.0, taken, 0.15);
        f = f + RatFun::factored(random_complex(rng), {}, {{p, 1}});
    }
    return f + random_polynomial(rng, uniform_int(rng, 0, 1));
}

RatFun random_polynomial(Rng& rng, int d) {
    Poly c(d + 1);
    for (int j = 0; j <= d; ++j) c(j) = random_complex(rng);
    return RatFun::from_coefficients(c, poly_constant(1.0));
}

RatMat random_ratmat(Rng& rng, Eigen::Index rows, Eigen::Index cols, int max_degree) {
    RatMat a(rows, cols);
    std::vector<Complex> taken;
    int budget = max_degree;
    const Eigen::Index full = std::min(rows, cols);
    while (budget >= full) {
        const int m = uniform_int(rng, 1, std::min<int>(2, budget / static_cast<int>(full)));
        const int side = uniform_int(rng, 0, 4);
        Complex lambda;
        if (side <= 2) lambda = separated_point(rng, 0.0, 0.8, taken, 0.15);
        else if (side == 3) lambda = separated_point(rng, 1.25, 3.0, taken, 0.15);
        else lambda = kInfinity;
        if (is_infinite(lambda)) {
            if (std::any_of(taken.begin(), taken.end(), [](Complex t) { return is_infinite(t); })) continue;
            taken.push_back(lambda);
        }
        for (int k = 1; k <= m; ++k) {
            const Eigen::Index rank = uniform_int(rng, 1, static_cast<int>(full));
            const MatrixXc c = random_matrix(rng, rows, rank) * random_matrix(rng, rank, cols);
            const RatFun basis = is_infinite(lambda) ? RatFun::factored(1.0, {{0.0, k}}, {})
                                                      : RatFun::factored(1.0, {}, {{lambda, k}});
            for (Eigen::Index i = 0; i < rows; ++i) {
                for (Eigen::Index j = 0; j < cols; ++j) a(i, j) = a(i, j) + c(i, j) * basis;
            }
        }
        budget -= m * static_cast<int>(full);
        if (uniform_int(rng, 0, 3) == 0) break;
    }
    return a + RatMat::constant(random_matrix(rng, rows, cols));
}

RatMat random_analytic(Rng& rng, Eigen::Index rows, Eigen::Index cols, int d) {
    RatMat a(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (Eigen::Index j = 0; j < cols; ++j) a(i, j) = random_polynomial(rng, d);
    }
    return a;
}

std::array<RatFun, 2> random_inner_column(Rng& rng, int d) {
    if (d == 0) {
        Eigen::Vector2cd c(random_complex(rng), random_complex(rng));
        c.normalize();
        return {RatFun::constant(c(0)), RatFun::constant(c(1))};
    }
    const RatFun p1 = random_polynomial(rng, d), p2 = random_polynomial(rng, d);
    const RatFun s = p1 * reflect_sharp(p1) + p2 * reflect_sharp(p2);
    const RatFun h = spectral_factor(s);
    return {p1 / h, p2 / h};
}

RatFun random_unimodular(Rng& rng, int n) {
    std::vector<Complex> taken, za, zb;
    for (int j = 0; j <= n; ++j) zb.push_back(separated_point(rng, 0.1, 0.8, taken, 0.15));
    for (int j = 0; j < n; ++j) za.push_back(separated_point(rng, 0.1, 0.8, taken, 0.15));
    const Complex c = std::polar(1.0, uniform(rng, 0.0, 2.0 * std::numbers::pi));
    return blaschke(za, c) / blaschke(zb);
}

ThematicData random_thematic(Rng& rng, int max_degree) {
    ThematicData d;
    int n0 = uniform_int(rng, 0, 1), n1 = uniform_int(rng, 0, 1);
    int dv = uniform_int(rng, 0, 2), dw = uniform_int(rng, 0, 2);
    while (n0 + n1 + dv + dw + 2 > max_degree) {
        if (dv > 0) --dv;
        else if (dw > 0) --dw;
        else if (n1 > 0) --n1;
        else --n0;
    }
    d.t0 = uniform(rng, 0.5, 2.0);
    d.t1 = d.t0 * uniform(rng, 0.2, 0.9);
    d.u0 = random_unimodular(rng, n0);
    d.u1 = random_unimodular(rng, n1);
    d.v = random_inner_column(rng, dv);
    d.w = random_inner_column(rng, dw);
    return d;
}

MatrixXc random_unitary(Rng& rng, Eigen::Index n) {
    Eigen::HouseholderQR<MatrixXc> qr(random_matrix(rng, n, n));
    return qr.householderQ() * MatrixXc::Identity(n, n);
}

}  // namespace superopt
