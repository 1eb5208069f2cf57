#include "superopt/nehari2x2.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/SVD>

#include "superopt/hankel.hpp"

namespace superopt {

namespace {

using Column = std::array<RatFun, 2>;

Column fit_column(const std::function<VectorXc(Complex)>& f, const std::vector<Root>& poles, int inf) {
    Column out;
    for (int i = 0; i < 2; ++i) {
        out[static_cast<std::size_t>(i)] = fit_with_poles([&](Complex z) { return f(z)(i); }, poles, inf);
    }
    return out;
}

std::vector<Complex> common_disk_zeros(const Column& c) {
    auto disk = [](const RatFun& f) {
        std::vector<Root> z;
        for (const auto& r : f.zeros()) {
            if (std::abs(r.loc) < 1.0 - kTol.circle) z.push_back(r);
        }
        return z;
    };
    std::vector<Complex> out;
    if (c[0].is_zero() || c[1].is_zero()) {
        for (const auto& r : disk(c[0].is_zero() ? c[1] : c[0])) out.insert(out.end(), static_cast<std::size_t>(r.mult), r.loc);
        return out;
    }
    const auto z1 = disk(c[1]);
    for (const auto& a : disk(c[0])) {
        for (const auto& b : z1) {
            if (near(a.loc, b.loc, kTol.structural)) {
                out.insert(out.end(), static_cast<std::size_t>(std::min(a.mult, b.mult)), 0.5 * (a.loc + b.loc));
            }
        }
    }
    return out;
}

// Inner co-outer part of an analytic column: c = (B h) col with h outer, B the common inner factor.
struct InnerSplit {
    Column col;
    RatFun outer;
    RatFun inner;
};

InnerSplit inner_split(const Column& c) {
    const RatFun s = c[0] * reflect_sharp(c[0]) + c[1] * reflect_sharp(c[1]);
    InnerSplit out;
    out.outer = spectral_factor(s);
    out.inner = blaschke(common_disk_zeros(c));
    const RatFun den = out.outer * out.inner;
    out.col = {divide_structural(c[0], den), divide_structural(c[1], den)};
    return out;
}

RatMat outer_product_sharp(const Column& w, const Column& v) {
    RatMat m(2, 2);
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            m(i, j) = reflect_sharp(w[static_cast<std::size_t>(i)]) * reflect_sharp(v[static_cast<std::size_t>(j)]);
        }
    }
    return m;
}

// Scalar psi with P_-(psi M) = P_-R, M = xi theta^t analytic and nonvanishing in the disk.
RatFun corner_symbol(const RatMat& r, const Column& xi, const Column& th, double* residual) {
    RatFun psi;
    double worst = 0.0;
    for (const auto& ld : local_degrees(r, Region::inside())) {
        if (ld.degree == 0) continue;
        const int m = static_cast<int>(ld.principal_coefficients.size());
        const Complex lambda = ld.lambda;
        // Taylor coefficients of M at lambda.
        const double rho = 0.5 * (1.0 - std::abs(lambda));
        const int nodes = 256;
        const auto grid = circle_grid(nodes);
        std::vector<MatrixXc> taylor(static_cast<std::size_t>(m), MatrixXc::Zero(2, 2));
        for (auto e : grid) {
            const Complex z = lambda + rho * e;
            Eigen::Vector2cd a(xi[0](z), xi[1](z)), b(th[0](z), th[1](z));
            const MatrixXc mz = a * b.transpose();
            Complex ek = 1.0;
            for (int j = 0; j < m; ++j) {
                taylor[static_cast<std::size_t>(j)] += mz * std::conj(ek);
                ek *= e;
            }
        }
        double rj = 1.0;
        for (int j = 0; j < m; ++j) {
            taylor[static_cast<std::size_t>(j)] /= static_cast<double>(nodes) * rj;
            rj *= rho;
        }
        const MatrixXc& m0 = taylor[0];
        const double n0 = m0.squaredNorm();
        std::vector<Complex> c(static_cast<std::size_t>(m + 1), 0.0);
        double scale = 0.0;
        for (const auto& rk : ld.principal_coefficients) scale = std::max(scale, rk.norm());
        for (int k = m; k >= 1; --k) {
            MatrixXc rhs = ld.principal_coefficients[static_cast<std::size_t>(k - 1)];
            for (int i = k + 1; i <= m; ++i) rhs -= c[static_cast<std::size_t>(i)] * taylor[static_cast<std::size_t>(i - k)];
            c[static_cast<std::size_t>(k)] = (m0.conjugate().cwiseProduct(rhs)).sum() / n0;
            const MatrixXc left = rhs - c[static_cast<std::size_t>(k)] * m0;
            if (scale > 0.0) worst = std::max(worst, left.norm() / scale);
        }
        for (int k = 1; k <= m; ++k) psi = psi + RatFun::factored(c[static_cast<std::size_t>(k)], {}, {{lambda, k}});
    }
    if (residual) *residual = worst;
    return psi;
}

std::vector<Root> exterior_poles(const std::vector<RatMat>& ms, int* inf) {
    std::vector<Root> out;
    *inf = 0;
    for (const auto& m : ms) {
        for (const auto& c : pole_candidates(m)) {
            if (is_infinite(c.loc)) *inf = std::max(*inf, c.mult);
            else if (std::abs(c.loc) > 1.0) out.push_back(c);
        }
    }
    return pole_lcm({out}, kTol.structural);
}

// Exterior poles of the entries of s a b^t, multiplicities added over the three factors.
std::vector<Root> product_exterior_poles(const RatFun& s, const Column& a, const Column& b, int* inf) {
    std::vector<Root> out;
    *inf = 0;
    auto add = [&](const std::vector<const RatFun*>& fs) {
        int group_inf = 0;
        std::vector<std::vector<Root>> lists;
        for (const RatFun* f : fs) {
            if (f->is_zero()) continue;
            group_inf = std::max(group_inf, f->order_at_infinity());
            std::vector<Root> ext;
            for (const auto& p : f->poles()) {
                if (std::abs(p.loc) > 1.0) ext.push_back(p);
            }
            lists.push_back(ext);
        }
        *inf += std::max(0, group_inf);
        for (const auto& p : pole_lcm(lists, kTol.structural)) {
            auto it = std::find_if(out.begin(), out.end(), [&](const Root& r) { return near(r.loc, p.loc, kTol.structural); });
            if (it == out.end()) out.push_back(p);
            else it->mult += p.mult;
        }
    };
    add({&s});
    add({&a[0], &a[1]});
    add({&b[0], &b[1]});
    return out;
}

Eigen::Vector2d singular_values(const MatrixXc& m) {
    Eigen::JacobiSVD<MatrixXc> svd(m);
    return svd.singularValues().head<2>();
}

}  // namespace

bool SuperoptResult::certified() const {
    const double scale = std::max(1.0, t0);
    return certificates.s0_deviation <= 1e-7 * scale && certificates.s1_deviation <= 1e-7 * scale &&
           certificates.reproduction <= 1e-8 * scale;
}

namespace {

struct SchmidtInput {
    std::vector<Root> disk;       // disk poles of phi
    std::vector<Root> reflected;  // their reflections, 0 excluded
    int at_zero = 0;
};

// Everything after the choice of the top Schmidt pair; certificates filled, not checked.
SuperoptResult from_schmidt_pair(const RatMat& phi, double t0, const SchmidtInput& in,
                                 const std::function<VectorXc(Complex)>& right,
                                 const std::function<VectorXc(Complex)>& left) {
    SuperoptResult out;
    out.t0 = t0;
    const Column f = fit_column(right, in.reflected, in.at_zero);
    const Column g = fit_column(left, in.disk, 0);
    const RatFun zinv = RatFun::factored(1.0, {}, {{0.0, 1}});
    const Column gt = {reflect_sharp(g[0]) * zinv, reflect_sharp(g[1]) * zinv};

    const InnerSplit fs = inner_split(f);
    const InnerSplit gs = inner_split(gt);
    ThematicData& th = out.factorization;
    th.t0 = t0;
    th.v = fs.col;
    th.w = gs.col;
    th.u0 = divide_structural(reflect_sharp(gs.outer), RatFun::identity() * fs.outer * fs.inner * gs.inner);

    const RatMat first = outer_product_sharp(th.w, th.v);
    const RatMat r = phi - Complex(t0) * (th.u0 * first);
    const RatFun psi0 = corner_symbol(r, th.xi(), th.theta(), &out.certificates.corner_residual);

    double t1 = 0.0;
    RatFun u1;
    if (!psi0.is_zero()) {
        const AakResult aak = aak_scalar(psi0);
        t1 = aak.sigma0;
        if (t1 > 1e-10 * t0) u1 = Complex(1.0 / t1) * aak.error;
    }
    if (u1.is_zero()) {
        out.degenerate = true;
        t1 = 0.0;
        u1 = zinv;
    }
    out.t1 = t1;
    th.t1 = t1;
    th.u1 = u1;

    // Psi is evaluated from its factors; adding high-degree entries symbolically loses accuracy.
    const Column wsh = {reflect_sharp(th.w[0]), reflect_sharp(th.w[1])};
    const Column vsh = {reflect_sharp(th.v[0]), reflect_sharp(th.v[1])};
    const Column xi = th.xi(), theta = th.theta();
    auto psi_at = [&](Complex z) {
        Eigen::Vector2cd a(wsh[0](z), wsh[1](z)), b(vsh[0](z), vsh[1](z));
        MatrixXc m = t0 * th.u0(z) * (a * b.transpose());
        if (t1 > 0.0) {
            Eigen::Vector2cd c(xi[0](z), xi[1](z)), d(theta[0](z), theta[1](z));
            m += t1 * th.u1(z) * (c * d.transpose());
        }
        return m;
    };
    int inf = 0;
    std::vector<std::vector<Root>> lists = {exterior_poles({phi}, &inf)};
    auto add_term = [&](const RatFun& s, const Column& a, const Column& b) {
        int term_inf = 0;
        lists.push_back(product_exterior_poles(s, a, b, &term_inf));
        inf = std::max(inf, term_inf);
    };
    add_term(th.u0, wsh, vsh);
    if (t1 > 0.0) add_term(th.u1, xi, theta);
    const auto poles = pole_lcm(lists, kTol.structural);
    out.approximant = fit_mat([&](Complex z) { return MatrixXc(phi.at(z) - psi_at(z)); }, 2, 2, poles, inf,
                              &out.certificates.fit_residual);

    auto& cert = out.certificates;
    for (auto z : circle_grid(kDefaultGrid)) {
        const MatrixXc e = phi.at(z) - out.approximant.at(z);
        const Eigen::Vector2d s = singular_values(e);
        cert.s0_deviation = std::max(cert.s0_deviation, std::abs(s(0) - t0));
        cert.s1_deviation = std::max(cert.s1_deviation, std::abs(s(1) - t1));
        cert.reproduction = std::max(cert.reproduction, (psi_at(z) - e).cwiseAbs().maxCoeff());
    }
    return out;
}

double certificate_score(const SuperoptResult& r) {
    const auto& c = r.certificates;
    return std::max({c.s0_deviation, c.s1_deviation, 10.0 * c.reproduction});
}

// Combinations of the top singular vectors to try. For a double top value the
// combinations whose right vector has a common disk zero give the lowest degree
// first-stage data; these sit at the disk zeros of det(f_a, f_b).
std::vector<VectorXc> top_combinations(const HankelSvd& svd, int multiplicity, const SchmidtInput& in) {
    std::vector<VectorXc> out;
    if (multiplicity == 2) {
        const Column fa = fit_column([&](Complex z) { return svd.right(0, z); }, in.reflected, in.at_zero);
        const Column fb = fit_column([&](Complex z) { return svd.right(1, z); }, in.reflected, in.at_zero);
        const RatFun det = fa[0] * fb[1] - fa[1] * fb[0];

        if (!det.is_zero()) {
            for (const auto& r : det.zeros()) {
                if (std::abs(r.loc) >= 1.0 - kTol.circle) continue;
                Eigen::Matrix2cd m;
                m << svd.right(0, r.loc), svd.right(1, r.loc);
                Eigen::JacobiSVD<Eigen::Matrix2cd> k(m, Eigen::ComputeFullV);
                out.push_back(k.matrixV().col(1));
            }
        }
    }
    for (int j = 0; j < multiplicity; ++j) out.push_back(VectorXc::Unit(multiplicity, j));
    return out;
}

}  // namespace

SuperoptResult superoptimal(const RatMat& phi) {
    if (phi.rows() != 2 || phi.cols() != 2) throw Error(ErrorKind::ShapeError, "superoptimal expects a 2x2 symbol");
    SchmidtInput in;
    for (const auto& c : pole_candidates(phi)) {
        if (is_infinite(c.loc)) continue;
        if (std::abs(std::abs(c.loc) - 1.0) <= kTol.circle) throw Error(ErrorKind::PoleOnCircle, "pole within the circle band");
        if (std::abs(c.loc) >= 1.0) continue;
        in.disk.push_back(c);
        if (c.loc == Complex(0.0)) in.at_zero = c.mult;
        else in.reflected.push_back({1.0 / std::conj(c.loc), c.mult});
    }
    const HankelSvd svd = hankel_svd(phi);
    if (svd.sigma.size() == 0) {
        SuperoptResult out;
        out.identity_case = true;
        out.approximant = phi;
        return out;
    }
    const double t0 = svd.sigma(0);
    int multiplicity = 1;
    while (multiplicity < svd.sigma.size() && svd.sigma(multiplicity) >= t0 * (1.0 - kTol.structural)) ++multiplicity;

    SuperoptResult best;
    bool have = false;
    for (const VectorXc& c : top_combinations(svd, multiplicity, in)) {
        auto combo = [&](bool right) {
            return [&, right](Complex z) {
                VectorXc acc = VectorXc::Zero(2);
                for (int j = 0; j < multiplicity; ++j) {
                    if (c(j) != Complex(0.0)) acc += c(j) * (right ? svd.right(j, z) : svd.left(j, z));
                }
                return acc;
            };
        };
        SuperoptResult r;
        try {
            r = from_schmidt_pair(phi, t0, in, combo(true), combo(false));
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::NumericalFailure) throw;
            continue;
        }

        r.certificates.multiple_top = multiplicity > 1;
        if (!have || certificate_score(r) < certificate_score(best)) {
            best = std::move(r);
            have = true;
        }
        if (best.certified() && multiplicity == 1) break;
    }
    if (!have) throw Error(ErrorKind::NumericalFailure, "no top Schmidt pair produced a factorization");
    if (!best.certified()) {
        const auto& cert = best.certificates;
        std::ostringstream os;
        os << "superoptimal certificate violated: s0 deviation " << cert.s0_deviation << ", s1 deviation "
           << cert.s1_deviation << ", reproduction " << cert.reproduction;
        throw Error(ErrorKind::NumericalFailure, os.str());
    }
    return best;
}

VeryBadCertificate verify_very_bad(const RatMat& psi) {
    VeryBadCertificate out;
    if (psi.rows() != 2 || psi.cols() != 2) {
        out.detail = "not a 2x2 symbol";
        return out;
    }
    double lo0 = 1e300, hi0 = 0.0, lo1 = 1e300, hi1 = 0.0, scale = 1.0;
    for (auto z : circle_grid(kDefaultGrid)) {
        const Eigen::Vector2d s = singular_values(psi.at(z));
        lo0 = std::min(lo0, s(0));
        hi0 = std::max(hi0, s(0));
        lo1 = std::min(lo1, s(1));
        hi1 = std::max(hi1, s(1));
        scale = std::max(scale, s(0));
    }
    out.s0_spread = hi0 - lo0;
    out.s1_spread = hi1 - lo1;
    const bool flat = out.s0_spread <= 1e-7 * scale && out.s1_spread <= 1e-7 * scale;
    try {
        const SuperoptResult r = superoptimal(psi);
        for (auto z : circle_grid(kDefaultGrid)) {
            out.approximant_sup = std::max(out.approximant_sup, r.approximant.at(z).cwiseAbs().maxCoeff());
        }
    } catch (const Error& e) {
        out.detail = e.what();
        return out;
    }
    const bool vanishes = out.approximant_sup <= 1e-7 * scale;
    out.pass = flat && vanishes;
    if (!flat) out.detail = "singular values are not constant on the circle";
    else if (!vanishes) out.detail = "superoptimal approximant is not zero";
    return out;
}

SuperoptDegreeReport superopt_degree_report(const RatMat& phi) {
    SuperoptDegreeReport out;
    auto both = [](const RatMat& m) {
        const int local = mcmillan_degree(m, Region::sphere());
        const int hankel = hankel_rank_degree(m) + hankel_rank_degree_outside(m);
        if (local != hankel) {
            std::ostringstream os;
            os << "degree oracles disagree: local " << local << ", Hankel " << hankel;
            throw Error(ErrorKind::NumericalFailure, os.str());
        }
        return local;
    };
    out.deg_phi = both(phi);
    const SuperoptResult r = superoptimal(phi);
    out.deg_approximant = both(r.approximant);
    out.identity_case = r.identity_case;
    out.t1_zero = r.degenerate;
    if (r.identity_case) {
        out.bound = out.deg_phi;
        out.holds = out.deg_approximant == out.deg_phi;
        return out;
    }
    const int k = out.deg_phi;
    out.bound = out.t1_zero ? k - 1 : 2 * k - 3;
    out.holds = out.deg_approximant <= out.bound;
    return out;
}

}  // namespace superopt
