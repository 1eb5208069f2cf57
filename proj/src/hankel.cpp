#include "superopt/hankel.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/QR>
#include <Eigen/SVD>

namespace superopt {

namespace {

struct PolePart {
    Complex lambda;
    int m = 0;
    std::vector<MatrixXc> c;  // c[k - 1] multiplies (z - lambda)^{-k}
};

std::vector<PolePart> disk_parts(const RatMat& a) {
    std::vector<PolePart> parts;
    for (const auto& cand : pole_candidates(a)) {
        if (is_infinite(cand.loc)) continue;
        const double r = std::abs(cand.loc);
        if (std::abs(r - 1.0) <= kTol.circle) throw Error(ErrorKind::PoleOnCircle, "pole within the circle band");
        if (r > 1.0) continue;
        PolePart part{cand.loc, cand.mult, std::vector<MatrixXc>(static_cast<std::size_t>(cand.mult),
                                                                  MatrixXc::Zero(a.rows(), a.cols()))};
        for (Eigen::Index i = 0; i < a.rows(); ++i) {
            for (Eigen::Index j = 0; j < a.cols(); ++j) {
                for (const auto& p : a(i, j).poles()) {
                    if (!near(p.loc, cand.loc, kTol.structural)) continue;
                    const auto pp = principal_part(a(i, j), p);
                    for (std::size_t k = 0; k < pp.size(); ++k) part.c[k](i, j) += pp[k];
                }
            }
        }
        parts.push_back(std::move(part));
    }
    return parts;
}

double sup_norm(const RatMat& a, int grid = kDefaultGrid) {
    double s = 0.0;
    for (auto z : circle_grid(grid)) {
        const MatrixXc v = a.at(z);
        if (v.size() > 0) s = std::max(s, v.cwiseAbs().maxCoeff());
    }
    return s;
}

int rank_at(const std::vector<MatrixXc>& coeffs, int n, double floor) {
    return numerical_rank(block_hankel(coeffs, n), floor);
}

int rank_degree_impl(const RatMat& a, HankelData* data) {
    const auto parts = disk_parts(a);
    int orders = 0;
    for (const auto& p : parts) orders += p.m;
    const double floor = sup_norm(a);
    for (int n = orders + 4; n <= 512; n *= 2) {
        const auto coeffs = markov_coeffs(a, 2 * n + 2);
        const int r0 = rank_at(coeffs, n, floor);
        const int r1 = rank_at(coeffs, n + 1, floor);
        if (r0 == r1) {
            if (data) {
                data->truncation = n;
                data->markov.assign(coeffs.begin(), coeffs.begin() + n);
                data->matrix = block_hankel(coeffs, n);
                data->rank = r0;
            }
            return r0;
        }
    }
    throw Error(ErrorKind::TruncationTooSmall, "block-Hankel rank not stationary below the truncation cap");
}

}  // namespace

std::vector<MatrixXc> markov_coeffs(const RatMat& a, int n) {
    std::vector<MatrixXc> out(static_cast<std::size_t>(n), MatrixXc::Zero(a.rows(), a.cols()));
    for (const auto& part : disk_parts(a)) {
        // 1/(z - l)^k = sum_{j >= k} C(j-1, k-1) l^{j-k} z^{-j}
        for (int k = 1; k <= part.m; ++k) {
            const MatrixXc& c = part.c[static_cast<std::size_t>(k - 1)];
            double binom = 1.0;  // C(j-1, k-1) at j = k
            Complex lp = 1.0;    // l^{j-k}
            for (int j = k; j <= n; ++j) {
                out[static_cast<std::size_t>(j - 1)] += (binom * lp) * c;
                binom = binom * j / (j - k + 1);
                lp *= part.lambda;
            }
        }
    }
    return out;
}

std::vector<MatrixXc> markov_coeffs_dft(const RatMat& a, int n, int points) {
    std::vector<MatrixXc> out(static_cast<std::size_t>(n), MatrixXc::Zero(a.rows(), a.cols()));
    for (auto z : circle_grid(points)) {
        const MatrixXc v = a.at(z);
        Complex zp = z;
        for (int j = 1; j <= n; ++j) {
            out[static_cast<std::size_t>(j - 1)] += v * zp;
            zp *= z;
        }
    }
    for (auto& c : out) c /= static_cast<double>(points);
    return out;
}

MatrixXc block_hankel(const std::vector<MatrixXc>& coeffs, int n) {
    if (coeffs.empty() || n == 0) return MatrixXc();
    const Eigen::Index r = coeffs[0].rows(), c = coeffs[0].cols();
    MatrixXc h = MatrixXc::Zero(n * r, n * c);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const auto k = static_cast<std::size_t>(i + j);
            if (k < coeffs.size()) h.block(i * r, j * c, r, c) = coeffs[k];
        }
    }
    return h;
}

Realization realize_minus(const RatMat& a) {
    const auto parts = disk_parts(a);
    const double floor = sup_norm(a);
    const Eigen::Index rows = a.rows(), cols = a.cols();
    // Ho-Kalman per pole on the sequence c_1, ..., c_m of (z - lambda)^{-k}.
    std::vector<MatrixXc> as, bs, cs;
    Eigen::Index dim = 0;
    for (const auto& p : parts) {
        // One extra block row of the (zero-padded) sequence makes the shift equation determined.
        MatrixXc h = MatrixXc::Zero((p.m + 1) * rows, p.m * cols);
        for (int i = 0; i <= p.m; ++i) {
            for (int j = 0; i + j < p.m; ++j) h.block(i * rows, j * cols, rows, cols) = p.c[static_cast<std::size_t>(i + j)];
        }
        const int r = numerical_rank(h, floor);
        if (r == 0) continue;
        Eigen::JacobiSVD<MatrixXc> svd(h, Eigen::ComputeThinU | Eigen::ComputeThinV);
        const Eigen::VectorXd s = svd.singularValues().head(r).cwiseSqrt();
        const MatrixXc o = svd.matrixU().leftCols(r) * s.asDiagonal();
        const MatrixXc ctrl = s.asDiagonal() * svd.matrixV().leftCols(r).adjoint();
        MatrixXc n = MatrixXc::Zero(r, r);
        if (p.m > 1) {
            const Eigen::Index k = p.m * rows;
            n = o.topRows(k).completeOrthogonalDecomposition().solve(o.bottomRows(k));
        }
        as.push_back(p.lambda * MatrixXc::Identity(r, r) + n);
        bs.push_back(ctrl.leftCols(cols));
        cs.push_back(o.topRows(rows));
        dim += r;
    }
    Realization out{MatrixXc::Zero(dim, dim), MatrixXc::Zero(dim, cols), MatrixXc::Zero(rows, dim)};
    Eigen::Index off = 0;
    for (std::size_t i = 0; i < as.size(); ++i) {
        const Eigen::Index r = as[i].rows();
        out.a.block(off, off, r, r) = as[i];
        out.b.middleRows(off, r) = bs[i];
        out.c.middleCols(off, r) = cs[i];
        off += r;
    }
    return out;
}

MatrixXc stein(const MatrixXc& a, const MatrixXc& q) {
    MatrixXc p = q;
    MatrixXc ak = a;
    for (int it = 0; it < 64; ++it) {
        const double s = ak.cwiseAbs().maxCoeff();
        if (s < 1e-18) return p;
        p += ak * p * ak.adjoint();
        ak = (ak * ak).eval();
        if (!std::isfinite(s) || s > 1e150) break;
    }
    if (ak.size() == 0 || ak.cwiseAbs().maxCoeff() < 1e-12) return p;
    throw Error(ErrorKind::NumericalFailure, "Stein equation did not converge; realization not stable");
}

VectorXc HankelSvd::right(int j, Complex z) const {
    const Eigen::Index n = realization.a.rows();
    const MatrixXc m = MatrixXc::Identity(n, n) - z * realization.a.adjoint();
    return realization.b.adjoint() * m.partialPivLu().solve(x.col(j));
}

VectorXc HankelSvd::left(int j, Complex z) const {
    const Eigen::Index n = realization.a.rows();
    const MatrixXc m = z * MatrixXc::Identity(n, n) - realization.a;
    return realization.c * m.partialPivLu().solve(gram_p * x.col(j)) / sigma(j);
}

HankelSvd hankel_svd(const RatMat& a) {
    HankelSvd out;
    out.realization = realize_minus(a);
    const auto& r = out.realization;
    if (r.a.rows() == 0) return out;
    out.gram_p = stein(r.a, r.b * r.b.adjoint());
    const MatrixXc q = stein(r.a.adjoint(), r.c.adjoint() * r.c);

    Eigen::SelfAdjointEigenSolver<MatrixXc> ep(out.gram_p);
    const auto& d = ep.eigenvalues();
    const double dmax = d.cwiseAbs().maxCoeff();
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < d.size(); ++i) {
        if (d(i) > 1e-13 * dmax) keep.push_back(i);
    }
    const Eigen::Index k = static_cast<Eigen::Index>(keep.size());
    MatrixXc l(r.a.rows(), k), inv(r.a.rows(), k);
    for (Eigen::Index i = 0; i < k; ++i) {
        const double di = d(keep[static_cast<std::size_t>(i)]);
        l.col(i) = ep.eigenvectors().col(keep[static_cast<std::size_t>(i)]) * std::sqrt(di);
        inv.col(i) = ep.eigenvectors().col(keep[static_cast<std::size_t>(i)]) / std::sqrt(di);
    }
    // Square-root form: sigma are the singular values of lq* lp, accurate to eps * sigma_max.
    Eigen::SelfAdjointEigenSolver<MatrixXc> eq(q);
    MatrixXc lq = eq.eigenvectors() * eq.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal();
    Eigen::JacobiSVD<MatrixXc> g(lq.adjoint() * l, Eigen::ComputeThinV);
    const auto& sv = g.singularValues();
    Eigen::Index count = 0;
    while (count < sv.size() && sv(count) > kTol.rank * sv(0) && sv(count) > 0.0) ++count;
    out.sigma = sv.head(count);
    out.x = inv * g.matrixV().leftCols(count);
    return out;
}

HankelData build_hankel(const RatMat& a) {
    HankelData data;
    data.symbol = a;
    rank_degree_impl(a, &data);
    data.svd = hankel_svd(a);
    data.singular_values = data.svd.sigma;

    const double scale = std::max(1.0, sup_norm(a));
    const int check = std::min(data.truncation, 16);
    const auto dft = markov_coeffs_dft(a, check);
    for (int j = 0; j < check; ++j) {
        const double diff = (dft[static_cast<std::size_t>(j)] - data.markov[static_cast<std::size_t>(j)]).cwiseAbs().maxCoeff();
        if (diff > 1e-9 * scale) {
            throw Error(ErrorKind::NumericalFailure,
                        "closed-form and transform Markov coefficients differ by " + std::to_string(diff));
        }
    }

    // Long truncation: the tail beyond N blocks is below rho^N.
    double rho = 0.0;
    for (const auto& c : pole_candidates(a)) {
        if (!is_infinite(c.loc) && std::abs(c.loc) < 1.0) rho = std::max(rho, std::abs(c.loc));
    }
    int n_long = data.truncation;
    if (rho > 0.0) n_long = std::max(n_long, static_cast<int>(std::ceil(std::log(1e-13) / std::log(rho))) + 1);
    n_long = std::min(n_long, 512);
    const MatrixXc h = block_hankel(markov_coeffs(a, 2 * n_long), n_long);
    if (h.size() > 0) {
        Eigen::BDCSVD<MatrixXc> svd(h);
        const auto& s = svd.singularValues();
        const Eigen::Index keep = std::min<Eigen::Index>(s.size(), std::max<Eigen::Index>(data.rank, 1));
        data.finite_singular_values = s.head(keep);

        VectorXc v = VectorXc::Ones(h.cols()) / std::sqrt(static_cast<double>(h.cols()));
        double est = 0.0;
        for (int it = 0; it < 2000; ++it) {
            VectorXc w = h.adjoint() * (h * v);
            const double nw = w.norm();
            if (nw == 0.0) break;
            const double next = std::sqrt(nw);
            v = w / nw;
            if (std::abs(next - est) <= 1e-15 * next) {
                est = next;
                break;
            }
            est = next;
        }
        data.power_sigma0 = est;
    }
    return data;
}

int hankel_rank_degree(const RatMat& a) { return rank_degree_impl(a, nullptr); }

int hankel_rank_degree_outside(const RatMat& a) { return rank_degree_impl(compose_inverse(a), nullptr); }

double hankel_norm(const RatMat& a) {
    const auto s = hankel_svd(a);
    return s.sigma.size() > 0 ? s.sigma(0) : 0.0;
}

namespace {

RatFun fit_best(const RatFun& phi, const HankelSvd& svd, int j, const std::vector<Root>& disk, double* residual) {
    const double sigma = svd.sigma(j);
    // Schmidt functions as rational functions, to locate the poles of the error.
    std::vector<Root> xi_poles;
    int xi_inf = 0;
    for (const auto& p : disk) {
        if (p.loc == Complex(0.0)) xi_inf = std::max(xi_inf, p.mult);
        else xi_poles.push_back({1.0 / std::conj(p.loc), p.mult});
    }
    const RatFun xi = fit_with_poles([&](Complex z) { return svd.right(j, z)(0); }, xi_poles, xi_inf);
    const RatFun eta = fit_with_poles([&](Complex z) { return svd.left(j, z)(0); }, disk, 0);
    const RatFun e = sigma * divide_structural(eta, xi);

    std::vector<Root> poles;
    for (const auto& p : phi.poles()) {
        if (std::abs(p.loc) > 1.0) poles.push_back(p);
    }
    for (const auto& p : e.poles()) {
        if (std::abs(p.loc) > 1.0) poles.push_back(p);
    }
    poles = pole_lcm({poles}, kTol.structural);
    const int inf = std::max({0, phi.order_at_infinity(), e.order_at_infinity()});
    FitReport rep;
    RatFun best = fit_with_poles(
        [&](Complex z) { return phi(z) - sigma * svd.left(j, z)(0) / svd.right(j, z)(0); }, poles, inf, &rep);
    if (residual) *residual = rep.residual;
    return best;
}

}  // namespace

AakResult aak_scalar(const RatFun& phi) {
    AakResult out;
    const RatMat a = RatMat::scalar(phi, 1);
    const HankelSvd svd = hankel_svd(a);
    if (svd.sigma.size() == 0) {
        out.best = phi;
        return out;
    }
    std::vector<Root> disk;
    for (const auto& p : phi.poles()) {
        if (std::abs(p.loc) < 1.0) disk.push_back(p);
    }
    out.sigma0 = svd.sigma(0);
    out.best = fit_best(phi, svd, 0, disk, &out.fit_residual);
    out.error = phi - out.best;
    if (svd.sigma.size() > 1 && svd.sigma(1) >= out.sigma0 * (1.0 - kTol.structural)) {
        out.multiple_top = true;
        const RatFun other = fit_best(phi, svd, 1, disk, nullptr);
        for (auto z : circle_grid(kDefaultGrid)) out.choice_gap = std::max(out.choice_gap, std::abs(other(z) - out.best(z)));
    }
    return out;
}

SingularShiftData singular_shift_check(const RatMat& u) {
    if (u.rows() != u.cols()) throw Error(ErrorKind::ShapeError, "unitary-valued symbol must be square");
    const Eigen::Index n = u.rows();
    for (auto z : circle_grid(kDefaultGrid)) {
        const MatrixXc v = u.at(z);
        if ((v.adjoint() * v - MatrixXc::Identity(n, n)).cwiseAbs().maxCoeff() > 1e-8) {
            throw Error(ErrorKind::NonUnitarySymbol, "symbol is not unitary on the circle");
        }
    }
    SingularShiftData out;
    const auto su = hankel_svd(u).sigma;
    const auto sus = hankel_svd(star(u)).sigma;
    out.s_u.assign(su.data(), su.data() + su.size());
    out.s_ustar.assign(sus.data(), sus.data() + sus.size());
    for (double s : out.s_u) {
        if (std::abs(s - 1.0) <= kTol.structural) ++out.mu;
    }
    const std::size_t mu = static_cast<std::size_t>(out.mu);
    const std::size_t len = std::max(out.s_ustar.size(), out.s_u.size() > mu ? out.s_u.size() - mu : 0);
    for (std::size_t j = 0; j < len; ++j) {
        const double a = j < out.s_ustar.size() ? out.s_ustar[j] : 0.0;
        const double b = j + mu < out.s_u.size() ? out.s_u[j + mu] : 0.0;
        out.max_mismatch = std::max(out.max_mismatch, std::abs(a - b));
    }
    return out;
}

}  // namespace superopt
