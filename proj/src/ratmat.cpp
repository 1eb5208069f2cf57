#include "superopt/ratmat.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SVD>

namespace superopt {

RatMat::RatMat(Eigen::Index rows, Eigen::Index cols)
    : rows_(rows), cols_(cols), entries_(static_cast<std::size_t>(rows * cols)) {
    if (rows < 0 || cols < 0) throw Error(ErrorKind::ShapeError, "negative dimension");
}

RatMat RatMat::constant(const MatrixXc& c) {
    RatMat a(c.rows(), c.cols());
    for (Eigen::Index i = 0; i < c.rows(); ++i) {
        for (Eigen::Index j = 0; j < c.cols(); ++j) a(i, j) = RatFun::constant(c(i, j));
    }
    return a;
}

RatMat RatMat::identity(Eigen::Index n) {
    return constant(MatrixXc::Identity(n, n));
}

RatMat RatMat::scalar(const RatFun& f, Eigen::Index n) {
    RatMat a(n, n);
    for (Eigen::Index i = 0; i < n; ++i) a(i, i) = f;
    return a;
}

MatrixXc RatMat::at(Complex z) const {
    MatrixXc m(rows_, cols_);
    for (Eigen::Index i = 0; i < rows_; ++i) {
        for (Eigen::Index j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j)(z);
    }
    return m;
}

bool RatMat::is_zero() const {
    return std::all_of(entries_.begin(), entries_.end(), [](const RatFun& f) { return f.is_zero(); });
}

RatMat mat_ops(const RatMat& a, const RatMat& b, MatOp op) {
    if (op == MatOp::Mul) {
        if (a.cols() != b.rows()) throw Error(ErrorKind::ShapeError, "inner dimensions differ");
        RatMat c(a.rows(), b.cols());
        for (Eigen::Index i = 0; i < a.rows(); ++i) {
            for (Eigen::Index j = 0; j < b.cols(); ++j) {
                RatFun acc;
                for (Eigen::Index k = 0; k < a.cols(); ++k) {
                    if (a(i, k).is_zero() || b(k, j).is_zero()) continue;
                    acc = acc + a(i, k) * b(k, j);
                }
                c(i, j) = acc;
            }
        }
        return c;
    }
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error(ErrorKind::ShapeError, "shapes differ");
    RatMat c(a.rows(), a.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            c(i, j) = op == MatOp::Add ? a(i, j) + b(i, j) : a(i, j) - b(i, j);
        }
    }
    return c;
}

RatMat operator+(const RatMat& a, const RatMat& b) { return mat_ops(a, b, MatOp::Add); }
RatMat operator-(const RatMat& a, const RatMat& b) { return mat_ops(a, b, MatOp::Sub); }
RatMat operator*(const RatMat& a, const RatMat& b) { return mat_ops(a, b, MatOp::Mul); }

RatMat operator*(const RatFun& f, const RatMat& a) {
    RatMat c(a.rows(), a.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) c(i, j) = f * a(i, j);
    }
    return c;
}

RatMat operator*(Complex s, const RatMat& a) {
    RatMat c(a.rows(), a.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) c(i, j) = s * a(i, j);
    }
    return c;
}

RatMat transpose(const RatMat& a) {
    RatMat t(a.cols(), a.rows());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
    }
    return t;
}

RatMat sharp(const RatMat& a) {
    RatMat s(a.rows(), a.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) s(i, j) = reflect_sharp(a(i, j));
    }
    return s;
}

RatMat star(const RatMat& a) { return transpose(sharp(a)); }

RatMat compose_inverse(const RatMat& a) {
    RatMat s(a.rows(), a.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) s(i, j) = compose_inverse(a(i, j));
    }
    return s;
}

RatMat adjugate(const RatMat& a) {
    if (a.rows() != 2 || a.cols() != 2) throw Error(ErrorKind::ShapeError, "adjugate is defined for 2x2 only");
    RatMat d(2, 2);
    d(0, 0) = a(1, 1);
    d(0, 1) = -a(0, 1);
    d(1, 0) = -a(1, 0);
    d(1, 1) = a(0, 0);
    return d;
}

RatFun determinant(const RatMat& a) {
    if (a.rows() != a.cols()) throw Error(ErrorKind::ShapeError, "determinant of a non-square matrix");
    const Eigen::Index n = a.rows();
    if (n == 0) return RatFun::constant(1.0);
    if (n == 1) return a(0, 0);
    RatFun det;
    for (Eigen::Index j = 0; j < n; ++j) {
        if (a(0, j).is_zero()) continue;
        RatMat minor(n - 1, n - 1);
        for (Eigen::Index r = 1; r < n; ++r) {
            for (Eigen::Index c = 0, cc = 0; c < n; ++c) {
                if (c == j) continue;
                minor(r - 1, cc++) = a(r, c);
            }
        }
        const RatFun term = a(0, j) * determinant(minor);
        det = j % 2 == 0 ? det + term : det - term;
    }
    return det;
}

RatMat j_matrix() {
    MatrixXc j(2, 2);
    j << 0.0, -1.0, 1.0, 0.0;
    return RatMat::constant(j);
}

RieszSplitMat riesz_split_mat(const RatMat& a) {
    RieszSplitMat s{RatMat(a.rows(), a.cols()), RatMat(a.rows(), a.cols())};
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            auto e = riesz_split(a(i, j));
            s.minus(i, j) = e.minus;
            s.plus(i, j) = e.plus;
        }
    }
    return s;
}

RatMat fit_mat(const std::function<MatrixXc(Complex)>& f, Eigen::Index rows, Eigen::Index cols,
               const std::vector<Root>& poles, int inf_order_bound, double* residual) {
    RatMat out(rows, cols);
    double worst = 0.0;
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (Eigen::Index j = 0; j < cols; ++j) {
            FitReport rep;
            out(i, j) = fit_with_poles([&](Complex z) { return f(z)(i, j); }, poles, inf_order_bound, &rep);
            worst = std::max(worst, rep.residual);
        }
    }
    if (residual) *residual = worst;
    return out;
}

std::vector<Root> pole_candidates(const RatMat& a) {
    std::vector<Root> out;
    int inf = 0;
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            const RatFun& f = a(i, j);
            if (f.is_zero()) continue;
            inf = std::max(inf, f.order_at_infinity());
            for (const auto& p : f.poles()) {
                auto it = std::find_if(out.begin(), out.end(),
                                       [&](const Root& r) { return near(r.loc, p.loc, kTol.structural); });
                if (it == out.end()) out.push_back(p);
                else it->mult = std::max(it->mult, p.mult);
            }
        }
    }
    canonical_sort(out, kTol.match);
    if (inf > 0) out.push_back({kInfinity, inf});
    return out;
}

int numerical_rank(const MatrixXc& m, double floor) {
    if (m.size() == 0) return 0;
    Eigen::JacobiSVD<MatrixXc> svd(m);
    const auto& s = svd.singularValues();
    const double thr = kTol.rank * std::max(s(0), floor);
    int r = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i) {
        if (s(i) > thr) ++r;
    }
    return r;
}

LocalDegreeData local_degree(const RatMat& a, Complex lambda) {
    LocalDegreeData out;
    out.lambda = lambda;
    const auto cands = pole_candidates(a);
    const bool at_inf = is_infinite(lambda);

    int m = 0;
    std::vector<Complex> others;
    for (const auto& c : cands) {
        const bool same = at_inf ? is_infinite(c.loc) : (!is_infinite(c.loc) && near(c.loc, lambda, kTol.structural));
        if (same) m = c.mult;
        else if (at_inf) {
            if (c.loc != Complex(0.0)) others.push_back(1.0 / c.loc);
        } else if (!is_infinite(c.loc)) {
            others.push_back(c.loc);
        }
    }
    if (m == 0) return out;

    const Complex centre = at_inf ? Complex(0.0) : lambda;
    double radius = 0.5 * (1.0 + std::abs(centre));
    for (auto o : others) radius = std::min(radius, 0.5 * std::abs(o - centre));
    if (radius < 1e-7 * (1.0 + std::abs(centre))) {
        throw Error(ErrorKind::NumericalFailure, "singularities closer than the contour resolution");
    }
    out.radius = radius;

    const int k_nodes = 256;
    const auto grid = circle_grid(k_nodes);
    std::vector<MatrixXc> scaled(static_cast<std::size_t>(m), MatrixXc::Zero(a.rows(), a.cols()));
    double fmax = 0.0;
    for (int j = 0; j < k_nodes; ++j) {
        const Complex e = grid[static_cast<std::size_t>(j)];
        const Complex z = centre + radius * e;
        const MatrixXc f = a.at(at_inf ? 1.0 / z : z);
        fmax = std::max(fmax, f.cwiseAbs().maxCoeff());
        Complex ek = e;
        for (int k = 1; k <= m; ++k) {
            scaled[static_cast<std::size_t>(k - 1)] += f * ek;
            ek *= e;
        }
    }
    for (auto& c : scaled) c /= static_cast<double>(k_nodes);

    const Eigen::Index r = a.rows(), c = a.cols();
    MatrixXc h = MatrixXc::Zero(m * r, m * c);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; i + j < m; ++j) h.block(i * r, j * c, r, c) = scaled[static_cast<std::size_t>(i + j)];
    }
    out.degree = numerical_rank(h, fmax);
    double rk = 1.0;
    for (int k = 1; k <= m; ++k) {
        rk *= radius;
        out.principal_coefficients.push_back(scaled[static_cast<std::size_t>(k - 1)] * rk);
    }
    return out;
}

std::vector<LocalDegreeData> local_degrees(const RatMat& a, const Region& region) {
    std::vector<LocalDegreeData> out;
    const bool split = region.kind == Region::Kind::InsideDisk || region.kind == Region::Kind::OutsideDisk;
    for (const auto& c : pole_candidates(a)) {
        if (split && !is_infinite(c.loc) && std::abs(std::abs(c.loc) - 1.0) <= kTol.circle) {
            throw Error(ErrorKind::PoleOnCircle, "pole within the circle band");
        }
        if (region.contains(c.loc)) out.push_back(local_degree(a, c.loc));
    }
    return out;
}

int mcmillan_degree(const RatMat& a, const Region& region) {
    int d = 0;
    for (const auto& l : local_degrees(a, region)) d += l.degree;
    return d;
}

PotapovProduct potapov_product(const std::vector<PotapovFactor>& factors, const MatrixXc& u) {
    const Eigen::Index n = u.rows();
    if (u.cols() != n) throw Error(ErrorKind::ShapeError, "unitary constant must be square");
    if ((u.adjoint() * u - MatrixXc::Identity(n, n)).norm() > 1e-12) {
        throw Error(ErrorKind::InvalidUnitary, "constant factor is not unitary");
    }
    PotapovProduct out{RatMat::constant(u), 0};
    for (const auto& f : factors) {
        if (f.basis.rows() != n) throw Error(ErrorKind::ShapeError, "projection size differs from the constant");
        const Eigen::Index k = f.basis.cols();
        if ((f.basis.adjoint() * f.basis - MatrixXc::Identity(k, k)).norm() > 1e-12) {
            throw Error(ErrorKind::InvalidUnitary, "projection basis is not orthonormal");
        }
        const RatFun b = blaschke({f.lambda});
        const MatrixXc p = f.projection();
        const MatrixXc q = MatrixXc::Identity(n, n) - p;
        RatMat factor(n, n);
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = 0; j < n; ++j) {
                RatFun e;
                if (std::abs(p(i, j)) > 1e-15) e = p(i, j) * b;
                if (std::abs(q(i, j)) > 1e-15) e = e + RatFun::constant(q(i, j));
                factor(i, j) = e;
            }
        }
        out.b = out.b * factor;
        out.degree += static_cast<int>(k);
    }
    return out;
}

}  // namespace superopt
