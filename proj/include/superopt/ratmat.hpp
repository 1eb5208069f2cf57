#pragma once

#include <vector>

#include "superopt/ratfun.hpp"

namespace superopt {

/// Dense matrix of scalar rational functions, row-major.
class RatMat {
public:
    RatMat() = default;
    /// rows x cols zero matrix.
    RatMat(Eigen::Index rows, Eigen::Index cols);

    static RatMat constant(const MatrixXc& c);
    static RatMat identity(Eigen::Index n);
    /// Scalar f times the n x n identity.
    static RatMat scalar(const RatFun& f, Eigen::Index n);

    Eigen::Index rows() const noexcept { return rows_; }
    Eigen::Index cols() const noexcept { return cols_; }

    RatFun& operator()(Eigen::Index i, Eigen::Index j) { return entries_[static_cast<std::size_t>(i * cols_ + j)]; }
    const RatFun& operator()(Eigen::Index i, Eigen::Index j) const {
        return entries_[static_cast<std::size_t>(i * cols_ + j)];
    }

    /// Pointwise value.
    MatrixXc at(Complex z) const;

    bool is_zero() const;

private:
    Eigen::Index rows_ = 0;
    Eigen::Index cols_ = 0;
    std::vector<RatFun> entries_;
};

enum class MatOp { Add, Sub, Mul };

RatMat mat_ops(const RatMat& a, const RatMat& b, MatOp op);

RatMat operator+(const RatMat& a, const RatMat& b);
RatMat operator-(const RatMat& a, const RatMat& b);
RatMat operator*(const RatMat& a, const RatMat& b);
RatMat operator*(const RatFun& f, const RatMat& a);
RatMat operator*(Complex c, const RatMat& a);

RatMat transpose(const RatMat& a);
/// Entrywise reflection, no transpose.
RatMat sharp(const RatMat& a);
/// transpose(sharp(a)); equals the conjugate transpose on the circle.
RatMat star(const RatMat& a);
/// Entrywise f(1/z).
RatMat compose_inverse(const RatMat& a);
/// 2x2 only: ((d, -b), (-c, a)).
RatMat adjugate(const RatMat& a);
/// Square matrices by cofactor expansion.
RatFun determinant(const RatMat& a);

/// J = ((0, -1), (1, 0)).
RatMat j_matrix();

struct RieszSplitMat {
    RatMat minus;
    RatMat plus;
};

RieszSplitMat riesz_split_mat(const RatMat& a);

/// Entrywise refit from pointwise values, see fit_with_poles.
RatMat fit_mat(const std::function<MatrixXc(Complex)>& f, Eigen::Index rows, Eigen::Index cols,
               const std::vector<Root>& poles, int inf_order_bound, double* residual = nullptr);

/// Candidate singular points: union of entry poles merged within the
/// structural tolerance, multiplicity = largest entry multiplicity.
/// A pole at infinity is included when some entry has one.
std::vector<Root> pole_candidates(const RatMat& a);

struct LocalDegreeData {
    Complex lambda;
    /// principal_coefficients[k - 1] is the Laurent coefficient of (z - lambda)^{-k}
    /// (of z^k for lambda at infinity).
    std::vector<MatrixXc> principal_coefficients;
    int degree = 0;
    double radius = 0.0;
};

/// Principal part by trapezoid contour integration (256 nodes) on a circle of
/// half the distance to the nearest other candidate; degree = block-Hankel rank.
LocalDegreeData local_degree(const RatMat& a, Complex lambda);

int mcmillan_degree(const RatMat& a, const Region& region);

/// Local degrees at every candidate pole inside the region.
std::vector<LocalDegreeData> local_degrees(const RatMat& a, const Region& region);

/// Rank of a block-Hankel matrix with threshold kTol.rank * max(sigma_max, floor).
int numerical_rank(const MatrixXc& m, double floor = 0.0);

/// ((lambda - z)/(1 - conj(lambda) z)) P + (I - P), P the projection onto range(basis).
struct PotapovFactor {
    Complex lambda;
    MatrixXc basis;  // orthonormal columns

    MatrixXc projection() const { return basis * basis.adjoint(); }
};

struct PotapovProduct {
    RatMat b;
    int degree = 0;
};

PotapovProduct potapov_product(const std::vector<PotapovFactor>& factors, const MatrixXc& u);

}  // namespace superopt
