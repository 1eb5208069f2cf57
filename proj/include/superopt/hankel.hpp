#pragma once

#include <vector>

#include "superopt/ratmat.hpp"

namespace superopt {

/// Coefficients of z^{-1}, ..., z^{-n} of A, from the principal parts at the disk poles.
std::vector<MatrixXc> markov_coeffs(const RatMat& a, int n);

/// Same coefficients by a discrete transform over `points` circle nodes.
std::vector<MatrixXc> markov_coeffs_dft(const RatMat& a, int n, int points = 4096);

/// Block matrix with block (i, j) = coeffs[i + j] (0-based), n x n blocks.
MatrixXc block_hankel(const std::vector<MatrixXc>& coeffs, int n);

/// Minimal P_-A(z) = c (zI - a)^{-1} b, assembled pole by pole from the principal parts.
struct Realization {
    MatrixXc a, b, c;
};

Realization realize_minus(const RatMat& a);

/// Solves P = a P a* + q by Smith doubling; a must be stable.
MatrixXc stein(const MatrixXc& a, const MatrixXc& q);

/// Singular system of the Hankel operator computed from the Gramians of a realization.
/// Right Schmidt vector j: f_j(z) = b* (I - z a*)^{-1} x_j (analytic).
/// Left Schmidt vector j: g_j(z) = c (zI - a)^{-1} p x_j / sigma_j (vanishes at infinity).
struct HankelSvd {
    Realization realization;
    MatrixXc gram_p;
    Eigen::VectorXd sigma;  // descending, nonzero ones only
    MatrixXc x;             // column j gives the state vector of pair j

    VectorXc right(int j, Complex z) const;
    VectorXc left(int j, Complex z) const;
};

HankelSvd hankel_svd(const RatMat& a);

struct HankelData {
    RatMat symbol;
    int truncation = 0;
    std::vector<MatrixXc> markov;     // first `truncation` coefficients
    MatrixXc matrix;                  // truncation x truncation blocks
    int rank = 0;
    Eigen::VectorXd singular_values;  // exact, descending
    Eigen::VectorXd finite_singular_values;  // leading values of a long truncation
    double power_sigma0 = 0.0;        // power iteration on the long truncation
    HankelSvd svd;
};

/// Truncation starts at (sum of disk pole orders + 4) and doubles up to 512
/// until the rank agrees at N and N + 1.
HankelData build_hankel(const RatMat& a);

/// Rank of the finite block-Hankel matrix (disk McMillan degree).
int hankel_rank_degree(const RatMat& a);

/// Same for the exterior, through z -> 1/z.
int hankel_rank_degree_outside(const RatMat& a);

double hankel_norm(const RatMat& a);

struct AakResult {
    RatFun best;
    RatFun error;  // phi - best
    double sigma0 = 0.0;
    bool multiple_top = false;  // top singular value has multiplicity > 1
    double choice_gap = 0.0;    // sup difference of the best approximants from two top vectors
    double fit_residual = 0.0;
};

AakResult aak_scalar(const RatFun& phi);

struct SingularShiftData {
    int mu = 0;
    std::vector<double> s_u;       // singular values of H_U
    std::vector<double> s_ustar;   // singular values of H_{U*}
    double max_mismatch = 0.0;     // max_j |s_j(H_{U*}) - s_{j+mu}(H_U)|
};

SingularShiftData singular_shift_check(const RatMat& u);

}  // namespace superopt
