#pragma once

#include <random>

#include "superopt/thematic.hpp"

namespace superopt {

using Rng = std::mt19937_64;

/// Point with modulus uniform in [r_min, r_max] and uniform argument.
Complex random_point(Rng& rng, double r_min, double r_max);

/// Scalar with `inside` simple poles in |z| <= 0.8, `outside` in 1.25 <= |z| <= 3,
/// and `zeros` zeros anywhere in |z| <= 3.
RatFun random_ratfun(Rng& rng, int inside, int outside, int zeros);

/// Random function with exactly d poles in the disk (degree of the negative part = d),
/// plus an analytic remainder.
RatFun random_symbol(Rng& rng, int d);

/// Polynomial of degree <= d with random complex coefficients of modulus <= 1.
RatFun random_polynomial(Rng& rng, int d);

/// Sum of random principal parts with matrix coefficients of random rank, total
/// McMillan degree at most max_degree, poles inside and outside the disk and
/// possibly at infinity.
RatMat random_ratmat(Rng& rng, Eigen::Index rows, Eigen::Index cols, int max_degree);

/// rows x cols matrix of random polynomials of degree <= d.
RatMat random_analytic(Rng& rng, Eigen::Index rows, Eigen::Index cols, int d);

/// Analytic column p / h of unit norm on the circle, p a pair of random
/// polynomials of degree d and h the outer spectral factor of |p1|^2 + |p2|^2.
std::array<RatFun, 2> random_inner_column(Rng& rng, int d);

/// c B_a / B_b with deg B_b = deg B_a + 1 = n + 1; unimodular and badly approximable.
RatFun random_unimodular(Rng& rng, int n);

/// Valid thematic data whose family has disk degree at most max_degree (>= 2),
/// t0 in [0.5, 2] and t1 in [0.2, 0.9] t0.
ThematicData random_thematic(Rng& rng, int max_degree);

/// Haar-ish random unitary from a QR factorization.
MatrixXc random_unitary(Rng& rng, Eigen::Index n);

}  // namespace superopt
