#pragma once

#include <vector>

#include "superopt/common.hpp"

namespace superopt {

/// A root (or pole) location together with its multiplicity.
struct Root {
    Complex loc;
    int mult = 1;
};

/// Polynomial coefficients in ascending powers of z.
using Poly = VectorXc;

Poly poly_constant(Complex c);
Poly poly_from_roots(const std::vector<Root>& roots);
Complex poly_eval(const Poly& p, Complex z);
Poly poly_mul(const Poly& a, const Poly& b);
Poly poly_add(const Poly& a, const Poly& b);
Poly poly_derivative(const Poly& p);

// Largest coefficient modulus; 0 for the zero polynomial.
double poly_scale(const Poly& p);

// Drops leading (highest-power) coefficients below rel * poly_scale(p).
Poly poly_trim(const Poly& p, double rel = 0.0);

// Degree after exact trimming; -1 for the zero polynomial.
int poly_degree(const Poly& p);

/// Synthetic division by (z - r); the remainder is p(r).
Poly poly_deflate(const Poly& p, Complex r, Complex* remainder = nullptr);

/// |p(z)| relative to sum |c_j| |z|^j, i.e. the rounding scale of evaluating p at z.
double poly_relative_residual(const Poly& p, Complex z);

/// Roots of p via eigenvalues of a balanced companion matrix, one Newton
/// polish per root, clustering of numerically split multiple roots.
std::vector<Root> poly_roots(const Poly& p, const Tolerances& tol = kTol);

/// Divides out every root in `known` (up to its multiplicity) that p has to
/// relative residual tol.deflate. Returns the roots actually removed.
std::vector<Root> deflate_known_roots(Poly& p, const std::vector<Root>& known, const Tolerances& tol = kTol);

/// Connected components of the "closer than rel*(1+|z|)" relation.
std::vector<std::vector<Complex>> cluster_groups(const std::vector<Complex>& pts, double rel);

/// Groups points closer than rel*(1+|z|) into roots with multiplicity.
std::vector<Root> cluster_points(const std::vector<Complex>& pts, double rel);

/// Lexicographic by real part, then imaginary part; equal locations merged.
void canonical_sort(std::vector<Root>& roots, double rel);

int total_multiplicity(const std::vector<Root>& roots);

}  // namespace superopt
