#pragma once

#include <vector>

#include "superopt/thematic.hpp"

namespace superopt {

/// Inputs and derived data of the two-sided Blaschke construction
///
///     Psi = M diag(B0/B1, t B2/B0) M,   M = ((1/B0, a), (-a, B0)),
///
/// where 1 - t_j a^2 B1 B2 vanishes on the block Delta_j of zeros of B0.
struct CounterexampleSpec {
    int k = 2;
    double a = 2.0;
    std::vector<double> t_values;
    std::vector<int> partition_sizes;
    RatFun b0, b1, b2;
    std::vector<std::vector<Complex>> delta;
};

/// B1 zeros 0.6 exp(2 pi i j / k) and B2 = z^{k-2}.
std::vector<Complex> default_b1_zeros(int k);
std::vector<Complex> default_b2_zeros(int k);

/// Thematic data of the family through the construction: t0 = 1 + a^2,
/// u0 = B0/B1, u1 = B2/B0, v = (B0, a)/c, w = (B0, -a)/c with c = sqrt(1 + a^2).
/// t1 is set from the first t value.
ThematicData construction_thematic(const CounterexampleSpec& spec);

struct KpResult {
    CounterexampleSpec spec;
    ThematicData thematic;
    RatMat psi;
    RatMat phi;  // negative part of psi
    int deg_minus = 0;
    int deg_plus = 0;
};

/// Single disturbing value t: B0 takes the k - 1 largest disk zeros of
/// 1 - t a^2 B1 B2. Checks deg P-Psi = k and deg P+Psi = 2k - 3 with both
/// degree oracles.
KpResult build_kp(int k, double a, double t, const std::vector<Complex>& b1_zeros,
                  const std::vector<Complex>& b2_zeros);

struct EkpResult {
    CounterexampleSpec spec;
    ThematicData thematic;
    std::vector<DegreeRow> rows;  // one per t_j, absolute t
};

/// Several disturbing values: block j takes kappa_j zeros of 1 - t_j a^2 B1 B2.
/// Checks deg P+ = deg P- - 2 + kappa_j at every t_j.
EkpResult build_ekp(int k, double a, const std::vector<double>& t_values, const std::vector<int>& kappa,
                    const std::vector<Complex>& b1_zeros, const std::vector<Complex>& b2_zeros);

/// Blaschke product B of degree exactly degree_budget with B(nodes[i]) = targets[i],
/// by Schur recursion; the free parameter left after the nodes is z^{budget - n}.
RatFun interpolate_blaschke(const std::vector<Complex>& nodes, const std::vector<Complex>& targets,
                            int degree_budget);

}  // namespace superopt
