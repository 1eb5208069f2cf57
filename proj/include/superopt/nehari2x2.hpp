#pragma once

#include <string>

#include "superopt/thematic.hpp"

namespace superopt {

struct SuperoptCertificates {
    double s0_deviation = 0.0;     // max |s0(Phi - F) - t0| on the grid
    double s1_deviation = 0.0;     // max |s1(Phi - F) - t1|
    double reproduction = 0.0;     // max |assemble(factorization, t1) - (Phi - F)|
    double corner_residual = 0.0;  // relative residual of the second-stage principal-part solve
    double fit_residual = 0.0;
    bool multiple_top = false;     // top Hankel singular value is not simple
};

struct SuperoptResult {
    RatMat approximant;
    double t0 = 0.0;
    double t1 = 0.0;
    ThematicData factorization;
    SuperoptCertificates certificates;
    bool identity_case = false;  // P_-Phi = 0, approximant = Phi
    bool degenerate = false;     // t1 = 0; u1 is set to 1/z by convention
    bool certified() const;
};

/// Superoptimal approximation of a 2x2 rational Phi with no poles on the circle.
SuperoptResult superoptimal(const RatMat& phi);

struct VeryBadCertificate {
    bool pass = false;
    double s0_spread = 0.0;
    double s1_spread = 0.0;
    double approximant_sup = 0.0;
    std::string detail;
};

/// Flat singular values on the grid and a vanishing superoptimal approximant.
VeryBadCertificate verify_very_bad(const RatMat& psi);

struct SuperoptDegreeReport {
    int deg_phi = 0;
    int deg_approximant = 0;
    bool t1_zero = false;
    bool identity_case = false;
    int bound = 0;  // k - 1 when t1 = 0, 2k - 3 otherwise
    bool holds = true;
};

/// Degrees of Phi and of its superoptimal approximant, each computed by the
/// local and the Hankel-rank oracle (NumericalFailure when they differ).
SuperoptDegreeReport superopt_degree_report(const RatMat& phi);

}  // namespace superopt
