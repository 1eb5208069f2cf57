#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace superopt {

using Complex = std::complex<double>;
using MatrixXc = Eigen::MatrixXcd;
using VectorXc = Eigen::VectorXcd;

enum class ErrorKind {
    InvalidFunction,
    PoleEvaluation,
    NumericalFailure,
    PoleOnCircle,
    OnCircleSingularity,
    InvalidBlaschkeZero,
    NotPositive,
    NotSelfReflective,
    ShapeError,
    InvalidUnitary,
    TruncationTooSmall,
    NonUnitarySymbol,
    InvalidThematicData,
    TheoremViolation,
    ConstructionFailure,
    InfeasibleInterpolation,
    InputError,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Numerical thresholds shared by every module.
struct Tolerances {
    double match = 1e-9;     // root/pole coincidence, relative to 1 + |lambda|
    double circle = 1e-8;    // on-circle rejection band
    double rank = 1e-8;      // relative singular-value cutoff in rank decisions
    double cluster = 1e-6;   // merging of numerically split multiple roots
    double deflate = 1e-9;   // relative residual accepted when dividing out a known root
    double structural = 1e-6;// cancellation of roots computed on independent routes
};

inline constexpr Tolerances kTol{};

inline constexpr int kDefaultGrid = 256;

/// Equispaced points exp(2 pi i k / n) on the unit circle.
inline std::vector<Complex> circle_grid(int n) {
    std::vector<Complex> pts(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        pts[static_cast<std::size_t>(k)] = std::polar(1.0, 2.0 * std::numbers::pi * k / n);
    }
    return pts;
}

inline bool near(Complex a, Complex b, double rel) {
    return std::abs(a - b) <= rel * (1.0 + std::max(std::abs(a), std::abs(b)));
}

}  // namespace superopt
