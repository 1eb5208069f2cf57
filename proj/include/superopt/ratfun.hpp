#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "superopt/common.hpp"
#include "superopt/poly.hpp"

namespace superopt {

inline const Complex kInfinity{std::numeric_limits<double>::infinity(), 0.0};

inline bool is_infinite(Complex z) {
    return std::isinf(z.real()) || std::isinf(z.imag());
}

/// Scalar rational function kept in factored form
///
///     f(z) = gain * prod (z - zero_i)^{m_i} / prod (z - pole_j)^{n_j}
///
/// over finite roots. The behaviour at infinity is implied by the degree
/// balance: order_at_infinity() > 0 is a pole there, < 0 a zero.
class RatFun {
public:
    /// The identically zero function.
    RatFun() = default;

    static RatFun zero() { return RatFun(); }
    static RatFun constant(Complex c);
    /// z
    static RatFun identity();
    /// Canonicalizes: merges equal locations, cancels coincident zero/pole pairs.
    static RatFun factored(Complex gain, std::vector<Root> zeros, std::vector<Root> poles,
                           double cancel_tol = kTol.match);
    /// num/den in ascending coefficients; common roots cancelled.
    static RatFun from_coefficients(const Poly& num, const Poly& den);
    /// num / prod (z - p)^n for known finite poles; roots of num that sit on a
    /// pole are divided out before the remaining roots are found.
    static RatFun from_numerator(const Poly& num, const std::vector<Root>& poles);

    bool is_zero() const noexcept { return is_zero_; }
    Complex gain() const noexcept { return gain_; }
    const std::vector<Root>& zeros() const noexcept { return zeros_; }
    const std::vector<Root>& poles() const noexcept { return poles_; }

    int order_at_infinity() const;
    /// Zero/pole lists including an explicit infinity entry when present.
    std::vector<Root> zeros_with_infinity() const;
    std::vector<Root> poles_with_infinity() const;

    Complex operator()(Complex z) const;

    /// gain * prod(z - zero_i) and prod(z - pole_j).
    Poly numerator() const;
    Poly denominator() const;

    std::string to_string() const;

private:
    Complex gain_ = 0.0;
    std::vector<Root> zeros_;
    std::vector<Root> poles_;
    bool is_zero_ = true;
};

Complex eval(const RatFun& f, Complex z);

enum class CombineOp { Add, Sub, Mul, Div };

RatFun combine(const RatFun& f, const RatFun& g, CombineOp op);

RatFun operator+(const RatFun& f, const RatFun& g);
RatFun operator-(const RatFun& f, const RatFun& g);
RatFun operator-(const RatFun& f);
RatFun operator*(const RatFun& f, const RatFun& g);
RatFun operator/(const RatFun& f, const RatFun& g);
RatFun operator*(Complex c, const RatFun& f);

/// Quotient with a looser coincidence tolerance, for roots obtained on independent routes.
RatFun divide_structural(const RatFun& f, const RatFun& g, double cancel_tol = kTol.structural);

/// f#(z) = conj(f(1 / conj z)).
RatFun reflect_sharp(const RatFun& f);

/// f(1 / z).
RatFun compose_inverse(const RatFun& f);

/// Laurent coefficients c_{-1}, ..., c_{-m} of f at a finite pole.
std::vector<Complex> principal_part(const RatFun& f, const Root& pole);

struct RieszSplit {
    RatFun minus;  // principal parts at poles inside the disk, vanishes at infinity
    RatFun plus;
};

RieszSplit riesz_split(const RatFun& f);

/// Region of the Riemann sphere for degree queries.
struct Region {
    enum class Kind { InsideDisk, OnCircle, OutsideDisk, Sphere, Points };
    Kind kind = Kind::Sphere;
    std::vector<Complex> points;  // Points only; kInfinity allowed

    static Region inside() { return {Kind::InsideDisk, {}}; }
    static Region outside() { return {Kind::OutsideDisk, {}}; }
    static Region sphere() { return {Kind::Sphere, {}}; }
    static Region at(std::vector<Complex> pts) { return {Kind::Points, std::move(pts)}; }

    /// Rejects locations inside the circle band.
    bool contains(Complex z) const;
    /// Points reflected through the circle: z -> 1 / conj z.
    Region reflected() const;
};

int degree_at(const RatFun& f, Complex lambda);
int degree_region(const RatFun& f, const Region& region);

/// Zeros minus poles inside the disk, cross-checked by the argument increment
/// over a 1024-point circle grid.
int winding_number(const RatFun& f);

struct BadApproxCertificate {
    bool badly_approximable = false;
    int deg_minus = 0;
    int deg_plus = 0;
    double modulus_min = 0.0;
    double modulus_max = 0.0;
};

BadApproxCertificate is_badly_approximable(const RatFun& f, int grid = kDefaultGrid);

/// c * prod (lambda_j - z) / (1 - conj(lambda_j) z).
RatFun blaschke(const std::vector<Complex>& zeros, Complex unimodular = 1.0);

/// Outer h (no zeros or poles in the closed disk) with |h|^2 = s on the circle and h(0) > 0.
RatFun spectral_factor(const RatFun& s);

struct FitReport {
    double alias = 0.0;     // relative size of discarded high-order coefficients
    double residual = 0.0;  // relative sup error of the fit on the sample circle
};

/// Rebuilds a rational function known pointwise from a superset of its finite
/// poles and a bound on its pole order at infinity.
RatFun fit_with_poles(const std::function<Complex(Complex)>& f, const std::vector<Root>& poles,
                      int inf_order_bound, FitReport* report = nullptr);

/// Merge of several pole lists keeping the largest multiplicity per location.
std::vector<Root> pole_lcm(const std::vector<std::vector<Root>>& lists, double rel = kTol.match);

}  // namespace superopt
