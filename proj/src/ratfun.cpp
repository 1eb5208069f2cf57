#include "superopt/ratfun.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace superopt {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidFunction: return "InvalidFunction";
        case ErrorKind::PoleEvaluation: return "PoleEvaluation";
        case ErrorKind::NumericalFailure: return "NumericalFailure";
        case ErrorKind::PoleOnCircle: return "PoleOnCircle";
        case ErrorKind::OnCircleSingularity: return "OnCircleSingularity";
        case ErrorKind::InvalidBlaschkeZero: return "InvalidBlaschkeZero";
        case ErrorKind::NotPositive: return "NotPositive";
        case ErrorKind::NotSelfReflective: return "NotSelfReflective";
        case ErrorKind::ShapeError: return "ShapeError";
        case ErrorKind::InvalidUnitary: return "InvalidUnitary";
        case ErrorKind::TruncationTooSmall: return "TruncationTooSmall";
        case ErrorKind::NonUnitarySymbol: return "NonUnitarySymbol";
        case ErrorKind::InvalidThematicData: return "InvalidThematicData";
        case ErrorKind::TheoremViolation: return "TheoremViolation";
        case ErrorKind::ConstructionFailure: return "ConstructionFailure";
        case ErrorKind::InfeasibleInterpolation: return "InfeasibleInterpolation";
        case ErrorKind::InputError: return "InputError";
    }
    return "Unknown";
}

namespace {

// Subtracts the multiplicities of `sub` from `from` (locations matched within rel).
std::vector<Root> root_difference(const std::vector<Root>& from, const std::vector<Root>& sub, double rel) {
    std::vector<Root> out = from;
    for (const auto& s : sub) {
        for (auto& r : out) {
            if (near(r.loc, s.loc, rel)) {
                r.mult -= s.mult;
                break;
            }
        }
    }
    std::erase_if(out, [](const Root& r) { return r.mult <= 0; });
    return out;
}

// Product of two Taylor series truncated to the length of the first.
std::vector<Complex> series_mul(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    const std::size_t n = a.size();
    std::vector<Complex> c(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i] == Complex(0.0)) continue;
        for (std::size_t j = 0; i + j < n; ++j) c[i + j] += a[i] * b[j];
    }
    return c;
}

}  // namespace

RatFun RatFun::constant(Complex c) {
    if (c == Complex(0.0)) return RatFun();
    return factored(c, {}, {});
}

RatFun RatFun::identity() {
    return factored(1.0, {{0.0, 1}}, {});
}

RatFun RatFun::factored(Complex gain, std::vector<Root> zeros, std::vector<Root> poles, double cancel_tol) {
    RatFun f;
    if (gain == Complex(0.0)) return f;
    for (const auto& r : zeros) {
        if (r.mult < 1) throw Error(ErrorKind::InvalidFunction, "multiplicity must be positive");
        if (is_infinite(r.loc)) throw Error(ErrorKind::InvalidFunction, "infinite zero in factored input");
    }
    for (const auto& r : poles) {
        if (r.mult < 1) throw Error(ErrorKind::InvalidFunction, "multiplicity must be positive");
        if (is_infinite(r.loc)) throw Error(ErrorKind::InvalidFunction, "infinite pole in factored input");
    }
    canonical_sort(zeros, kTol.match);
    canonical_sort(poles, kTol.match);
    for (auto& z : zeros) {
        for (auto& p : poles) {
            if (p.mult > 0 && near(z.loc, p.loc, cancel_tol)) {
                const int c = std::min(z.mult, p.mult);
                z.mult -= c;
                p.mult -= c;
            }
        }
    }
    std::erase_if(zeros, [](const Root& r) { return r.mult <= 0; });
    std::erase_if(poles, [](const Root& r) { return r.mult <= 0; });
    f.gain_ = gain;
    f.zeros_ = std::move(zeros);
    f.poles_ = std::move(poles);
    f.is_zero_ = false;
    return f;
}

RatFun RatFun::from_numerator(const Poly& num_in, const std::vector<Root>& poles_in) {
    Poly num = poly_trim(num_in);
    if (num.size() == 0) return RatFun();
    std::vector<Root> poles = poles_in;
    canonical_sort(poles, kTol.match);
    const auto removed = deflate_known_roots(num, poles);
    poles = root_difference(poles, removed, kTol.match);
    num = poly_trim(num);
    const Complex gain = num(num.size() - 1);
    return factored(gain, poly_roots(num), poles);
}

RatFun RatFun::from_coefficients(const Poly& num, const Poly& den) {
    const Poly n = poly_trim(num);
    const Poly d = poly_trim(den);
    if (d.size() == 0) {
        if (n.size() == 0) throw Error(ErrorKind::InvalidFunction, "0/0: numerator and denominator both vanish");
        throw Error(ErrorKind::InvalidFunction, "denominator is identically zero");
    }
    if (n.size() == 0) return RatFun();
    const Complex lead = d(d.size() - 1);
    const auto den_roots = poly_roots(d);
    return from_numerator(n / lead, den_roots);
}

int RatFun::order_at_infinity() const {
    if (is_zero_) return 0;
    return total_multiplicity(zeros_) - total_multiplicity(poles_);
}

std::vector<Root> RatFun::zeros_with_infinity() const {
    auto out = zeros_;
    const int o = order_at_infinity();
    if (o < 0) out.push_back({kInfinity, -o});
    return out;
}

std::vector<Root> RatFun::poles_with_infinity() const {
    auto out = poles_;
    const int o = order_at_infinity();
    if (o > 0) out.push_back({kInfinity, o});
    return out;
}

Complex RatFun::operator()(Complex z) const {
    if (is_zero_) return 0.0;
    if (is_infinite(z)) {
        const int o = order_at_infinity();
        if (o > 0) throw Error(ErrorKind::PoleEvaluation, "evaluation at the pole at infinity");
        return o < 0 ? Complex(0.0) : gain_;
    }
    Complex num = gain_;
    for (const auto& r : zeros_) num *= std::pow(z - r.loc, r.mult);
    Complex den = 1.0;
    for (const auto& p : poles_) {
        if (near(z, p.loc, kTol.match)) {
            throw Error(ErrorKind::PoleEvaluation, "evaluation within the match band of a pole");
        }
        den *= std::pow(z - p.loc, p.mult);
    }
    return num / den;
}

Poly RatFun::numerator() const {
    if (is_zero_) return poly_constant(0.0);
    return gain_ * poly_from_roots(zeros_);
}

Poly RatFun::denominator() const {
    return poly_from_roots(poles_);
}

std::string RatFun::to_string() const {
    if (is_zero_) return "0";
    std::ostringstream os;
    os.precision(12);
    auto cstr = [](Complex c) {
        std::ostringstream s;
        s.precision(12);
        s << "(" << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i)";
        return s.str();
    };
    os << cstr(gain_);
    for (const auto& r : zeros_) {
        os << "*(z-" << cstr(r.loc) << ")";
        if (r.mult > 1) os << "^" << r.mult;
    }
    for (const auto& r : poles_) {
        os << "/(z-" << cstr(r.loc) << ")";
        if (r.mult > 1) os << "^" << r.mult;
    }
    return os.str();
}

Complex eval(const RatFun& f, Complex z) { return f(z); }

std::vector<Root> pole_lcm(const std::vector<std::vector<Root>>& lists, double rel) {
    std::vector<Root> out;
    for (const auto& list : lists) {
        for (const auto& r : list) {
            bool found = false;
            for (auto& o : out) {
                if (near(o.loc, r.loc, rel)) {
                    o.mult = std::max(o.mult, r.mult);
                    found = true;
                    break;
                }
            }
            if (!found) out.push_back(r);
        }
    }
    canonical_sort(out, rel);
    return out;
}

namespace {

RatFun add_impl(const RatFun& f, const RatFun& g, double sign) {
    if (f.is_zero()) return sign > 0 ? g : -1.0 * g;
    if (g.is_zero()) return f;
    const std::vector<Root> lcm = pole_lcm({f.poles(), g.poles()});
    const Poly nf = poly_mul(f.numerator(), poly_from_roots(root_difference(lcm, f.poles(), kTol.match)));
    const Poly ng = sign * poly_mul(g.numerator(), poly_from_roots(root_difference(lcm, g.poles(), kTol.match)));
    const double scale = std::max(poly_scale(nf), poly_scale(ng));
    Poly n = poly_add(nf, ng);
    // Leading cancellation: coefficients at rounding level of the terms are exact zeros.
    Eigen::Index len = n.size();
    while (len > 0 && std::abs(n(len - 1)) <= 1e-13 * scale) --len;
    n = n.head(len).eval();
    if (n.size() == 0) return RatFun();
    RatFun r = RatFun::from_numerator(n, lcm);
    if (r.is_zero()) return r;

    // The expanded numerator loses accuracy when its leading coefficients cancel;
    // the product forms of the two terms do not. Polish roots and gain against them.
    const auto rest_f = root_difference(lcm, f.poles(), kTol.match);
    const auto rest_g = root_difference(lcm, g.poles(), kTol.match);
    auto product = [](Complex z, Complex c, const std::vector<Root>& a, const std::vector<Root>& b) {
        for (const auto& x : a) c *= std::pow(z - x.loc, x.mult);
        for (const auto& x : b) c *= std::pow(z - x.loc, x.mult);
        return c;
    };
    auto num = [&](Complex z) {
        return product(z, f.gain(), f.zeros(), rest_f) + sign * product(z, g.gain(), g.zeros(), rest_g);
    };
    const Poly dn = poly_derivative(n);
    std::vector<Root> zeros = r.zeros();
    for (auto& z : zeros) {
        if (z.mult != 1) continue;
        double res = std::abs(num(z.loc));
        for (int it = 0; it < 3 && res > 0.0; ++it) {
            const Complex d = poly_eval(dn, z.loc);
            if (d == Complex(0.0)) break;
            const Complex cand = z.loc - num(z.loc) / d;
            const double cres = std::abs(num(cand));
            if (!(cres < res)) break;
            z.loc = cand;
            res = cres;
        }
    }
    Complex gain = r.gain();
    double best = -1.0;
    for (auto z : circle_grid(16)) {
        bool clear = true;
        for (const auto& p : lcm) clear = clear && std::abs(z - p.loc) > 1e-3;
        for (const auto& x : zeros) clear = clear && std::abs(z - x.loc) > 1e-3;
        if (!clear) continue;
        Complex shape = 1.0;
        for (const auto& x : zeros) shape *= std::pow(z - x.loc, x.mult);
        for (const auto& p : lcm) shape *= std::pow(z - p.loc, p.mult);
        for (const auto& p : r.poles()) shape /= std::pow(z - p.loc, p.mult);
        // num / lcm equals gain * zeros / poles(r)
        const Complex full = num(z);
        const double w = std::abs(full);
        if (w > best) {
            best = w;
            gain = full / shape;
        }
    }
    return RatFun::factored(gain, std::move(zeros), r.poles());
}

}  // namespace

RatFun combine(const RatFun& f, const RatFun& g, CombineOp op) {
    switch (op) {
        case CombineOp::Add: return add_impl(f, g, 1.0);
        case CombineOp::Sub: return add_impl(f, g, -1.0);
        case CombineOp::Mul: {
            if (f.is_zero() || g.is_zero()) return RatFun();
            auto zs = f.zeros();
            zs.insert(zs.end(), g.zeros().begin(), g.zeros().end());
            auto ps = f.poles();
            ps.insert(ps.end(), g.poles().begin(), g.poles().end());
            return RatFun::factored(f.gain() * g.gain(), std::move(zs), std::move(ps));
        }
        case CombineOp::Div: {
            if (g.is_zero()) throw Error(ErrorKind::InvalidFunction, "division by the zero function");
            if (f.is_zero()) return RatFun();
            auto zs = f.zeros();
            zs.insert(zs.end(), g.poles().begin(), g.poles().end());
            auto ps = f.poles();
            ps.insert(ps.end(), g.zeros().begin(), g.zeros().end());
            return RatFun::factored(f.gain() / g.gain(), std::move(zs), std::move(ps));
        }
    }
    return RatFun();
}

RatFun operator+(const RatFun& f, const RatFun& g) { return combine(f, g, CombineOp::Add); }
RatFun operator-(const RatFun& f, const RatFun& g) { return combine(f, g, CombineOp::Sub); }
RatFun operator*(const RatFun& f, const RatFun& g) { return combine(f, g, CombineOp::Mul); }
RatFun operator/(const RatFun& f, const RatFun& g) { return combine(f, g, CombineOp::Div); }
RatFun operator-(const RatFun& f) { return -1.0 * f; }

RatFun operator*(Complex c, const RatFun& f) {
    if (f.is_zero() || c == Complex(0.0)) return RatFun();
    return RatFun::factored(c * f.gain(), f.zeros(), f.poles());
}

RatFun divide_structural(const RatFun& f, const RatFun& g, double cancel_tol) {
    if (g.is_zero()) throw Error(ErrorKind::InvalidFunction, "division by the zero function");
    if (f.is_zero()) return RatFun();
    auto zs = f.zeros();
    zs.insert(zs.end(), g.poles().begin(), g.poles().end());
    auto ps = f.poles();
    ps.insert(ps.end(), g.zeros().begin(), g.zeros().end());
    return RatFun::factored(f.gain() / g.gain(), std::move(zs), std::move(ps), cancel_tol);
}

RatFun reflect_sharp(const RatFun& f) {
    if (f.is_zero()) return RatFun();
    std::vector<Root> zs = f.zeros(), ps = f.poles();
    for (auto& r : zs) r.loc = std::conj(r.loc);
    for (auto& r : ps) r.loc = std::conj(r.loc);
    return compose_inverse(RatFun::factored(std::conj(f.gain()), std::move(zs), std::move(ps)));
}

RatFun compose_inverse(const RatFun& f) {
    if (f.is_zero()) return RatFun();
    // (1/z - a) = -a (z - 1/a) / z for a != 0, and 1/z for a = 0.
    Complex gain = f.gain();
    int z_power = 0;
    std::vector<Root> zs, ps;
    for (const auto& r : f.zeros()) {
        z_power -= r.mult;
        if (r.loc == Complex(0.0)) continue;
        gain *= std::pow(-r.loc, r.mult);
        zs.push_back({1.0 / r.loc, r.mult});
    }
    for (const auto& r : f.poles()) {
        z_power += r.mult;
        if (r.loc == Complex(0.0)) continue;
        gain /= std::pow(-r.loc, r.mult);
        ps.push_back({1.0 / r.loc, r.mult});
    }
    if (z_power > 0) zs.push_back({0.0, z_power});
    if (z_power < 0) ps.push_back({0.0, -z_power});
    return RatFun::factored(gain, std::move(zs), std::move(ps));
}

std::vector<Complex> principal_part(const RatFun& f, const Root& pole) {
    const std::size_t m = static_cast<std::size_t>(pole.mult);
    std::vector<Complex> g(m, 0.0);
    g[0] = f.gain();
    for (const auto& r : f.zeros()) {
        std::vector<Complex> lin(m, 0.0);
        lin[0] = pole.loc - r.loc;
        if (m > 1) lin[1] = 1.0;
        for (int k = 0; k < r.mult; ++k) g = series_mul(g, lin);
    }
    for (const auto& p : f.poles()) {
        if (near(p.loc, pole.loc, kTol.match)) continue;
        const Complex c = pole.loc - p.loc;
        std::vector<Complex> inv(m, 0.0);
        Complex term = 1.0 / c;
        for (std::size_t n = 0; n < m; ++n) {
            inv[n] = term;
            term *= -1.0 / c;
        }
        for (int k = 0; k < p.mult; ++k) g = series_mul(g, inv);
    }
    // c_{-k} is the Taylor coefficient of order m - k.
    std::vector<Complex> coeffs(m);
    for (std::size_t k = 1; k <= m; ++k) coeffs[k - 1] = g[m - k];
    return coeffs;
}

RieszSplit riesz_split(const RatFun& f) {
    if (f.is_zero()) return {RatFun(), RatFun()};
    std::vector<Root> inside;
    for (const auto& p : f.poles()) {
        const double a = std::abs(p.loc);
        if (std::abs(a - 1.0) <= kTol.circle) throw Error(ErrorKind::PoleOnCircle, "pole on the unit circle");
        if (a < 1.0) inside.push_back(p);
    }
    if (inside.empty()) return {RatFun(), f};
    Poly num = poly_constant(0.0);
    for (std::size_t i = 0; i < inside.size(); ++i) {
        const auto c = principal_part(f, inside[i]);
        std::vector<Root> others;
        for (std::size_t j = 0; j < inside.size(); ++j) {
            if (j != i) others.push_back(inside[j]);
        }
        const Poly rest = poly_from_roots(others);
        for (int k = 1; k <= inside[i].mult; ++k) {
            const Poly shift = poly_from_roots({{inside[i].loc, inside[i].mult - k}});
            num = poly_add(num, c[static_cast<std::size_t>(k - 1)] * poly_mul(shift, rest));
        }
    }
    RatFun minus = RatFun::from_numerator(num, inside);
    return {minus, f - minus};
}

bool Region::contains(Complex z) const {
    if (is_infinite(z)) return kind == Kind::OutsideDisk || kind == Kind::Sphere ||
                                (kind == Kind::Points && std::any_of(points.begin(), points.end(), is_infinite));
    const double a = std::abs(z);
    switch (kind) {
        case Kind::InsideDisk: return a < 1.0 - kTol.circle;
        case Kind::OnCircle: return std::abs(a - 1.0) <= kTol.circle;
        case Kind::OutsideDisk: return a > 1.0 + kTol.circle;
        case Kind::Sphere: return true;
        case Kind::Points:
            return std::any_of(points.begin(), points.end(),
                               [&](Complex p) { return !is_infinite(p) && near(p, z, kTol.match); });
    }
    return false;
}

Region Region::reflected() const {
    switch (kind) {
        case Kind::InsideDisk: return outside();
        case Kind::OutsideDisk: return inside();
        case Kind::Points: {
            std::vector<Complex> pts;
            for (auto p : points) {
                if (is_infinite(p)) pts.push_back(0.0);
                else if (p == Complex(0.0)) pts.push_back(kInfinity);
                else pts.push_back(1.0 / std::conj(p));
            }
            return at(std::move(pts));
        }
        default: return *this;
    }
}

int degree_at(const RatFun& f, Complex lambda) {
    if (f.is_zero()) return 0;
    if (is_infinite(lambda)) return std::max(0, f.order_at_infinity());
    for (const auto& p : f.poles()) {
        if (near(p.loc, lambda, kTol.match)) return p.mult;
    }
    return 0;
}

int degree_region(const RatFun& f, const Region& region) {
    if (f.is_zero()) return 0;
    int d = 0;
    for (const auto& p : f.poles_with_infinity()) {
        if (!is_infinite(p.loc) && (region.kind == Region::Kind::InsideDisk || region.kind == Region::Kind::OutsideDisk) &&
            std::abs(std::abs(p.loc) - 1.0) <= kTol.circle) {
            throw Error(ErrorKind::PoleOnCircle, "pole within the circle band");
        }
        if (region.contains(p.loc)) d += p.mult;
    }
    return d;
}

int winding_number(const RatFun& f) {
    if (f.is_zero()) throw Error(ErrorKind::OnCircleSingularity, "zero function has no winding number");
    int count = 0;
    for (const auto& r : f.zeros()) {
        const double a = std::abs(r.loc);
        if (std::abs(a - 1.0) <= kTol.circle) throw Error(ErrorKind::OnCircleSingularity, "zero on the circle");
        if (a < 1.0) count += r.mult;
    }
    for (const auto& r : f.poles()) {
        const double a = std::abs(r.loc);
        if (std::abs(a - 1.0) <= kTol.circle) throw Error(ErrorKind::OnCircleSingularity, "pole on the circle");
        if (a < 1.0) count -= r.mult;
    }
    const auto grid = circle_grid(1024);
    double total = 0.0;
    Complex prev = f(grid.front());
    for (std::size_t k = 1; k <= grid.size(); ++k) {
        const Complex cur = f(grid[k % grid.size()]);
        total += std::arg(cur / prev);
        prev = cur;
    }
    const int increment = static_cast<int>(std::lround(total / (2.0 * std::numbers::pi)));
    if (increment != count) {
        throw Error(ErrorKind::NumericalFailure, "root count " + std::to_string(count) +
                                                     " disagrees with argument increment " + std::to_string(increment));
    }
    return count;
}

BadApproxCertificate is_badly_approximable(const RatFun& f, int grid) {
    BadApproxCertificate cert;
    if (f.is_zero()) return cert;
    cert.deg_minus = degree_region(f, Region::inside());
    cert.deg_plus = degree_region(f, Region::outside());
    cert.modulus_min = std::numeric_limits<double>::infinity();
    for (auto z : circle_grid(grid)) {
        const double m = std::abs(f(z));
        cert.modulus_min = std::min(cert.modulus_min, m);
        cert.modulus_max = std::max(cert.modulus_max, m);
    }
    cert.badly_approximable = cert.modulus_min > 0.0 && cert.modulus_max <= cert.modulus_min * (1.0 + 1e-9) &&
                              cert.deg_plus < cert.deg_minus;
    return cert;
}

RatFun blaschke(const std::vector<Complex>& zeros, Complex unimodular) {
    if (std::abs(std::abs(unimodular) - 1.0) > 1e-12) {
        throw Error(ErrorKind::InvalidBlaschkeZero, "Blaschke constant must be unimodular");
    }
    Complex gain = unimodular;
    std::vector<Root> zs, ps;
    for (auto l : zeros) {
        if (!(std::abs(l) < 1.0 - kTol.circle)) throw Error(ErrorKind::InvalidBlaschkeZero, "zero outside the open disk");
        zs.push_back({l, 1});
        if (l == Complex(0.0)) {
            gain *= -1.0;  // (0 - z) / 1
        } else {
            // (l - z)/(1 - conj(l) z) = (z - l) / (conj(l) (z - 1/conj(l)))
            gain /= std::conj(l);
            ps.push_back({1.0 / std::conj(l), 1});
        }
    }
    return RatFun::factored(gain, std::move(zs), std::move(ps));
}

RatFun spectral_factor(const RatFun& s) {
    if (s.is_zero()) throw Error(ErrorKind::NotPositive, "zero function");
    const auto grid = circle_grid(kDefaultGrid);
    double max_abs = 0.0, max_imag = 0.0, min_real = std::numeric_limits<double>::infinity();
    for (auto z : grid) {
        const Complex v = s(z);
        max_abs = std::max(max_abs, std::abs(v));
        max_imag = std::max(max_imag, std::abs(v.imag()));
        min_real = std::min(min_real, v.real());
    }
    if (max_imag > 1e-9 * max_abs) throw Error(ErrorKind::NotSelfReflective, "s is not real on the circle");
    if (!(min_real > 0.0)) throw Error(ErrorKind::NotPositive, "s is not positive on the circle");

    std::vector<Root> zs, ps;
    for (const auto& r : s.zeros()) {
        if (std::abs(r.loc) > 1.0) zs.push_back(r);
    }
    for (const auto& r : s.poles()) {
        if (std::abs(r.loc) > 1.0) ps.push_back(r);
    }
    const RatFun h0 = RatFun::factored(1.0, zs, ps);
    const double mag = std::sqrt(s(1.0).real()) / std::abs(h0(1.0));
    const Complex at0 = h0(0.0);
    const RatFun h = RatFun::factored(mag * std::conj(at0) / std::abs(at0), zs, ps);

    double worst = 0.0;
    for (auto z : grid) worst = std::max(worst, std::abs(std::norm(h(z)) / s(z).real() - 1.0));
    if (worst > 1e-8) {
        throw Error(ErrorKind::NumericalFailure, "spectral factor modulus mismatch " + std::to_string(worst));
    }
    return h;
}

RatFun fit_with_poles(const std::function<Complex(Complex)>& f, const std::vector<Root>& poles_in,
                      int inf_order_bound, FitReport* report) {
    std::vector<Root> poles = poles_in;
    canonical_sort(poles, kTol.match);
    const Poly den = poly_from_roots(poles);
    const int d = total_multiplicity(poles) + std::max(0, inf_order_bound);
    int k = 64;
    while (k < 2 * (d + 1)) k *= 2;
    const auto grid = circle_grid(k);
    std::vector<Complex> fs(static_cast<std::size_t>(k));
    VectorXc samples(k);
    double fmax = 0.0;
    for (int i = 0; i < k; ++i) {
        fs[static_cast<std::size_t>(i)] = f(grid[static_cast<std::size_t>(i)]);
        fmax = std::max(fmax, std::abs(fs[static_cast<std::size_t>(i)]));
        samples(i) = fs[static_cast<std::size_t>(i)] * poly_eval(den, grid[static_cast<std::size_t>(i)]);
    }
    VectorXc coeffs = VectorXc::Zero(k);
    for (int j = 0; j < k; ++j) {
        Complex acc = 0.0;
        for (int i = 0; i < k; ++i) acc += samples(i) * std::conj(grid[static_cast<std::size_t>((static_cast<long>(i) * j) % k)]);
        coeffs(j) = acc / static_cast<double>(k);
    }
    const double cscale = poly_scale(coeffs);
    FitReport rep;
    if (cscale > 0.0) rep.alias = coeffs.tail(k - d - 1).cwiseAbs().maxCoeff() / cscale;
    Poly num = coeffs.head(d + 1);
    Eigen::Index len = num.size();
    while (len > 0 && std::abs(num(len - 1)) <= 1e-11 * cscale) --len;
    num = num.head(len).eval();
    // Trailing rounding noise would otherwise read as tiny roots near the origin.
    for (Eigen::Index j = 0; j < num.size(); ++j) {
        if (std::abs(num(j)) <= 1e-15 * cscale) num(j) = 0.0;
    }
    RatFun out = num.size() == 0 ? RatFun() : RatFun::from_numerator(num, poles);
    if (fmax > 0.0) {
        double err = 0.0;
        for (int i = 0; i < k; ++i) {
            err = std::max(err, std::abs(out(grid[static_cast<std::size_t>(i)]) - fs[static_cast<std::size_t>(i)]));
        }
        rep.residual = err / fmax;
    }
    if (report) *report = rep;
    return out;
}

}  // namespace superopt
