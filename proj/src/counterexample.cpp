#include "superopt/counterexample.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "superopt/hankel.hpp"

namespace superopt {

namespace {

void check_inputs(int k, double a, const std::vector<double>& ts, const std::vector<Complex>& b1z,
                  const std::vector<Complex>& b2z) {
    auto bad = [](const std::string& m) { throw Error(ErrorKind::InputError, m); };
    if (k < 2) bad("k must be at least 2");
    if (!(a > 1.0)) bad("a must exceed 1");
    if (static_cast<int>(b1z.size()) != k) bad("B1 needs k zeros");
    if (static_cast<int>(b2z.size()) != k - 2) bad("B2 needs k - 2 zeros");
    for (double t : ts) {
        if (!(t > 0.0 && t < 1.0)) bad("t values must lie in (0, 1)");
        if (!(a * a * t > 1.0)) {
            std::ostringstream os;
            os << "a^2 t = " << a * a * t << " must exceed 1";
            throw Error(ErrorKind::ConstructionFailure, os.str());
        }
    }
}

// Disk zeros of 1 - t a^2 B1 B2, largest modulus first, ties by larger real then imaginary part.
std::vector<Root> g_disk_zeros(const RatFun& b12, double t, double a, int k) {
    const RatFun g = RatFun::constant(1.0) - Complex(t * a * a) * b12;
    std::vector<Root> out;
    for (const auto& r : g.zeros()) {
        if (std::abs(r.loc) < 1.0) out.push_back(r);
    }
    const int count = total_multiplicity(out);
    const int wind = winding_number(g);
    if (count != 2 * k - 2 || wind != count) {
        std::ostringstream os;
        os << "1 - t a^2 B1 B2 has " << count << " disk zeros (argument count " << wind << "), expected " << 2 * k - 2;
        throw Error(ErrorKind::ConstructionFailure, os.str());
    }
    std::sort(out.begin(), out.end(), [](const Root& x, const Root& y) {
        const double mx = std::abs(x.loc), my = std::abs(y.loc);
        if (std::abs(mx - my) > 1e-9) return mx > my;
        if (x.loc.real() != y.loc.real()) return x.loc.real() > y.loc.real();
        return x.loc.imag() > y.loc.imag();
    });
    return out;
}

std::vector<Complex> select_zeros(const std::vector<Root>& zeros, int count, const std::vector<Complex>& taken) {
    std::vector<Complex> out;
    for (const auto& r : zeros) {
        if (static_cast<int>(out.size()) == count) break;
        const bool clash = std::any_of(taken.begin(), taken.end(), [&](Complex z) { return near(z, r.loc, kTol.match); });
        if (clash) throw Error(ErrorKind::ConstructionFailure, "blocks of B0 zeros overlap");
        if (r.mult != 1) throw Error(ErrorKind::ConstructionFailure, "multiple zero of 1 - t a^2 B1 B2");
        out.push_back(r.loc);
    }
    if (static_cast<int>(out.size()) < count) throw Error(ErrorKind::ConstructionFailure, "not enough simple disk zeros");
    for (std::size_t i = 0; i < out.size(); ++i) {
        for (std::size_t j = i + 1; j < out.size(); ++j) {
            if (near(out[i], out[j], kTol.match)) throw Error(ErrorKind::ConstructionFailure, "selected zeros coincide");
        }
    }
    return out;
}

RatMat outer_matrix(const RatFun& b0, double a) {
    RatMat m(2, 2);
    m(0, 0) = RatFun::constant(1.0) / b0;
    m(0, 1) = RatFun::constant(a);
    m(1, 0) = RatFun::constant(-a);
    m(1, 1) = b0;
    return m;
}

RatMat product_form(const CounterexampleSpec& s, double t) {
    const RatMat m = outer_matrix(s.b0, s.a);
    RatMat d(2, 2);
    d(0, 0) = s.b0 / s.b1;
    d(1, 1) = Complex(t) * (s.b2 / s.b0);
    return m * d * m;
}

}  // namespace

std::vector<Complex> default_b1_zeros(int k) {
    std::vector<Complex> z;
    for (int j = 0; j < k; ++j) z.push_back(std::polar(0.6, 2.0 * std::numbers::pi * j / k));
    return z;
}

std::vector<Complex> default_b2_zeros(int k) {
    return std::vector<Complex>(static_cast<std::size_t>(std::max(0, k - 2)), Complex(0.0));
}

ThematicData construction_thematic(const CounterexampleSpec& s) {
    const double c = std::sqrt(1.0 + s.a * s.a);
    ThematicData d;
    d.t0 = c * c;
    d.t1 = s.t_values.empty() ? 0.0 : s.t_values.front() * c * c;
    d.u0 = s.b0 / s.b1;
    d.u1 = s.b2 / s.b0;
    d.v = {Complex(1.0 / c) * s.b0, RatFun::constant(s.a / c)};
    d.w = {Complex(1.0 / c) * s.b0, RatFun::constant(-s.a / c)};
    return d;
}

KpResult build_kp(int k, double a, double t, const std::vector<Complex>& b1_zeros,
                  const std::vector<Complex>& b2_zeros) {
    check_inputs(k, a, {t}, b1_zeros, b2_zeros);
    KpResult out;
    auto& s = out.spec;
    s.k = k;
    s.a = a;
    s.t_values = {t};
    s.partition_sizes = {k - 1};
    s.b1 = blaschke(b1_zeros);
    s.b2 = blaschke(b2_zeros);
    const auto zeros = g_disk_zeros(s.b1 * s.b2, t, a, k);
    s.delta = {select_zeros(zeros, k - 1, {})};
    s.b0 = blaschke(s.delta.front());
    out.thematic = construction_thematic(s);
    validate(out.thematic);

    out.psi = product_form(s, t);
    const RatMat fam = assemble(out.thematic, out.thematic.t1);
    double err = 0.0, scale = 0.0;
    for (auto z : circle_grid(kDefaultGrid)) {
        const MatrixXc p = out.psi.at(z);
        err = std::max(err, (p - fam.at(z)).cwiseAbs().maxCoeff());
        scale = std::max(scale, p.cwiseAbs().maxCoeff());
    }
    if (err > 1e-9 * scale) {
        throw Error(ErrorKind::NumericalFailure, "product form and family disagree by " + std::to_string(err / scale));
    }

    for (const auto& p : s.b0.poles()) {
        const Complex lower = -a * a / s.b1(p.loc) + t * s.b2(p.loc);
        if (std::abs(lower) <= 1e-8 * a * a) {
            throw Error(ErrorKind::ConstructionFailure, "exterior cancellation at a pole of B0");
        }
    }

    out.phi = riesz_split_mat(out.psi).minus;
    out.deg_minus = mcmillan_degree(out.psi, Region::inside());
    out.deg_plus = mcmillan_degree(out.psi, Region::outside());
    const int hm = hankel_rank_degree(out.psi), hp = hankel_rank_degree_outside(out.psi);
    if (hm != out.deg_minus || hp != out.deg_plus) {
        std::ostringstream os;
        os << "degree oracles disagree: local (" << out.deg_minus << "," << out.deg_plus << "), Hankel (" << hm << ","
           << hp << ")";
        throw Error(ErrorKind::NumericalFailure, os.str());
    }
    if (out.deg_minus != k || out.deg_plus != 2 * k - 3) {
        std::ostringstream os;
        os << "deg P-: " << out.deg_minus << ", deg P+: " << out.deg_plus << ", expected " << k << ", " << 2 * k - 3;
        throw Error(ErrorKind::TheoremViolation, os.str());
    }
    return out;
}

EkpResult build_ekp(int k, double a, const std::vector<double>& t_values, const std::vector<int>& kappa,
                    const std::vector<Complex>& b1_zeros, const std::vector<Complex>& b2_zeros) {
    check_inputs(k, a, t_values, b1_zeros, b2_zeros);
    if (t_values.empty() || kappa.size() != t_values.size()) {
        throw Error(ErrorKind::InputError, "one block size per t value is required");
    }
    int total = 0;
    for (int c : kappa) {
        if (c < 1) throw Error(ErrorKind::InputError, "block sizes must be positive");
        total += c;
    }
    if (total != k - 1) throw Error(ErrorKind::InputError, "block sizes must sum to k - 1");
    for (std::size_t i = 0; i < t_values.size(); ++i) {
        for (std::size_t j = i + 1; j < t_values.size(); ++j) {
            if (t_values[i] == t_values[j]) throw Error(ErrorKind::InputError, "t values must be distinct");
        }
    }

    EkpResult out;
    auto& s = out.spec;
    s.k = k;
    s.a = a;
    s.t_values = t_values;
    s.partition_sizes = kappa;
    s.b1 = blaschke(b1_zeros);
    s.b2 = blaschke(b2_zeros);
    const RatFun b12 = s.b1 * s.b2;
    std::vector<Complex> all;
    for (std::size_t j = 0; j < t_values.size(); ++j) {
        auto block = select_zeros(g_disk_zeros(b12, t_values[j], a, k), kappa[j], all);
        all.insert(all.end(), block.begin(), block.end());
        s.delta.push_back(std::move(block));
    }
    s.b0 = blaschke(all);
    out.thematic = construction_thematic(s);

    std::vector<double> ts;
    for (double t : t_values) ts.push_back(t * out.thematic.t0);
    out.rows = degree_profile(out.thematic, ts);
    for (std::size_t j = 0; j < ts.size(); ++j) {
        const auto& r = out.rows[j];
        if (r.deg_plus != r.deg_minus - 2 + kappa[j]) {
            std::ostringstream os;
            os << "t = " << t_values[j] << ": deg P-: " << r.deg_minus << ", deg P+: " << r.deg_plus
               << ", block size " << kappa[j];
            throw Error(ErrorKind::TheoremViolation, os.str());
        }
    }
    return out;
}

RatFun interpolate_blaschke(const std::vector<Complex>& nodes, const std::vector<Complex>& targets,
                            int degree_budget) {
    const std::size_t n = nodes.size();
    if (targets.size() != n) throw Error(ErrorKind::InputError, "one target per node is required");
    if (degree_budget < static_cast<int>(n)) throw Error(ErrorKind::InputError, "degree budget below node count");
    for (std::size_t i = 0; i < n; ++i) {
        if (!(std::abs(nodes[i]) < 1.0)) throw Error(ErrorKind::InputError, "nodes must lie in the open disk");
        for (std::size_t j = i + 1; j < n; ++j) {
            if (near(nodes[i], nodes[j], kTol.match)) throw Error(ErrorKind::InputError, "nodes must be distinct");
        }
    }
    if (n > 0) {
        MatrixXc pick(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                pick(i, j) = (1.0 - targets[i] * std::conj(targets[j])) / (1.0 - nodes[i] * std::conj(nodes[j]));
            }
        }
        Eigen::SelfAdjointEigenSolver<MatrixXc> es(pick);
        if (!(es.eigenvalues()(0) > 1e-14 * std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff()))) {
            std::ostringstream os;
            os << "Pick matrix is not positive definite (smallest eigenvalue " << es.eigenvalues()(0) << ")";
            throw Error(ErrorKind::InfeasibleInterpolation, os.str());
        }
    }

    // Schur steps: values of the k-th reduced function at the remaining nodes.
    std::vector<Complex> vals = targets, step(n);
    for (std::size_t k = 0; k < n; ++k) {
        const Complex w = vals[k];
        if (!(std::abs(w) < 1.0)) throw Error(ErrorKind::InfeasibleInterpolation, "Schur parameter of modulus >= 1");
        step[k] = w;
        for (std::size_t i = k + 1; i < n; ++i) {
            const Complex b = (nodes[i] - nodes[k]) / (1.0 - std::conj(nodes[k]) * nodes[i]);
            vals[i] = (vals[i] - w) / (1.0 - std::conj(w) * vals[i]) / b;
        }
    }

    const int pad = degree_budget - static_cast<int>(n);
    Poly num = Poly::Zero(pad + 1), den = poly_constant(1.0);
    num(pad) = 1.0;
    for (std::size_t kk = n; kk-- > 0;) {
        const Complex w = step[kk], zk = nodes[kk];
        Poly lin_a(2), lin_b(2);  // 1 - conj(zk) z and z - zk
        lin_a << 1.0, -std::conj(zk);
        lin_b << -zk, 1.0;
        const Poly dn = poly_mul(den, lin_a), nb = poly_mul(num, lin_b);
        num = poly_add(w * dn, nb);
        den = poly_add(dn, std::conj(w) * nb);
    }
    const RatFun b = RatFun::from_coefficients(num, den);

    double unimod = 0.0, interp = 0.0;
    for (auto z : circle_grid(kDefaultGrid)) unimod = std::max(unimod, std::abs(std::abs(b(z)) - 1.0));
    for (std::size_t i = 0; i < n; ++i) interp = std::max(interp, std::abs(b(nodes[i]) - targets[i]));
    if (unimod > 1e-10 || interp > 1e-8) {
        std::ostringstream os;
        os << "interpolant check failed: modulus error " << unimod << ", node error " << interp;
        throw Error(ErrorKind::NumericalFailure, os.str());
    }
    return b;
}

}  // namespace superopt
