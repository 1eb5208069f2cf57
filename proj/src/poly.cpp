#include "superopt/poly.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>

namespace superopt {

Poly poly_constant(Complex c) {
    Poly p(1);
    p(0) = c;
    return p;
}

Poly poly_from_roots(const std::vector<Root>& roots) {
    Poly p = poly_constant(1.0);
    for (const auto& r : roots) {
        for (int k = 0; k < r.mult; ++k) {
            Poly q = Poly::Zero(p.size() + 1);
            q.tail(p.size()) += p;
            q.head(p.size()) -= r.loc * p;
            p = std::move(q);
        }
    }
    return p;
}

Complex poly_eval(const Poly& p, Complex z) {
    Complex acc = 0.0;
    for (Eigen::Index j = p.size() - 1; j >= 0; --j) acc = acc * z + p(j);
    return acc;
}

Poly poly_mul(const Poly& a, const Poly& b) {
    if (a.size() == 0 || b.size() == 0) return Poly();
    Poly c = Poly::Zero(a.size() + b.size() - 1);
    for (Eigen::Index i = 0; i < a.size(); ++i) c.segment(i, b.size()) += a(i) * b;
    return c;
}

Poly poly_add(const Poly& a, const Poly& b) {
    Poly c = Poly::Zero(std::max(a.size(), b.size()));
    c.head(a.size()) += a;
    c.head(b.size()) += b;
    return c;
}

Poly poly_derivative(const Poly& p) {
    if (p.size() <= 1) return poly_constant(0.0);
    Poly d(p.size() - 1);
    for (Eigen::Index j = 1; j < p.size(); ++j) d(j - 1) = static_cast<double>(j) * p(j);
    return d;
}

double poly_scale(const Poly& p) {
    return p.size() == 0 ? 0.0 : p.cwiseAbs().maxCoeff();
}

Poly poly_trim(const Poly& p, double rel) {
    const double cut = rel * poly_scale(p);
    Eigen::Index n = p.size();
    while (n > 0 && std::abs(p(n - 1)) <= cut) --n;
    return p.head(n);
}

int poly_degree(const Poly& p) {
    return static_cast<int>(poly_trim(p).size()) - 1;
}

Poly poly_deflate(const Poly& p, Complex r, Complex* remainder) {
    const Eigen::Index n = p.size();
    if (n <= 1) {
        if (remainder) *remainder = n == 1 ? p(0) : Complex(0.0);
        return Poly();
    }
    Poly q(n - 1);
    Complex acc = p(n - 1);
    for (Eigen::Index j = n - 2; j >= 0; --j) {
        q(j) = acc;
        acc = acc * r + p(j);
    }
    if (remainder) *remainder = acc;
    return q;
}

double poly_relative_residual(const Poly& p, Complex z) {
    double scale = 0.0;
    double zp = 1.0;
    const double az = std::abs(z);
    for (Eigen::Index j = 0; j < p.size(); ++j) {
        scale += std::abs(p(j)) * zp;
        zp *= az;
    }
    if (scale == 0.0) return 0.0;
    return std::abs(poly_eval(p, z)) / scale;
}

namespace {

// Parlett-Reinsch balancing with power-of-two scalings.
void balance(MatrixXc& a) {
    const Eigen::Index n = a.rows();
    bool done = false;
    while (!done) {
        done = true;
        for (Eigen::Index i = 0; i < n; ++i) {
            double c = 0.0, r = 0.0;
            for (Eigen::Index j = 0; j < n; ++j) {
                if (j == i) continue;
                c += std::abs(a(j, i));
                r += std::abs(a(i, j));
            }
            if (c == 0.0 || r == 0.0) continue;
            double f = 1.0;
            const double s = c + r;
            double cc = c, rr = r;
            while (cc < rr / 2.0) { cc *= 2.0; rr /= 2.0; f *= 2.0; }
            while (cc >= rr * 2.0) { cc /= 2.0; rr *= 2.0; f /= 2.0; }
            if ((cc + rr) < 0.95 * s) {
                done = false;
                a.row(i) /= f;
                a.col(i) *= f;
            }
        }
    }
}

Complex newton_polish(const Poly& p, const Poly& dp, Complex z) {
    Complex best = z;
    double best_res = std::abs(poly_eval(p, z));
    for (int it = 0; it < 3; ++it) {
        const Complex d = poly_eval(dp, best);
        if (d == Complex(0.0)) break;
        const Complex cand = best - poly_eval(p, best) / d;
        const double res = std::abs(poly_eval(p, cand));
        if (!(res < best_res)) break;
        best = cand;
        best_res = res;
    }
    return best;
}

// Newton on the (m-1)-th derivative for a root of multiplicity m.
Complex refine_multiple(const Poly& p, Complex z, int m) {
    Poly d = p;
    for (int k = 0; k < m - 1; ++k) d = poly_derivative(d);
    const Poly dd = poly_derivative(d);
    return newton_polish(d, dd, z);
}

// Expected perturbation radius of an m-fold root at c under coefficient rounding.
double multiple_root_radius(const Poly& p, Complex c, int m) {
    Poly d = p;
    double fact = 1.0;
    for (int k = 0; k < m; ++k) {
        d = poly_derivative(d);
        fact *= k + 1;
    }
    const double lead = std::abs(poly_eval(d, c)) / fact;
    if (lead == 0.0) return 0.0;
    double scale = 0.0, zp = 1.0;
    for (Eigen::Index j = 0; j < p.size(); ++j) {
        scale += std::abs(p(j)) * zp;
        zp *= std::abs(c);
    }
    return std::pow(2.2e-16 * scale / lead, 1.0 / m);
}

// Merges nearby clusters whose spread is explained by rounding of a multiple root.
void merge_split_roots(const Poly& p, std::vector<Root>& roots, std::vector<std::vector<Complex>>& members) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < roots.size() && !changed; ++i) {
            for (std::size_t j = i + 1; j < roots.size() && !changed; ++j) {
                if (!near(roots[i].loc, roots[j].loc, 1e-2)) continue;
                std::vector<Complex> pts = members[i];
                pts.insert(pts.end(), members[j].begin(), members[j].end());
                Complex c = 0.0;
                for (auto z : pts) c += z;
                c /= static_cast<double>(pts.size());
                double spread = 0.0;
                for (auto z : pts) spread = std::max(spread, std::abs(z - c));
                const int m = static_cast<int>(pts.size());
                if (spread <= 20.0 * multiple_root_radius(p, c, m)) {
                    roots[i] = {c, m};
                    members[i] = std::move(pts);
                    roots.erase(roots.begin() + static_cast<std::ptrdiff_t>(j));
                    members.erase(members.begin() + static_cast<std::ptrdiff_t>(j));
                    changed = true;
                }
            }
        }
    }
}

}  // namespace

std::vector<std::vector<Complex>> cluster_groups(const std::vector<Complex>& pts, double rel) {
    const std::size_t n = pts.size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    };
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (near(pts[i], pts[j], rel)) parent[find(i)] = find(j);
        }
    }
    std::vector<std::vector<Complex>> groups;
    std::vector<std::size_t> rep;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t r = find(i);
        auto it = std::find(rep.begin(), rep.end(), r);
        if (it == rep.end()) {
            rep.push_back(r);
            groups.push_back({pts[i]});
        } else {
            groups[static_cast<std::size_t>(it - rep.begin())].push_back(pts[i]);
        }
    }
    return groups;
}

std::vector<Root> cluster_points(const std::vector<Complex>& pts, double rel) {
    std::vector<Root> out;
    for (const auto& g : cluster_groups(pts, rel)) {
        Complex c = 0.0;
        for (auto z : g) c += z;
        out.push_back({c / static_cast<double>(g.size()), static_cast<int>(g.size())});
    }
    return out;
}

std::vector<Root> poly_roots(const Poly& p_in, const Tolerances& tol) {
    Poly p = poly_trim(p_in);
    std::vector<Root> roots;
    if (p.size() <= 1) return roots;

    // Exact-ish zeros at the origin.
    const double scale = poly_scale(p);
    int origin = 0;
    while (p.size() > 1 && std::abs(p(0)) <= 1e-14 * scale) {
        p = p.tail(p.size() - 1).eval();
        ++origin;
    }
    if (origin > 0) roots.push_back({0.0, origin});

    const Eigen::Index n = p.size() - 1;
    if (n == 0) return roots;

    std::vector<Complex> raw;
    if (n == 1) {
        raw.push_back(-p(0) / p(1));
    } else {
        MatrixXc comp = MatrixXc::Zero(n, n);
        for (Eigen::Index i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
        for (Eigen::Index i = 0; i < n; ++i) comp(i, n - 1) = -p(i) / p(n);
        balance(comp);
        Eigen::ComplexEigenSolver<MatrixXc> es(comp, false);
        if (es.info() != Eigen::Success) {
            throw Error(ErrorKind::NumericalFailure, "companion eigenvalue iteration did not converge");
        }
        const Poly dp = poly_derivative(p);
        for (Eigen::Index i = 0; i < n; ++i) raw.push_back(newton_polish(p, dp, es.eigenvalues()(i)));
    }

    auto members = cluster_groups(raw, tol.cluster);
    auto clustered = cluster_points(raw, tol.cluster);
    merge_split_roots(p, clustered, members);
    for (auto r : clustered) {
        if (r.mult > 1) r.loc = refine_multiple(p, r.loc, r.mult);
        roots.push_back(r);
    }
    canonical_sort(roots, tol.match);
    return roots;
}

std::vector<Root> deflate_known_roots(Poly& p, const std::vector<Root>& known, const Tolerances& tol) {
    std::vector<Root> removed;
    for (const auto& r : known) {
        int count = 0;
        for (int k = 0; k < r.mult; ++k) {
            if (poly_degree(p) < 1) break;
            if (poly_relative_residual(p, r.loc) > tol.deflate) break;
            p = poly_deflate(poly_trim(p), r.loc);
            ++count;
        }
        if (count > 0) removed.push_back({r.loc, count});
    }
    return removed;
}

void canonical_sort(std::vector<Root>& roots, double rel) {
    std::sort(roots.begin(), roots.end(), [](const Root& a, const Root& b) {
        if (a.loc.real() != b.loc.real()) return a.loc.real() < b.loc.real();
        return a.loc.imag() < b.loc.imag();
    });
    std::vector<Root> merged;
    for (const auto& r : roots) {
        bool joined = false;
        for (auto& m : merged) {
            if (near(m.loc, r.loc, rel)) {
                m.mult += r.mult;
                joined = true;
                break;
            }
        }
        if (!joined) merged.push_back(r);
    }
    roots = std::move(merged);
}

int total_multiplicity(const std::vector<Root>& roots) {
    int s = 0;
    for (const auto& r : roots) s += r.mult;
    return s;
}

}  // namespace superopt
