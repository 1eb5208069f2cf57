#include "superopt/thematic.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include <Eigen/LU>
#include <Eigen/SVD>

#include "superopt/hankel.hpp"

namespace superopt {

namespace {

Eigen::Vector2cd column_at(const std::array<RatFun, 2>& c, Complex z) {
    return {c[0](z), c[1](z)};
}

RatMat column(const std::array<RatFun, 2>& c) {
    RatMat m(2, 1);
    m(0, 0) = c[0];
    m(1, 0) = c[1];
    return m;
}

RatMat assemble_raw(const ThematicData& d, double t) {
    const auto xi = d.xi();
    const auto th = d.theta();
    const RatFun a = Complex(d.t0) * d.u0;
    const RatFun b = Complex(t) * d.u1;
    RatMat out(2, 2);
    for (int i = 0; i < 2; ++i) {
        const RatFun wi = reflect_sharp(d.w[static_cast<std::size_t>(i)]);
        for (int j = 0; j < 2; ++j) {
            const RatFun vj = reflect_sharp(d.v[static_cast<std::size_t>(j)]);
            RatFun e = a * (wi * vj);
            if (t != 0.0) e = e + b * (xi[static_cast<std::size_t>(i)] * th[static_cast<std::size_t>(j)]);
            out(i, j) = e;
        }
    }
    return out;
}

// Pointwise Psi_[t] on the circle from the factor values.
Eigen::Matrix2cd psi_point(Complex u0, Complex u1, const Eigen::Vector2cd& v, const Eigen::Vector2cd& w, double t0,
                           double t) {
    const Eigen::Vector2cd xi(-w(1), w(0));
    const Eigen::Vector2cd th(-v(1), v(0));
    return t0 * u0 * w.conjugate() * v.adjoint() + t * u1 * xi * th.transpose();
}

Eigen::Matrix2cd adj2(const Eigen::Matrix2cd& m) {
    Eigen::Matrix2cd a;
    a << m(1, 1), -m(0, 1), -m(1, 0), m(0, 0);
    return a;
}

int zero_mult(const RatFun& f, Complex lambda) {
    if (f.is_zero()) return 1000;
    if (is_infinite(lambda)) return std::max(0, -f.order_at_infinity());
    for (const auto& z : f.zeros()) {
        if (near(z.loc, lambda, kTol.structural)) return z.mult;
    }
    return 0;
}

int pole_mult(const RatFun& f, Complex lambda) {
    if (f.is_zero()) return 0;
    if (is_infinite(lambda)) return std::max(0, f.order_at_infinity());
    for (const auto& p : f.poles()) {
        if (near(p.loc, lambda, kTol.structural)) return p.mult;
    }
    return 0;
}

int column_pole_mult(const std::array<RatFun, 2>& c, Complex lambda) {
    return std::max(pole_mult(c[0], lambda), pole_mult(c[1], lambda));
}

std::string fmt_point(Complex z) {
    std::ostringstream os;
    if (is_infinite(z)) os << "inf";
    else os << "(" << z.real() << "," << z.imag() << ")";
    return os.str();
}

// Block-Hankel matrices of the principal parts of both terms at one point,
// coefficients rescaled by the contour radius.
struct LocalPencil {
    MatrixXc ha, hb;
    double na = 0.0, nb = 0.0;

    MatrixXc at(Complex s) const { return ha + s * hb; }
    int rank(Complex s) const { return numerical_rank(at(s), std::max(na, std::abs(s) * nb)); }
};

LocalPencil local_pencil(const FamilyTerms& terms, Complex lambda) {
    RatMat both(2, 4);
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            both(i, j) = terms.first(i, j);
            both(i, j + 2) = terms.second(i, j);
        }
    }
    const LocalDegreeData ld = local_degree(both, lambda);
    const int m = static_cast<int>(ld.principal_coefficients.size());
    std::vector<MatrixXc> ca, cb;
    double rk = 1.0;
    for (int k = 0; k < m; ++k) {
        rk *= ld.radius;
        const MatrixXc c = ld.principal_coefficients[static_cast<std::size_t>(k)] / rk;
        ca.push_back(c.leftCols(2));
        cb.push_back(c.rightCols(2));
    }
    LocalPencil p;
    p.ha = block_hankel(ca, m);
    p.hb = block_hankel(cb, m);
    if (m > 0) {
        p.na = Eigen::JacobiSVD<MatrixXc>(p.ha).singularValues()(0);
        p.nb = Eigen::JacobiSVD<MatrixXc>(p.hb).singularValues()(0);
    }
    return p;
}

// Real parameters in (0, 1] where the pencil loses rank.
std::vector<std::pair<double, int>> pencil_drops(const LocalPencil& p, std::mt19937_64& rng) {
    std::vector<std::pair<double, int>> out;
    if (p.ha.size() == 0 || p.na == 0.0 || p.nb == 0.0) return out;
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    int r_gen = 0;
    for (int k = 0; k < 3; ++k) r_gen = std::max(r_gen, p.rank(Complex(0.3 + 0.5 * std::abs(u(rng)), u(rng))));
    if (r_gen == 0) return out;

    const Eigen::Index n = p.ha.rows();
    MatrixXc x(r_gen, n), y(n, r_gen);
    for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = {u(rng), u(rng)};
    for (Eigen::Index i = 0; i < y.size(); ++i) y.data()[i] = {u(rng), u(rng)};
    const MatrixXc xa = x * p.ha * y, xb = x * p.hb * y;

    const int k = r_gen + 1;
    const auto nodes = circle_grid(k);
    std::vector<Complex> vals;
    for (auto s : nodes) vals.push_back((xa + s * xb).determinant());
    Poly coeffs(k);
    for (int j = 0; j < k; ++j) {
        Complex acc = 0.0;
        for (int i = 0; i < k; ++i) acc += vals[static_cast<std::size_t>(i)] * std::conj(nodes[static_cast<std::size_t>((i * j) % k)]);
        coeffs(j) = acc / static_cast<double>(k);
    }
    for (const auto& r : poly_roots(poly_trim(coeffs, 1e-11))) {
        if (std::abs(r.loc.imag()) > 1e-6 * (1.0 + std::abs(r.loc))) continue;
        double s = r.loc.real();
        if (!(s > 0.0) || s > 1.0 + 1e-8) continue;
        if (std::abs(s - 1.0) <= 1e-8) s = 1.0;
        const int rank = p.rank(s);
        if (rank < r_gen) out.push_back({s, r_gen - rank});
    }
    return out;
}

}  // namespace

void validate(const ThematicData& d) {
    auto fail = [](const std::string& what) { throw Error(ErrorKind::InvalidThematicData, what); };
    if (!(d.t0 > 0.0)) fail("t0 must be positive");
    if (d.t1 < 0.0 || d.t1 > d.t0 * (1.0 + 1e-12)) fail("t1 must lie in [0, t0]");
    const char* names[] = {"u0", "u1"};
    const RatFun* us[] = {&d.u0, &d.u1};
    for (int k = 0; k < 2; ++k) {
        if (us[k]->is_zero()) fail(std::string(names[k]) + " is zero");
        BadApproxCertificate c;
        try {
            c = is_badly_approximable(*us[k]);
        } catch (const Error& e) {
            fail(std::string(names[k]) + ": " + e.what());
        }
        if (std::abs(c.modulus_min - 1.0) > 1e-9 || std::abs(c.modulus_max - 1.0) > 1e-9) {
            fail(std::string(names[k]) + " is not unimodular");
        }
        if (!c.badly_approximable) fail(std::string(names[k]) + " is not badly approximable");
    }
    const char* cn[] = {"v", "w"};
    const std::array<RatFun, 2>* cols[] = {&d.v, &d.w};
    for (int k = 0; k < 2; ++k) {
        const auto& c = *cols[k];
        for (const auto& f : c) {
            for (const auto& p : f.poles()) {
                if (std::abs(p.loc) <= 1.0 + kTol.circle) fail(std::string(cn[k]) + " has a pole in the closed disk");
            }
        }
        double worst = 0.0;
        for (auto z : circle_grid(kDefaultGrid)) worst = std::max(worst, std::abs(column_at(c, z).squaredNorm() - 1.0));
        if (worst > 1e-9) fail(std::string(cn[k]) + " is not of unit norm on the circle");
        auto disk_zeros = [](const RatFun& f) {
            std::vector<Complex> z;
            for (const auto& r : f.zeros()) {
                if (std::abs(r.loc) <= 1.0 + kTol.circle) z.push_back(r.loc);
            }
            return z;
        };
        const auto z0 = disk_zeros(c[0]), z1 = disk_zeros(c[1]);
        bool common = (c[0].is_zero() && !z1.empty()) || (c[1].is_zero() && !z0.empty());
        for (auto a : z0) {
            for (auto b : z1) common = common || near(a, b, kTol.match);
        }
        if (common) fail(std::string(cn[k]) + " has a common zero in the closed disk");
    }
}

RatMat assemble(const ThematicData& data, double t) {
    validate(data);
    return assemble_raw(data, t);
}

FamilyTerms family_terms(const ThematicData& d) {
    const auto xi = d.xi();
    const auto th = d.theta();
    FamilyTerms out{RatMat(2, 2), RatMat(2, 2)};
    for (int i = 0; i < 2; ++i) {
        const RatFun wi = reflect_sharp(d.w[static_cast<std::size_t>(i)]);
        for (int j = 0; j < 2; ++j) {
            out.first(i, j) = d.u0 * (wi * reflect_sharp(d.v[static_cast<std::size_t>(j)]));
            out.second(i, j) = d.u1 * (xi[static_cast<std::size_t>(i)] * th[static_cast<std::size_t>(j)]);
        }
    }
    return out;
}

IdentityReport verify_identities(const ThematicData& d, double t, int grid_size) {
    struct Acc {
        std::string name;
        double err = 0.0;
        double scale = 0.0;
    };
    std::vector<Acc> acc = {{"product form"},          {"outer determinants"},   {"determinant"},
                            {"conjugated form"},       {"left annihilation"},    {"right annihilation"},
                            {"adjugate left"},         {"adjugate right"},       {"reflection symmetry"},
                            {"w-row identity"},        {"v-column identity"}};
    auto add = [&](std::size_t k, const MatrixXc& lhs, const MatrixXc& rhs) {
        acc[k].err = std::max(acc[k].err, (lhs - rhs).cwiseAbs().maxCoeff());
        acc[k].scale = std::max({acc[k].scale, lhs.cwiseAbs().maxCoeff(), rhs.cwiseAbs().maxCoeff()});
    };
    const RatMat psi_fn = assemble_raw(d, t);
    Eigen::Matrix2cd j;
    j << 0.0, -1.0, 1.0, 0.0;
    const double s = t / d.t0;
    for (auto z : circle_grid(grid_size)) {
        const Complex u0 = d.u0(z), u1 = d.u1(z);
        const Eigen::Vector2cd v = column_at(d.v, z), w = column_at(d.w, z);
        const Eigen::Vector2cd xi(-w(1), w(0)), th(-v(1), v(0));
        const Eigen::Matrix2cd psi = psi_fn.at(z);

        Eigen::Matrix2cd wm, vm;
        wm << w.conjugate(), xi;
        vm << v.adjoint(), th.transpose();
        Eigen::Matrix2cd dm = Eigen::Matrix2cd::Zero();
        dm(0, 0) = d.t0 * u0;
        dm(1, 1) = t * u1;
        add(0, psi, wm * dm * vm);

        MatrixXc dets(1, 2), ones(1, 2);
        dets << wm.determinant(), vm.determinant();
        ones << 1.0, 1.0;
        add(1, dets, ones);

        MatrixXc lhs(1, 1), rhs(1, 1);
        lhs(0, 0) = psi.determinant();
        rhs(0, 0) = d.t0 * t * u0 * u1;
        add(2, lhs, rhs);

        const Eigen::Matrix2cd a = w * v.transpose();
        add(3, psi, d.t0 * u0 * a.conjugate() - t * u1 * j * a * j);

        add(4, xi.adjoint() * psi, t * u1 * th.transpose());
        add(5, psi * th.conjugate(), t * u1 * xi);
        const Eigen::Matrix2cd ad = adj2(psi);
        add(6, th.transpose() * ad, d.t0 * u0 * xi.adjoint());
        add(7, ad * xi, d.t0 * u0 * th.conjugate());

        if (s != 0.0) {
            const Eigen::Matrix2cd phi_s = psi / d.t0;
            const Eigen::Matrix2cd phi_inv = psi_point(u0, u1, v, w, 1.0, 1.0 / s);
            add(8, phi_s.conjugate(), -(s / (u0 * u1)) * j * phi_inv * j);
        }

        add(9, w.transpose() * psi, d.t0 * u0 * v.adjoint());
        add(10, psi * v, d.t0 * u0 * w.conjugate());
    }
    IdentityReport rep;
    for (const auto& a : acc) {
        if (a.name == "reflection symmetry" && s == 0.0) continue;
        const double r = a.scale > 0.0 ? a.err / a.scale : a.err;
        rep.entries.push_back({a.name, r});
        rep.worst = std::max(rep.worst, r);
    }
    rep.pass = rep.worst <= 1e-8;
    return rep;
}

int DisturbingReport::disk_events() const {
    return static_cast<int>(std::count_if(events.begin(), events.end(),
                                          [](const DisturbingEvent& e) { return e.side == EventSide::Disk; }));
}

int DisturbingReport::exterior_events() const {
    return static_cast<int>(events.size()) - disk_events();
}

DisturbingReport disturbing_numbers(const ThematicData& d) {
    validate(d);
    const FamilyTerms terms = family_terms(d);
    std::mt19937_64 rng(0x5eed);
    DisturbingReport rep;

    std::vector<std::pair<Complex, EventSide>> points;
    for (const auto& p : d.u1.poles()) {
        if (std::abs(p.loc) < 1.0) points.push_back({p.loc, EventSide::Disk});
    }
    for (const auto& p : d.u0.poles_with_infinity()) {
        if (is_infinite(p.loc) || std::abs(p.loc) > 1.0) points.push_back({p.loc, EventSide::Exterior});
    }
    for (const auto& [lambda, side] : points) {
        const LocalPencil pencil = local_pencil(terms, lambda);
        for (const auto& [s, drop] : pencil_drops(pencil, rng)) {
            const int direct = local_degree(assemble_raw(d, s * d.t0), lambda).degree;
            const int expected = pencil.rank(s);
            if (direct != expected) {
                std::ostringstream os;
                os << "local degree at " << fmt_point(lambda) << " for t/t0 = " << s << ": pencil " << expected
                   << ", direct " << direct;
                throw Error(ErrorKind::NumericalFailure, os.str());
            }
            rep.events.push_back({s, lambda, drop, side});
        }
    }
    std::sort(rep.events.begin(), rep.events.end(),
              [](const DisturbingEvent& a, const DisturbingEvent& b) { return a.t_star < b.t_star; });

    double generic = 0.0;
    for (double g : {0.6180339887498949, 0.41421356237309503, 0.7320508075688772, 0.2360679774997897}) {
        bool clear = true;
        for (const auto& e : rep.events) clear = clear && std::abs(e.t_star - g) > 1e-3;
        if (clear) {
            generic = g;
            break;
        }
    }
    const RatMat psi = assemble_raw(d, generic * d.t0);
    rep.generic_minus = mcmillan_degree(psi, Region::inside());
    rep.generic_plus = mcmillan_degree(psi, Region::outside());
    return rep;
}

std::vector<DegreeRow> degree_profile(const ThematicData& d, const std::vector<double>& t_list) {
    validate(d);
    std::vector<DegreeRow> rows;
    for (double t : t_list) {
        const RatMat psi = assemble_raw(d, t);
        rows.push_back({t, mcmillan_degree(psi, Region::inside()), mcmillan_degree(psi, Region::outside())});
    }
    return rows;
}

bool BoundsVerdict::pass() const {
    return std::all_of(clauses.begin(), clauses.end(), [](const BoundClause& c) { return c.holds; });
}

void BoundsVerdict::require_pass() const {
    std::string msg;
    for (const auto& c : clauses) {
        if (!c.holds) msg += (msg.empty() ? "" : "; ") + c.name + " (" + c.detail + ")";
    }
    if (!msg.empty()) throw Error(ErrorKind::TheoremViolation, msg);
}

BoundsVerdict check_bounds(const ThematicData& d, int scan_points) {
    BoundsVerdict out;
    out.disturbing = disturbing_numbers(d);
    const auto& events = out.disturbing.events;

    std::vector<double> ss;
    for (int i = 0; i < scan_points; ++i) {
        const double e = scan_points == 1 ? 0.0 : -3.0 + 3.0 * i / (scan_points - 1);
        ss.push_back(std::pow(10.0, e));
    }
    for (const auto& e : events) ss.push_back(e.t_star);
    std::sort(ss.begin(), ss.end());
    ss.erase(std::unique(ss.begin(), ss.end(), [](double a, double b) { return std::abs(a - b) <= 1e-12; }), ss.end());
    std::vector<double> ts;
    for (double s : ss) ts.push_back(s * d.t0);
    out.scan = degree_profile(d, ts);

    out.deg_minus_u1 = degree_region(d.u1, Region::inside());
    const int deg_minus_u0 = degree_region(d.u0, Region::inside());
    const int deg_plus_u0 = degree_region(d.u0, Region::outside());
    const int deg_v = mcmillan_degree(column(d.v), Region::sphere());
    const int deg_w = mcmillan_degree(column(d.w), Region::sphere());

    auto is_disk_event = [&](double s) {
        return std::any_of(events.begin(), events.end(), [&](const DisturbingEvent& e) {
            return e.side == EventSide::Disk && std::abs(e.t_star - s) <= 1e-12;
        });
    };
    auto is_event = [&](double s) {
        return std::any_of(events.begin(), events.end(),
                           [&](const DisturbingEvent& e) { return std::abs(e.t_star - s) <= 1e-12; });
    };

    BoundClause u0_bound{"u0 disk degree bound"}, v_bound{"v degree bound"}, w_bound{"w degree bound"},
        u1_bound{"u1 disk degree bound"}, plus_bound{"plus-part bound 2k-3"}, margin{"margin at nondisturbing t"},
        constant{"degrees constant off events"};
    auto note = [](BoundClause& c, double t, const std::string& what) {
        if (!c.holds) return;
        c.holds = false;
        std::ostringstream os;
        os << "t = " << t << ": " << what;
        c.detail = os.str();
    };
    for (std::size_t i = 0; i < out.scan.size(); ++i) {
        const auto& row = out.scan[i];
        const double s = ss[i];
        const int k = row.deg_minus;
        if (deg_minus_u0 > k) note(u0_bound, row.t, std::to_string(deg_minus_u0) + " > " + std::to_string(k));
        if (deg_v > k - 1) note(v_bound, row.t, std::to_string(deg_v) + " > " + std::to_string(k - 1));
        if (deg_w > k - 1) note(w_bound, row.t, std::to_string(deg_w) + " > " + std::to_string(k - 1));
        if (out.deg_minus_u1 > k - 1) note(u1_bound, row.t, std::to_string(out.deg_minus_u1) + " > " + std::to_string(k - 1));
        if (row.deg_plus > 2 * k - 3) note(plus_bound, row.t, std::to_string(row.deg_plus) + " > " + std::to_string(2 * k - 3));
        if (row.margin() < 2) {
            ++out.violations;
            if (!is_disk_event(s)) note(margin, row.t, "margin " + std::to_string(row.margin()));
        }
        out.deficit_sum += std::max(0, row.deg_plus + 2 - row.deg_minus);
        if (!is_event(s) && (row.deg_minus != out.disturbing.generic_minus || row.deg_plus != out.disturbing.generic_plus)) {
            note(constant, row.t,
                 "(" + std::to_string(row.deg_minus) + "," + std::to_string(row.deg_plus) + ") vs generic (" +
                     std::to_string(out.disturbing.generic_minus) + "," + std::to_string(out.disturbing.generic_plus) + ")");
        }
    }
    out.clauses = {u0_bound, v_bound, w_bound, u1_bound, plus_bound, margin, constant};

    auto count_clause = [](const std::string& name, int lhs, int rhs) {
        return BoundClause{name, lhs <= rhs, std::to_string(lhs) + " <= " + std::to_string(rhs)};
    };
    out.clauses.push_back(count_clause("violation count", out.violations, out.deg_minus_u1));
    out.clauses.push_back(count_clause("deficit sum", out.deficit_sum, out.deg_minus_u1));
    out.clauses.push_back(count_clause("disk event cap", out.disturbing.disk_events(), out.deg_minus_u1));
    out.clauses.push_back(count_clause("exterior event cap", out.disturbing.exterior_events(), deg_plus_u0));

    BoundClause single{"one event per point"}, consequences{"event multiplicity consequences"},
        pairing{"reflection pairing"};
    for (std::size_t i = 0; i < events.size(); ++i) {
        for (std::size_t j = i + 1; j < events.size(); ++j) {
            const bool same = is_infinite(events[i].lambda)
                                  ? is_infinite(events[j].lambda)
                                  : (!is_infinite(events[j].lambda) && near(events[i].lambda, events[j].lambda, kTol.structural));
            if (same) note(single, events[i].t_star * d.t0, "two events at " + fmt_point(events[i].lambda));
        }
    }
    for (const auto& e : events) {
        const RatMat psi = assemble_raw(d, e.t_star * d.t0);
        const int local = local_degree(psi, e.lambda).degree;
        const double t = e.t_star * d.t0;
        if (e.side == EventSide::Disk) {
            const int l = pole_mult(d.u1, e.lambda) - local;
            if (l > 0) {
                const std::array<RatFun, 2> vs{reflect_sharp(d.v[0]), reflect_sharp(d.v[1])};
                const std::array<RatFun, 2> ws{reflect_sharp(d.w[0]), reflect_sharp(d.w[1])};
                if (zero_mult(d.u0, e.lambda) < l) note(consequences, t, "u0 zero order below " + std::to_string(l));
                if (column_pole_mult(vs, e.lambda) < l) note(consequences, t, "v# pole order below " + std::to_string(l));
                if (column_pole_mult(ws, e.lambda) < l) note(consequences, t, "w# pole order below " + std::to_string(l));
            }
        } else {
            const int l = pole_mult(d.u0, e.lambda) - local;
            if (l > 0) {
                if (zero_mult(d.u1, e.lambda) < l) note(consequences, t, "u1 zero order below " + std::to_string(l));
                if (column_pole_mult(d.v, e.lambda) < l) note(consequences, t, "v pole order below " + std::to_string(l));
                if (column_pole_mult(d.w, e.lambda) < l) note(consequences, t, "w pole order below " + std::to_string(l));
            }
            if (e.t_star != 1.0) {
                note(pairing, t, "exterior event away from t = t0");
                continue;
            }
            const Complex mirror = is_infinite(e.lambda) ? Complex(0.0)
                                   : e.lambda == Complex(0.0) ? kInfinity
                                                              : 1.0 / std::conj(e.lambda);
            const bool paired = std::any_of(events.begin(), events.end(), [&](const DisturbingEvent& o) {
                return o.side == EventSide::Disk && o.t_star == 1.0 && o.drop == e.drop &&
                       !is_infinite(mirror) && near(o.lambda, mirror, kTol.structural);
            });
            if (!paired) note(pairing, t, "no disk event of drop " + std::to_string(e.drop) + " at " + fmt_point(mirror));
        }
    }
    out.clauses.push_back(single);
    out.clauses.push_back(consequences);
    out.clauses.push_back(pairing);

    if (d.t1 == 0.0) {
        const RatMat psi = assemble_raw(d, 0.0);
        const int k = mcmillan_degree(psi, Region::inside());
        const int p = mcmillan_degree(psi, Region::outside());
        out.clauses.push_back({"plus-part bound k-1 for t1 = 0", p <= k - 1,
                               std::to_string(p) + " <= " + std::to_string(k - 1)});
    }
    return out;
}

}  // namespace superopt
