// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <chrono>
#include <cmath>
#include <iostream>
#include <sstream>

#include <Eigen/SVD>

#include "superopt/counterexample.hpp"
#include "superopt/hankel.hpp"
#include "superopt/nehari2x2.hpp"
#include "superopt/random.hpp"

using namespace superopt;

namespace {

struct Line {
    bool ok = true;
    std::ostringstream note;

    void require(bool c, const std::string& what) {
        if (!c && ok) note << what << "; ";
        ok = ok && c;
    }
};

int failures = 0;

template <class F>
void criterion(int id, const char* title, F body) {
    Line line;
    try {
        body(line);
    } catch (const std::exception& e) {
        line.ok = false;
        line.note << "exception: " << e.what();
    }
    if (!line.ok) ++failures;
    std::cout << (line.ok ? "PASS" : "FAIL") << "  " << id << "  " << title;
    const std::string note = line.note.str();
    if (!note.empty()) std::cout << "  [" << note << "]";
    std::cout << std::endl;
}

double seconds_since(std::chrono::steady_clock::time_point t) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

std::vector<ThematicData> random_instances() {
    Rng rng(2024);
    std::vector<ThematicData> out;
    for (int i = 0; i < 25; ++i) out.push_back(random_thematic(rng, 6));
    return out;
}

}  // namespace

int main() {
    const auto instances = random_instances();
    std::vector<BoundsVerdict> verdicts;

    criterion(1, "construction reaches deg P+ = 2k-3 for k = 2..5, end to end", [](Line& l) {
        double worst = 0.0;
        for (int k = 2; k <= 5; ++k) {
            const auto start = std::chrono::steady_clock::now();
            const auto r = build_kp(k, 2.0, 0.5, default_b1_zeros(k), default_b2_zeros(k));
            const std::string tag = "k=" + std::to_string(k);
            l.require(mcmillan_degree(r.psi, Region::inside()) == k && hankel_rank_degree(r.psi) == k, tag + " deg P-");
            l.require(mcmillan_degree(r.psi, Region::outside()) == 2 * k - 3 && hankel_rank_degree_outside(r.psi) == 2 * k - 3,
                      tag + " deg P+");
            const auto rep = superopt_degree_report(r.phi);
            l.require(rep.deg_phi == k && rep.deg_approximant == 2 * k - 3, tag + " approximant degree");
            const double dt = seconds_since(start);
            worst = std::max(worst, dt);
            l.require(dt < 5.0, tag + " runtime");
        }
        l.note << "slowest k " << worst << " s";
    });

    criterion(2, "margin >= 2 off disturbing values, violations <= deg P-u1 (25 random families)", [&](Line& l) {
        int events = 0;
        for (std::size_t i = 0; i < instances.size(); ++i) {
            const BoundsVerdict v = check_bounds(instances[i], 100);
            verdicts.push_back(v);
            events += static_cast<int>(v.disturbing.events.size());
            for (const auto& row : v.scan) {
                bool disturbing = false;
                for (const auto& e : v.disturbing.events) {
                    if (std::abs(row.t - e.t_star * instances[i].t0) <= 1e-9 * instances[i].t0) disturbing = true;
                }
                if (!disturbing) l.require(row.margin() >= 2, "instance " + std::to_string(i) + " margin");
            }
            l.require(v.violations <= v.deg_minus_u1, "instance " + std::to_string(i) + " violation count");
            l.require(v.pass(), "instance " + std::to_string(i) + " clauses");
        }
        l.note << "disturbing events seen " << events;
    });

    criterion(3, "deficit sum <= deg P-u1, equality on the two-block construction", [&](Line& l) {
        for (std::size_t i = 0; i < verdicts.size(); ++i) {
            l.require(verdicts[i].deficit_sum <= verdicts[i].deg_minus_u1, "instance " + std::to_string(i));
        }
        l.require(verdicts.size() == instances.size(), "random instances missing");
        const auto e = build_ekp(3, 2.0, {0.4, 0.8}, {1, 1}, default_b1_zeros(3), default_b2_zeros(3));
        const BoundsVerdict v = check_bounds(e.thematic, 100);
        l.require(v.pass(), "construction clauses");
        l.require(v.deficit_sum == v.deg_minus_u1 && v.deficit_sum == 2, "construction equality");
        l.note << "construction deficit " << v.deficit_sum << " = deg P-u1 " << v.deg_minus_u1;
    });

    criterion(4, "identity suite residuals <= 1e-8 on every family instance", [&](Line& l) {
        std::vector<ThematicData> all = instances;
        for (int k = 2; k <= 5; ++k) all.push_back(build_kp(k, 2.0, 0.5, default_b1_zeros(k), default_b2_zeros(k)).thematic);
        all.push_back(build_ekp(3, 2.0, {0.4, 0.8}, {1, 1}, default_b1_zeros(3), default_b2_zeros(3)).thematic);
        double worst = 0.0;
        for (std::size_t i = 0; i < all.size(); ++i) {
            for (double s : {1.0, 0.5, 0.1}) {
                const auto r = verify_identities(all[i], s * all[i].t1);
                worst = std::max(worst, r.worst);
                l.require(r.pass, "instance " + std::to_string(i));
            }
        }
        l.note << all.size() << " instances, worst " << worst;
    });

    criterion(5, "scalar best approximation: flat error, sigma0, degree, winding (50 random)", [](Line& l) {
        Rng rng(77);
        double worst_flat = 0.0, worst_sigma = 0.0;
        for (int i = 0; i < 50; ++i) {
            const int d = 1 + i % 8;
            const RatFun phi = riesz_split(random_symbol(rng, d)).minus;
            const std::string tag = "case " + std::to_string(i);
            const AakResult r = aak_scalar(phi);
            RatMat m(1, 1);
            m(0, 0) = phi;
            const double sigma = hankel_svd(m).sigma(0);
            double lo = 1e300, hi = 0.0;
            for (auto z : circle_grid(kDefaultGrid)) {
                const double e = std::abs(r.error(z));
                lo = std::min(lo, e);
                hi = std::max(hi, e);
            }
            worst_flat = std::max(worst_flat, (hi - lo) / sigma);
            worst_sigma = std::max(worst_sigma, std::abs(0.5 * (hi + lo) - sigma) / sigma);
            l.require(hi - lo <= 1e-7 * sigma, tag + " flat");
            l.require(std::abs(0.5 * (hi + lo) - sigma) <= 1e-8 * sigma, tag + " sigma0");
            l.require(degree_region(r.best, Region::sphere()) <= d - 1, tag + " degree");
            l.require(winding_number(r.error) < 0, tag + " winding");
        }
        l.note << "worst flatness " << worst_flat << ", worst sigma mismatch " << worst_sigma;
    });

    criterion(6, "Hankel rank equals the sum of local degrees (200 random matrices)", [](Line& l) {
        Rng rng(91);
        for (int i = 0; i < 200; ++i) {
            const RatMat a = random_ratmat(rng, 1 + i % 3, 1 + (i / 3) % 3, 1 + i % 10);
            l.require(hankel_rank_degree(a) == mcmillan_degree(a, Region::inside()), "case " + std::to_string(i));
        }
    });

    criterion(7, "unitary families: Hankel singular value shift and deg P+U <= deg P-U - 2 (10 cases)", [](Line& l) {
        Rng rng(313);
        double worst = 0.0;
        for (int i = 0; i < 10; ++i) {
            ThematicData d = random_thematic(rng, 6);
            d.t0 = 1.0;
            d.t1 = 1.0;
            const RatMat u = assemble(d, 1.0);
            const std::string tag = "case " + std::to_string(i);
            const auto s = singular_shift_check(u);
            worst = std::max(worst, s.max_mismatch);
            l.require(s.max_mismatch <= 1e-7, tag + " shift");
            l.require(mcmillan_degree(u, Region::outside()) <= mcmillan_degree(u, Region::inside()) - 2, tag + " degree");
            l.require(verify_very_bad(u).pass, tag + " very badly approximable");
        }
        l.note << "worst shift mismatch " << worst;
    });

    criterion(8, "superoptimal round trip recovers G - P+Psi (20 cases)", [](Line& l) {
        Rng rng(555);
        double worst = 0.0, worst_flat = 0.0;
        for (int i = 0; i < 20; ++i) {
            const ThematicData th = random_thematic(rng, 6);
            const RatMat psi = assemble(th, th.t1);
            const RatMat g = random_analytic(rng, 2, 2, i % 5);
            const auto split = riesz_split_mat(psi);
            const RatMat phi = split.minus + g;
            const auto r = superoptimal(phi);
            const RatMat expect = g - split.plus;
            double err = 0.0, lo0 = 1e300, hi0 = 0.0, lo1 = 1e300, hi1 = 0.0;
            for (auto z : circle_grid(kDefaultGrid)) {
                err = std::max(err, (r.approximant.at(z) - expect.at(z)).cwiseAbs().maxCoeff());
                const Eigen::Vector2d s = Eigen::JacobiSVD<MatrixXc>(phi.at(z) - r.approximant.at(z)).singularValues().head<2>();
                lo0 = std::min(lo0, s(0));
                hi0 = std::max(hi0, s(0));
                lo1 = std::min(lo1, s(1));
                hi1 = std::max(hi1, s(1));
            }
            const std::string tag = "case " + std::to_string(i);
            worst = std::max(worst, err);
            worst_flat = std::max({worst_flat, hi0 - lo0, hi1 - lo1});
            l.require(err <= 1e-7, tag + " approximant");
            l.require(hi0 - lo0 <= 1e-7 && hi1 - lo1 <= 1e-7, tag + " flatness");
        }
        l.note << "worst error " << worst << ", worst spread " << worst_flat;
    });

    std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria fail") << std::endl;
    return failures == 0 ? 0 : 1;
}
