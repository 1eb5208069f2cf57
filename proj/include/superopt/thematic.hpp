#pragma once

#include <array>
#include <string>
#include <vector>

#include "superopt/ratmat.hpp"

namespace superopt {

/// Data of the family
///
///     Psi_[t] = t0 u0 w# v* + t u1 xi theta^t,   xi = (-w2, w1), theta = (-v2, v1),
///
/// i.e. (w#, xi) diag(t0 u0, t u1) (v*; theta^t). At t = t1 this is the function
/// the data was built for.
struct ThematicData {
    double t0 = 1.0;
    double t1 = 0.0;
    RatFun u0, u1;
    std::array<RatFun, 2> v, w;

    std::array<RatFun, 2> xi() const { return {-w[1], w[0]}; }
    std::array<RatFun, 2> theta() const { return {-v[1], v[0]}; }
};

/// Throws InvalidThematicData naming the first failed invariant.
void validate(const ThematicData& data);

/// Psi_[t] with absolute t (t = t1 gives the factored function itself).
RatMat assemble(const ThematicData& data, double t);

/// The two rank-one terms u0 w# v* and u1 xi theta^t (no t0 or t scaling).
struct FamilyTerms {
    RatMat first;
    RatMat second;
};

FamilyTerms family_terms(const ThematicData& data);

struct IdentityResidual {
    std::string name;
    double residual = 0.0;  // max pointwise error relative to the largest term
};

struct IdentityReport {
    std::vector<IdentityResidual> entries;
    double worst = 0.0;
    bool pass = false;
};

/// Pointwise checks of the algebraic identities of the family on a circle grid.
/// Does not validate the data, so corrupted input produces failing entries.
IdentityReport verify_identities(const ThematicData& data, double t, int grid_size = kDefaultGrid);

enum class EventSide { Disk, Exterior };

struct DisturbingEvent {
    double t_star = 0.0;  // scaled parameter t / t0 in (0, 1]
    Complex lambda;
    int drop = 0;
    EventSide side = EventSide::Disk;
};

struct DisturbingReport {
    std::vector<DisturbingEvent> events;
    int generic_minus = 0;
    int generic_plus = 0;
    int disk_events() const;
    int exterior_events() const;
};

/// Parameter values in (0, 1] (scaled) where poles of the two terms cancel.
DisturbingReport disturbing_numbers(const ThematicData& data);

struct DegreeRow {
    double t = 0.0;  // absolute
    int deg_minus = 0;
    int deg_plus = 0;
    int margin() const { return deg_minus - deg_plus; }
};

/// Degrees of Psi_[t] for each absolute t in the list.
std::vector<DegreeRow> degree_profile(const ThematicData& data, const std::vector<double>& t_list);

struct BoundClause {
    BoundClause() = default;
    BoundClause(std::string n, bool h = true, std::string d = {})
        : name(std::move(n)), holds(h), detail(std::move(d)) {}

    std::string name;
    bool holds = true;
    std::string detail;
};

struct BoundsVerdict {
    std::vector<BoundClause> clauses;
    DisturbingReport disturbing;
    std::vector<DegreeRow> scan;    // absolute t, ascending
    int deg_minus_u1 = 0;
    int violations = 0;             // scanned t with margin < 2
    int deficit_sum = 0;            // sum of [deg P+ + 2 - deg P-]_+
    bool pass() const;
    /// Throws TheoremViolation listing every failed clause.
    void require_pass() const;
};

/// Scans `scan_points` log-uniform scaled values in [1e-3, 1] plus all
/// disturbing numbers and checks the degree inequalities of the family.
BoundsVerdict check_bounds(const ThematicData& data, int scan_points = 100);

}  // namespace superopt
