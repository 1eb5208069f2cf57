#include "superopt/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "superopt/hankel.hpp"
#include "superopt/json_io.hpp"
#include "superopt/random.hpp"

namespace superopt {

namespace {

struct Report {
    Json body;
    std::vector<std::string> summary;
    std::vector<std::string> violated;

    void fail(const std::string& clause) { violated.push_back(clause); }
};

int grid_from_env(int fallback) {
    const char* env = std::getenv("SUPEROPT_GRID");
    if (!env || !*env) return fallback;
    try {
        std::size_t used = 0;
        const int g = std::stoi(env, &used);
        if (used != std::string(env).size()) throw std::invalid_argument(env);
        return g;
    } catch (const std::exception&) {
        throw Error(ErrorKind::InputError, std::string("SUPEROPT_GRID is not an integer: ") + env);
    }
}

RatMat matrix_input(const Json& j) {
    if (j.is_object() && j.contains("entries")) return ratmat_from_json(j);
    RatMat a(1, 1);
    a(0, 0) = ratfun_from_json(j);
    return a;
}

ThematicData thematic_input(const Json& j) {
    if (j.is_object() && j.contains("thematic")) return thematic_from_json(j.at("thematic"), "/thematic");
    return thematic_from_json(j);
}

const char* side_name(EventSide s) { return s == EventSide::Disk ? "disk" : "exterior"; }

Json degree_rows(const std::vector<DegreeRow>& rows) {
    Json a = Json::array();
    for (const auto& r : rows) a.push_back({{"t", r.t}, {"deg_minus", r.deg_minus}, {"deg_plus", r.deg_plus}});
    return a;
}

Json events_json(const DisturbingReport& d) {
    Json a = Json::array();
    for (const auto& e : d.events) {
        a.push_back({{"t_star", e.t_star}, {"lambda", complex_to_json(e.lambda)}, {"drop", e.drop}, {"side", side_name(e.side)}});
    }
    return {{"events", a}, {"generic_minus", d.generic_minus}, {"generic_plus", d.generic_plus}};
}

Json clauses_json(const BoundsVerdict& v, Report& rep) {
    Json a = Json::array();
    for (const auto& c : v.clauses) {
        a.push_back({{"clause", c.name}, {"holds", c.holds}, {"detail", c.detail}});
        if (!c.holds) rep.fail(c.name);
    }
    return a;
}

Json identities_json(const IdentityReport& r, Report& rep) {
    Json a = Json::array();
    for (const auto& e : r.entries) a.push_back({{"identity", e.name}, {"residual", e.residual}});
    if (!r.pass) rep.fail("identity suite");
    return {{"entries", a}, {"worst", r.worst}, {"pass", r.pass}};
}

void cmd_degree(const RunConfig&, Report& rep) {
    const RatMat a = matrix_input(read_json_file(rep.body["input"]));
    const int inside = mcmillan_degree(a, Region::inside());
    const int outside = mcmillan_degree(a, Region::outside());
    const int h_in = hankel_rank_degree(a);
    const int h_out = hankel_rank_degree_outside(a);
    rep.body["inside"] = inside;
    rep.body["outside"] = outside;
    rep.body["hankel_inside"] = h_in;
    rep.body["hankel_outside"] = h_out;
    if (inside != h_in || outside != h_out) rep.fail("degree oracles agree");
    std::ostringstream os;
    os << "deg inside: " << inside << ", deg outside: " << outside;
    rep.summary.push_back(os.str());
}

void cmd_split(const RunConfig&, Report& rep) {
    const RatMat a = matrix_input(read_json_file(rep.body["input"]));
    const auto s = riesz_split_mat(a);
    rep.body["minus"] = ratmat_to_json(s.minus);
    rep.body["plus"] = ratmat_to_json(s.plus);
    double gap = 0.0;
    for (auto z : circle_grid(rep.body["tolerances"]["grid_size"].get<int>())) {
        gap = std::max(gap, (a.at(z) - s.minus.at(z) - s.plus.at(z)).cwiseAbs().maxCoeff());
    }
    rep.body["reconstruction"] = gap;
    if (gap > 1e-8) rep.fail("projections sum to the input");
    rep.summary.push_back("deg P-: " + std::to_string(mcmillan_degree(s.minus, Region::sphere())) +
                          ", deg P+: " + std::to_string(mcmillan_degree(s.plus, Region::sphere())));
}

void cmd_aak(const RunConfig& cfg, Report& rep) {
    const RatFun phi = ratfun_from_json(read_json_file(rep.body["input"]));
    const AakResult r = aak_scalar(phi);
    rep.body["sigma0"] = r.sigma0;
    rep.body["best"] = r.best.to_string();
    rep.body["best_function"] = ratfun_to_json(r.best);
    rep.body["error_function"] = ratfun_to_json(r.error);
    rep.body["multiple_top"] = r.multiple_top;
    rep.body["fit_residual"] = r.fit_residual;
    double lo = 1e300, hi = 0.0;
    for (auto z : circle_grid(cfg.grid_size)) {
        const double m = std::abs(r.error(z));
        lo = std::min(lo, m);
        hi = std::max(hi, m);
    }
    rep.body["error_modulus"] = {lo, hi};
    if (r.sigma0 > 0.0 && hi - lo > 1e-7 * r.sigma0) rep.fail("error has constant modulus");
    rep.summary.push_back("sigma0: " + std::to_string(r.sigma0) + ", best: " + r.best.to_string());
}

void cmd_superopt(const RunConfig&, Report& rep) {
    const RatMat phi = ratmat_from_json(read_json_file(rep.body["input"]));
    const SuperoptResult r = superoptimal(phi);
    rep.body["result"] = superopt_to_json(r);
    std::ostringstream os;
    os << "t0: " << r.t0 << ", t1: " << r.t1;
    if (r.identity_case) os << " (analytic input)";
    rep.summary.push_back(os.str());
}

void cmd_family_scan(const RunConfig& cfg, Report& rep) {
    const ThematicData d = thematic_input(read_json_file(rep.body["input"]));
    validate(d);
    const BoundsVerdict v = check_bounds(d, cfg.t_grid);
    rep.body["scan"] = degree_rows(v.scan);
    rep.body["disturbing"] = events_json(v.disturbing);
    rep.body["deg_minus_u1"] = v.deg_minus_u1;
    rep.body["violations"] = v.violations;
    rep.body["deficit_sum"] = v.deficit_sum;
    rep.body["clauses"] = clauses_json(v, rep);
    rep.summary.push_back("events: " + std::to_string(v.disturbing.events.size()) +
                          ", deficit sum: " + std::to_string(v.deficit_sum) +
                          ", deg P-u1: " + std::to_string(v.deg_minus_u1));
}

void cmd_verify(const RunConfig& cfg, Report& rep) {
    const ThematicData d = thematic_input(read_json_file(rep.body["input"]));
    const IdentityReport ids = verify_identities(d, d.t1, cfg.grid_size);
    rep.body["identities"] = identities_json(ids, rep);
    try {
        validate(d);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::InvalidThematicData) throw;
        rep.body["invalid_data"] = e.what();
        rep.fail("thematic data invariants");
        rep.summary.push_back("worst identity residual: " + std::to_string(ids.worst));
        return;
    }
    const BoundsVerdict v = check_bounds(d, cfg.t_grid);
    rep.body["clauses"] = clauses_json(v, rep);
    const VeryBadCertificate vb = verify_very_bad(assemble(d, d.t1));
    rep.body["very_badly_approximable"] = {{"pass", vb.pass},
                                           {"s0_spread", vb.s0_spread},
                                           {"s1_spread", vb.s1_spread},
                                           {"approximant_sup", vb.approximant_sup},
                                           {"detail", vb.detail}};
    if (!vb.pass) rep.fail("superoptimal approximant of the family member is zero");
    std::ostringstream os;
    os << "worst identity residual: " << ids.worst << ", deficit sum: " << v.deficit_sum;
    rep.summary.push_back(os.str());
}

void cmd_counterexample(const RunConfig&, Report& rep, int k, double a, const std::vector<double>& ts,
                        const std::vector<int>& kappa, const std::string& instance_out) {
    const auto b1 = default_b1_zeros(k);
    const auto b2 = default_b2_zeros(k);
    if (ts.size() == 1 && (kappa.empty() || (kappa.size() == 1 && kappa[0] == k - 1))) {
        const KpResult r = build_kp(k, a, ts[0], b1, b2);
        const SuperoptDegreeReport d = superopt_degree_report(r.phi);
        rep.body["spec"] = counterexample_spec_to_json(r.spec);
        rep.body["deg_minus"] = r.deg_minus;
        rep.body["deg_plus"] = r.deg_plus;
        rep.body["deg_phi"] = d.deg_phi;
        rep.body["deg_approximant"] = d.deg_approximant;
        if (!d.holds) rep.fail("approximant degree bound");
        if (d.deg_phi != k || d.deg_approximant != 2 * k - 3) rep.fail("approximant degree reaches 2k - 3");
        rep.summary.push_back("deg P-: " + std::to_string(r.deg_minus) + ", deg P+: " + std::to_string(r.deg_plus));
        rep.summary.push_back("deg Phi: " + std::to_string(d.deg_phi) +
                              ", deg approximant: " + std::to_string(d.deg_approximant));
        if (!instance_out.empty()) {
            std::ofstream f(instance_out);
            f << Json{{"schema", kSchema}, {"thematic", thematic_to_json(r.thematic)}, {"psi", ratmat_to_json(r.psi)}}.dump(2)
              << "\n";
        }
        return;
    }
    if (kappa.size() != ts.size()) throw Error(ErrorKind::InputError, "--kappa needs one block size per t value");
    const EkpResult r = build_ekp(k, a, ts, kappa, b1, b2);
    rep.body["spec"] = counterexample_spec_to_json(r.spec);
    rep.body["rows"] = degree_rows(r.rows);
    const BoundsVerdict v = check_bounds(r.thematic);
    rep.body["deficit_sum"] = v.deficit_sum;
    rep.body["deg_minus_u1"] = v.deg_minus_u1;
    rep.body["clauses"] = clauses_json(v, rep);
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
        const auto& row = r.rows[i];
        std::ostringstream os;
        os << "t = " << ts[i] << ": deg P-: " << row.deg_minus << ", deg P+: " << row.deg_plus;
        rep.summary.push_back(os.str());
    }
    if (!instance_out.empty()) {
        std::ofstream f(instance_out);
        f << Json{{"schema", kSchema}, {"thematic", thematic_to_json(r.thematic)}}.dump(2) << "\n";
    }
}

void cmd_random_thematic(const RunConfig& cfg, Report& rep, int max_degree) {
    Rng rng(cfg.seed);
    const ThematicData d = random_thematic(rng, max_degree);
    rep.body["thematic"] = thematic_to_json(d);
    rep.summary.push_back("t0: " + std::to_string(d.t0) + ", t1: " + std::to_string(d.t1));
}

int exit_code_for(ErrorKind k) {
    switch (k) {
        case ErrorKind::TheoremViolation:
        case ErrorKind::NumericalFailure:
            return 2;
        default:
            return 1;
    }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    int k = 3;
    double a = 2.0;
    std::vector<double> ts;
    std::vector<int> kappa;
    std::string instance_out;
    int max_degree = 6;

    CLI::App app{"Superoptimal approximation and thematic factorization tools", "superopt"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--grid", cfg.grid_size, "Circle grid size (>= 64)")->check(CLI::Range(64, 1 << 20));
    app.add_option("--t-grid", cfg.t_grid, "Number of scanned t values")->check(CLI::PositiveNumber);
    app.add_option("--seed", cfg.seed, "Seed for generated instances");
    app.add_option("-o,--output", cfg.output, "Write the report here instead of stdout");
    app.add_flag("--text", cfg.text, "Print the summary lines instead of JSON");

    auto file_cmd = [&](const char* name, const char* help) {
        auto* s = app.add_subcommand(name, help);
        s->add_option("file", cfg.input, "Input JSON")->required();
        return s;
    };
    file_cmd("degree", "McMillan degree inside and outside the disk, both oracles");
    file_cmd("split", "Riesz projections P- and P+");
    file_cmd("aak", "Best analytic approximation of a scalar function");
    file_cmd("superopt", "Superoptimal approximant of a 2x2 function");
    file_cmd("family-scan", "Degree profile and disturbing numbers of a thematic family");
    file_cmd("verify", "Identity suite and degree inequalities of a thematic family");
    auto* ce = app.add_subcommand("counterexample", "Build and check the degree-sharpness construction");
    ce->add_option("--k", k, "McMillan degree of P-Psi")->check(CLI::Range(2, 64));
    ce->add_option("--a", a, "Off-diagonal parameter");
    ce->add_option("--t", ts, "Disturbing values")->delimiter(',')->required();
    ce->add_option("--kappa", kappa, "Block sizes, one per t value")->delimiter(',');
    ce->add_option("--instance", instance_out, "Also write the generated instance here");
    auto* rt = app.add_subcommand("random-thematic", "Random valid thematic data");
    rt->add_option("--max-degree", max_degree, "Disk degree bound of the family")->check(CLI::Range(2, 32));

    std::vector<char*> argv;
    std::vector<std::string> storage = args;
    for (auto& s : storage) argv.push_back(s.data());
    try {
        cfg.grid_size = grid_from_env(cfg.grid_size);
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    } catch (const Error& e) {
        err << e.what() << "\n";
        return 1;
    }
    if (cfg.grid_size < 64) {
        err << "grid size must be at least 64\n";
        return 1;
    }
    cfg.command = app.get_subcommands().front()->get_name();

    Report rep;
    rep.body["schema"] = kSchema;
    rep.body["command"] = cfg.command;
    if (!cfg.input.empty()) rep.body["input"] = cfg.input;
    rep.body["tolerances"] = tolerances_json(cfg.grid_size);
    try {
        if (cfg.command == "degree") cmd_degree(cfg, rep);
        else if (cfg.command == "split") cmd_split(cfg, rep);
        else if (cfg.command == "aak") cmd_aak(cfg, rep);
        else if (cfg.command == "superopt") cmd_superopt(cfg, rep);
        else if (cfg.command == "family-scan") cmd_family_scan(cfg, rep);
        else if (cfg.command == "verify") cmd_verify(cfg, rep);
        else if (cfg.command == "counterexample") cmd_counterexample(cfg, rep, k, a, ts, kappa, instance_out);
        else if (cfg.command == "random-thematic") {
            rep.body["seed"] = cfg.seed;
            cmd_random_thematic(cfg, rep, max_degree);
        }
    } catch (const Error& e) {
        err << e.what() << "\n";
        const int code = exit_code_for(e.kind());
        if (code == 2) err << "violated: " << (e.kind() == ErrorKind::TheoremViolation ? "theorem clause" : "numerical certificate") << "\n";
        return code;
    }

    rep.body["verdict"] = rep.violated.empty() ? "PASS" : "FAIL";
    rep.body["violated"] = rep.violated;
    rep.body["summary"] = rep.summary;

    std::ofstream file;
    std::ostream* sink = &out;
    if (!cfg.output.empty()) {
        file.open(cfg.output);
        if (!file) {
            err << "cannot write " << cfg.output << "\n";
            return 1;
        }
        sink = &file;
    }
    if (cfg.text) {
        for (const auto& s : rep.summary) *sink << s << "\n";
        *sink << (rep.violated.empty() ? "PASS" : "FAIL") << "\n";
    } else {
        *sink << rep.body.dump(2) << "\n";
    }
    for (const auto& c : rep.violated) err << "violated: " << c << "\n";
    return rep.violated.empty() ? 0 : 2;
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args(argv, argv + argc);
    return run(args, out, err);
}

}  // namespace superopt
