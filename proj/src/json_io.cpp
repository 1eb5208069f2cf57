#include "superopt/json_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace superopt {

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) {
    throw Error(ErrorKind::InputError, "at " + (where.empty() ? std::string("/") : where) + ": " + what);
}

double real_of(const Json& j, const std::string& where) {
    if (!j.is_number()) bad(where, "expected a number");
    return j.get<double>();
}

Complex complex_of(const Json& j, const std::string& where) {
    if (j.is_number()) return j.get<double>();
    if (j.is_array() && j.size() == 2) return {real_of(j[0], where + "/0"), real_of(j[1], where + "/1")};
    bad(where, "expected a number or [re, im]");
}

Poly poly_of(const Json& j, const std::string& where) {
    if (!j.is_array() || j.empty()) bad(where, "expected a non-empty coefficient array");
    Poly p(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) p(static_cast<Eigen::Index>(i)) = complex_of(j[i], where + "/" + std::to_string(i));
    return p;
}

// Finite roots; the multiplicity declared at infinity (if any) goes to *inf.
std::vector<Root> roots_of(const Json& j, const std::string& where, int* inf) {
    std::vector<Root> out;
    *inf = 0;
    if (!j.is_array()) bad(where, "expected an array of [re, im, mult]");
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string w = where + "/" + std::to_string(i);
        const Json& r = j[i];
        if (!r.is_array() || r.empty()) bad(w, "expected [re, im, mult] or [\"inf\", mult]");
        if (r[0].is_string()) {
            if (r[0].get<std::string>() != "inf" || r.size() > 2) bad(w, "expected [\"inf\", mult]");
            const int m = r.size() == 2 ? r[1].get<int>() : 1;
            if (m < 1) bad(w, "multiplicity must be positive");
            *inf += m;
            continue;
        }
        if (r.size() < 2 || r.size() > 3) bad(w, "expected [re, im, mult]");
        const Complex loc(real_of(r[0], w + "/0"), real_of(r[1], w + "/1"));
        int m = 1;
        if (r.size() == 3) {
            if (!r[2].is_number_integer()) bad(w + "/2", "multiplicity must be an integer");
            m = r[2].get<int>();
        }
        if (m < 1) bad(w + "/2", "multiplicity must be positive");
        out.push_back({loc, m});
    }
    return out;
}

Json roots_to_json(const std::vector<Root>& roots) {
    Json a = Json::array();
    for (const auto& r : roots) a.push_back({r.loc.real(), r.loc.imag(), r.mult});
    return a;
}

std::array<RatFun, 2> column_of(const Json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2) bad(where, "expected a pair of functions");
    return {ratfun_from_json(j[0], where + "/0"), ratfun_from_json(j[1], where + "/1")};
}

const Json& field(const Json& j, const char* key, const std::string& where) {
    if (!j.is_object() || !j.contains(key)) bad(where, std::string("missing \"") + key + "\"");
    return j.at(key);
}

}  // namespace

Json complex_to_json(Complex c) { return Json::array({c.real(), c.imag()}); }

RatFun ratfun_from_json(const Json& j, const std::string& where) {
    if (j.is_number() || (j.is_array() && j.size() == 2 && j[0].is_number())) return RatFun::constant(complex_of(j, where));
    if (!j.is_object()) bad(where, "expected a rational function");
    if (j.contains("num")) {
        const Poly num = poly_of(j.at("num"), where + "/num");
        const Poly den = j.contains("den") ? poly_of(j.at("den"), where + "/den") : poly_constant(1.0);
        if (poly_degree(den) < 0) bad(where + "/den", "zero denominator");
        return RatFun::from_coefficients(num, den);
    }
    if (j.contains("gain")) {
        const Complex gain = complex_of(j.at("gain"), where + "/gain");
        int zi = 0, pi = 0;
        const auto zeros = j.contains("zeros") ? roots_of(j.at("zeros"), where + "/zeros", &zi) : std::vector<Root>{};
        const auto poles = j.contains("poles") ? roots_of(j.at("poles"), where + "/poles", &pi) : std::vector<Root>{};
        const RatFun f = RatFun::factored(gain, zeros, poles);
        if ((zi > 0 || pi > 0) && !f.is_zero() && f.order_at_infinity() != pi - zi) {
            bad(where, "declared order at infinity does not match the finite roots");
        }
        return f;
    }
    bad(where, "expected \"num\"/\"den\" or \"gain\"/\"zeros\"/\"poles\"");
}

Json ratfun_to_json(const RatFun& f) {
    Json j;
    j["gain"] = complex_to_json(f.is_zero() ? Complex(0.0) : f.gain());
    j["zeros"] = roots_to_json(f.is_zero() ? std::vector<Root>{} : f.zeros());
    j["poles"] = roots_to_json(f.is_zero() ? std::vector<Root>{} : f.poles());
    return j;
}

RatMat ratmat_from_json(const Json& j, const std::string& where) {
    const Json& e = field(j, "entries", where);
    if (!e.is_array() || e.empty()) bad(where + "/entries", "expected a non-empty array of rows");
    const auto rows = static_cast<Eigen::Index>(e.size());
    if (!e[0].is_array() || e[0].empty()) bad(where + "/entries/0", "expected a non-empty row");
    const auto cols = static_cast<Eigen::Index>(e[0].size());
    if (j.contains("rows") && j.at("rows") != rows) bad(where + "/rows", "does not match the entries");
    if (j.contains("cols") && j.at("cols") != cols) bad(where + "/cols", "does not match the entries");
    RatMat a(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const std::string w = where + "/entries/" + std::to_string(r);
        const Json& row = e[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) bad(w, "ragged row");
        for (Eigen::Index c = 0; c < cols; ++c) {
            a(r, c) = ratfun_from_json(row[static_cast<std::size_t>(c)], w + "/" + std::to_string(c));
        }
    }
    return a;
}

Json ratmat_to_json(const RatMat& a) {
    Json j;
    j["rows"] = a.rows();
    j["cols"] = a.cols();
    Json e = Json::array();
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < a.cols(); ++c) row.push_back(ratfun_to_json(a(r, c)));
        e.push_back(row);
    }
    j["entries"] = e;
    return j;
}

ThematicData thematic_from_json(const Json& j, const std::string& where) {
    ThematicData d;
    d.t0 = real_of(field(j, "t0", where), where + "/t0");
    d.t1 = real_of(field(j, "t1", where), where + "/t1");
    d.u0 = ratfun_from_json(field(j, "u0", where), where + "/u0");
    d.u1 = ratfun_from_json(field(j, "u1", where), where + "/u1");
    d.v = column_of(field(j, "v", where), where + "/v");
    d.w = column_of(field(j, "w", where), where + "/w");
    return d;
}

Json thematic_to_json(const ThematicData& d) {
    Json j;
    j["t0"] = d.t0;
    j["t1"] = d.t1;
    j["u0"] = ratfun_to_json(d.u0);
    j["u1"] = ratfun_to_json(d.u1);
    j["v"] = Json::array({ratfun_to_json(d.v[0]), ratfun_to_json(d.v[1])});
    j["w"] = Json::array({ratfun_to_json(d.w[0]), ratfun_to_json(d.w[1])});
    return j;
}

Json tolerances_json(int grid_size) {
    Json j;
    j["match"] = kTol.match;
    j["circle"] = kTol.circle;
    j["rank"] = kTol.rank;
    j["cluster"] = kTol.cluster;
    j["deflate"] = kTol.deflate;
    j["structural"] = kTol.structural;
    j["grid_size"] = grid_size;
    return j;
}

Json superopt_to_json(const SuperoptResult& r) {
    Json j;
    j["approximant"] = ratmat_to_json(r.approximant);
    j["t0"] = r.t0;
    j["t1"] = r.t1;
    j["identity_case"] = r.identity_case;
    j["degenerate"] = r.degenerate;
    if (!r.identity_case) j["thematic"] = thematic_to_json(r.factorization);
    const auto& c = r.certificates;
    j["certificates"] = {{"s0_deviation", c.s0_deviation},   {"s1_deviation", c.s1_deviation},
                         {"reproduction", c.reproduction},   {"corner_residual", c.corner_residual},
                         {"fit_residual", c.fit_residual},   {"multiple_top", c.multiple_top},
                         {"certified", r.identity_case || r.certified()}};
    return j;
}

Json counterexample_spec_to_json(const CounterexampleSpec& s) {
    Json j;
    j["k"] = s.k;
    j["a"] = s.a;
    j["t_values"] = s.t_values;
    j["partition_sizes"] = s.partition_sizes;
    j["b0"] = ratfun_to_json(s.b0);
    j["b1"] = ratfun_to_json(s.b1);
    j["b2"] = ratfun_to_json(s.b2);
    Json delta = Json::array();
    for (const auto& block : s.delta) {
        Json b = Json::array();
        for (auto z : block) b.push_back(complex_to_json(z));
        delta.push_back(b);
    }
    j["delta"] = delta;
    return j;
}

Json parse_json_text(const std::string& text, const std::string& source) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        // Byte offset to line and column.
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        std::ostringstream os;
        os << source << ":" << line << ":" << col << ": malformed JSON";
        throw Error(ErrorKind::InputError, os.str());
    }
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::InputError, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_json_text(ss.str(), path);
}

}  // namespace superopt
