#pragma once

#include <string>

#include <json.hpp>

#include "superopt/counterexample.hpp"
#include "superopt/nehari2x2.hpp"

namespace superopt {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "superopt/1";

/// Accepts a number, {"num":[...],"den":[...]} (ascending coefficients) or
/// {"gain":c,"zeros":[[re,im,mult],...],"poles":[...]}. A complex scalar is a
/// number or [re,im]; "inf" in a location slot marks the point at infinity.
/// Throws InputError with the JSON pointer of the offending value.
RatFun ratfun_from_json(const Json& j, const std::string& where = "");
Json ratfun_to_json(const RatFun& f);

RatMat ratmat_from_json(const Json& j, const std::string& where = "");
Json ratmat_to_json(const RatMat& a);

ThematicData thematic_from_json(const Json& j, const std::string& where = "");
Json thematic_to_json(const ThematicData& d);

Json complex_to_json(Complex c);
Json tolerances_json(int grid_size);

Json superopt_to_json(const SuperoptResult& r);
Json counterexample_spec_to_json(const CounterexampleSpec& s);

/// Parses text; syntax errors become InputError with line and column.
Json parse_json_text(const std::string& text, const std::string& source);
Json read_json_file(const std::string& path);

}  // namespace superopt
