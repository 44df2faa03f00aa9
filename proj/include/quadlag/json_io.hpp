#pragma once

// JSON reading and writing for polytopes, quadric systems, homology
// profiles and the reports built from them. Rationals travel as "p/q"
// strings, integers as numbers or decimal strings. Inequality and variable
// indices are 1-based on the JSON side.

#include <string>

#include "json.hpp"

#include "quadlag/families.hpp"
#include "quadlag/invariants.hpp"
#include "quadlag/obstruction.hpp"
#include "quadlag/oracle.hpp"
#include "quadlag/polytope.hpp"

namespace quadlag {

using Json = nlohmann::ordered_json;

// {"A": [[int, ...], ...] (k rows, n columns), "b": ["p/q", ...]}
HPolytope parse_polytope(const std::string& text);
// {"Gamma": [[int, ...], ...], "delta": ["p/q", ...]}
QuadricSystem parse_quadrics(const std::string& text);
// {"dims": {"0": 1, "3": 2}, "L_dim": int, "orientable": bool}
HomologyProfile parse_profile(const std::string& text);

Json to_json(const Integer& x);  // number when it fits in 64 bits, else a string
Json to_json(const Rational& x);
Json to_json(const IntMatrix& m);
Json to_json(const RatMatrix& m);
Json to_json(const HPolytope& p);
Json to_json(const QuadricSystem& q);
Json to_json(const HomologyProfile& p);
Json to_json(const StructureReport& s);
Json to_json(const InvariantReport& r);
Json to_json(const TopologyTag& t);
Json to_json(const AdmissibleSet& a);
Json to_json(const CheckRecord& c);

Json indices_json(const std::vector<std::size_t>& zero_based);

}  // namespace quadlag
