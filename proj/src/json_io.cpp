#include "quadlag/json_io.hpp"

#include <cmath>

namespace quadlag {

namespace {

Json parse_text(const std::string& text, const char* what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string(what) + ": malformed JSON: " + e.what());
  }
}

const Json& field(const Json& j, const char* key, const char* what) {
  if (!j.is_object()) throw ParseError(std::string(what) + ": expected a JSON object");
  const auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string(what) + ": missing field \"" + key + "\"");
  return *it;
}

Integer integer_of(const Json& j, const char* what) {
  if (j.is_number_integer()) return Integer(std::to_string(j.get<long long>()));
  if (j.is_number_unsigned()) return Integer(std::to_string(j.get<unsigned long long>()));
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    Integer out;
    const auto body = s.empty() || (s[0] != '-' && s[0] != '+') ? s : s.substr(1);
    if (body.empty() || body.find_first_not_of("0123456789") != std::string::npos || out.set_str(s, 10) != 0)
      throw ParseError(std::string(what) + ": \"" + s + "\" is not an integer");
    return out;
  }
  throw ParseError(std::string(what) + ": expected an integer, got " + j.dump());
}

Rational rational_of(const Json& j, const char* what) {
  if (j.is_number_integer() || j.is_number_unsigned()) return Rational(integer_of(j, what));
  if (!j.is_string()) throw ParseError(std::string(what) + ": expected a \"p/q\" string, got " + j.dump());
  try {
    return parse_rational(j.get<std::string>());
  } catch (const ParseError& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

IntMatrix int_matrix_of(const Json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + ": expected an array of rows");
  std::vector<std::vector<Integer>> rows;
  std::size_t cols = 0;
  for (std::size_t r = 0; r < j.size(); ++r) {
    const auto& row = j[r];
    if (!row.is_array()) throw ParseError(std::string(what) + ": row " + std::to_string(r + 1) + " is not an array");
    if (r > 0 && row.size() != cols)
      throw DimensionMismatch(std::string(what) + ": row " + std::to_string(r + 1) + " has " +
                              std::to_string(row.size()) + " entries, expected " + std::to_string(cols));
    cols = row.size();
    std::vector<Integer> vals;
    for (const auto& x : row) vals.push_back(integer_of(x, what));
    rows.push_back(std::move(vals));
  }
  return IntMatrix::from_rows(rows, cols);
}

RatVector rat_vector_of(const Json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + ": expected an array");
  RatVector out;
  for (const auto& x : j) out.push_back(rational_of(x, what));
  return out;
}

}  // namespace

HPolytope parse_polytope(const std::string& text) {
  const auto j = parse_text(text, "polytope");
  const auto A = int_matrix_of(field(j, "A", "polytope"), "polytope A");
  const auto b = rat_vector_of(field(j, "b", "polytope"), "polytope b");
  if (A.rows() > 0 && A.cols() != b.size())
    throw DimensionMismatch("polytope: A has " + std::to_string(A.cols()) + " columns but b has " +
                            std::to_string(b.size()) + " entries");
  return HPolytope::make(A, b);
}

QuadricSystem parse_quadrics(const std::string& text) {
  const auto j = parse_text(text, "quadrics");
  const auto G = int_matrix_of(field(j, "Gamma", "quadrics"), "quadrics Gamma");
  const auto d = rat_vector_of(field(j, "delta", "quadrics"), "quadrics delta");
  return QuadricSystem::make(G, d);
}

HomologyProfile parse_profile(const std::string& text) {
  const auto j = parse_text(text, "profile");
  const auto& dj = field(j, "dims", "profile");
  if (!dj.is_object()) throw ParseError("profile: \"dims\" must be an object keyed by degree");
  std::map<int, long> dims;
  for (const auto& [key, value] : dj.items()) {
    const Integer deg = integer_of(Json(key), "profile degree");
    const Integer v = integer_of(value, "profile dimension");
    if (!deg.fits_sint_p() || !v.fits_slong_p()) throw ParseError("profile: entry out of range");
    dims[static_cast<int>(deg.get_si())] += v.get_si();
  }
  const Integer L = integer_of(field(j, "L_dim", "profile"), "profile L_dim");
  const auto& o = field(j, "orientable", "profile");
  if (!o.is_boolean()) throw ParseError("profile: \"orientable\" must be a boolean");
  if (!L.fits_sint_p()) throw ParseError("profile: L_dim out of range");
  return HomologyProfile::make(std::move(dims), static_cast<int>(L.get_si()), o.get<bool>());
}

Json to_json(const Integer& x) {
  if (x.fits_slong_p()) return Json(x.get_si());
  return Json(x.get_str());
}

Json to_json(const Rational& x) { return Json(to_string(x)); }

Json to_json(const IntMatrix& m) {
  Json out = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (const auto& x : m.row_span(r)) row.push_back(to_json(x));
    out.push_back(std::move(row));
  }
  return out;
}

Json to_json(const RatMatrix& m) {
  Json out = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (const auto& x : m.row_span(r)) row.push_back(to_json(x));
    out.push_back(std::move(row));
  }
  return out;
}

namespace {

template <class V>
Json vec(const V& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

}  // namespace

Json indices_json(const std::vector<std::size_t>& zero_based) {
  Json out = Json::array();
  for (auto i : zero_based) out.push_back(i + 1);
  return out;
}

Json to_json(const HPolytope& p) { return Json{{"A", to_json(p.A)}, {"b", vec(p.b)}}; }

Json to_json(const QuadricSystem& q) { return Json{{"Gamma", to_json(q.Gamma)}, {"delta", vec(q.delta)}}; }

Json to_json(const HomologyProfile& p) {
  Json dims = Json::object();
  for (const auto& [d, v] : p.dims) dims[std::to_string(d)] = v;
  return Json{{"dims", dims}, {"L_dim", p.L_dim}, {"orientable", p.orientable}};
}

Json to_json(const StructureReport& s) {
  Json out{{"bounded", s.bounded},
           {"empty", s.empty},
           {"full_dimensional", s.full_dimensional},
           {"simple", s.simple},
           {"generic", s.generic},
           {"delzant", s.delzant},
           {"fano", s.fano},
           {"monotone_ready", s.monotone_ready},
           {"vertex_count", s.vertex_count},
           {"redundant", indices_json(s.redundant)},
           {"strictly_redundant", indices_json(s.strictly_redundant)}};
  out["fano_constant"] = s.fano_constant ? to_json(*s.fano_constant) : Json(nullptr);
  out["fano_translation"] = s.fano_translation ? vec(*s.fano_translation) : Json(nullptr);
  return out;
}

Json to_json(const InvariantReport& r) {
  Json out{{"t", vec(r.t)},
           {"loop_basis", to_json(r.loop_vectors)},
           {"maslov", vec(r.maslov)},
           {"area_over_pi", vec(r.area_over_pi)},
           {"N_L", to_json(r.minimal_maslov)},
           {"monotone", r.monotone}};
  out["c_over_pi"] = r.c_over_pi ? to_json(*r.c_over_pi) : Json(nullptr);
  if (r.counterexample) out["counterexample"] = vec(*r.counterexample);
  out["assumptions"] = r.assumptions;
  return out;
}

Json to_json(const TopologyTag& t) {
  Json out{{"description", t.description},
           {"sphere_dims", t.sphere_dims},
           {"torus_rank", t.torus_rank},
           {"orientable", t.orientable},
           {"component_count", to_json(t.component_count)}};
  out["total_space"] = t.total_space ? Json(*t.total_space) : Json(nullptr);
  return out;
}

Json to_json(const AdmissibleSet& a) {
  Json ex = Json::array();
  for (const auto& [N, e] : a.excluded) {
    Json row{{"N", N}, {"reason", e.reason}};
    row["witness_degree"] = e.witness_degree ? Json(*e.witness_degree) : Json(nullptr);
    row["surviving_degrees"] = e.surviving;
    ex.push_back(std::move(row));
  }
  return Json{{"admissible", a.admissible}, {"excluded", ex}};
}

Json to_json(const CheckRecord& c) {
  const auto num = [](double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); };
  return Json{{"check", c.check},
              {"expected", num(c.expected)},
              {"actual", num(c.actual)},
              {"tolerance", num(c.tolerance)},
              {"pass", c.pass}};
}

}  // namespace quadlag
