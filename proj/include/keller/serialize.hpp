// JSON encoding of fields, scalars, polynomials, maps, certificates and chain
// reports. Rationals are written as normalized "p/q" strings; object keys come
// out sorted, so equal inputs serialize to identical bytes.
#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "keller/properties.hpp"

namespace keller::json {

using Json = nlohmann::json;

inline Json field_to_json(const Field& f) {
  Json mp = Json::array();
  for (const auto& c : f.min_poly()) mp.push_back(rational_string(c));
  return Json{{"min_poly", mp}};
}

inline Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw ParseError("expected a rational string");
}

inline Field field_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("min_poly") || !j["min_poly"].is_array()) {
    throw ParseError("field: expected {\"min_poly\": [...]}");
  }
  RationalPoly p;
  for (const auto& c : j["min_poly"]) p.push_back(rational_from_json(c));
  try {
    return Field::make(std::move(p));
  } catch (const FieldError& e) {
    throw ParseError(std::string("field: ") + e.what());
  }
}

inline Json scalar_to_json(const Scalar& s) {
  Json a = Json::array();
  for (const auto& c : s.coords()) a.push_back(rational_string(c));
  return a;
}

/// Accepts a coordinate list of length at most the field degree, or a bare rational.
inline Scalar scalar_from_json(const Json& j, const Field& f) {
  if (!j.is_array()) return f.from_rational(rational_from_json(j));
  if (j.size() > f.degree()) throw ParseError("scalar has more coordinates than the field degree");
  std::vector<Rational> coords(f.degree(), Rational(0));
  for (std::size_t i = 0; i < j.size(); ++i) coords[i] = rational_from_json(j[i]);
  return Scalar(f, std::move(coords));
}

inline Json vector_to_json(const ScalarVector& v) {
  Json a = Json::array();
  for (const auto& s : v) a.push_back(scalar_to_json(s));
  return a;
}

inline ScalarVector vector_from_json(const Json& j, const Field& f, std::size_t n) {
  if (!j.is_array() || j.size() != n) throw ParseError("expected a vector of " + std::to_string(n) + " scalars");
  ScalarVector v;
  for (const auto& s : j) v.push_back(scalar_from_json(s, f));
  return v;
}

inline Json poly_to_json(const MultiPoly& p) {
  Json terms = Json::array();
  for (const auto& [e, c] : p.terms()) terms.push_back(Json{{"coeff", scalar_to_json(c)}, {"exps", e}});
  return Json{{"nvars", p.nvars()}, {"terms", terms}};
}

inline MultiPoly poly_from_json(const Json& j, const Field& f, std::size_t nvars) {
  if (!j.is_object() || !j.contains("terms") || !j["terms"].is_array()) {
    throw ParseError("polynomial: expected {\"nvars\", \"terms\"}");
  }
  if (j.contains("nvars") && j["nvars"].get<std::size_t>() != nvars) {
    throw ParseError("polynomial: nvars differs from the map's");
  }
  MultiPoly p(f, nvars);
  for (const auto& t : j["terms"]) {
    if (!t.contains("coeff") || !t.contains("exps")) throw ParseError("term: expected {\"coeff\", \"exps\"}");
    Exponents e;
    for (const auto& x : t["exps"]) {
      if (!x.is_number_unsigned()) throw ParseError("term: exponents must be nonnegative integers");
      e.push_back(x.get<std::uint32_t>());
    }
    if (e.size() != nvars) throw ParseError("term: exponent vector has wrong length");
    p.add_term(std::move(e), scalar_from_json(t["coeff"], f));
  }
  return p;
}

inline Json map_to_json(const PolyMap& m) {
  Json comps = Json::array();
  for (const auto& c : m.components()) comps.push_back(poly_to_json(c));
  return Json{{"field", field_to_json(m.field())}, {"nvars", m.nvars()}, {"components", comps}};
}

inline PolyMap map_from_json(const Json& j) {
  try {
    if (!j.is_object() || !j.contains("nvars") || !j.contains("components") || !j["components"].is_array()) {
      throw ParseError("map: expected {\"field\", \"nvars\", \"components\"}");
    }
    const Field f = j.contains("field") ? field_from_json(j["field"]) : Field::rationals();
    const auto n = j["nvars"].get<std::size_t>();
    std::vector<MultiPoly> comps;
    for (const auto& c : j["components"]) comps.push_back(poly_from_json(c, f, n));
    return PolyMap(f, n, std::move(comps));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("map: ") + e.what());
  }
}

inline Json matrix_to_json(const ScalarMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(vector_to_json(m.row(i)));
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", rows}};
}

inline Json matrix_to_json(const PolyMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(poly_to_json(m.at(i, j)));
    rows.push_back(row);
  }
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", rows}};
}

inline Json certificate_to_json(const StarCertificate& c) {
  Json triples = Json::array();
  for (const auto& t : c.triples)
    triples.push_back(Json{{"c", vector_to_json(t.c.coeffs)}, {"d", t.d}, {"b", vector_to_json(t.b)}});
  return Json{{"level", to_string(c.level)}, {"triples", triples}};
}

inline StarCertificate certificate_from_json(const Json& j, const Field& f, std::size_t n) {
  try {
    if (!j.is_object() || !j.contains("level") || !j.contains("triples") || !j["triples"].is_array()) {
      throw ParseError("certificate: expected {\"level\", \"triples\"}");
    }
    StarCertificate c;
    c.level = parse_star_level(j["level"].get<std::string>());
    for (const auto& t : j["triples"]) {
      if (!t.contains("c") || !t.contains("d") || !t.contains("b")) {
        throw ParseError("certificate triple: expected {\"c\", \"d\", \"b\"}");
      }
      c.triples.push_back(StarTriple{LinearForm{vector_from_json(t["c"], f, n)}, t["d"].get<unsigned>(),
                                     vector_from_json(t["b"], f, n)});
    }
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("certificate: ") + e.what());
  }
}

inline Json point_witness_to_json(const PointWitness& w) {
  Json pts = Json::array();
  for (const auto& p : w.points) pts.push_back(vector_to_json(p));
  return Json{{"field", field_to_json(w.field)}, {"points", pts}};
}

/// Condition names as used on the command line (hyphenated).
inline std::string check_name(Condition c) {
  std::string s = to_string(c);
  for (auto& ch : s)
    if (ch == '_') ch = '-';
  return s;
}

inline Json report_to_json(const ChainReport& r) {
  Json conditions = Json::object(), witnesses = Json::object(), notes = Json::object();
  for (const auto& [c, v] : r.verdicts) conditions[to_string(c)] = to_string(v);
  for (const auto& [c, s] : r.notes) notes[to_string(c)] = s;
  if (r.keller_determinant) witnesses["keller"] = Json{{"determinant", r.keller_determinant->to_string()}};
  auto sum_json = [](const SumConditionResult& s) {
    Json w{{"k", s.k}, {"determinant", s.determinant.to_string()}};
    if (s.witness) w["points"] = point_witness_to_json(*s.witness);
    return w;
  };
  if (r.jc) witnesses["jc"] = sum_json(*r.jc);
  if (r.jc_plus) witnesses["jc_plus"] = sum_json(*r.jc_plus);
  if (r.strong && r.strong->pair) {
    witnesses["strong_nilpotent"] = Json{{"zero_variables", {r.strong->pair->first_var + 1, r.strong->pair->second_var + 1}},
                                         {"product", matrix_to_json(r.strong->pair->product)}};
  }
  if (r.inverse) witnesses["jc_minus"] = Json{{"inverse", map_to_json(*r.inverse)}};
  for (const auto& [level, chk] : r.certificate_checks)
    witnesses["certificate"][to_string(level)] = Json{{"ok", chk.ok}, {"clause", chk.clause}};
  for (const auto& [level, cert] : r.constructed_certificates)
    witnesses[to_string(level)] = Json{{"certificate", certificate_to_json(cert)}};
  return Json{{"schema", "report/1"}, {"conditions", conditions}, {"witnesses", witnesses}, {"notes", notes}};
}

inline Json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("'" + path + "': " + e.what());
  }
}

inline void write_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

}  // namespace keller::json
