#pragma once

/*
 * Document I/O.
 *
 * An InputDocument is a single JSON file describing a presented solvable Lie algebra
 * together with its lattice character data: the coefficient field, the symbolic real
 * constants appearing in character values, the bracket table with its V ⊕ n splitting,
 * the lattice generators with each weight character evaluated on them, an optional
 * invariant complex structure, and optional expected Betti/Hodge tables used as
 * regressions. Parsing is strict: unknown keys are rejected at every level, all
 * rationals are exact "p/q" strings (plain JSON integers are also accepted), and field
 * elements are literals in the grammar produced by FieldElement::str(), e.g. "1",
 * "-2/3", "i", "1+2*i", "1/2*t+i*t".
 */

#include "dolbeault.hpp"
#include "derham.hpp"

#include <json.hpp>

#include <cctype>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

namespace solvco {

using Json = nlohmann::json;

struct Expectations {
  std::optional<std::vector<size_t>> betti;
  std::optional<HodgeTable> hodge;
};

struct InputDocument {
  FieldSpecPtr field;                  // base (real) coefficient field
  std::vector<std::string> symbols;    // declared symbolic positive reals (log scale)
  LieAlgebraPresentation algebra;      // over `field`
  LatticeEvaluation lattice;           // character functionals over the complexified field
  std::optional<Matrix> complex_structure;  // over `field`, dim x dim
  std::string action_mode = "adjoint";      // "adjoint" | "split" (informational)
  Expectations expectations;
};

/* ------------------------------------------------------------------------- */
/* Scalar literals                                                            */
/* ------------------------------------------------------------------------- */

inline Rational json_rational(const Json& v, const std::string& ctx) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long long>());
  throw Error(ErrKind::InvalidInput, ctx + ": expected a rational string");
}

/** Parse a field-element literal: sum of terms, each a '*'-product of factors;
 *  a factor is a rational, "i", or the field generator with an optional "^k". */
inline FieldElement parse_field_element(const FieldSpecPtr& spec, const std::string& in) {
  size_t pos = 0;
  auto skip = [&] { while (pos < in.size() && std::isspace(static_cast<unsigned char>(in[pos]))) ++pos; };
  auto fail = [&](const std::string& why) -> FieldElement {
    throw Error(ErrKind::InvalidInput, "malformed field element '" + in + "': " + why);
  };

  auto parse_uint = [&]() -> std::string {
    std::string d;
    while (pos < in.size() && std::isdigit(static_cast<unsigned char>(in[pos]))) d.push_back(in[pos++]);
    return d;
  };

  auto parse_factor = [&]() -> FieldElement {
    skip();
    if (pos >= in.size()) fail("missing factor");
    char c = in[pos];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string num = parse_uint();
      skip();
      if (pos < in.size() && in[pos] == '/') {
        ++pos;
        skip();
        std::string den = parse_uint();
        if (den.empty()) fail("missing denominator");
        return FieldElement::from_rational(spec, parse_rational(num + "/" + den));
      }
      return FieldElement::from_rational(spec, parse_rational(num));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string id;
      while (pos < in.size() &&
             (std::isalnum(static_cast<unsigned char>(in[pos])) || in[pos] == '_'))
        id.push_back(in[pos++]);
      if (id == "i") {
        if (!spec->i_adjoined) fail("'i' used but the field has no i adjoined");
        return FieldElement::i_unit(spec);
      }
      if (id == spec->generator) {
        if (spec->degree() < 2) fail("'" + id + "' used over a degree-1 field");
        FieldElement g = FieldElement::generator(spec);
        skip();
        if (pos < in.size() && in[pos] == '^') {
          ++pos;
          skip();
          std::string e = parse_uint();
          if (e.empty()) fail("missing exponent");
          FieldElement r = FieldElement::one(spec);
          for (long k = std::stol(e); k > 0; --k) r = r * g;
          return r;
        }
        return g;
      }
      fail("unknown name '" + id + "'");
    }
    fail(std::string("unexpected character '") + c + "'");
    return FieldElement();  // unreachable
  };

  auto parse_term = [&]() -> FieldElement {
    FieldElement t = parse_factor();
    skip();
    while (pos < in.size() && in[pos] == '*') {
      ++pos;
      t = t * parse_factor();
      skip();
    }
    return t;
  };

  skip();
  bool neg = false;
  if (pos < in.size() && (in[pos] == '+' || in[pos] == '-')) neg = in[pos++] == '-';
  FieldElement acc = parse_term();
  if (neg) acc = -acc;
  skip();
  while (pos < in.size()) {
    char s = in[pos];
    if (s != '+' && s != '-') fail(std::string("unexpected character '") + s + "'");
    ++pos;
    FieldElement t = parse_term();
    acc = s == '-' ? acc - t : acc + t;
    skip();
  }
  return acc;
}

/* ------------------------------------------------------------------------- */
/* Strict key checking                                                        */
/* ------------------------------------------------------------------------- */

namespace detail {

inline void check_keys(const Json& o, std::initializer_list<const char*> allowed,
                       const std::string& ctx) {
  if (!o.is_object()) throw Error(ErrKind::InvalidInput, ctx + ": expected an object");
  for (auto it = o.begin(); it != o.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed) ok = ok || it.key() == k;
    if (!ok) throw Error(ErrKind::InvalidInput, ctx + ": unknown key '" + it.key() + "'");
  }
}

inline size_t json_index(const Json& v, const std::string& ctx) {
  if (!v.is_number_unsigned())
    throw Error(ErrKind::InvalidInput, ctx + ": expected a non-negative integer");
  return v.get<size_t>();
}

inline LogReal json_logreal(const Json& v, const std::vector<std::string>& symbols,
                            const std::string& ctx) {
  LogReal r;
  if (!v.is_object()) throw Error(ErrKind::InvalidInput, ctx + ": expected {symbol: rational}");
  for (auto it = v.begin(); it != v.end(); ++it) {
    bool declared = false;
    for (const auto& s : symbols) declared = declared || s == it.key();
    if (!declared)
      throw Error(ErrKind::InvalidInput, ctx + ": undeclared symbol '" + it.key() + "'");
    r.add_term(it.key(), json_rational(it.value(), ctx + "['" + it.key() + "']"));
  }
  return r;
}

inline CharacterValue json_charvalue(const Json& v, const std::vector<std::string>& symbols,
                                     const std::string& ctx) {
  check_keys(v, {"modulus", "lift", "phase_sym"}, ctx);
  CharacterValue cv;
  if (v.contains("modulus")) cv.modulus = json_logreal(v["modulus"], symbols, ctx + ".modulus");
  if (v.contains("lift")) cv.phase = Phase(json_rational(v["lift"], ctx + ".lift"));
  if (v.contains("phase_sym"))
    cv.phase_sym = json_logreal(v["phase_sym"], symbols, ctx + ".phase_sym");
  cv.normalize();
  return cv;
}

}  // namespace detail

/* ------------------------------------------------------------------------- */
/* Document parsing                                                           */
/* ------------------------------------------------------------------------- */

inline InputDocument parse_document(const Json& doc) {
  detail::check_keys(doc, {"field", "symbols", "algebra", "lattice", "complex_structure",
                           "action", "expectations"},
                     "document");
  InputDocument d;

  // field
  if (doc.contains("field")) {
    const Json& f = doc["field"];
    detail::check_keys(f, {"name", "generator", "min_poly", "i_adjoined"}, "field");
    auto s = std::make_shared<FieldSpec>();
    if (f.contains("generator")) s->generator = f["generator"].get<std::string>();
    if (!f.contains("min_poly"))
      throw Error(ErrKind::InvalidInput, "field: missing min_poly");
    for (const Json& c : f["min_poly"]) s->min_poly.push_back(json_rational(c, "field.min_poly"));
    if (f.contains("i_adjoined")) s->i_adjoined = f["i_adjoined"].get<bool>();
    s->name = f.contains("name") ? f["name"].get<std::string>()
                                 : (s->degree() >= 2 ? "Q(" + s->generator + ")" : "Q");
    s->validate();
    d.field = s;
  } else {
    d.field = FieldSpec::rationals(false);
  }
  auto cspec = FieldSpec::complexified(*d.field);

  // symbols
  if (doc.contains("symbols")) {
    for (const Json& s : doc["symbols"]) {
      std::string name = s.get<std::string>();
      if (name.empty() || name == kTwoPi)
        throw Error(ErrKind::InvalidInput, "symbols: reserved or empty symbol name");
      d.symbols.push_back(name);
    }
  }

  // algebra
  if (!doc.contains("algebra")) throw Error(ErrKind::InvalidInput, "document: missing algebra");
  {
    const Json& a = doc["algebra"];
    detail::check_keys(a, {"dim", "names", "v_indices", "n_indices", "brackets"}, "algebra");
    if (!a.contains("dim") || !a.contains("v_indices") || !a.contains("n_indices"))
      throw Error(ErrKind::InvalidInput, "algebra: dim, v_indices and n_indices are required");
    size_t dim = detail::json_index(a["dim"], "algebra.dim");
    std::vector<std::string> names;
    if (a.contains("names"))
      for (const Json& n : a["names"]) names.push_back(n.get<std::string>());
    if (!names.empty() && names.size() != dim)
      throw Error(ErrKind::InvalidInput, "algebra.names: wrong length");
    std::vector<size_t> vi, ni;
    for (const Json& v : a["v_indices"]) vi.push_back(detail::json_index(v, "algebra.v_indices"));
    for (const Json& v : a["n_indices"]) ni.push_back(detail::json_index(v, "algebra.n_indices"));
    d.algebra = LieAlgebraPresentation(d.field, dim, names, vi, ni);
    if (a.contains("brackets")) {
      for (const Json& b : a["brackets"]) {
        detail::check_keys(b, {"j", "k", "i", "c"}, "algebra.brackets[]");
        size_t j = detail::json_index(b.at("j"), "bracket.j");
        size_t k = detail::json_index(b.at("k"), "bracket.k");
        size_t i = detail::json_index(b.at("i"), "bracket.i");
        if (j >= dim || k >= dim || i >= dim)
          throw Error(ErrKind::InvalidInput, "algebra.brackets: index out of range");
        FieldElement c = b.at("c").is_string()
                             ? parse_field_element(d.field, b.at("c").get<std::string>())
                             : FieldElement::from_rational(d.field,
                                                           json_rational(b.at("c"), "bracket.c"));
        d.algebra.set_bracket(j, k, i, c);
      }
    }
  }

  // lattice
  if (doc.contains("lattice")) {
    const Json& l = doc["lattice"];
    detail::check_keys(l, {"generators", "characters"}, "lattice");
    if (l.contains("generators"))
      for (const Json& g : l["generators"]) d.lattice.generators.push_back(g.get<std::string>());
    if (l.contains("characters")) {
      for (const Json& c : l["characters"]) {
        detail::check_keys(c, {"name", "functional", "values"}, "lattice.characters[]");
        LatticeCharacter lc;
        if (c.contains("name")) lc.name = c["name"].get<std::string>();
        if (!c.contains("functional") || !c.contains("values"))
          throw Error(ErrKind::InvalidInput, "lattice character: functional and values required");
        for (const Json& f : c["functional"])
          lc.functional.push_back(
              f.is_string() ? parse_field_element(cspec, f.get<std::string>())
                            : FieldElement::from_rational(cspec, json_rational(f, "functional")));
        if (lc.functional.size() != d.algebra.v_indices().size())
          throw Error(ErrKind::InvalidInput,
                      "lattice character '" + lc.name + "': functional length != |V|");
        for (const Json& v : c["values"])
          lc.values.push_back(detail::json_charvalue(v, d.symbols, "character '" + lc.name + "'"));
        if (lc.values.size() != d.lattice.generators.size())
          throw Error(ErrKind::InvalidInput,
                      "lattice character '" + lc.name + "': one value per generator required");
        d.lattice.characters.push_back(std::move(lc));
      }
    }
  }

  // complex structure
  if (doc.contains("complex_structure")) {
    const Json& jm = doc["complex_structure"];
    size_t dim = d.algebra.dim();
    if (!jm.is_array() || jm.size() != dim)
      throw Error(ErrKind::InvalidInput, "complex_structure: expected a dim x dim matrix");
    Matrix j(d.field, dim, dim);
    for (size_t r = 0; r < dim; ++r) {
      if (!jm[r].is_array() || jm[r].size() != dim)
        throw Error(ErrKind::InvalidInput, "complex_structure: row " + std::to_string(r) +
                                               " has wrong length");
      for (size_t c = 0; c < dim; ++c) {
        const Json& e = jm[r][c];
        j.at(r, c) = e.is_string()
                         ? parse_field_element(d.field, e.get<std::string>())
                         : FieldElement::from_rational(d.field, json_rational(e, "J entry"));
      }
    }
    d.complex_structure = std::move(j);
  }

  // action
  if (doc.contains("action")) {
    detail::check_keys(doc["action"], {"mode"}, "action");
    if (doc["action"].contains("mode")) {
      d.action_mode = doc["action"]["mode"].get<std::string>();
      if (d.action_mode != "adjoint" && d.action_mode != "split")
        throw Error(ErrKind::InvalidInput, "action.mode: expected 'adjoint' or 'split'");
    }
  }

  // expectations
  if (doc.contains("expectations")) {
    const Json& e = doc["expectations"];
    detail::check_keys(e, {"betti", "hodge"}, "expectations");
    if (e.contains("betti")) {
      std::vector<size_t> b;
      for (const Json& v : e["betti"]) b.push_back(detail::json_index(v, "expectations.betti"));
      d.expectations.betti = std::move(b);
    }
    if (e.contains("hodge")) {
      HodgeTable t;
      for (const Json& row : e["hodge"]) {
        std::vector<size_t> r;
        for (const Json& v : row) r.push_back(detail::json_index(v, "expectations.hodge"));
        t.push_back(std::move(r));
      }
      d.expectations.hodge = std::move(t);
    }
  }

  return d;
}

inline InputDocument load_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrKind::InvalidInput, "cannot open '" + path + "'");
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw Error(ErrKind::InvalidInput, std::string("JSON parse error: ") + e.what());
  }
  return parse_document(doc);
}

/* ------------------------------------------------------------------------- */
/* Document emission (round-trippable)                                        */
/* ------------------------------------------------------------------------- */

namespace detail {

inline Json logreal_json(const LogReal& l) {
  Json o = Json::object();
  for (const auto& [s, c] : l.terms) o[s] = rational_str(c);
  return o;
}

inline Json charvalue_json(const CharacterValue& v) {
  Json o = Json::object();
  if (!v.modulus.is_zero()) o["modulus"] = logreal_json(v.modulus);
  if (v.phase.lift != 0) o["lift"] = rational_str(v.phase.lift);
  if (!v.phase_sym.is_zero()) o["phase_sym"] = logreal_json(v.phase_sym);
  return o;
}

}  // namespace detail

inline Json document_json(const InputDocument& d) {
  Json doc = Json::object();

  if (d.field->degree() >= 2 || d.field->i_adjoined) {
    Json f = Json::object();
    f["name"] = d.field->name;
    f["generator"] = d.field->generator;
    Json mp = Json::array();
    for (const auto& c : d.field->min_poly) mp.push_back(rational_str(c));
    f["min_poly"] = mp;
    f["i_adjoined"] = d.field->i_adjoined;
    doc["field"] = std::move(f);
  }
  if (!d.symbols.empty()) doc["symbols"] = d.symbols;

  Json a = Json::object();
  a["dim"] = d.algebra.dim();
  a["names"] = d.algebra.names();
  a["v_indices"] = d.algebra.v_indices();
  a["n_indices"] = d.algebra.n_indices();
  Json brackets = Json::array();
  for (const auto& [jk, row] : d.algebra.constants())
    for (const auto& [i, c] : row) {
      if (c.is_zero()) continue;
      Json b = Json::object();
      b["j"] = jk.first;
      b["k"] = jk.second;
      b["i"] = i;
      b["c"] = c.str();
      brackets.push_back(std::move(b));
    }
  a["brackets"] = std::move(brackets);
  doc["algebra"] = std::move(a);

  if (!d.lattice.generators.empty()) {
    Json l = Json::object();
    l["generators"] = d.lattice.generators;
    Json chars = Json::array();
    for (const auto& c : d.lattice.characters) {
      Json o = Json::object();
      o["name"] = c.name;
      Json f = Json::array();
      for (const auto& x : c.functional) f.push_back(x.str());
      o["functional"] = std::move(f);
      Json vals = Json::array();
      for (const auto& v : c.values) vals.push_back(detail::charvalue_json(v));
      o["values"] = std::move(vals);
      chars.push_back(std::move(o));
    }
    l["characters"] = std::move(chars);
    doc["lattice"] = std::move(l);
  }

  if (d.complex_structure) {
    Json jm = Json::array();
    for (size_t r = 0; r < d.algebra.dim(); ++r) {
      Json row = Json::array();
      for (size_t c = 0; c < d.algebra.dim(); ++c)
        row.push_back(d.complex_structure->at(r, c).str());
      jm.push_back(std::move(row));
    }
    doc["complex_structure"] = std::move(jm);
  }

  if (d.action_mode != "adjoint") doc["action"] = Json{{"mode", d.action_mode}};

  return doc;
}

}  // namespace solvco
