#pragma once

#include <limits>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "stabkit/cascade/cascade.hpp"
#include "stabkit/error.hpp"
#include "stabkit/grr/hilbert.hpp"
#include "stabkit/grr/todd.hpp"
#include "stabkit/hn/abel.hpp"
#include "stabkit/hn/poset.hpp"
#include "stabkit/presets.hpp"

namespace stabkit::io {

using Json = nlohmann::ordered_json;

inline std::string at(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }
inline std::string at(const std::string& path, std::size_t index) { return path + "[" + std::to_string(index) + "]"; }

inline const Json& require(const Json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) throw InputError(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw InputError(at(path, key), "missing field");
  return *it;
}

inline void check_keys(const Json& j, std::initializer_list<const char*> allowed, const std::string& path) {
  if (!j.is_object()) throw InputError(path, "expected an object");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, value] : j.items())
    if (!ok.contains(key)) throw InputError(at(path, key), "unknown field");
}

inline const Json& require_array(const Json& j, const std::string& path) {
  if (!j.is_array()) throw InputError(path, "expected an array");
  return j;
}

/// Accepts "p/q" strings and JSON integers. Floats are refused.
inline Rational parse_rational(const Json& j, const std::string& path) {
  if (j.is_string()) {
    try {
      return Rational::parse(j.get<std::string>());
    } catch (const std::exception&) {
      throw InputError(path, "not a rational number: \"" + j.get<std::string>() + "\"");
    }
  }
  if (j.is_number_integer() && !j.is_number_unsigned()) return Rational(j.get<std::int64_t>());
  if (j.is_number_unsigned()) {
    const auto v = j.get<std::uint64_t>();
    if (v > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max()))
      return Rational::parse(std::to_string(v));
    return Rational(static_cast<std::int64_t>(v));
  }
  if (j.is_number_float()) throw InputError(path, "floating-point values are not accepted; write \"p/q\"");
  throw InputError(path, "expected a rational (\"p/q\" string or integer)");
}

inline int parse_int(const Json& j, const std::string& path) {
  const Rational q = parse_rational(j, path);
  if (!q.is_integer() || q.abs() > Rational(1 << 20)) throw InputError(path, "expected a small integer, got " + q.str());
  return static_cast<int>(q.to_double());
}

inline std::string parse_string(const Json& j, const std::string& path) {
  if (!j.is_string()) throw InputError(path, "expected a string");
  return j.get<std::string>();
}

inline bool parse_bool(const Json& j, const std::string& path) {
  if (!j.is_boolean()) throw InputError(path, "expected true or false");
  return j.get<bool>();
}

/// Linear combination [{"basis": name, "coeff": q}, ...].
inline Terms parse_terms(const Json& j, const std::string& path) {
  Terms out;
  require_array(j, path);
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string p = at(path, i);
    check_keys(j[i], {"basis", "coeff"}, p);
    out.emplace_back(parse_string(require(j[i], "basis", p), at(p, "basis")),
                     parse_rational(require(j[i], "coeff", p), at(p, "coeff")));
  }
  return out;
}

/// A ring element: a basis name or a list of terms.
inline RingElement parse_element(const Json& j, const BigradedRing& ring, const std::string& path) {
  if (j.is_string()) return ring.basis_element(ring.require_index(j.get<std::string>(), path));
  const Terms terms = parse_terms(j, path);
  for (std::size_t i = 0; i < terms.size(); ++i) (void)ring.require_index(terms[i].first, at(at(path, i), "basis"));
  return ring.element(terms, path);
}

inline Terms parse_designated(const Json& j, const std::string& path) {
  if (j.is_string()) return {{j.get<std::string>(), Rational(1)}};
  return parse_terms(j, path);
}

/// Bidegree given in complex units; halves are allowed for odd classes.
inline Bidegree parse_bidegree(const Json& a, const Json& b, const std::string& path) {
  const Rational x = Rational(2) * parse_rational(a, at(path, "a"));
  const Rational s = Rational(2) * parse_rational(b, at(path, "b"));
  if (!x.is_integer()) throw InputError(at(path, "a"), "degree must be a multiple of 1/2");
  if (!s.is_integer()) throw InputError(at(path, "b"), "degree must be a multiple of 1/2");
  if (x.abs() > Rational(1000) || s.abs() > Rational(1000)) throw InputError(path, "degree out of range");
  return {static_cast<int>(x.to_double()), static_cast<int>(s.to_double())};
}

inline RingSpec parse_ring_spec(const Json& j, const std::string& path) {
  check_keys(j, {"n", "r", "basis", "mult", "integral", "h1", "h2", "vol_s"}, path);
  RingSpec spec;
  spec.dim_x = parse_int(require(j, "n", path), at(path, "n"));
  spec.dim_s = parse_int(require(j, "r", path), at(path, "r"));
  const Json& basis = require_array(require(j, "basis", path), at(path, "basis"));
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const std::string p = at(at(path, "basis"), i);
    check_keys(basis[i], {"name", "a", "b"}, p);
    spec.basis.push_back({parse_string(require(basis[i], "name", p), at(p, "name")),
                          parse_bidegree(require(basis[i], "a", p), require(basis[i], "b", p), p)});
  }
  if (j.contains("mult")) {
    const Json& mult = require_array(j["mult"], at(path, "mult"));
    for (std::size_t i = 0; i < mult.size(); ++i) {
      const std::string p = at(at(path, "mult"), i);
      check_keys(mult[i], {"x", "y", "result"}, p);
      spec.products.push_back({parse_string(require(mult[i], "x", p), at(p, "x")),
                               parse_string(require(mult[i], "y", p), at(p, "y")),
                               parse_terms(require(mult[i], "result", p), at(p, "result"))});
    }
  }
  const Json& integral = require_array(require(j, "integral", path), at(path, "integral"));
  for (std::size_t i = 0; i < integral.size(); ++i) {
    const std::string p = at(at(path, "integral"), i);
    check_keys(integral[i], {"basis", "value"}, p);
    spec.integrals.emplace_back(parse_string(require(integral[i], "basis", p), at(p, "basis")),
                                parse_rational(require(integral[i], "value", p), at(p, "value")));
  }
  spec.h1 = parse_designated(require(j, "h1", path), at(path, "h1"));
  spec.h2 = parse_designated(require(j, "h2", path), at(path, "h2"));
  spec.vol_s = parse_rational(require(j, "vol_s", path), at(path, "vol_s"));
  return spec;
}

inline PresetParams parse_preset_params(const Json& j, const std::string& path) {
  const std::string kind = parse_string(require(j, "preset", path), at(path, "preset"));
  auto rational_or = [&](const char* key, Rational fallback) {
    return j.contains(key) ? parse_rational(j[key], at(path, key)) : fallback;
  };
  auto int_or = [&](const char* key, int fallback) { return j.contains(key) ? parse_int(j[key], at(path, key)) : fallback; };
  if (kind == "proj_product") {
    check_keys(j, {"preset", "n", "r"}, path);
    return ProjProductParams{parse_int(require(j, "n", path), at(path, "n")),
                             parse_int(require(j, "r", path), at(path, "r"))};
  }
  if (kind == "curve_product") {
    check_keys(j, {"preset", "g_x", "delta_sq", "deg_h1", "deg_h2"}, path);
    return CurveProductParams{int_or("g_x", 0), rational_or("delta_sq", Rational(0)), rational_or("deg_h1", Rational(1)),
                              rational_or("deg_h2", Rational(1))};
  }
  if (kind == "curve_times_abelian") {
    check_keys(j, {"preset", "g_x", "dim_a", "deg_h1", "vol_a"}, path);
    return CurveTimesAbelianParams{int_or("g_x", 0), int_or("dim_a", 1), rational_or("deg_h1", Rational(1)),
                                   rational_or("vol_a", Rational(1))};
  }
  throw InputError(at(path, "preset"), "unknown preset \"" + kind + "\" (proj_product, curve_product, curve_times_abelian)");
}

struct RingInput {
  RingPtr ring;
  /// Set for presets.
  std::optional<ToddData> todd;
  std::string kind;  // preset name or "custom"
};

/// Reads a preset or custom ring. With `validate`, a ring that fails
/// validate_ring is rejected; otherwise it is returned for inspection.
inline RingInput parse_ring(const Json& j, const std::string& path = "ring", bool validate = true) {
  if (!j.is_object()) throw InputError(path, "expected an object");
  try {
    if (j.contains("preset")) {
      const PresetParams params = parse_preset_params(j, path);
      Preset preset = build_preset(params);
      return {preset.ring, std::move(preset.todd), parse_string(j["preset"], at(path, "preset"))};
    }
    RingSpec spec = parse_ring_spec(j, path);
    RingPtr ring = validate ? build_validated_ring(std::move(spec)) : BigradedRing::build(std::move(spec));
    return {ring, std::nullopt, "custom"};
  } catch (const InputError&) {
    throw;
  } catch (const Error& e) {
    throw InputError(path, e.what());
  }
}

/// {"td_p": [...], "td_q": [...]} or {"c_p": [c_1, ...], "c_q": [c_1, ...]}
/// with Chern classes of the two relative tangent bundles.
inline ToddData parse_todd(const Json& j, const BigradedRing& ring, const std::string& path = "todd") {
  check_keys(j, {"td_p", "td_q", "c_p", "c_q"}, path);
  auto read_list = [&](const char* key) {
    std::vector<RingElement> out;
    const Json& list = require_array(require(j, key, path), at(path, key));
    for (std::size_t i = 0; i < list.size(); ++i) out.push_back(parse_element(list[i], ring, at(at(path, key), i)));
    return out;
  };
  auto side = [&](const char* td_key, const char* c_key, int dim) {
    if (j.contains(td_key) == j.contains(c_key))
      throw InputError(at(path, td_key), std::string("give exactly one of ") + td_key + " and " + c_key);
    if (j.contains(td_key)) return read_list(td_key);
    const std::vector<RingElement> chern = read_list(c_key);
    std::vector<RingElement> td = todd_from_chern(ring, chern);
    td.resize(static_cast<std::size_t>(dim + 1), ring.zero());
    return td;
  };
  ToddData todd{side("td_p", "c_p", ring.dim_s()), side("td_q", "c_q", ring.dim_x())};
  validate_todd(ring, todd);
  return todd;
}

inline SheafData parse_sheaf(const Json& j, const RingPtr& ring, const std::string& path) {
  check_keys(j, {"name", "ch"}, path);
  std::string name = j.contains("name") ? parse_string(j["name"], at(path, "name")) : std::string();
  const Json& ch = require_array(require(j, "ch", path), at(path, "ch"));
  std::vector<RingElement> parts;
  for (std::size_t i = 0; i < ch.size(); ++i) parts.push_back(parse_element(ch[i], *ring, at(at(path, "ch"), i)));
  return make_sheaf(ring, std::move(parts), std::move(name), at(path, "ch"));
}

inline Orientation parse_orientation(const Json& j, const std::string& path) {
  const std::string s = parse_string(j, path);
  if (s == "standard") return Orientation::Standard;
  if (s == "primed") return Orientation::Primed;
  throw InputError(path, "orientation must be \"standard\" or \"primed\"");
}

struct NamedCoeffs {
  std::string name;
  CoeffVector coeffs;
};

/// {"name", "a": [a_0..a_r], "b": [b_0..b_r], "orientation"}.
inline NamedCoeffs parse_coeff_vector(const Json& j, const std::string& path) {
  check_keys(j, {"name", "a", "b", "orientation"}, path);
  auto read = [&](const char* key) {
    std::vector<Rational> out;
    const Json& list = require_array(require(j, key, path), at(path, key));
    for (std::size_t i = 0; i < list.size(); ++i) out.push_back(parse_rational(list[i], at(at(path, key), i)));
    return out;
  };
  std::vector<Rational> a = read("a");
  std::vector<Rational> b = read("b");
  if (a.empty() || a.size() != b.size()) throw InputError(path, "a and b must be nonempty and of equal length");
  const Orientation o = j.contains("orientation") ? parse_orientation(j["orientation"], at(path, "orientation"))
                                                  : Orientation::Standard;
  return {j.contains("name") ? parse_string(j["name"], at(path, "name")) : std::string(),
          CoeffVector(std::move(a), std::move(b), o)};
}

inline ChargedPoset parse_poset(const Json& j, const std::string& path, bool strict_charges = false) {
  check_keys(j, {"name", "elements", "covers"}, path);
  std::vector<ChargedPoset::Element> elements;
  const Json& list = require_array(require(j, "elements", path), at(path, "elements"));
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string p = at(at(path, "elements"), i);
    check_keys(list[i], {"id", "re", "im"}, p);
    elements.push_back({parse_string(require(list[i], "id", p), at(p, "id")),
                        {parse_rational(require(list[i], "re", p), at(p, "re")),
                         parse_rational(require(list[i], "im", p), at(p, "im"))}});
  }
  std::vector<std::pair<std::string, std::string>> covers;
  if (j.contains("covers")) {
    const Json& cl = require_array(j["covers"], at(path, "covers"));
    for (std::size_t i = 0; i < cl.size(); ++i) {
      const std::string p = at(at(path, "covers"), i);
      if (!cl[i].is_array() || cl[i].size() != 2) throw InputError(p, "expected a pair [lower, upper]");
      covers.emplace_back(parse_string(cl[i][0], at(p, 0)), parse_string(cl[i][1], at(p, 1)));
    }
  }
  try {
    return ChargedPoset(std::move(elements), covers, strict_charges);
  } catch (const InputError& e) {
    // Re-anchor the poset-relative path.
    const std::string msg = e.what();
    const std::string rel = e.path();
    throw InputError(at(path, rel), msg.substr(rel.empty() ? 0 : rel.size() + 2));
  }
}

/// A list of 4-tuples [b_r, a_r, b_{r-1}, a_{r-1}].
inline FactorVector parse_factor_vector(const Json& j, const std::string& path) {
  require_array(j, path);
  FactorVector out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string p = at(path, i);
    if (!j[i].is_array() || j[i].size() != 4) throw InputError(p, "expected [b_r, a_r, b_{r-1}, a_{r-1}]");
    out.push_back({parse_rational(j[i][0], at(p, 0)), parse_rational(j[i][1], at(p, 1)),
                   parse_rational(j[i][2], at(p, 2)), parse_rational(j[i][3], at(p, 3))});
  }
  if (out.empty()) throw InputError(path, "a factor vector needs at least one factor");
  return out;
}

struct Options {
  Orientation orientation = Orientation::Standard;
  std::vector<Rational> t_values;
  std::vector<std::pair<int, int>> m_pairs;
  bool genuine_stability = false;
  bool strict_charges = false;
};

inline Options parse_options(const Json& j, const std::string& path = "options") {
  check_keys(j, {"orientation", "t", "m1", "m2", "m_pairs", "genuine_stability", "strict_charges"}, path);
  Options o;
  if (j.contains("orientation")) o.orientation = parse_orientation(j["orientation"], at(path, "orientation"));
  if (j.contains("t")) {
    const Json& t = j["t"];
    if (t.is_array()) {
      for (std::size_t i = 0; i < t.size(); ++i) o.t_values.push_back(parse_rational(t[i], at(at(path, "t"), i)));
    } else {
      o.t_values.push_back(parse_rational(t, at(path, "t")));
    }
  }
  if (j.contains("m_pairs")) {
    if (j.contains("m1") || j.contains("m2")) throw InputError(at(path, "m_pairs"), "give either m_pairs or m1/m2");
    const Json& list = require_array(j["m_pairs"], at(path, "m_pairs"));
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string p = at(at(path, "m_pairs"), i);
      if (!list[i].is_array() || list[i].size() != 2) throw InputError(p, "expected a pair [m1, m2]");
      o.m_pairs.emplace_back(parse_int(list[i][0], at(p, 0)), parse_int(list[i][1], at(p, 1)));
    }
  } else if (j.contains("m1") || j.contains("m2")) {
    o.m_pairs.emplace_back(j.contains("m1") ? parse_int(j["m1"], at(path, "m1")) : 1,
                           j.contains("m2") ? parse_int(j["m2"], at(path, "m2")) : 1);
  }
  for (std::size_t i = 0; i < o.m_pairs.size(); ++i)
    if (o.m_pairs[i].first <= 0 || o.m_pairs[i].second <= 0)
      throw InputError(at(path, "m_pairs"), "m1 and m2 must be positive");
  if (j.contains("genuine_stability"))
    o.genuine_stability = parse_bool(j["genuine_stability"], at(path, "genuine_stability"));
  if (j.contains("strict_charges")) o.strict_charges = parse_bool(j["strict_charges"], at(path, "strict_charges"));
  return o;
}

struct NamedFactors {
  std::string name;
  FactorVector factors;
};

struct NamedPoset {
  std::string name;
  ChargedPoset poset;
};

struct InputDocument {
  std::string name;
  std::optional<RingInput> ring;
  std::optional<ToddData> todd;
  std::vector<SheafData> sheaves;
  std::vector<NamedCoeffs> coeff_vectors;
  std::vector<NamedPoset> posets;
  std::vector<NamedFactors> factor_vectors;
  Options options;
  /// Raw ring JSON, kept for validate-ring, which reports on invalid rings.
  Json ring_json;
};

/// Parses one document. The ring is validated before anything that depends
/// on it is read.
inline InputDocument parse_document(const Json& j, const std::string& path = "") {
  check_keys(j, {"name", "ring", "todd", "sheaves", "coeff_vectors", "posets", "factor_vectors", "options"}, path);
  InputDocument doc;
  if (j.contains("name")) doc.name = parse_string(j["name"], at(path, "name"));
  if (j.contains("options")) doc.options = parse_options(j["options"], at(path, "options"));
  if (j.contains("ring")) {
    doc.ring_json = j["ring"];
    doc.ring = parse_ring(j["ring"], at(path, "ring"));
    doc.todd = doc.ring->todd;
  }
  if (j.contains("todd")) {
    if (!doc.ring) throw InputError(at(path, "todd"), "Todd data given without a ring");
    doc.todd = parse_todd(j["todd"], *doc.ring->ring, at(path, "todd"));
  }
  if (j.contains("sheaves")) {
    if (!doc.ring) throw InputError(at(path, "sheaves"), "sheaves given without a ring");
    const Json& list = require_array(j["sheaves"], at(path, "sheaves"));
    for (std::size_t i = 0; i < list.size(); ++i) {
      SheafData s = parse_sheaf(list[i], doc.ring->ring, at(at(path, "sheaves"), i));
      if (s.name.empty()) s.name = "sheaves[" + std::to_string(i) + "]";
      doc.sheaves.push_back(std::move(s));
    }
  }
  if (j.contains("coeff_vectors")) {
    const Json& list = require_array(j["coeff_vectors"], at(path, "coeff_vectors"));
    for (std::size_t i = 0; i < list.size(); ++i) {
      NamedCoeffs c = parse_coeff_vector(list[i], at(at(path, "coeff_vectors"), i));
      if (c.name.empty()) c.name = "coeff_vectors[" + std::to_string(i) + "]";
      doc.coeff_vectors.push_back(std::move(c));
    }
  }
  if (j.contains("posets")) {
    const Json& list = require_array(j["posets"], at(path, "posets"));
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string p = at(at(path, "posets"), i);
      std::string name = list[i].is_object() && list[i].contains("name") ? parse_string(list[i]["name"], at(p, "name"))
                                                                         : "posets[" + std::to_string(i) + "]";
      doc.posets.push_back({std::move(name), parse_poset(list[i], p, doc.options.strict_charges)});
    }
  }
  if (j.contains("factor_vectors")) {
    const Json& list = require_array(j["factor_vectors"], at(path, "factor_vectors"));
    for (std::size_t i = 0; i < list.size(); ++i)
      doc.factor_vectors.push_back({"factor_vectors[" + std::to_string(i) + "]",
                                    parse_factor_vector(list[i], at(at(path, "factor_vectors"), i))});
  }
  return doc;
}

/// Input files hold one document or an array of documents.
inline std::vector<Json> split_documents(const Json& j) {
  if (j.is_array()) {
    if (j.empty()) throw InputError("", "empty document list");
    return {j.begin(), j.end()};
  }
  return {j};
}

}  // namespace stabkit::io
