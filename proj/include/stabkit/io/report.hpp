#pragma once

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "stabkit/cascade/cascade.hpp"
#include "stabkit/hn/abel.hpp"
#include "stabkit/hn/poset.hpp"
#include "stabkit/hn/slope_equivalence.hpp"
#include "stabkit/io/json.hpp"

namespace stabkit::io {

/// Serialisation settings. Exact "p/q" strings are always written; with
/// `with_float` each rational becomes {"exact", "approx"}.
struct Format {
  bool with_float = false;
};

inline Json to_json(const Rational& q, const Format& f) {
  if (!f.with_float) return q.str();
  return Json{{"exact", q.str()}, {"approx", q.to_double()}};
}

inline Json to_json(const ComplexRational& z, const Format& f) {
  return Json{{"re", to_json(z.re, f)}, {"im", to_json(z.im, f)}};
}

inline Json to_json(const Slope& s, const Format& f) {
  if (s.is_infinite()) return "+inf";
  return to_json(s.value(), f);
}

inline Json to_json(const std::vector<Rational>& v, const Format& f) {
  Json out = Json::array();
  for (const auto& q : v) out.push_back(to_json(q, f));
  return out;
}

inline Json to_json(const RingElement& x, const Format& f) {
  Json out = Json::array();
  for (const auto& [name, c] : x.terms()) out.push_back(Json{{"basis", name}, {"coeff", to_json(c, f)}});
  return out;
}

inline Json to_json(const ComplexPolynomial& p, const Format& f) {
  Json coeffs = Json::array();
  for (const auto& c : p.coefficients()) coeffs.push_back(to_json(c, f));
  return Json{{"degree", p.degree()}, {"coefficients", coeffs}, {"text", p.str()}};
}

inline Json to_json(const CoeffVector& c, const Format& f) {
  return Json{{"orientation", std::string(to_string(c.orientation))},
              {"top", c.top},
              {"a", to_json(c.a, f)},
              {"b", to_json(c.b, f)}};
}

inline Json to_json(const TrailEntry& e, const Format& f) {
  return Json{{"quantity", e.quantity + "_" + std::to_string(e.index)},
              {"index", e.index},
              {"value", to_json(e.value, f)},
              {"requirement", std::string(to_string(e.requirement))},
              {"satisfied", e.satisfied()}};
}

inline Json to_json(const CascadeVerdict& v, const Format& f) {
  Json out{{"status", std::string(to_string(v.status))}};
  if (v.status == VerdictStatus::HoldsWithEquality) out["depth"] = v.depth;
  if (v.offending) out["offending"] = to_json(*v.offending, f);
  Json trail = Json::array();
  for (const auto& e : v.trail) trail.push_back(to_json(e, f));
  out["trail"] = trail;
  return out;
}

inline Json to_json(const FactorEntry& e, const Format& f) {
  return Json{{"b_r", to_json(e.b_r, f)}, {"a_r", to_json(e.a_r, f)}, {"b_r-1", to_json(e.b_r1, f)},
              {"a_r-1", to_json(e.a_r1, f)}};
}

inline Json to_json(const AbelReport& rep, const Format& f) {
  Json hyps = Json::array();
  for (const auto& h : rep.hypotheses) {
    Json entry{{"id", h.id}, {"holds", h.holds}};
    if (!h.holds) entry["detail"] = h.detail;
    hyps.push_back(entry);
  }
  Json steps = Json::array();
  for (const auto& [name, value] : rep.steps) steps.push_back(Json{{"name", name}, {"value", to_json(value, f)}});
  Json links = Json::array();
  for (const auto& l : rep.links)
    links.push_back(Json{{"lhs", l.lhs}, {"relation", l.relation}, {"rhs", l.rhs}, {"holds", l.holds}});
  return Json{{"t", to_json(rep.t, f)},
              {"total", to_json(rep.total, f)},
              {"hypotheses", hyps},
              {"hypotheses_hold", rep.hypotheses_hold},
              {"steps", steps},
              {"links", links},
              {"lhs", to_json(rep.lhs, f)},
              {"rhs", to_json(rep.rhs, f)},
              {"conclusion_holds", rep.conclusion_holds},
              {"equality", rep.equality},
              {"ratios_coincide", rep.ratios_coincide}};
}

inline Json to_json(const HNFiltration& hn, const Format& f) {
  Json factors = Json::array();
  for (const auto& q : hn.factors)
    factors.push_back(Json{{"elements", q.ids}, {"charge", to_json(q.charge, f)}, {"slope", to_json(q.slope, f)}});
  Json sums = Json::array();
  for (const auto& z : hn.partial_sums) sums.push_back(to_json(z, f));
  return Json{{"semistable", hn.semistable()}, {"factors", factors}, {"partial_sums", sums}};
}

inline Json to_json(const SlopeEquivalence& eq, const Format& f) {
  Json ids = Json::array();
  for (const auto& id : eq.identities)
    ids.push_back(Json{{"identity", id.name}, {"lhs", to_json(id.lhs, f)}, {"rhs", to_json(id.rhs, f)}, {"holds", id.holds}});
  return Json{{"n", eq.n}, {"r", eq.r}, {"m1", eq.m1}, {"m2", eq.m2}, {"t", to_json(eq.t, f)}, {"identities", ids}};
}

inline Json to_json(const RingValidation& v) {
  Json out = Json::array();
  for (const auto& e : v.violations) out.push_back(Json{{"kind", e.kind}, {"classes", e.classes}, {"detail", e.detail}});
  return out;
}

inline Json ring_summary(const BigradedRing& ring, const std::string& kind, const Format& f) {
  Json basis = Json::array();
  for (const auto& b : ring.basis()) basis.push_back(Json{{"name", b.name}, {"bidegree", b.degree.str()}});
  return Json{{"kind", kind},
              {"n", ring.dim_x()},
              {"r", ring.dim_s()},
              {"basis", basis},
              {"h1", to_json(ring.h1(), f)},
              {"h2", to_json(ring.h2(), f)},
              {"vol_s", to_json(ring.vol_s(), f)}};
}

namespace detail {

inline bool is_scalar(const Json& j) { return !j.is_object() && !j.is_array(); }

inline std::string scalar_text(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  return j.dump();
}

/// Objects whose values are all scalars print inline, as do short lists of
/// scalars; everything else nests.
inline bool is_inline(const Json& j) {
  if (is_scalar(j)) return true;
  if (j.is_array()) return std::all_of(j.begin(), j.end(), [](const Json& x) { return is_scalar(x); });
  if (j.is_object() && j.size() <= 4) {
    for (const auto& [k, v] : j.items())
      if (!is_scalar(v)) return false;
    return true;
  }
  return false;
}

inline std::string inline_text(const Json& j) {
  if (is_scalar(j)) return scalar_text(j);
  std::string out = j.is_array() ? "[" : "{";
  bool first = true;
  for (const auto& [k, v] : j.items()) {
    if (!first) out += ", ";
    first = false;
    if (j.is_object()) out += k + "=";
    out += inline_text(v);
  }
  return out + (j.is_array() ? "]" : "}");
}

inline void render(const Json& j, int indent, std::ostringstream& os) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  if (j.is_object()) {
    std::size_t width = 0;
    for (const auto& [k, v] : j.items())
      if (is_inline(v)) width = std::max(width, k.size());
    for (const auto& [k, v] : j.items()) {
      if (is_inline(v)) {
        os << pad << k << std::string(width - k.size(), ' ') << " : " << inline_text(v) << "\n";
      } else {
        os << pad << k << ":\n";
        render(v, indent + 2, os);
      }
    }
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (is_inline(j[i])) {
        os << pad << "- " << inline_text(j[i]) << "\n";
      } else {
        os << pad << "- [" << i << "]\n";
        render(j[i], indent + 4, os);
      }
    }
  } else {
    os << pad << scalar_text(j) << "\n";
  }
}

}  // namespace detail

/// Human-readable rendering of a report: keys aligned per object, scalar
/// lists inline.
inline std::string render_text(const Json& report) {
  std::ostringstream os;
  detail::render(report, 0, os);
  return os.str();
}

}  // namespace stabkit::io
