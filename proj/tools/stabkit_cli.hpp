#pragma once

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "stabkit/io/json.hpp"
#include "stabkit/io/report.hpp"
#include "stabkit/stabkit.hpp"

namespace stabkit::cli {

using io::Json;

inline constexpr int kExitHolds = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitViolated = 2;

inline const std::vector<std::string>& example_names() {
  static const std::vector<std::string> names{"p1xp1-line-bundles", "curve-x-elliptic", "binomial-identities"};
  return names;
}

/// Parameters of the curve-x-elliptic scenario: ch(E) = (rank, n1 f1 + n2 f2 + delta, v pt).
struct CurveParams {
  std::string rank = "2";
  std::string n1 = "1";
  std::string n2 = "1";
  std::string v = "0";
  std::string delta_sq = "0";
};

namespace detail {

inline Json term(const std::string& basis, const Rational& c) { return Json{{"basis", basis}, {"coeff", c.str()}}; }

inline Json terms(std::initializer_list<std::pair<std::string, Rational>> list) {
  Json out = Json::array();
  for (const auto& [b, c] : list)
    if (!c.is_zero()) out.push_back(term(b, c));
  return out;
}

inline Rational flag_rational(const std::string& text, const std::string& flag) {
  try {
    return Rational::parse(text);
  } catch (const std::exception&) {
    throw InputError(flag, "not a rational number: \"" + text + "\"");
  }
}

}  // namespace detail

/// Input documents of a built-in scenario.
inline std::vector<Json> example_documents(const std::string& name, const CurveParams& curve = {}) {
  if (name == "p1xp1-line-bundles") {
    Json sheaves = Json::array();
    for (int a = -2; a <= 2; ++a)
      for (int b = -2; b <= 2; ++b)
        sheaves.push_back(Json{{"name", "O(" + std::to_string(a) + "," + std::to_string(b) + ")"},
                               {"ch", Json::array({detail::terms({{"1", 1}}),
                                                   detail::terms({{"h1", a}, {"h2", b}}),
                                                   detail::terms({{"h1h2", Rational(a * b)}})})}});
    return {Json{{"name", "line bundles O(a,b) on P1 x P1"},
                 {"ring", Json{{"preset", "proj_product"}, {"n", 1}, {"r", 1}}},
                 {"sheaves", sheaves}}};
  }
  if (name == "curve-x-elliptic") {
    const Rational rank = detail::flag_rational(curve.rank, "--rank");
    const Rational n1 = detail::flag_rational(curve.n1, "--n1");
    const Rational n2 = detail::flag_rational(curve.n2, "--n2");
    const Rational v = detail::flag_rational(curve.v, "--v");
    const Rational delta_sq = detail::flag_rational(curve.delta_sq, "--delta-sq");
    Json sheaf{{"name", "E"},
               {"ch", Json::array({detail::terms({{"1", rank}}),
                                   detail::terms({{"f1", n1}, {"f2", n2}, {"delta", 1}}),
                                   detail::terms({{"pt", v}})})}};
    return {Json{{"name", "curve x elliptic curve"},
                 {"ring", Json{{"preset", "curve_product"}, {"g_x", 0}, {"delta_sq", delta_sq.str()}, {"deg_h1", 1},
                               {"deg_h2", 1}}},
                 {"sheaves", Json::array({sheaf})}}};
  }
  if (name == "binomial-identities") {
    Json pairs = Json::array();
    for (int m1 = 1; m1 <= 3; ++m1)
      for (int m2 = 1; m2 <= 3; ++m2) pairs.push_back(Json::array({m1, m2}));
    std::vector<Json> docs;
    for (int n = 1; n <= 3; ++n)
      for (int r = 1; r <= 3; ++r)
        docs.push_back(Json{{"name", "P" + std::to_string(n) + " x P" + std::to_string(r)},
                            {"ring", Json{{"preset", "proj_product"}, {"n", n}, {"r", r}}},
                            {"options", Json{{"m_pairs", pairs}}}});
    return docs;
  }
  throw InputError("example", "unknown example \"" + name + "\"");
}

/// Command each scenario runs under `example NAME`.
inline std::string example_command(const std::string& name) {
  if (name == "binomial-identities") return "slope-equiv";
  return "cascade";
}

struct CommandOverrides {
  std::optional<std::string> orientation;
  std::vector<std::string> t_values;
  std::optional<int> m1;
  std::optional<int> m2;
  bool genuine_stability = false;
};

struct DocResult {
  Json json;
  bool violated = false;
  bool invalid = false;
};

inline std::size_t max_poset_size() {
  const char* env = std::getenv("STABKIT_MAX_POSET");
  if (env == nullptr || *env == '\0') return 16;
  try {
    std::size_t used = 0;
    const long v = std::stol(env, &used);
    if (used != std::string(env).size() || v <= 0) throw std::invalid_argument("bad");
    if (v > static_cast<long>(ChargedPoset::kMaxElements))
      throw InputError("STABKIT_MAX_POSET", "cannot exceed " + std::to_string(ChargedPoset::kMaxElements));
    return static_cast<std::size_t>(v);
  } catch (const InputError&) {
    throw;
  } catch (const std::exception&) {
    throw InputError("STABKIT_MAX_POSET", "expected a positive integer, got \"" + std::string(env) + "\"");
  }
}

inline Json options_json(const io::Options& o, const io::Format& f) {
  Json ts = Json::array();
  for (const auto& t : o.t_values) ts.push_back(io::to_json(t, f));
  Json ms = Json::array();
  for (const auto& [m1, m2] : o.m_pairs) ms.push_back(Json::array({m1, m2}));
  return Json{{"orientation", std::string(to_string(o.orientation))},
              {"t", ts},
              {"m_pairs", ms},
              {"genuine_stability", o.genuine_stability},
              {"strict_charges", o.strict_charges}};
}

inline void apply_overrides(io::Options& o, const CommandOverrides& ov) {
  if (ov.orientation) o.orientation = io::parse_orientation(Json(*ov.orientation), "--orientation");
  if (!ov.t_values.empty()) {
    o.t_values.clear();
    for (const auto& t : ov.t_values) o.t_values.push_back(detail::flag_rational(t, "--t"));
  }
  if (ov.m1 || ov.m2) o.m_pairs = {{ov.m1.value_or(1), ov.m2.value_or(1)}};
  for (const auto& [m1, m2] : o.m_pairs)
    if (m1 <= 0 || m2 <= 0) throw InputError("--m1/--m2", "must be positive");
  if (ov.genuine_stability) o.genuine_stability = true;
}

inline const ToddData& require_todd(const io::InputDocument& doc) {
  if (!doc.todd) throw InputError("todd", "Todd data is required for a custom ring");
  return *doc.todd;
}

inline DocResult validate_ring_doc(const Json& raw, const std::string& path, const io::Format& f) {
  DocResult out;
  if (!raw.is_object() || !raw.contains("ring")) throw InputError(io::at(path, "ring"), "missing field");
  const io::RingInput in = io::parse_ring(raw["ring"], io::at(path, "ring"), /*validate=*/false);
  const RingValidation v = validate_ring(*in.ring);
  out.json = Json{{"ring", io::ring_summary(*in.ring, in.kind, f)}, {"valid", v.ok()}, {"violations", io::to_json(v)}};
  out.invalid = !v.ok();
  return out;
}

inline DocResult run_hilbert(const io::InputDocument& doc, const io::Format& f) {
  DocResult out;
  Json results = Json::array();
  for (const auto& e : doc.sheaves) {
    const ToddData& todd = require_todd(doc);
    const ComplexPolynomial p = hilbert_poly(e, todd, doc.options.orientation);
    results.push_back(Json{{"name", e.name},
                           {"orientation", std::string(to_string(doc.options.orientation))},
                           {"polynomial", io::to_json(p, f)},
                           {"z_s", io::to_json(z_s(e, todd), f)}});
  }
  out.json["results"] = results;
  return out;
}

inline DocResult run_coeffs(const io::InputDocument& doc, const io::Format& f) {
  DocResult out;
  Json results = Json::array();
  for (const auto& e : doc.sheaves) {
    const ToddData& todd = require_todd(doc);
    const CoeffVector c = coefficients(e, todd, doc.options.orientation);
    const ComplexPolynomial p = hilbert_poly(e, todd, doc.options.orientation);
    const bool matches = CoeffVector::from_polynomial(p, c.top, c.orientation) == c;
    out.violated = out.violated || !matches;
    results.push_back(Json{{"name", e.name},
                           {"coefficients", io::to_json(c, f)},
                           {"z_s", io::to_json(z_s(e, todd), f)},
                           {"matches_hilbert", matches}});
  }
  out.json["results"] = results;
  return out;
}

inline Json cascade_entry(const std::string& name, const CoeffVector& c, bool genuine, const io::Format& f,
                          bool& violated) {
  const CascadeVerdict lin = linear_cascade(c, genuine);
  const CascadeVerdict quad = quadratic_cascade(c);
  violated = violated || lin.violated() || quad.violated();
  return Json{{"name", name},
              {"coefficients", io::to_json(c, f)},
              {"D", io::to_json(quadratic_quantities(c), f)},
              {"linear", io::to_json(lin, f)},
              {"quadratic", io::to_json(quad, f)}};
}

inline DocResult run_cascade(const io::InputDocument& doc, const io::Format& f) {
  DocResult out;
  Json results = Json::array();
  for (const auto& e : doc.sheaves) {
    const CoeffVector c = coefficients(e, require_todd(doc), doc.options.orientation);
    results.push_back(cascade_entry(e.name, c, doc.options.genuine_stability, f, out.violated));
  }
  for (const auto& [name, c] : doc.coeff_vectors)
    results.push_back(cascade_entry(name, c, doc.options.genuine_stability, f, out.violated));
  out.json["results"] = results;
  return out;
}

inline DocResult run_hn(const io::InputDocument& doc, const io::Format& f) {
  DocResult out;
  const std::size_t cap = max_poset_size();
  Json results = Json::array();
  for (std::size_t i = 0; i < doc.posets.size(); ++i) {
    const auto& [name, poset] = doc.posets[i];
    if (poset.size() > cap)
      throw InputError("posets[" + std::to_string(i) + "].elements",
                       std::to_string(poset.size()) + " elements exceed STABKIT_MAX_POSET=" + std::to_string(cap));
    const HNFiltration hn = hn_filtration(poset);
    bool decreasing = true;
    for (std::size_t k = 0; k + 1 < hn.factors.size(); ++k)
      decreasing = decreasing && hn.factors[k].slope > hn.factors[k + 1].slope;
    ComplexRational sum;
    for (const auto& q : hn.factors) sum += q.charge;
    const bool additive = sum == poset.total_charge() && hn.partial_sums.back() == poset.total_charge();
    out.violated = out.violated || !decreasing || !additive;
    results.push_back(Json{{"name", name},
                           {"elements", poset.size()},
                           {"down_sets", down_sets(poset).size()},
                           {"total_charge", io::to_json(poset.total_charge(), f)},
                           {"filtration", io::to_json(hn, f)},
                           {"checks", Json{{"slopes_strictly_decreasing", decreasing}, {"charges_add_up", additive}}}});
  }
  out.json["results"] = results;
  return out;
}

inline DocResult run_abel(const io::InputDocument& doc, const io::Format& f) {
  DocResult out;
  if (!doc.factor_vectors.empty() && doc.options.t_values.empty())
    throw InputError("options.t", "abel-check needs t (options.t or --t)");
  Json results = Json::array();
  for (const auto& [name, factors] : doc.factor_vectors)
    for (const auto& t : doc.options.t_values) {
      const AbelReport rep = abel_chain_check(factors, t);
      out.violated = out.violated || rep.violated();
      Json entry{{"name", name}};
      Json fs = Json::array();
      for (const auto& q : factors) fs.push_back(io::to_json(q, f));
      entry["factors"] = fs;
      entry["report"] = io::to_json(rep, f);
      results.push_back(entry);
    }
  out.json["results"] = results;
  return out;
}

inline DocResult run_slope_equiv(const io::InputDocument& doc, const io::Format& f) {
  DocResult out;
  if (!doc.ring) throw InputError("ring", "slope-equiv needs a ring");
  std::vector<std::pair<int, int>> pairs = doc.options.m_pairs;
  if (pairs.empty()) pairs = {{1, 1}};
  Json results = Json::array();
  for (const auto& [m1, m2] : pairs) {
    const SlopeEquivalence eq = slope_equivalence(doc.ring->ring, m1, m2);
    out.violated = out.violated || !eq.holds();
    Json entry = io::to_json(eq, f);
    if (!doc.sheaves.empty()) {
      Json sheaves = Json::array();
      for (const auto& e : doc.sheaves) {
        const SlopeComparison cmp = compare_with_classical_slope(e, require_todd(doc), m1, m2);
        out.violated = out.violated || !cmp.holds;
        sheaves.push_back(Json{{"name", e.name},
                               {"sigma_t_slope", io::to_json(cmp.sigma_t, f)},
                               {"classical_slope", io::to_json(cmp.classical, f)},
                               {"scale", io::to_json(cmp.scale, f)},
                               {"shift", io::to_json(cmp.shift, f)},
                               {"affine_relation_holds", cmp.holds}});
      }
      entry["sheaves"] = sheaves;
    }
    results.push_back(entry);
  }
  out.json["results"] = results;
  return out;
}

/// Extra checks attached to `example NAME` reports.
inline Json example_checks(const std::string& name, const io::InputDocument& doc, const io::Format& f,
                           bool& violated) {
  Json checks = Json::array();
  if (name == "p1xp1-line-bundles") {
    // Rp_*(O(a,b) (x) q^*O(n)) = O(a)^{n+b+1} on P^1: L(n) = (-a + i)(n + b + 1).
    for (const auto& e : doc.sheaves) {
      const Rational a = e.ch[1].coefficient("h1");
      const Rational b = e.ch[1].coefficient("h2");
      const ComplexPolynomial expected({ComplexRational(-a * (b + 1), b + 1), ComplexRational(-a, 1)});
      const bool ok = hilbert_poly(e, *doc.todd) == expected;
      violated = violated || !ok;
      checks.push_back(Json{{"name", e.name}, {"pushforward", expected.str()}, {"matches_hilbert", ok}});
    }
  } else if (name == "curve-x-elliptic") {
    const auto& ring = *doc.ring->ring;
    for (const auto& e : doc.sheaves) {
      const CoeffVector c = coefficients(e, *doc.todd);
      const Rational d0 = c.b[1] * c.a[0] - c.a[1] * c.b[0];
      const Rational rank = e.ch[0].coefficient("1");
      const Rational closed = e.ch[1].coefficient("f1") * e.ch[1].coefficient("f2") - rank * e.ch[2].coefficient("pt");
      const RingElement delta = e.ch[1].coefficient("delta") * ring.basis_element("delta");
      const Rational disc =
          Rational(1, 2) * integrate(e.ch[1] * e.ch[1] - delta * delta - Rational(2) * e.ch[0] * e.ch[2]);
      const bool ok = d0 == closed && closed == disc;
      violated = violated || !ok;
      checks.push_back(Json{{"name", e.name},
                            {"b1a0-a1b0", io::to_json(d0, f)},
                            {"n1n2-rv", io::to_json(closed, f)},
                            {"(ch1^2-delta^2-2ch0ch2)/2", io::to_json(disc, f)},
                            {"agree", ok}});
    }
  }
  return checks;
}

struct Invocation {
  std::string command;
  std::optional<std::string> input;
  std::optional<std::string> example;
  CurveParams curve;
  CommandOverrides overrides;
  bool text = false;
  bool with_float = false;
  bool dump = false;
  std::optional<std::string> output;
};

inline DocResult dispatch(const std::string& command, const io::InputDocument& doc, const io::Format& f) {
  if (command == "hilbert") return run_hilbert(doc, f);
  if (command == "coeffs") return run_coeffs(doc, f);
  if (command == "cascade") return run_cascade(doc, f);
  if (command == "hn") return run_hn(doc, f);
  if (command == "abel-check") return run_abel(doc, f);
  if (command == "slope-equiv") return run_slope_equiv(doc, f);
  throw Error("unknown command " + command);
}

/// Runs one invocation and returns the report and exit code. Input errors
/// propagate as exceptions.
inline std::pair<Json, int> execute(const Invocation& inv) {
  const io::Format f{inv.with_float};
  std::vector<Json> raw;
  std::string source;
  std::string command = inv.command;
  if (inv.example) {
    raw = example_documents(*inv.example, inv.curve);
    source = "example:" + *inv.example;
    if (command == "example") command = example_command(*inv.example);
  } else if (inv.input) {
    std::ifstream in(*inv.input);
    if (!in) throw InputError(*inv.input, "cannot open input file");
    Json j;
    try {
      j = Json::parse(in);
    } catch (const Json::parse_error& e) {
      throw InputError(*inv.input, std::string("malformed JSON: ") + e.what());
    }
    raw = io::split_documents(j);
    source = *inv.input;
  } else {
    throw InputError("", "give an input file or --example NAME");
  }

  Json docs = Json::array();
  bool violated = false;
  bool invalid = false;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const std::string path = raw.size() > 1 ? "[" + std::to_string(i) + "]" : "";
    Json entry;
    DocResult res;
    if (command == "validate-ring") {
      if (raw[i].is_object() && raw[i].contains("name")) entry["name"] = raw[i]["name"];
      res = validate_ring_doc(raw[i], path, f);
    } else {
      io::InputDocument doc = io::parse_document(raw[i], path);
      apply_overrides(doc.options, inv.overrides);
      if (!doc.name.empty()) entry["name"] = doc.name;
      if (doc.ring) entry["ring"] = io::ring_summary(*doc.ring->ring, doc.ring->kind, f);
      entry["options"] = options_json(doc.options, f);
      res = dispatch(command, doc, f);
      if (inv.command == "example") {
        bool extra_violated = false;
        Json checks = example_checks(*inv.example, doc, f, extra_violated);
        if (!checks.empty()) res.json["example_checks"] = checks;
        res.violated = res.violated || extra_violated;
      }
    }
    for (auto& [k, v] : res.json.items()) entry[k] = v;
    violated = violated || res.violated;
    invalid = invalid || res.invalid;
    docs.push_back(entry);
  }
  const int code = invalid ? kExitInputError : violated ? kExitViolated : kExitHolds;
  Json report{{"command", command},
              {"source", source},
              {"status", invalid ? "invalid" : violated ? "violated" : "holds"},
              {"exit_code", code},
              {"documents", docs}};
  return {report, code};
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact GRR coefficients, Bogomolov-type cascades and HN filtrations on product varieties", "stabkit"};
  app.require_subcommand(1);
  Invocation inv;

  auto add_common = [&](CLI::App* sub, bool positional_input) {
    if (positional_input) sub->add_option("input", inv.input, "input JSON document");
    sub->add_option("--example", inv.example, "use a built-in example instead of a file")
        ->check(CLI::IsMember(example_names()));
    sub->add_flag("--text", inv.text, "aligned text instead of JSON");
    sub->add_flag("--float", inv.with_float, "add decimal approximations next to exact rationals");
    sub->add_option("-o,--output", inv.output, "write the report to a file");
  };
  auto add_orientation = [&](CLI::App* sub) {
    sub->add_option("--orientation", inv.overrides.orientation, "standard or primed")
        ->check(CLI::IsMember({"standard", "primed"}));
  };

  std::map<std::string, CLI::App*> subs;
  subs["validate-ring"] = app.add_subcommand("validate-ring", "check commutativity, associativity, grading, unit");
  subs["hilbert"] = app.add_subcommand("hilbert", "complexified Hilbert polynomial L_E(n)");
  subs["coeffs"] = app.add_subcommand("coeffs", "coefficients a_k, b_k, cross-checked against L_E(n)");
  subs["cascade"] = app.add_subcommand("cascade", "linear and quadratic inequality cascades");
  subs["hn"] = app.add_subcommand("hn", "Harder-Narasimhan filtrations of charged posets");
  subs["abel-check"] = app.add_subcommand("abel-check", "Abel-summation chain on factor vectors");
  subs["slope-equiv"] = app.add_subcommand("slope-equiv", "t = m1/(m2 n) and the binomial ring identities");
  for (auto& [name, sub] : subs) add_common(sub, true);
  for (const char* name : {"hilbert", "coeffs", "cascade"}) add_orientation(subs[name]);
  subs["cascade"]->add_flag("--genuine", inv.overrides.genuine_stability, "require a_0 < 0 at the bottom");
  subs["abel-check"]->add_option("--t", inv.overrides.t_values, "t > 0, repeatable");
  subs["slope-equiv"]->add_option("--m1", inv.overrides.m1, "positive integer");
  subs["slope-equiv"]->add_option("--m2", inv.overrides.m2, "positive integer");

  CLI::App* ex = app.add_subcommand("example", "run a built-in scenario");
  std::string example_name;
  ex->add_option("name", example_name, "scenario name")->required()->check(CLI::IsMember(example_names()));
  ex->add_flag("--text", inv.text, "aligned text instead of JSON");
  ex->add_flag("--float", inv.with_float, "add decimal approximations next to exact rationals");
  ex->add_option("-o,--output", inv.output, "write the report to a file");
  ex->add_flag("--dump", inv.dump, "print the scenario's input documents instead of running it");
  ex->add_option("--rank", inv.curve.rank, "curve-x-elliptic: ch_0");
  ex->add_option("--n1", inv.curve.n1, "curve-x-elliptic: coefficient of f1 in ch_1");
  ex->add_option("--n2", inv.curve.n2, "curve-x-elliptic: coefficient of f2 in ch_1");
  ex->add_option("--v", inv.curve.v, "curve-x-elliptic: ch_2 = v pt");
  ex->add_option("--delta-sq", inv.curve.delta_sq, "curve-x-elliptic: delta^2 <= 0");
  subs["example"] = ex;

  std::vector<const char*> argv{"stabkit"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitInputError;
  }
  for (auto& [name, sub] : subs)
    if (sub->parsed()) inv.command = name;
  if (inv.command == "example") inv.example = example_name;
  if (inv.input && inv.example) {
    err << "error: give either an input file or --example, not both\n";
    return kExitInputError;
  }

  try {
    std::string text;
    int code = kExitHolds;
    if (inv.dump) {
      Json docs = Json::array();
      for (auto& d : example_documents(*inv.example, inv.curve)) docs.push_back(d);
      text = docs.dump(2) + "\n";
    } else {
      auto [report, exit_code] = execute(inv);
      code = exit_code;
      text = inv.text ? io::render_text(report) : report.dump(2) + "\n";
    }
    if (inv.output) {
      std::ofstream file(*inv.output, std::ios::binary);
      if (!file) throw InputError(*inv.output, "cannot open output file");
      file << text;
    } else {
      out << text;
    }
    return code;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}

}  // namespace stabkit::cli
