// Copyright 2026 The jungck-fp Authors
// SPDX-License-Identifier: Apache-2.0

#include "jfp/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "jfp/error.hpp"
#include "jfp/gauges.hpp"

namespace jfp {

using nlohmann::json;

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

[[noreturn]] void field_error(const std::string& field, const std::string& what) {
  throw ScenarioError("field '" + field + "': " + what);
}

// Splits "a, b" at the first comma outside parentheses.
std::pair<std::string_view, std::string_view> split_top_comma(std::string_view s) {
  int depth = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    if (s[i] == ')') --depth;
    if (s[i] == ',' && depth == 0) return {s.substr(0, i), s.substr(i + 1)};
  }
  throw ScenarioError("interval \"" + std::string(s) + "\" needs two endpoints");
}

Expr parse_constant(const json& j, const std::string& field) {
  try {
    if (j.is_number()) return Expr::constant(j.get<double>());
    if (j.is_string()) return Expr::parse(j.get<std::string>(), "");
  } catch (const ScenarioError& e) {
    field_error(field, e.what());
  }
  field_error(field, "expected a number or a constant expression");
}

Expr parse_expr(const json& j, const std::string& field, std::string_view var) {
  if (j.is_number()) return Expr::constant(j.get<double>());
  if (!j.is_string()) field_error(field, "expected an expression string");
  try {
    return Expr::parse(j.get<std::string>(), var);
  } catch (const ScenarioError& e) {
    field_error(field, e.what());
  }
}

void reject_unknown(const json& obj, std::initializer_list<std::string_view> allowed,
                    const std::string& where) {
  for (const auto& [key, _] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      field_error(where.empty() ? key : where + "." + key, "unknown field");
    }
  }
}

const json& require(const json& obj, const std::string& key, const std::string& where = "") {
  auto it = obj.find(key);
  if (it == obj.end()) field_error(where.empty() ? key : where + "." + key, "missing");
  return *it;
}

MapSpec parse_map(const json& j, const std::string& field) {
  if (!j.is_array()) return parse_expr(j, field, "x");
  if (j.empty()) field_error(field, "piecewise map needs at least one branch");
  std::vector<Piece> pieces;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string where = field + "[" + std::to_string(i) + "]";
    const json& p = j[i];
    if (!p.is_object()) field_error(where, "expected {\"on\": ..., \"expr\": ...}");
    reject_unknown(p, {"on", "expr"}, where);
    const json& on = require(p, "on", where);
    if (!on.is_string()) field_error(where + ".on", "expected an interval string");
    IntervalSpec iv;
    try {
      iv = IntervalSpec::parse(on.get<std::string>());
    } catch (const ScenarioError& e) {
      field_error(where + ".on", e.what());
    }
    pieces.push_back({iv, parse_expr(require(p, "expr", where), where + ".expr", "x")});
  }
  return pieces;
}

json map_to_json(const MapSpec& spec) {
  if (const auto* e = std::get_if<Expr>(&spec)) return e->to_string();
  json arr = json::array();
  for (const Piece& p : std::get<std::vector<Piece>>(spec)) {
    arr.push_back({{"on", p.on.to_string()}, {"expr", p.body.to_string()}});
  }
  return arr;
}

RealFn as_fn(const Expr& e) {
  return [e](double v) { return e(v); };
}

std::vector<double> map_breakpoints(const MapSpec& spec) {
  std::vector<double> out;
  if (const auto* pieces = std::get_if<std::vector<Piece>>(&spec)) {
    for (const Piece& p : *pieces) {
      out.push_back(p.on.lo());
      out.push_back(p.on.hi());
    }
  }
  return out;
}

void validate_map(const MapSpec& spec, const Domain& dom, const std::string& field) {
  std::vector<double> probes;
  if (const auto* pieces = std::get_if<std::vector<Piece>>(&spec)) {
    for (std::size_t i = 0; i < pieces->size(); ++i) {
      const std::string where = field + "[" + std::to_string(i) + "].on";
      const IntervalSpec& on = (*pieces)[i].on;
      const double lo = on.lo();
      const double hi = on.hi();
      if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
        field_error(where, "interval " + on.to_string() + " is empty or not finite");
      }
      for (double b : {lo, hi}) {
        if (b < dom.lo() || b > dom.hi()) {
          field_error(where, "breakpoint " + fmt(b) + " lies outside the domain " + dom.to_string());
        }
        const double eps = 1e-9 * dom.width();
        probes.insert(probes.end(), {b, b - eps, b + eps});
      }
    }
  }
  const SampleGrid base = sample_grid(dom, 1025);
  probes.insert(probes.end(), base.points().begin(), base.points().end());

  const ScalarMap m = make_map(spec, dom, field);
  for (double x : probes) {
    if (!dom.contains(x)) continue;
    if (const auto* pieces = std::get_if<std::vector<Piece>>(&spec)) {
      const auto hits = std::count_if(pieces->begin(), pieces->end(),
                                      [&](const Piece& p) { return p.on.domain().contains(x); });
      if (hits == 0) field_error(field, "no branch covers x=" + fmt(x) + " (map is not total)");
      if (hits > 1) field_error(field, "branches overlap at x=" + fmt(x));
    }
    double v = 0.0;
    try {
      v = m(x);
    } catch (const NonFiniteError&) {
      field_error(field, "non-finite value at x=" + fmt(x) + " (map is not total)");
    }
    const double slack = 1e-12 * std::max(1.0, std::abs(v));
    if (v < dom.lo() - slack || v > dom.hi() + slack) {
      field_error(field, "maps x=" + fmt(x) + " to " + fmt(v) + ", outside the domain " +
                             dom.to_string());
    }
  }
}

std::vector<double> t_probes(const Domain& dom) {
  const SampleGrid g = sample_grid(Domain(0.0, dom.width()), 1025);
  std::vector<double> ts(g.points().begin(), g.points().end());
  const auto offsets = default_approach_offsets();
  ts.insert(ts.end(), offsets.begin(), offsets.end());
  return ts;
}

}  // namespace

// --- IntervalSpec -----------------------------------------------------------

IntervalSpec IntervalSpec::parse(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  const std::string_view s = trim(text);
  if (s.size() < 5 || (s.front() != '[' && s.front() != '(') ||
      (s.back() != ']' && s.back() != ')')) {
    throw ScenarioError("interval \"" + std::string(text) + "\" must look like [a, b] or (a, b)");
  }
  auto [a, b] = split_top_comma(s.substr(1, s.size() - 2));
  IntervalSpec out;
  out.lo = Expr::parse(trim(a), "");
  out.hi = Expr::parse(trim(b), "");
  out.lo_closed = s.front() == '[';
  out.hi_closed = s.back() == ']';
  const double lo = out.lo();
  const double hi = out.hi();
  const bool point = lo == hi && out.lo_closed && out.hi_closed;
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi || point)) {
    throw ScenarioError("interval \"" + std::string(text) + "\" is empty or not finite");
  }
  return out;
}

Domain IntervalSpec::domain() const { return Domain(lo(), hi(), lo_closed, hi_closed); }

std::string IntervalSpec::to_string() const {
  return std::string(lo_closed ? "[" : "(") + lo.to_string() + ", " + hi.to_string() +
         (hi_closed ? "]" : ")");
}

std::vector<double> SequenceSpec::terms() const {
  std::vector<double> out;
  for (long n = n_from; n <= n_to; ++n) out.push_back(term(static_cast<double>(n)));
  return out;
}

// --- building ---------------------------------------------------------------

ScalarMap make_map(const MapSpec& spec, const Domain& domain, const std::string& label) {
  if (const auto* e = std::get_if<Expr>(&spec)) {
    return ScalarMap(domain, as_fn(*e), label + " = " + e->to_string());
  }
  struct Branch {
    Domain on;
    Expr body;
  };
  std::vector<Branch> branches;
  std::string text = label + " = {";
  for (const Piece& p : std::get<std::vector<Piece>>(spec)) {
    branches.push_back({p.on.domain(), p.body});
    text += " " + p.body.to_string() + " on " + p.on.to_string() + ";";
  }
  text += " }";
  auto eval = [branches](double x) {
    for (const Branch& b : branches) {
      if (b.on.contains(x)) return b.body(x);
    }
    return std::numeric_limits<double>::quiet_NaN();
  };
  return ScalarMap(domain, eval, text, map_breakpoints(spec));
}

ContractionPair make_contraction_pair(const Scenario& sc) {
  const Domain dom = sc.domain.domain();
  std::optional<IntegrandPhi> phi;
  if (sc.phi) phi = IntegrandPhi{as_fn(*sc.phi), "phi = " + sc.phi->to_string()};
  GaugeTriple gauges{as_fn(sc.alpha), as_fn(sc.beta), as_fn(sc.gamma),
                     "alpha = " + sc.alpha.to_string() + ", beta = " + sc.beta.to_string() +
                         ", gamma = " + sc.gamma.to_string()};
  return ContractionPair(make_map(sc.s, dom, "S"), make_map(sc.t, dom, "T"),
                         AlteringDistance{as_fn(sc.psi), "psi = " + sc.psi.to_string()},
                         std::move(gauges), std::move(phi), sc.integral_middle_term);
}

void validate(const Scenario& sc) {
  if (sc.name.empty()) field_error("name", "must not be empty");
  Domain dom(0.0, 1.0);
  try {
    dom = sc.domain.domain();
  } catch (const std::invalid_argument& e) {
    field_error("domain", e.what());
  }
  validate_map(sc.s, dom, "S");
  validate_map(sc.t, dom, "T");

  const auto ts = t_probes(dom);
  auto check_gauge = [&](const Expr& e, const char* name) {
    for (double t : ts) {
      const double v = e(t);
      if (!std::isfinite(v) || v < 0.0 || v >= 1.0) {
        field_error(name, std::string(name) + "(" + fmt(t) + ") = " + fmt(v) +
                              " is outside the codomain [0, 1)");
      }
    }
  };
  check_gauge(sc.alpha, "alpha");
  check_gauge(sc.beta, "beta");
  check_gauge(sc.gamma, "gamma");
  for (double t : ts) {
    const double v = sc.psi(t);
    if (!std::isfinite(v) || v < 0.0) {
      field_error("psi", "psi(" + fmt(t) + ") = " + fmt(v) + " is not a finite nonnegative value");
    }
    if (sc.phi && !std::isfinite((*sc.phi)(t))) {
      field_error("phi", "non-finite value at t=" + fmt(t));
    }
  }
  if (sc.ea_sequence) {
    const SequenceSpec& seq = *sc.ea_sequence;
    if (seq.n_to - seq.n_from + 1 < 10) {
      field_error("ea_sequence", "needs at least 10 terms");
    }
    for (long n = seq.n_from; n <= seq.n_to; ++n) {
      const double x = seq.term(static_cast<double>(n));
      if (!std::isfinite(x) || !dom.contains(x)) {
        field_error("ea_sequence.term", "x_" + std::to_string(n) + " = " + fmt(x) +
                                            " is not inside the domain " + dom.to_string());
      }
    }
  }
  auto finite_const = [](const std::optional<Expr>& e, const char* name) {
    if (e && !std::isfinite((*e)())) field_error(name, "not a finite constant");
  };
  finite_const(sc.expected.poc, "expected.poc");
  finite_const(sc.expected.cfp, "expected.cfp");
}

// --- JSON -------------------------------------------------------------------

const char* to_string(DeclaredFact f) noexcept {
  switch (f) {
    case DeclaredFact::range_containment: return "range_containment";
    case DeclaredFact::complete_range: return "complete_range";
    case DeclaredFact::closed_range: return "closed_range";
    case DeclaredFact::integrable_phi: return "integrable_phi";
  }
  return "unknown";
}

std::optional<DeclaredFact> declared_fact_from_string(std::string_view s) {
  for (auto f : {DeclaredFact::range_containment, DeclaredFact::complete_range,
                 DeclaredFact::closed_range, DeclaredFact::integrable_phi}) {
    if (s == to_string(f)) return f;
  }
  return std::nullopt;
}

json to_json(const Scenario& sc) {
  json j;
  j["schema_version"] = kScenarioSchemaVersion;
  j["name"] = sc.name;
  if (!sc.description.empty()) j["description"] = sc.description;
  j["domain"] = sc.domain.to_string();
  j["S"] = map_to_json(sc.s);
  j["T"] = map_to_json(sc.t);
  j["psi"] = sc.psi.to_string();
  j["alpha"] = sc.alpha.to_string();
  j["beta"] = sc.beta.to_string();
  j["gamma"] = sc.gamma.to_string();
  if (sc.phi) {
    j["phi"] = sc.phi->to_string();
    j["integral_middle_term"] = to_string(sc.integral_middle_term);
  }
  json facts = json::array();
  for (DeclaredFact f : sc.declared_facts) facts.push_back(to_string(f));
  j["declared_facts"] = facts;
  if (sc.ea_sequence) {
    j["ea_sequence"] = {{"term", sc.ea_sequence->term.to_string()},
                        {"n_from", sc.ea_sequence->n_from},
                        {"n_to", sc.ea_sequence->n_to}};
  }
  json expected = json::object();
  if (sc.expected.poc) expected["poc"] = sc.expected.poc->to_string();
  if (sc.expected.cfp) expected["cfp"] = sc.expected.cfp->to_string();
  if (sc.expected.cps) {
    json cps = json::array();
    for (const Expr& e : *sc.expected.cps) cps.push_back(e.to_string());
    expected["cps"] = cps;
  }
  if (!expected.empty()) j["expected"] = expected;
  return j;
}

Scenario scenario_from_json(const json& j) {
  if (!j.is_object()) throw ScenarioError("scenario must be a JSON object");
  reject_unknown(j, {"schema_version", "name", "description", "domain", "S", "T", "psi", "alpha",
                     "beta", "gamma", "phi", "integral_middle_term", "declared_facts",
                     "ea_sequence", "expected"},
                 "");
  const json& version = require(j, "schema_version");
  if (!version.is_number_integer() || version.get<int>() != kScenarioSchemaVersion) {
    field_error("schema_version", "expected " + std::to_string(kScenarioSchemaVersion));
  }
  Scenario sc;
  const json& name = require(j, "name");
  if (!name.is_string()) field_error("name", "expected a string");
  sc.name = name.get<std::string>();
  if (auto it = j.find("description"); it != j.end()) {
    if (!it->is_string()) field_error("description", "expected a string");
    sc.description = it->get<std::string>();
  }
  const json& dom = require(j, "domain");
  if (!dom.is_string()) field_error("domain", "expected an interval string like \"[0, 1]\"");
  try {
    sc.domain = IntervalSpec::parse(dom.get<std::string>());
  } catch (const ScenarioError& e) {
    field_error("domain", e.what());
  }
  sc.s = parse_map(require(j, "S"), "S");
  sc.t = parse_map(require(j, "T"), "T");
  sc.psi = parse_expr(require(j, "psi"), "psi", "t");
  sc.alpha = parse_expr(require(j, "alpha"), "alpha", "t");
  sc.beta = parse_expr(require(j, "beta"), "beta", "t");
  sc.gamma = parse_expr(require(j, "gamma"), "gamma", "t");
  if (auto it = j.find("phi"); it != j.end()) sc.phi = parse_expr(*it, "phi", "t");
  if (auto it = j.find("integral_middle_term"); it != j.end()) {
    const std::string v = it->is_string() ? it->get<std::string>() : "";
    if (v == "rewritten") {
      sc.integral_middle_term = MiddleTerm::rewritten;
    } else if (v == "literal") {
      sc.integral_middle_term = MiddleTerm::literal;
    } else {
      field_error("integral_middle_term", "expected \"rewritten\" or \"literal\"");
    }
  }
  if (auto it = j.find("declared_facts"); it != j.end()) {
    if (!it->is_array()) field_error("declared_facts", "expected an array of strings");
    for (const json& f : *it) {
      const auto fact = f.is_string() ? declared_fact_from_string(f.get<std::string>())
                                      : std::nullopt;
      if (!fact) field_error("declared_facts", "unknown fact " + f.dump());
      sc.declared_facts.insert(*fact);
    }
  }
  if (auto it = j.find("ea_sequence"); it != j.end()) {
    if (!it->is_object()) field_error("ea_sequence", "expected an object");
    reject_unknown(*it, {"term", "n_from", "n_to"}, "ea_sequence");
    SequenceSpec seq{parse_expr(require(*it, "term", "ea_sequence"), "ea_sequence.term", "n")};
    const json& from = require(*it, "n_from", "ea_sequence");
    const json& to = require(*it, "n_to", "ea_sequence");
    if (!from.is_number_integer() || !to.is_number_integer()) {
      field_error("ea_sequence", "n_from and n_to must be integers");
    }
    seq.n_from = from.get<long>();
    seq.n_to = to.get<long>();
    sc.ea_sequence = seq;
  }
  if (auto it = j.find("expected"); it != j.end()) {
    if (!it->is_object()) field_error("expected", "expected an object");
    reject_unknown(*it, {"poc", "cfp", "cps"}, "expected");
    if (auto p = it->find("poc"); p != it->end()) sc.expected.poc = parse_constant(*p, "expected.poc");
    if (auto p = it->find("cfp"); p != it->end()) sc.expected.cfp = parse_constant(*p, "expected.cfp");
    if (auto p = it->find("cps"); p != it->end()) {
      if (!p->is_array()) field_error("expected.cps", "expected an array");
      std::vector<Expr> cps;
      for (std::size_t i = 0; i < p->size(); ++i) {
        cps.push_back(parse_constant((*p)[i], "expected.cps[" + std::to_string(i) + "]"));
      }
      sc.expected.cps = std::move(cps);
    }
  }
  validate(sc);
  return sc;
}

Scenario parse_scenario(std::string_view text) {
  json j;
  try {
    j = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    std::size_t col = 1;
    const std::size_t upto = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < upto; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ScenarioError("parse error at line " + std::to_string(line) + ", column " +
                        std::to_string(col) + ": " + e.what());
  }
  return scenario_from_json(j);
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("cannot open scenario file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

std::string dump_scenario(const Scenario& scenario) { return to_json(scenario).dump(2) + "\n"; }

void save_scenario(const Scenario& scenario, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << dump_scenario(scenario);
  if (!out) throw Error("write failed for " + path.string());
}

}  // namespace jfp
