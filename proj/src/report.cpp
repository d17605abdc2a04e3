#include "signreg/report.hpp"

#include "signreg/io.hpp"
#include "signreg/witnesses.hpp"

#include <array>
#include <stdexcept>

namespace signreg {

using nlohmann::json;

namespace {

json opt_rational(const std::optional<Rational>& q) { return q ? json(to_string(*q)) : json(nullptr); }

std::optional<Rational> opt_rational_from(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return rational_from_json(j.at(key));
}

const char* one_sided_name(OneSided::Kind k) {
  switch (k) {
    case OneSided::Kind::Power: return "power";
    case OneSided::Kind::Signum: return "signum";
    case OneSided::Kind::Constant: return "constant";
  }
  return "?";
}

OneSided::Kind parse_one_sided(const std::string& s) {
  if (s == "power") return OneSided::Kind::Power;
  if (s == "signum") return OneSided::Kind::Signum;
  if (s == "constant") return OneSided::Kind::Constant;
  throw std::invalid_argument("unknown one-sided kind '" + s + "'");
}

json to_json(const OneSided& s) {
  return {{"kind", one_sided_name(s.kind)}, {"c", to_string(s.c)}, {"alpha", to_json(s.alpha)}};
}

OneSided one_sided_from(const json& j) {
  OneSided s;
  s.kind = parse_one_sided(j.at("kind").get<std::string>());
  s.c = rational_from_json(j.at("c"));
  s.alpha = exponent_from_json(j.at("alpha"));
  return s;
}

const std::array<std::pair<FunctionSpec::Kind, const char*>, 4> kVariants{{
    {FunctionSpec::Kind::Power, "power"},
    {FunctionSpec::Kind::ScaledSignum, "signum"},
    {FunctionSpec::Kind::Constant, "constant"},
    {FunctionSpec::Kind::Piecewise, "piecewise"},
}};

const std::array<std::pair<Range, const char*>, 9> kRanges{{
    {Range::Any, "any"},
    {Range::Pos, "pos"},
    {Range::NonNeg, "nonneg"},
    {Range::Neg, "neg"},
    {Range::NonPos, "nonpos"},
    {Range::NonZero, "nonzero"},
    {Range::Zero, "zero"},
    {Range::Definite, "definite"},
    {Range::StrictDefinite, "strict_definite"},
}};

const std::array<std::pair<Clause::Kind, const char*>, 5> kClauses{{
    {Clause::Kind::AnyFunction, "any_function"},
    {Clause::Kind::Constant, "constant"},
    {Clause::Kind::ScaledSignum, "scaled_signum"},
    {Clause::Kind::ScaledPower, "scaled_power"},
    {Clause::Kind::PiecewiseTwoSided, "piecewise_two_sided"},
}};

json side_json(const SideClause& s) { return {{"c", range_keyword(s.c)}, {"alpha", s.alpha.str()}}; }

SideClause side_from(const json& j) {
  return {parse_range(j.at("c").get<std::string>()), ExponentSet::from_string(j.at("alpha").get<std::string>())};
}

// 20 significant digits, rounded away from the enclosed value
std::string mpfr_str(const mpfr_t& x, bool up) {
  char buf[64];
  mpfr_snprintf(buf, sizeof buf, up ? "%.19RUe" : "%.19RDe", x);
  return buf;
}

}  // namespace

json to_json(const Exponent& a) {
  if (a.is_exact()) return to_string(a.lo);
  return {{"lo", to_string(a.lo)}, {"hi", to_string(a.hi)}};
}

Exponent exponent_from_json(const json& j) {
  if (j.is_object()) return Exponent::enclosure(rational_from_json(j.at("lo")), rational_from_json(j.at("hi")));
  return Exponent(rational_from_json(j));
}

json to_json(const FunctionSpec& f) {
  json j;
  for (const auto& [k, name] : kVariants)
    if (k == f.kind) j["variant"] = name;
  j["c"] = to_string(f.c);
  j["alpha"] = to_json(f.alpha);
  j["neg"] = f.kind == FunctionSpec::Kind::Piecewise ? to_json(f.neg) : json(nullptr);
  j["pos"] = f.kind == FunctionSpec::Kind::Piecewise ? to_json(f.pos) : json(nullptr);
  j["at_zero"] = opt_rational(f.at_zero);
  j["domain"] = domain_keyword(f.domain);
  j["describe"] = f.describe();
  return j;
}

FunctionSpec function_from_json(const json& j) {
  const std::string v = j.at("variant").get<std::string>();
  const Domain d = parse_domain(j.at("domain").get<std::string>());
  if (v == "power") return FunctionSpec::power(rational_from_json(j.at("c")), exponent_from_json(j.at("alpha")), d);
  if (v == "signum") return FunctionSpec::signum(rational_from_json(j.at("c")), d);
  if (v == "constant") return FunctionSpec::constant(rational_from_json(j.at("c")), d);
  if (v == "piecewise")
    return FunctionSpec::piecewise(one_sided_from(j.at("neg")), one_sided_from(j.at("pos")),
                                   opt_rational_from(j, "at_zero"), d);
  throw std::invalid_argument("unknown function variant '" + v + "'");
}

std::string range_keyword(Range r) {
  for (const auto& [k, name] : kRanges)
    if (k == r) return name;
  return "?";
}

Range parse_range(const std::string& s) {
  for (const auto& [k, name] : kRanges)
    if (s == name) return k;
  throw std::invalid_argument("unknown range '" + s + "'");
}

json to_json(const Clause& c) {
  json j;
  j["kind"] = c.kind_name();
  j["constraints"] = c.constraints();
  switch (c.kind) {
    case Clause::Kind::AnyFunction:
      j["neg"] = range_keyword(c.neg);
      j["at_zero"] = range_keyword(c.at_zero);
      j["pos"] = range_keyword(c.pos);
      break;
    case Clause::Kind::Constant:
    case Clause::Kind::ScaledSignum: j["c"] = range_keyword(c.c); break;
    case Clause::Kind::ScaledPower:
      j["c"] = range_keyword(c.c);
      j["alpha"] = c.alpha.str();
      break;
    case Clause::Kind::PiecewiseTwoSided:
      j["neg_side"] = side_json(c.neg_side);
      j["pos_side"] = side_json(c.pos_side);
      j["at_zero"] = range_keyword(c.at_zero);
      break;
  }
  return j;
}

Clause clause_from_json(const json& j) {
  Clause c;
  const std::string kind = j.at("kind").get<std::string>();
  bool known = false;
  for (const auto& [k, name] : kClauses)
    if (kind == name) {
      c.kind = k;
      known = true;
    }
  if (!known) throw std::invalid_argument("unknown clause kind '" + kind + "'");
  auto range = [&](const char* key) { return parse_range(j.at(key).get<std::string>()); };
  switch (c.kind) {
    case Clause::Kind::AnyFunction:
      c.neg = range("neg");
      c.at_zero = range("at_zero");
      c.pos = range("pos");
      break;
    case Clause::Kind::Constant:
    case Clause::Kind::ScaledSignum: c.c = range("c"); break;
    case Clause::Kind::ScaledPower:
      c.c = range("c");
      c.alpha = ExponentSet::from_string(j.at("alpha").get<std::string>());
      break;
    case Clause::Kind::PiecewiseTwoSided:
      c.neg_side = side_from(j.at("neg_side"));
      c.pos_side = side_from(j.at("pos_side"));
      c.at_zero = range("at_zero");
      break;
  }
  return c;
}

json to_json(const PreserverFamily& fam) {
  json j;
  j["mode"] = to_string(fam.mode);
  j["all_patterns"] = fam.all_patterns;
  j["eps"] = fam.eps ? json(fam.eps->str()) : json(nullptr);
  j["m"] = fam.m;
  j["n"] = fam.n;
  j["domain"] = domain_keyword(fam.domain);
  json cs = json::array();
  for (const auto& c : fam.clauses) cs.push_back(to_json(c));
  j["clauses"] = cs;
  j["partial"] = fam.partial ? json(*fam.partial) : json(nullptr);
  j["table"] = fam.table;
  return j;
}

PreserverFamily family_from_json(const json& j) {
  PreserverFamily fam;
  fam.mode = parse_mode(j.at("mode").get<std::string>());
  fam.all_patterns = j.at("all_patterns").get<bool>();
  if (!j.at("eps").is_null()) fam.eps = SignPattern::parse(j.at("eps").get<std::string>());
  fam.m = j.at("m").get<int>();
  fam.n = j.at("n").get<int>();
  fam.domain = parse_domain(j.at("domain").get<std::string>());
  for (const auto& c : j.at("clauses")) fam.clauses.push_back(clause_from_json(c));
  if (!j.at("partial").is_null()) fam.partial = j.at("partial").get<std::string>();
  fam.table = j.value("table", "");
  return fam;
}

json to_json(const Query& q) {
  return {{"m", q.m},
          {"n", q.n},
          {"mode", to_string(q.mode)},
          {"all_patterns", q.all_patterns},
          {"eps", q.eps ? json(q.eps->str()) : json(nullptr)},
          {"domain", domain_keyword(q.domain())}};
}

Query query_from_json(const json& j) {
  Query q;
  q.m = j.at("m").get<int>();
  q.n = j.at("n").get<int>();
  q.mode = parse_mode(j.at("mode").get<std::string>());
  q.all_patterns = j.at("all_patterns").get<bool>();
  if (!j.at("eps").is_null()) q.eps = SignPattern::parse(j.at("eps").get<std::string>());
  if (j.contains("domain") && !j.at("domain").is_null()) q.entry_domain = parse_domain(j.at("domain").get<std::string>());
  q.validate();
  return q;
}

json to_json(const ExpSum& s) {
  json terms = json::array();
  for (const auto& t : s.terms()) terms.push_back({{"c", to_string(t.c)}, {"base", to_string(t.base)}});
  return {{"terms", terms}};
}

ExpSum expsum_from_json(const json& j) {
  std::vector<ExpTerm> terms;
  for (const auto& t : j.at("terms")) terms.push_back({rational_from_json(t.at("c")), rational_from_json(t.at("base"))});
  return ExpSum(std::move(terms));
}

json to_json(const SsrReport& r) {
  json j;
  j["is_ssr"] = r.is_ssr;
  j["pattern"] = r.pattern ? json(r.pattern->str()) : json(nullptr);
  j["violating_minor"] = r.violating_minor ? to_json(*r.violating_minor) : json(nullptr);
  return j;
}

json to_json(const Interval& x) { return {{"lo", mpfr_str(x.lower(), false)}, {"hi", mpfr_str(x.upper(), true)}}; }

std::string version() { return "0.1.0"; }

json to_json(const Report& r) {
  json s;
  s["bits"] = r.settings.bits;
  s["max_bits"] = r.settings.max_bits;
  s["tol"] = to_string(r.settings.tol);
  s["seed"] = r.settings.seed;
  return {{"command", r.command},
          {"inputs", r.inputs},
          {"result", r.result},
          {"version", r.version},
          {"settings", s}};
}

Report report_from_json(const json& j) {
  Report r;
  r.command = j.at("command").get<std::string>();
  r.inputs = j.at("inputs");
  r.result = j.at("result");
  r.version = j.at("version").get<std::string>();
  const json& s = j.at("settings");
  r.settings.bits = s.at("bits").get<mpfr_prec_t>();
  r.settings.max_bits = s.at("max_bits").get<mpfr_prec_t>();
  r.settings.tol = rational_from_json(s.at("tol"));
  r.settings.seed = s.at("seed").get<std::uint64_t>();
  return r;
}

std::string dump(const Report& r) { return to_json(r).dump(2) + "\n"; }

}  // namespace signreg
