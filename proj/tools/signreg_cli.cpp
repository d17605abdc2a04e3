// signreg: command-line front end. Every command prints one JSON report.
// Exit codes: 0 true/success, 1 certified false, 2 undetermined, 3 usage.

#include "signreg/classify.hpp"
#include "signreg/expsum.hpp"
#include "signreg/genmat.hpp"
#include "signreg/io.hpp"
#include "signreg/report.hpp"
#include "signreg/witnesses.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <sstream>

using namespace signreg;
using nlohmann::json;

namespace {

enum Exit { kTrue = 0, kFalse = 1, kUndetermined = 2, kUsage = 3 };

struct Global {
  mpfr_prec_t bits = 128;
  mpfr_prec_t max_bits = 1024;
  std::string tol = "1e-10";
  std::uint64_t seed = 1;

  ReportSettings settings() const { return {bits, max_bits, parse_rational(tol), seed}; }
  Precision precision() const { return {bits, max_bits}; }
};

struct QueryArgs {
  int m = 0;
  int n = 0;
  std::string mode;
  std::string eps;
  bool all_signs = false;
  std::string entry_domain;

  void add_to(CLI::App* sub) {
    sub->add_option("m", m, "rows")->required();
    sub->add_option("n", n, "columns")->required();
    sub->add_option("mode", mode, "SR or SSR")->required();
    sub->add_option("eps,--eps", eps, "sign pattern such as +-+");
    sub->add_flag("--all-signs", all_signs, "quantify over every sign pattern");
    sub->add_option("--entry-domain", entry_domain, "restrict entries: nonneg, pos, real, ...");
  }

  Query build() const {
    if (all_signs == !eps.empty()) throw std::invalid_argument("give either a sign pattern or --all-signs");
    std::optional<Domain> dom;
    if (!entry_domain.empty()) dom = parse_domain(entry_domain);
    Query q = all_signs ? all_patterns_query(m, n, parse_mode(mode), dom)
                        : fixed_query(m, n, parse_mode(mode), SignPattern::parse(eps));
    if (dom) q.entry_domain = dom;
    q.validate();
    return q;
  }
};

std::vector<Rational> parse_list(const std::string& s) {
  std::vector<Rational> out;
  std::stringstream in(s);
  std::string tok;
  while (std::getline(in, tok, ','))
    if (!tok.empty()) out.push_back(parse_rational(tok));
  return out;
}

std::string verdict_name(Tri t) {
  switch (t) {
    case Tri::True: return "true";
    case Tri::False: return "false";
    case Tri::Undetermined: return "undetermined";
  }
  return "?";
}

int exit_of(Tri t) { return t == Tri::True ? kTrue : t == Tri::False ? kFalse : kUndetermined; }

json minors_json(const std::vector<MinorSign>& ms) {
  json a = json::array();
  for (const auto& m : ms) a.push_back(to_json(m));
  return a;
}

json params_json(const Params& p) {
  json j = json::object();
  if (p.t) j["t"] = to_string(*p.t);
  if (p.delta) j["delta"] = to_string(*p.delta);
  return j;
}

// ---------------------------------------------------------------------------

int cmd_check(const Global& g, const std::string& file, const std::string& mode_s, const std::string& eps_s,
              Report& r) {
  const QMatrix A = read_matrix_file(file);
  const Mode mode = parse_mode(mode_s);
  r.inputs = {{"matrix", matrix_to_json(A)}, {"mode", to_string(mode)}, {"eps", eps_s.empty() ? json(nullptr) : json(eps_s)}};
  const auto M = CertifiedMatrix::exact(A);
  PatternCheck pc;
  if (!eps_s.empty()) {
    const SignPattern eps = SignPattern::parse(eps_s);
    if (eps.size() != std::min(A.rows(), A.cols())) throw std::invalid_argument("sign pattern length must be min(m,n)");
    pc = mode == Mode::SR ? check_sr_with(M, eps, g.precision()) : check_ssr_with(M, eps, g.precision());
  } else {
    pc = mode == Mode::SR ? check_sr_any(M, g.precision()) : check_ssr_any(M, g.precision());
  }
  r.result["verdict"] = verdict_name(pc.verdict);
  r.result["pattern"] = pc.pattern ? json(pc.pattern->str()) : json(nullptr);
  r.result["witness"] = minors_json(pc.witness);
  r.result["ssr"] = mode == Mode::SSR && eps_s.empty() ? to_json(detect_ssr(A)) : json(nullptr);
  return exit_of(pc.verdict);
}

int cmd_classify(const QueryArgs& qa, Report& r) {
  const Query q = qa.build();
  r.inputs = {{"query", to_json(q)}};
  const PreserverFamily fam = classify(q);
  r.result["family"] = to_json(fam);
  r.result["exponents"] = fam.partial ? json(nullptr) : json(admissible_exponents(q).str());
  r.result["signum"] = q.mode == Mode::SR && !fam.partial ? json(signum_preserves(q.m, q.n, q.eps)) : json(nullptr);
  return fam.partial ? kUndetermined : kTrue;
}

int cmd_powers(const Global& g, const QueryArgs& qa, const std::string& grid_s, Report& r) {
  const Query q = qa.build();
  const auto grid = parse_list(grid_s);
  json gj = json::array();
  for (const auto& a : grid) gj.push_back(to_string(a));
  r.inputs = {{"query", to_json(q)}, {"grid", gj}};
  const ExponentSet adm = admissible_exponents(q);
  r.result["admissible"] = adm.str();
  json rows = json::array();
  int code = kTrue;
  for (const auto& a : grid) {
    json row{{"alpha", to_string(a)}, {"admissible", adm.contains(a)}, {"witness", nullptr}, {"note", nullptr}};
    if (!adm.contains(a)) {
      try {
        auto w = find_violation(a, q, {g.precision(), g.settings().tol, g.seed});
        row["witness"] = {{"family", w.family}, {"params", params_json(w.params)}, {"kind", w.kind}, {"claim", w.claim}};
      } catch (const NoWitness& e) {
        row["note"] = e.what();
      } catch (const SearchExhausted& e) {
        row["note"] = e.what();
        code = kUndetermined;
      }
    }
    rows.push_back(row);
  }
  r.result["grid"] = rows;
  return code;
}

struct WitnessArgs {
  QueryArgs query;
  std::string alpha;
  bool signum = false;
  std::string family;
  std::string t;
  std::string delta;
};

int cmd_witness(const Global& g, const WitnessArgs& wa, Report& r) {
  if (!wa.family.empty()) {
    const FamilyId id = parse_family(wa.family);
    Params p;
    if (!wa.t.empty()) p.t = parse_rational(wa.t);
    if (!wa.delta.empty()) p.delta = parse_rational(wa.delta);
    r.inputs = {{"family", to_string(id)}, {"params", params_json(p)}};
    auto c = certify_source(id, p);
    json comp = json::array();
    for (const auto& e : c.compatible) comp.push_back(e.str());
    r.result = {{"matrix", matrix_to_json(instantiate(id, p))},
                {"ok", c.ok},
                {"mode", to_string(c.mode)},
                {"compatible", comp},
                {"transcript", c.transcript}};
    return c.ok ? kTrue : kFalse;
  }
  const Query q = wa.query.build();
  if (wa.signum == !wa.alpha.empty()) throw std::invalid_argument("give either --alpha or --signum");
  r.inputs = {{"query", to_json(q)}, {"alpha", wa.signum ? json(nullptr) : json(wa.alpha)}, {"signum", wa.signum}};
  const SearchOptions opt{g.precision(), g.settings().tol, g.seed};
  try {
    auto w = wa.signum ? find_signum_violation(q, opt) : find_violation(parse_rational(wa.alpha), q, opt);
    r.result = {{"report", to_json(w)}, {"recheck", recheck(w)}, {"note", nullptr}};
    return kTrue;
  } catch (const NoWitness& e) {
    r.result = {{"report", nullptr}, {"recheck", nullptr}, {"note", e.what()}};
    return kFalse;
  } catch (const SearchExhausted& e) {
    r.result = {{"report", nullptr}, {"recheck", nullptr}, {"note", e.what()}};
    return kUndetermined;
  }
}

int cmd_expsum(const Global& g, const std::string& file, int taylor, const std::string& brackets, Report& r) {
  const QMatrix A = read_matrix_file(file);
  r.inputs = {{"matrix", matrix_to_json(A)}, {"taylor", taylor}, {"brackets", brackets.empty() ? json(nullptr) : json(brackets)}};
  const ExpSum S = from_hadamard_det(A);
  r.result["expsum"] = to_json(S);
  r.result["formula"] = S.str();
  r.result["descartes_bound"] = descartes_bound(S);
  json tc = json::array();
  for (const auto& c : taylor_at_zero(S, taylor, g.bits))
    tc.push_back({{"j", c.j},
                  {"exact", c.exact ? json(to_string(*c.exact)) : json(nullptr)},
                  {"enclosure", to_json(c.enclosure)},
                  {"recipe", c.recipe}});
  r.result["taylor"] = tc;
  json bj = nullptr;
  if (!brackets.empty()) {
    const auto ab = parse_list(brackets);
    if (ab.size() != 2 || !(ab[0] < ab[1])) throw std::invalid_argument("--brackets expects a,b with a < b");
    bj = json::array();
    for (const auto& b : bracket_roots(S, ab[0], ab[1], g.settings().tol, g.precision()))
      bj.push_back({{"lo", to_string(b.lo)},
                    {"hi", to_string(b.hi)},
                    {"sign_lo", to_string(b.sign_lo)},
                    {"sign_hi", to_string(b.sign_hi)}});
  }
  r.result["brackets"] = bj;
  return kTrue;
}

int cmd_gen(const Global& g, int m, int n, const std::string& target, const std::string& eps_s,
            const std::string& hint, Report& r) {
  r.inputs = {{"m", m}, {"n", n}, {"target", target}, {"eps", eps_s.empty() ? json(nullptr) : json(eps_s)},
              {"hint", hint.empty() ? json(nullptr) : json(hint)}};
  if (m < 1 || n < 1) throw std::invalid_argument("dimensions must be positive");
  QMatrix A;
  try {
    if (target == "tp") {
      A = random_tp(m, n, g.seed);
    } else if (target == "ssr" || target == "sr") {
      if (eps_s.empty()) throw std::invalid_argument("--eps is required for target " + target);
      GenOptions opt;
      opt.hint = hint;
      const SignPattern eps = SignPattern::parse(eps_s);
      A = target == "ssr" ? random_ssr(m, n, eps, g.seed, opt) : random_sr(m, n, eps, g.seed, opt);
    } else {
      throw std::invalid_argument("unknown target '" + target + "' (tp, ssr, sr)");
    }
  } catch (const GenerationFailure& e) {
    r.result = {{"matrix", nullptr}, {"note", e.what()}, {"orbit", e.orbit().str()}};
    return kUndetermined;
  }
  r.result = {{"matrix", matrix_to_json(A)}, {"ssr", to_json(detect_ssr(A))}};
  return kTrue;
}

// A bare token such as "++" or "-+-" is a sign pattern; CLI11 would read it
// as a terminator or an option. "--" keeps its usual meaning.
std::vector<std::string> normalize_args(int argc, char** argv) {
  std::vector<std::string> out;
  for (int i = argc - 1; i >= 1; --i) {
    std::string a = argv[i];
    const bool signs = !a.empty() && a != "--" && a.find_first_not_of("+-") == std::string::npos;
    if (signs && std::string(argv[i - 1]) != "--eps") a = "--eps=" + a;
    out.push_back(a);
  }
  return out;  // reversed, as CLI11 expects
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sign regularity: detection, preserver classification and certified counterexamples"};
  app.require_subcommand(1);
  Global g;
  app.add_option("--bits", g.bits, "starting interval precision in bits")->capture_default_str();
  app.add_option("--max-bits", g.max_bits, "precision ceiling before a sign is undetermined")->capture_default_str();
  app.add_option("--tol", g.tol, "root bracket width")->capture_default_str();
  app.add_option("--seed", g.seed, "seed for every random choice")->capture_default_str();

  std::string file, mode = "SSR", eps, grid = "-1,0,1/2,1,2,3", brackets, target = "ssr", hint;
  int taylor = 2, gm = 0, gn = 0;

  auto* check = app.add_subcommand("check", "SR/SSR test of a matrix file");
  check->add_option("file", file, "matrix as JSON or CSV")->required();
  check->add_option("--mode", mode, "SR or SSR")->capture_default_str();
  check->add_option("--eps", eps, "sign pattern; any pattern when omitted");

  QueryArgs cq;
  auto* classify_cmd = app.add_subcommand("classify", "entrywise preservers of a class");
  cq.add_to(classify_cmd);

  QueryArgs pq;
  auto* powers = app.add_subcommand("powers", "admissible exponents and witnesses on a grid");
  pq.add_to(powers);
  powers->add_option("--grid", grid, "comma-separated exponents")->capture_default_str();

  WitnessArgs wa;
  auto* witness = app.add_subcommand("witness", "certified counterexample for an exponent or the signum map");
  witness->add_option("m", wa.query.m, "rows");
  witness->add_option("n", wa.query.n, "columns");
  witness->add_option("mode", wa.query.mode, "SR or SSR");
  witness->add_option("eps,--eps", wa.query.eps, "sign pattern");
  witness->add_flag("--all-signs", wa.query.all_signs, "quantify over every sign pattern");
  witness->add_option("--entry-domain", wa.query.entry_domain, "restrict entries");
  witness->add_option("--alpha", wa.alpha, "exponent");
  witness->add_flag("--signum", wa.signum, "test x -> sgn(x) instead of a power");
  witness->add_option("--family", wa.family, "instantiate and certify a named family");
  witness->add_option("--t", wa.t, "family parameter t");
  witness->add_option("--delta", wa.delta, "family parameter delta");

  auto* expsum = app.add_subcommand("expsum", "det(A^alpha) as an exponential sum");
  expsum->add_option("file", file, "positive square matrix")->required();
  expsum->add_option("--taylor", taylor, "highest Taylor order at alpha = 0")->capture_default_str();
  expsum->add_option("--brackets", brackets, "a,b: bracket the real roots in [a,b]");

  auto* gen = app.add_subcommand("gen", "random matrix in a class");
  gen->add_option("m", gm, "rows")->required();
  gen->add_option("n", gn, "columns")->required();
  gen->add_option("--target", target, "tp, ssr or sr")->capture_default_str();
  gen->add_option("--eps", eps, "sign pattern");
  gen->add_option("--hint", hint, "sr construction: direct, pad, duplicate, curated");

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    auto args = normalize_args(argc, argv);
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  Report r;
  int code = kTrue;
  try {
    r.settings = g.settings();
    if (*check) {
      r.command = "check";
      code = cmd_check(g, file, mode, eps, r);
    } else if (*classify_cmd) {
      r.command = "classify";
      code = cmd_classify(cq, r);
    } else if (*powers) {
      r.command = "powers";
      code = cmd_powers(g, pq, grid, r);
    } else if (*witness) {
      r.command = "witness";
      code = cmd_witness(g, wa, r);
    } else if (*expsum) {
      r.command = "expsum";
      code = cmd_expsum(g, file, taylor, brackets, r);
    } else if (*gen) {
      r.command = "gen";
      code = cmd_gen(g, gm, gn, target, eps, hint, r);
    }
  } catch (const UndeterminedSign& e) {
    std::cerr << "signreg: " << e.what() << "\n";
    return kUndetermined;
  } catch (const std::exception& e) {
    std::cerr << "signreg: " << e.what() << "\n";
    return kUsage;
  }
  std::cout << dump(r);
  return code;
}
