#include "signreg/witnesses.hpp"

#include "signreg/genmat.hpp"
#include "signreg/io.hpp"
#include "signreg/report.hpp"

#include <algorithm>
#include <sstream>

namespace signreg {

namespace {

Rational q(long a, long b = 1) {
  Rational r(a, b);
  r.canonicalize();
  return r;
}

QMatrix rows_of(std::initializer_list<std::initializer_list<Rational>> rs) {
  std::vector<std::vector<Rational>> v;
  for (const auto& r : rs) v.emplace_back(r);
  return make_matrix(v);
}

QMatrix zeros(int m, int n) { return QMatrix::Constant(m, n, Rational(0)); }

const char* const kNames[] = {"SINGULAR_3x3",   "A1_T",          "A2_T",           "A3_T",
                              "A4_T",           "SIGNUM_3x3",    "SIGNUM_3x4",     "ALLSIGN_SR_4x4",
                              "ALLSIGN_SR_AT",  "ALLSIGN_SSR_A1T", "ALLSIGN_SSR_A2TD", "ALLSIGN_SSR_A3TD"};

std::string fmt_index(const Index& idx) {
  std::string s = "{";
  for (std::size_t i = 0; i < idx.size(); ++i) s += (i ? "," : "") + std::to_string(idx[i] + 1);
  return s + "}";
}

std::string minor_name(const MinorSign& m) {
  return "det[" + fmt_index(m.rows) + "x" + fmt_index(m.cols) + "]";
}

std::string sign_char(const SignVerdict& v) {
  switch (v.sign) {
    case Sign::Positive: return "+";
    case Sign::Negative: return "-";
    case Sign::Zero: return "0";
    case Sign::Undetermined: return "?";
  }
  return "?";
}

std::string minor_line(const MinorSign& m) {
  std::string s = minor_name(m) + " " + sign_char(m.verdict);
  if (m.exact) s += " = " + to_string(*m.exact);
  else if (m.enclosure) s += " in " + m.enclosure->to_string(20);
  if (m.structural) s += " (structural)";
  return s;
}

// Where alpha sits relative to the breakpoints 0 and 1.
enum class Side { Neg, Zero, Mid, One, Above };

Side side_of(const Exponent& a) {
  if (a.hi < 0) return Side::Neg;
  if (a.is_exact() && a.lo == 0) return Side::Zero;
  if (a.lo > 0 && a.hi < 1) return Side::Mid;
  if (a.is_exact() && a.lo == 1) return Side::One;
  if (a.lo > 1) return Side::Above;
  throw std::invalid_argument("exponent enclosure " + a.str() + " straddles 0 or 1");
}

std::string kind_of_check(const PatternCheck& c) {
  for (const auto& m : c.witness)
    if (m.verdict.sign == Sign::Zero) return "singular_image";
  return c.witness.size() == 2 ? "opposite_signs" : "wrong_sign";
}

std::string claim_of_check(const PatternCheck& c, const std::optional<SignPattern>& eps) {
  if (c.witness.size() == 2)
    return minor_name(c.witness[0]) + " and " + minor_name(c.witness[1]) +
           " of the image have opposite signs";
  const auto& m = c.witness.at(0);
  if (m.verdict.sign == Sign::Zero) return minor_name(m) + " of the image vanishes";
  std::string s = minor_name(m) + " of the image is " + (m.verdict.value() > 0 ? "positive" : "negative");
  if (eps) s += " against eps_" + std::to_string(m.k) + " = " + ((*eps)(m.k) > 0 ? "+1" : "-1");
  return s;
}

SignPattern pick_pattern(const QMatrix& A, Mode mode) {
  if (mode == Mode::SSR) {
    auto rep = detect_ssr(A);
    if (!rep.is_ssr) throw std::logic_error("witness source is not SSR");
    return *rep.pattern;
  }
  const int d = static_cast<int>(std::min(A.rows(), A.cols()));
  if (is_sr_with(A, SignPattern::all_plus(d))) return SignPattern::all_plus(d);
  auto ps = compatible_patterns(A, 1);
  if (ps.empty()) throw std::logic_error("witness source is not SR");
  return ps.front();
}

QMatrix transport(const QMatrix& A, bool reverse, bool negate) {
  QMatrix R = reverse ? QMatrix(A * exchange_matrix(static_cast<int>(A.cols()))) : A;
  if (negate) R = -R;
  return R;
}

// 3x4 top of a 4x4 with zero last row, transposed when tall, then padded.
QMatrix shape_all_sr(const QMatrix& W, int m, int n) {
  if (m == n) return pad_with_zeros(W, m, n);
  QMatrix T = W.topRows(3);
  if (m > n) T = QMatrix(T.transpose());
  return pad_with_zeros(T, m, n);
}

}  // namespace

// ---------------------------------------------------------------------------
// Families

std::string to_string(FamilyId id) { return kNames[static_cast<int>(id)]; }

FamilyId parse_family(const std::string& s) {
  for (auto id : all_families())
    if (to_string(id) == s) return id;
  throw std::invalid_argument("unknown family: " + s);
}

std::vector<FamilyId> all_families() {
  std::vector<FamilyId> v;
  for (int i = 0; i <= static_cast<int>(FamilyId::ALLSIGN_SSR_A3TD); ++i) v.push_back(static_cast<FamilyId>(i));
  return v;
}

std::string Params::str() const {
  std::string s;
  if (t) s += "t=" + to_string(*t);
  if (delta) s += std::string(s.empty() ? "" : ",") + "delta=" + to_string(*delta);
  return s;
}

FamilyInfo family_info(FamilyId id) {
  auto P = [](const char* s) { return SignPattern::parse(s); };
  switch (id) {
    case FamilyId::SINGULAR_3x3: return {id, Mode::SR, {P("+++"), P("++-")}, false, false, "fixed"};
    case FamilyId::A1_T: return {id, Mode::SR, {P("++++")}, true, false, "t >= 0"};
    case FamilyId::A2_T: return {id, Mode::SR, {P("+++-")}, true, false, "t >= 0"};
    case FamilyId::A3_T: return {id, Mode::SR, {P("++-+")}, true, false, "t >= 0"};
    case FamilyId::A4_T: return {id, Mode::SR, {P("++--")}, true, false, "0 <= t <= 1"};
    case FamilyId::SIGNUM_3x3: return {id, Mode::SR, {P("+++")}, false, false, "fixed"};
    case FamilyId::SIGNUM_3x4: return {id, Mode::SR, {P("+++")}, false, false, "fixed"};
    case FamilyId::ALLSIGN_SR_4x4: return {id, Mode::SR, {P("++++"), P("+++-")}, false, false, "fixed"};
    case FamilyId::ALLSIGN_SR_AT: return {id, Mode::SR, {P("++-+"), P("++--")}, true, false, "0 <= t < 1"};
    case FamilyId::ALLSIGN_SSR_A1T: return {id, Mode::SSR, {P("+++")}, true, false, "t >= 0 (SSR for t > 0)"};
    case FamilyId::ALLSIGN_SSR_A2TD:
      return {id, Mode::SSR, {P("+++")}, true, true, "t, delta >= 0 (SSR when both > 0)"};
    case FamilyId::ALLSIGN_SSR_A3TD:
      return {id, Mode::SSR, {P("++-")}, true, true,
              "0 <= delta <= 1, 0 <= t < (2-delta)/(2 delta) (SSR when t, delta > 0)"};
  }
  throw std::invalid_argument("unknown family");
}

AffineFamily affine_form(FamilyId id, const std::optional<Rational>& delta) {
  const Rational o = 1, z = 0;
  QMatrix J4 = QMatrix::Constant(4, 4, o), J3 = QMatrix::Constant(3, 3, o);
  switch (id) {
    case FamilyId::SINGULAR_3x3: return {rows_of({{3, 1, 2}, {1, 1, 4}, {1, 2, 9}}), zeros(3, 3)};
    case FamilyId::A1_T: return {J4, rows_of({{0, 0, 0, 0}, {0, 2, 3, 4}, {0, 4, 6, 8}, {0, 5, 8, 11}})};
    case FamilyId::A2_T: return {J4, rows_of({{0, 0, 0, 0}, {0, 3, 5, 7}, {0, 9, 17, 27}, {0, 11, 23, q(119, 3)}})};
    case FamilyId::A3_T:
      return {J4, rows_of({{0, 0, 0, 0}, {0, 2, 3, 4}, {0, 3, q(9, 2), 6}, {0, 5, q(15, 2), 10}})};
    case FamilyId::A4_T:
      return {J4, rows_of({{0, 0, 0, 0}, {0, 2, 3, 4}, {0, 4, q(17, 3), q(22, 3)}, {0, 5, 7, 9}})};
    case FamilyId::SIGNUM_3x3: return {rows_of({{3, 1, 0}, {1, 1, 1}, {0, 2, 4}}), zeros(3, 3)};
    case FamilyId::SIGNUM_3x4: return {rows_of({{6, 1, 0, 0}, {1, 1, 1, 0}, {0, 4, 5, 1}}), zeros(3, 4)};
    case FamilyId::ALLSIGN_SR_4x4:
      return {rows_of({{3, 1, 2, 1}, {1, 1, 4, 3}, {1, 2, 9, 8}, {0, 0, 0, 0}}), zeros(4, 4)};
    case FamilyId::ALLSIGN_SR_AT:
      return {rows_of({{1, 1, 1, 1}, {1, 1, 1, 1}, {1, 1, 1, 1}, {0, 0, 0, 0}}),
              rows_of({{0, 0, 0, 0}, {q(-1, 5), 0, 2, 3}, {q(-1, 2), 0, 5, 7}, {0, 0, 0, 0}})};
    case FamilyId::ALLSIGN_SSR_A1T: return {J3, rows_of({{0, 0, 0}, {0, 1, 2}, {0, 3, 7}})};
    case FamilyId::ALLSIGN_SSR_A2TD: {
      if (!delta) throw std::invalid_argument("ALLSIGN_SSR_A2TD needs delta");
      return {J3, rows_of({{0, 0, 0}, {0, q(1, 3), q(2, 3)}, {z, o, 2 + *delta}})};
    }
    case FamilyId::ALLSIGN_SSR_A3TD: {
      if (!delta) throw std::invalid_argument("ALLSIGN_SSR_A3TD needs delta");
      return {J3, rows_of({{0, 0, 0}, {0, 2, 3}, {z, 6, 9 - *delta}})};
    }
  }
  throw std::invalid_argument("unknown family");
}

QMatrix instantiate(FamilyId id, const Params& p) {
  const auto info = family_info(id);
  const std::string name = to_string(id);
  if (info.has_t != p.t.has_value())
    throw std::invalid_argument(name + (info.has_t ? " needs t" : " takes no t"));
  if (info.has_delta != p.delta.has_value())
    throw std::invalid_argument(name + (info.has_delta ? " needs delta" : " takes no delta"));
  auto out = [&](const std::string& why) {
    return std::invalid_argument(name + ": " + p.str() + " outside " + info.range + " (" + why + ")");
  };
  if (p.t && *p.t < 0) throw out("t < 0");
  switch (id) {
    case FamilyId::A4_T:
      if (*p.t > 1) throw out("t > 1");
      break;
    case FamilyId::ALLSIGN_SR_AT:
      if (*p.t >= 1) throw out("t >= 1");
      break;
    case FamilyId::ALLSIGN_SSR_A2TD:
      if (*p.delta < 0) throw out("delta < 0");
      break;
    case FamilyId::ALLSIGN_SSR_A3TD:
      if (*p.delta < 0 || *p.delta > 1) throw out("delta not in [0,1]");
      if (*p.delta > 0 && 2 * *p.delta * *p.t >= 2 - *p.delta) throw out("t >= (2-delta)/(2 delta)");
      break;
    default: break;
  }
  auto f = affine_form(id, p.delta);
  if (!p.t) return f.A0;
  return QMatrix(f.A0 + *p.t * f.A1);
}

SourceCertificate certify_source(FamilyId id, const Params& p) {
  const auto info = family_info(id);
  const QMatrix A = instantiate(id, p);
  SourceCertificate c;
  c.mode = info.mode;
  c.ok = true;
  auto note = [&](bool good, const std::string& s) {
    c.transcript.push_back(std::string(good ? "ok   " : "FAIL ") + s);
    c.ok = c.ok && good;
  };
  const int d = static_cast<int>(std::min(A.rows(), A.cols()));
  const bool positive_t = p.t && *p.t > 0;
  const bool positive_delta = !p.delta || *p.delta > 0;

  auto count = [&](int k, auto pred) {
    int good = 0, total = 0;
    for (const auto& e : all_minors(A, k)) {
      ++total;
      if (pred(e.value)) ++good;
    }
    return std::pair{good, total};
  };
  auto report_level = [&](int k, const std::string& what, auto pred) {
    auto [g, t] = count(k, pred);
    note(g == t, std::to_string(k) + "x" + std::to_string(k) + " minors " + what + ": " + std::to_string(g) +
                     " of " + std::to_string(t));
  };
  auto det_is = [&](const Index& r, const Index& cols, const Rational& want, const std::string& label) {
    Rational v = minor(A, r, cols);
    note(v == want, label + " = " + to_string(v) + " (expected " + to_string(want) + ")");
  };
  const Index r3{0, 1, 2}, r4{0, 1, 2, 3};
  auto pos = [](const Rational& v) { return v > 0; };
  auto nonneg = [](const Rational& v) { return v >= 0; };
  auto nonpos = [](const Rational& v) { return v <= 0; };
  auto zero = [](const Rational& v) { return v == 0; };

  switch (id) {
    case FamilyId::SINGULAR_3x3: det_is(r3, r3, 0, "det"); break;
    case FamilyId::A1_T:
    case FamilyId::A2_T:
    case FamilyId::A3_T:
    case FamilyId::A4_T:
      det_is(r4, r4, 0, "det");
      if (positive_t && !(id == FamilyId::A4_T && *p.t == 1)) report_level(2, "> 0", pos);
      if (id == FamilyId::A3_T) report_level(3, "= 0", zero);
      else if (id == FamilyId::A4_T) report_level(3, "<= 0", nonpos);
      else report_level(3, ">= 0", nonneg);
      break;
    case FamilyId::SIGNUM_3x3: det_is(r3, r3, 2, "det"); break;
    case FamilyId::SIGNUM_3x4:
      for (int k = 1; k <= 3; ++k) report_level(k, ">= 0", nonneg);
      break;
    case FamilyId::ALLSIGN_SR_4x4:
      det_is(r3, {0, 1, 2}, 0, "det of columns 1-3");
      det_is(r3, {1, 2, 3}, 2, "det of columns 2-4");
      break;
    case FamilyId::ALLSIGN_SR_AT:
      det_is(r4, r4, 0, "det");
      report_level(3, "<= 0", nonpos);
      break;
    case FamilyId::ALLSIGN_SSR_A1T: det_is(r3, r3, *p.t * *p.t, "det"); break;
    case FamilyId::ALLSIGN_SSR_A2TD: det_is(r3, r3, *p.delta * *p.t * *p.t / 3, "det"); break;
    case FamilyId::ALLSIGN_SSR_A3TD: det_is(r3, r3, -2 * *p.delta * *p.t * *p.t, "det"); break;
  }

  if (info.mode == Mode::SR) {
    c.compatible = compatible_patterns(A);
  } else {
    auto rep = detect_ssr(A);
    if (rep.is_ssr) c.compatible = {*rep.pattern};
  }
  const bool strict_ok = info.mode == Mode::SR || (positive_t && positive_delta);
  for (const auto& e : info.documented) {
    if (static_cast<int>(e.size()) != d) continue;
    bool has = std::find(c.compatible.begin(), c.compatible.end(), e) != c.compatible.end();
    const std::string what = std::string(info.mode == Mode::SR ? "SR" : "SSR") + "(" + e.str() + ")";
    if (strict_ok) note(has, what);
    else c.transcript.push_back("skip " + what + " (degenerate parameters)");
  }
  return c;
}

// ---------------------------------------------------------------------------
// Searches

namespace {

WitnessReport base_report(const Exponent& alpha, const Query& q, const SearchOptions& opt) {
  WitnessReport r;
  r.query = q;
  r.alpha = alpha;
  r.function = power_map(q, alpha);
  r.precision = opt.precision;
  return r;
}

void fill_from_check(WitnessReport& r, const PatternCheck& c, const std::optional<SignPattern>& eps) {
  r.kind = kind_of_check(c);
  r.claim = claim_of_check(c, eps);
  r.minors = c.witness;
  for (const auto& m : c.witness) r.transcript.push_back(minor_line(m));
}

bool undefined_image(const FunctionSpec& f, const QMatrix& A) {
  try {
    apply_entrywise(f, A);
    return false;
  } catch (const std::domain_error&) {
    return true;
  }
}

WitnessReport zero_matrix_report(WitnessReport r) {
  const Query& q = r.query;
  r.family = "ZERO_MATRIX";
  r.source = zeros(q.m, q.n);
  r.source_pattern = q.eps ? *q.eps : SignPattern::all_plus(q.d());
  if (!undefined_image(r.function, r.source)) throw std::logic_error("power of zero unexpectedly defined");
  r.kind = "undefined_image";
  r.claim = "0^alpha is undefined for alpha = " + r.alpha.str() + " < 0, so the zero matrix has no image";
  r.transcript.push_back("source: zero " + std::to_string(q.m) + "x" + std::to_string(q.n) + " matrix, SR with every pattern");
  return r;
}

struct SrPlan {
  FamilyId family;
  bool reverse = false;
  bool negate = false;
};

// Family and orbit moves for a fixed pattern; the source has the pattern
// obtained after undoing negation then column reversal.
SrPlan plan_fixed(const SignPattern& eps, Side side) {
  SrPlan p{FamilyId::SINGULAR_3x3};
  SignPattern e = eps;
  if (e(1) < 0) {
    p.negate = true;
    e = negation_map(e);
  }
  if (e.size() >= 2 && e(2) < 0) {
    p.reverse = true;
    e = exchange_map(e);
  }
  const int d = e.size();
  if (d < 3) throw std::logic_error("fixed plan needs d >= 3");
  const bool same = e(3) > 0;
  if (d == 3) return p;
  if (same && side == Side::Above) p.family = e(4) > 0 ? FamilyId::A1_T : FamilyId::A2_T;
  else if (!same && side == Side::Mid) p.family = e(4) > 0 ? FamilyId::A3_T : FamilyId::A4_T;
  return p;
}

QMatrix plan_matrix(const SrPlan& p, const std::optional<Rational>& t, int m, int n) {
  Params prm;
  if (family_info(p.family).has_t) prm.t = t;
  QMatrix B = instantiate(p.family, prm);
  return transport(pad_with_zeros(B, m, n), p.reverse, p.negate);
}

struct SrHit {
  QMatrix source;
  Params params;
  PatternCheck check;
  std::vector<std::string> transcript;
};

// Halves t from 1 until the image fails SR(eps) with a certified minor.
SrHit search_fixed_sr(const SrPlan& plan, const Query& q, const FunctionSpec& f, const Precision& prec) {
  const bool has_t = family_info(plan.family).has_t;
  Rational t = 1;
  SrHit hit;
  for (int step = 0; step < 60; ++step) {
    QMatrix A = plan_matrix(plan, t, q.m, q.n);
    auto M = apply_entrywise(f, A);
    auto c = check_sr_with(M, *q.eps, prec);
    std::string at = has_t ? "t=" + to_string(t) : "fixed matrix";
    hit.transcript.push_back(at + ": image SR(" + q.eps->str() + ") " + to_string(c.verdict));
    if (c.verdict == Tri::False) {
      hit.source = A;
      if (has_t) hit.params.t = t;
      hit.check = std::move(c);
      return hit;
    }
    if (!has_t) break;
    t /= 2;
  }
  throw SearchExhausted("no certified violation for " + to_string(plan.family) + " within the t budget");
}

WitnessReport fixed_witness(const Exponent& alpha, const Query& q, Side side, const SearchOptions& opt) {
  WitnessReport r = base_report(alpha, q, opt);
  const SignPattern& eps = *q.eps;
  const int d = q.d();
  if (side == Side::Neg && q.mode == Mode::SR) return zero_matrix_report(std::move(r));
  if (q.mode == Mode::SSR && (side == Side::Neg || side == Side::Zero)) {
    r.family = "SSR_SAMPLE";
    for (std::uint64_t s = 0; s < 16; ++s) {
      QMatrix A = random_ssr(q.m, q.n, eps, opt.seed + s);
      auto M = apply_entrywise(r.function, A);
      auto c = check_ssr_with(M, eps, opt.precision);
      r.transcript.push_back("sample " + std::to_string(s) + ": image SSR(" + eps.str() + ") " + to_string(c.verdict));
      if (c.verdict == Tri::False) {
        r.source = A;
        r.source_pattern = eps;
        fill_from_check(r, c, eps);
        return r;
      }
    }
    throw SearchExhausted("no sampled SSR matrix gave a certified violation");
  }
  if (d < 3) throw std::logic_error("no witness plan for " + q.str());
  SrPlan plan = plan_fixed(eps, side);
  if (plan.negate) r.transcript.push_back("source negated: eps1 = -1");
  if (plan.reverse) r.transcript.push_back("columns reversed: eps2 = -1");
  // the SR stage may contain zeros, so it runs on the closed half-line
  const FunctionSpec f_sr = power_map(fixed_query(q.m, q.n, Mode::SR, eps), alpha);
  SrHit hit = search_fixed_sr(plan, q, f_sr, opt.precision);
  const std::string fam = to_string(plan.family);
  r.transcript.insert(r.transcript.end(), hit.transcript.begin(), hit.transcript.end());
  if (q.mode == Mode::SR) {
    r.family = fam;
    r.params = hit.params;
    r.source = hit.source;
    r.source_pattern = eps;
    fill_from_check(r, hit.check, eps);
    return r;
  }
  Rational qk(1, 16);
  for (int step = 0; step < 8; ++step, qk /= 16) {
    auto A = perturb_to_ssr(hit.source, eps, qk);
    if (!A) {
      r.transcript.push_back("q=" + to_string(qk) + ": smoothing failed");
      continue;
    }
    auto M = apply_entrywise(r.function, *A);
    auto c = check_ssr_with(M, eps, opt.precision);
    r.transcript.push_back("q=" + to_string(qk) + ": image SSR(" + eps.str() + ") " + to_string(c.verdict));
    if (c.verdict == Tri::False) {
      r.family = "SSR_NEAR:" + fam;
      r.params = hit.params;
      r.source = *A;
      r.source_pattern = eps;
      fill_from_check(r, c, eps);
      return r;
    }
  }
  throw SearchExhausted("no SSR perturbation of the SR witness kept the violation");
}

WitnessReport all_sr_witness(const Exponent& alpha, const Query& q, Side side, const SearchOptions& opt) {
  WitnessReport r = base_report(alpha, q, opt);
  if (side == Side::Neg) return zero_matrix_report(std::move(r));
  if (q.d() < 3 || side == Side::Zero || side == Side::One) throw std::logic_error("no witness plan for " + q.str());
  auto finish = [&](const QMatrix& A, const PatternCheck& c) {
    r.source = A;
    r.source_pattern = pick_pattern(A, Mode::SR);
    fill_from_check(r, c, std::nullopt);
    return r;
  };
  if (side == Side::Mid) {
    r.family = to_string(FamilyId::ALLSIGN_SR_4x4);
    QMatrix A = shape_all_sr(instantiate(FamilyId::ALLSIGN_SR_4x4), q.m, q.n);
    auto c = check_sr_any(apply_entrywise(r.function, A), opt.precision);
    r.transcript.push_back("fixed matrix: image SR " + to_string(c.verdict));
    if (c.verdict != Tri::False) throw SearchExhausted("ALLSIGN_SR_4x4 image not certified non-SR");
    return finish(A, c);
  }
  r.family = to_string(FamilyId::ALLSIGN_SR_AT);
  Rational t(1, 2);
  for (int step = 0; step < 60; ++step, t /= 2) {
    Params p;
    p.t = t;
    QMatrix A = shape_all_sr(instantiate(FamilyId::ALLSIGN_SR_AT, p), q.m, q.n);
    auto c = check_sr_any(apply_entrywise(r.function, A), opt.precision);
    r.transcript.push_back("t=" + to_string(t) + ": image SR " + to_string(c.verdict));
    if (c.verdict == Tri::False) {
      r.params = p;
      return finish(A, c);
    }
  }
  throw SearchExhausted("no certified violation for ALLSIGN_SR_AT within the t budget");
}

// ---- all-pattern SSR: sign change of det f[A(t)] on a certified SSR path

struct BlockPath {
  FamilyId id;
  std::optional<Rational> delta;
  AffineFamily form;
  QMatrix frame;  // bordered matrix; its top-left 3x3 block is replaced by A(t)

  QMatrix at(const Rational& t) const {
    QMatrix B = frame;
    B.topLeftCorner(3, 3) = form.A0 + t * form.A1;
    return B;
  }
};

int block_sign(const FunctionSpec& f, const QMatrix& A, const Precision& prec, MinorSign* out = nullptr) {
  auto M = apply_entrywise(f, A.topLeftCorner(3, 3));
  MinorSigner s(M, prec);
  MinorSign m = s.sign({0, 1, 2}, {0, 1, 2});
  if (out) *out = m;
  if (!m.verdict.determined()) return 2;
  return m.verdict.value();
}

int family_sign(const FunctionSpec& f, FamilyId id, const Rational& t, const std::optional<Rational>& delta,
                const Precision& prec) {
  Params p;
  p.t = t;
  p.delta = delta;
  return block_sign(f, instantiate(id, p), prec);
}

// SSR of A(t) for every t in [lo, hi], through interval entries.
PatternCheck path_ssr(const BlockPath& path, const Rational& lo, const Rational& hi, const SignPattern& eps,
                      const Precision& prec) {
  const QMatrix Alo = path.at(lo), Ahi = path.at(hi);
  const int m = static_cast<int>(Alo.rows()), n = static_cast<int>(Alo.cols());
  std::vector<std::optional<Rational>> exact(static_cast<std::size_t>(m * n));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j)
      if (Alo(i, j) == Ahi(i, j)) exact[static_cast<std::size_t>(i * n + j)] = Alo(i, j);
  CertifiedMatrix M(
      m, n,
      [Alo, Ahi](int i, int j, mpfr_prec_t bits) {
        const Rational& a = Alo(i, j);
        const Rational& b = Ahi(i, j);
        return a <= b ? Interval(a, b, bits) : Interval(b, a, bits);
      },
      exact);
  return check_ssr_with(M, eps, prec);
}

WitnessReport all_ssr_witness(const Exponent& alpha, const Query& q, Side side, const SearchOptions& opt) {
  WitnessReport r = base_report(alpha, q, opt);
  const int d = q.d();
  const FunctionSpec& f = r.function;
  if (side == Side::Zero) {
    r.family = "SSR_SAMPLE";
    QMatrix A = random_tp(q.m, q.n, opt.seed);
    auto c = check_ssr_any(apply_entrywise(f, A), opt.precision);
    if (c.verdict != Tri::False) throw SearchExhausted("constant image not certified singular");
    r.source = A;
    r.source_pattern = pick_pattern(A, Mode::SSR);
    r.transcript.push_back("totally positive sample; x^0 = 1 gives an all-ones image");
    fill_from_check(r, c, std::nullopt);
    return r;
  }
  if (d < 3 || side == Side::One) throw std::logic_error("no witness plan for " + q.str());
  const Precision& prec = opt.precision;

  FamilyId id;
  std::optional<Rational> delta;
  Rational lo, hi;  // bracket with sign(F(lo)) != sign(F(hi)), both nonzero
  auto need = [&](bool ok, const std::string& what) {
    if (!ok) throw SearchExhausted(what);
  };
  if (side == Side::Neg) {
    id = FamilyId::ALLSIGN_SSR_A1T;
    hi = 1;
    int s_hi = family_sign(f, id, hi, delta, prec);
    r.transcript.push_back("t=1: sign " + std::to_string(s_hi));
    need(s_hi == -1, "F(1) not certified negative");
    Rational t(1, 2);
    for (int step = 0; step < 60; ++step, t /= 2) {
      int s = family_sign(f, id, t, delta, prec);
      r.transcript.push_back("t=" + to_string(t) + ": sign " + std::to_string(s));
      if (s == 1) break;
    }
    need(family_sign(f, id, t, delta, prec) == 1, "no t with F(t) > 0");
    lo = t;
  } else if (side == Side::Mid) {
    id = FamilyId::ALLSIGN_SSR_A2TD;
    const Rational t1 = 3;
    Rational dl(1, 2);
    int s = 0;
    for (int step = 0; step < 60; ++step, dl /= 2) {
      s = family_sign(f, id, t1, dl, prec);
      r.transcript.push_back("t=3, delta=" + to_string(dl) + ": sign " + std::to_string(s));
      if (s == -1) break;
    }
    need(s == -1, "no delta with F(3, delta) < 0");
    delta = dl;
    hi = t1;
    Rational t(3, 2);
    for (int step = 0; step < 60; ++step, t /= 2) {
      s = family_sign(f, id, t, delta, prec);
      r.transcript.push_back("t=" + to_string(t) + ", delta=" + to_string(dl) + ": sign " + std::to_string(s));
      if (s == 1) break;
    }
    need(s == 1, "no t with F(t, delta) > 0");
    lo = t;
  } else {
    id = FamilyId::ALLSIGN_SSR_A3TD;
    const Rational t1(3, 4);
    Rational dl(1, 2);
    int s = 0;
    for (int step = 0; step < 60; ++step, dl /= 2) {
      s = family_sign(f, id, t1, dl, prec);
      r.transcript.push_back("t=3/4, delta=" + to_string(dl) + ": sign " + std::to_string(s));
      if (s == 1) break;
    }
    need(s == 1, "no delta with F(3/4, delta) > 0");
    delta = dl;
    hi = t1;
    Rational t(3, 8);
    for (int step = 0; step < 60; ++step, t /= 2) {
      s = family_sign(f, id, t, delta, prec);
      r.transcript.push_back("t=" + to_string(t) + ", delta=" + to_string(dl) + ": sign " + std::to_string(s));
      if (s == -1) break;
    }
    need(s == -1, "no t with F(t, delta) < 0");
    lo = t;
  }

  // Bisect; an exact zero at a midpoint is itself a singular image.
  const int s_lo = family_sign(f, id, lo, delta, prec);
  while (hi - lo > opt.tol) {
    Rational mid = (lo + hi) / 2;
    int s = family_sign(f, id, mid, delta, prec);
    for (int k = 3; s == 2 && k < 16; k += 2) {
      mid = lo + (hi - lo) * Rational(k, 16) / 1;
      mid.canonicalize();
      s = family_sign(f, id, mid, delta, prec);
    }
    need(s != 2, "bisection stalled at precision " + std::to_string(prec.max_bits));
    if (s == 0) {
      lo = hi = mid;
      break;
    }
    (s == s_lo ? lo : hi) = mid;
  }
  r.transcript.push_back("bracket [" + to_string(lo) + ", " + to_string(hi) + "]");

  const std::string fam = to_string(id);
  BlockPath path{id, delta, affine_form(id, delta), QMatrix()};
  Params p0;
  p0.t = lo;
  p0.delta = delta;
  const QMatrix A3 = instantiate(id, p0);
  const SignPattern base = pick_pattern(A3, Mode::SSR);
  SignPattern eps = base;
  if (d > 3) {
    std::vector<int> s = base.signs();
    s.resize(static_cast<std::size_t>(d), 1);
    eps = SignPattern(s);
  }
  bool certified = false;
  for (int attempt = 0; attempt < 12 && !certified; ++attempt) {
    if (q.m == 3 && q.n == 3) {
      path.frame = A3;
    } else {
      auto rng = make_rng(opt.seed, static_cast<std::uint64_t>(attempt));
      auto B = border_to(A3, q.m, q.n, eps, rng);
      if (!B) continue;
      path.frame = *B;
    }
    auto c = path_ssr(path, lo, hi, eps, prec);
    r.transcript.push_back("source SSR(" + eps.str() + ") on the bracket: " + to_string(c.verdict));
    certified = c.verdict == Tri::True;
    if (q.m == 3 && q.n == 3) break;
  }
  need(certified, "source not certified SSR across the bracket");

  r.family = fam;
  r.params.t = lo;
  r.params.delta = delta;
  r.source = path.at(lo);
  r.source_pattern = eps;
  r.block_rows = {0, 1, 2};
  r.block_cols = {0, 1, 2};
  MinorSign m_lo, m_hi;
  block_sign(f, r.source, prec, &m_lo);
  if (lo == hi) {
    r.kind = "singular_image";
    r.claim = minor_name(m_lo) + " of the image vanishes exactly";
    r.minors = {m_lo};
    r.transcript.push_back(minor_line(m_lo));
    return r;
  }
  r.source_hi = path.at(hi);
  block_sign(f, *r.source_hi, prec, &m_hi);
  ParamBracket br;
  br.lo = lo;
  br.hi = hi;
  br.sign_lo = m_lo.verdict.value();
  br.sign_hi = m_hi.verdict.value();
  r.bracket = br;
  r.kind = "root_bracket";
  r.claim = "det of the leading 3x3 block of the image changes sign for t in [" + to_string(lo) + ", " +
            to_string(hi) + "] while the source stays SSR, so some t in between gives a singular image";
  r.minors = {m_lo, m_hi};
  r.transcript.push_back("t=lo: " + minor_line(m_lo));
  r.transcript.push_back("t=hi: " + minor_line(m_hi));
  return r;
}

}  // namespace

WitnessReport find_violation(const Exponent& alpha, const Query& q, const SearchOptions& opt) {
  q.validate();
  const auto adm = admissible_exponents(q);
  if (q.all_patterns && q.mode == Mode::SR && q.domain() == Domain::Real && alpha.is_exact() && alpha.lo == 0)
    throw NoWitness("alpha = 0 on the real line is the constant 1, outside the |x|^alpha family");
  const Side side = side_of(alpha);
  if (adm.contains(alpha.lo) || adm.contains(alpha.hi))
    throw NoWitness("alpha = " + alpha.str() + " is admissible for " + q.str() + " (" + adm.str() + ")");
  if (!q.all_patterns) return fixed_witness(alpha, q, side, opt);
  if (q.mode == Mode::SR) return all_sr_witness(alpha, q, side, opt);
  return all_ssr_witness(alpha, q, side, opt);
}

WitnessReport find_signum_violation(const Query& q, const SearchOptions& opt) {
  q.validate();
  const Domain dom = q.domain();
  WitnessReport r;
  r.query = q;
  r.alpha = 0;
  r.precision = opt.precision;
  const int d = q.d();
  if (q.mode == Mode::SSR) {
    if (d < 2) throw NoWitness("sgn preserves SSR at d = 1");
    r.function = FunctionSpec::signum(1, dom);
    const SignPattern eps = q.eps ? *q.eps : SignPattern::all_plus(d);
    QMatrix A = random_ssr(q.m, q.n, eps, opt.seed);
    auto M = apply_entrywise(r.function, A);
    auto c = q.eps ? check_ssr_with(M, eps, opt.precision) : check_ssr_any(M, opt.precision);
    if (c.verdict != Tri::False) throw SearchExhausted("sign image not certified non-SSR");
    r.family = "SSR_SAMPLE";
    r.source = A;
    r.source_pattern = eps;
    fill_from_check(r, c, q.eps);
    return r;
  }
  if (signum_preserves(q.m, q.n, q.eps)) throw NoWitness("sgn preserves " + q.str());
  if (q.eps) {
    r.function = FunctionSpec::signum(1, dom);
    SrPlan plan{FamilyId::SIGNUM_3x3};
    SignPattern e = *q.eps;
    if (e(1) < 0) {
      plan.negate = true;
      e = negation_map(e);
    }
    if (e(2) < 0) {
      plan.reverse = true;
      e = exchange_map(e);
    }
    QMatrix A = plan_matrix(plan, std::nullopt, q.m, q.n);
    auto c = check_sr_with(apply_entrywise(r.function, A), *q.eps, opt.precision);
    if (c.verdict != Tri::False) throw SearchExhausted("sign image not certified non-SR");
    r.family = to_string(FamilyId::SIGNUM_3x3);
    if (plan.reverse) r.transcript.push_back("columns reversed: eps2 = -1");
    if (plan.negate) r.transcript.push_back("source negated: eps1 = -1");
    r.source = A;
    r.source_pattern = *q.eps;
    fill_from_check(r, c, q.eps);
    return r;
  }
  r.function = FunctionSpec::signum(1, dom);
  QMatrix W = pad_with_zeros(instantiate(FamilyId::SIGNUM_3x4), 4, 4);
  QMatrix A = shape_all_sr(W, q.m, q.n);
  auto c = check_sr_any(apply_entrywise(r.function, A), opt.precision);
  if (c.verdict != Tri::False) throw SearchExhausted("sign image not certified non-SR");
  r.family = to_string(FamilyId::SIGNUM_3x4);
  r.source = A;
  r.source_pattern = pick_pattern(A, Mode::SR);
  fill_from_check(r, c, std::nullopt);
  return r;
}

// ---------------------------------------------------------------------------
// Re-verification

bool recheck(const WitnessReport& r) {
  const Query& q = r.query;
  const int d = static_cast<int>(std::min(r.source.rows(), r.source.cols()));
  if (r.source.rows() != q.m || r.source.cols() != q.n || r.source_pattern.size() != d) return false;
  const bool strict = q.mode == Mode::SSR;
  if (!r.bracket) {
    if (strict ? !is_ssr_with(r.source, r.source_pattern) : !is_sr_with(r.source, r.source_pattern)) return false;
  }
  if (q.eps && r.source_pattern != *q.eps) return false;
  if (r.kind == "undefined_image") return undefined_image(r.function, r.source);

  auto same = [](const MinorSign& a, const MinorSign& b) {
    if (!(a.verdict == b.verdict) || a.rows != b.rows || a.cols != b.cols) return false;
    return !a.exact || a.exact == b.exact;
  };
  auto M = apply_entrywise(r.function, r.source);
  MinorSigner signer(M, r.precision);
  if (r.kind == "root_bracket") {
    if (!r.bracket || !r.source_hi || r.minors.size() != 2) return false;
    const auto& b = *r.bracket;
    if (b.sign_lo * b.sign_hi != -1) return false;
    auto id = parse_family(r.family);
    BlockPath path{id, r.params.delta, affine_form(id, r.params.delta), r.source};
    if (path.at(b.lo) != r.source || path.at(b.hi) != *r.source_hi) return false;
    if (path_ssr(path, b.lo, b.hi, r.source_pattern, r.precision).verdict != Tri::True) return false;
    auto M2 = apply_entrywise(r.function, *r.source_hi);
    MinorSigner signer2(M2, r.precision);
    MinorSign a = signer.sign(r.block_rows, r.block_cols);
    MinorSign c = signer2.sign(r.block_rows, r.block_cols);
    return same(a, r.minors[0]) && same(c, r.minors[1]) && a.verdict.value() == b.sign_lo &&
           c.verdict.value() == b.sign_hi;
  }
  std::vector<MinorSign> fresh;
  for (const auto& m : r.minors) {
    MinorSign s = signer.sign(m.rows, m.cols);
    if (!same(s, m) || !s.verdict.determined()) return false;
    fresh.push_back(s);
  }
  if (r.kind == "singular_image") {
    for (const auto& s : fresh)
      if (s.verdict.value() == 0) return true;
    return false;
  }
  if (r.kind == "wrong_sign") {
    if (fresh.size() != 1) return false;
    const int v = fresh[0].verdict.value() * r.source_pattern(fresh[0].k);
    return strict ? v <= 0 : v < 0;
  }
  if (r.kind == "opposite_signs") {
    return fresh.size() == 2 && fresh[0].k == fresh[1].k &&
           fresh[0].verdict.value() * fresh[1].verdict.value() == -1;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Leading terms

std::vector<TaylorTerm> taylor_terms(FamilyId id) {
  const Index r3{0, 1, 2}, r4{0, 1, 2, 3};
  switch (id) {
    case FamilyId::A1_T:
    case FamilyId::A2_T:
    case FamilyId::A4_T: return {{"det", r4, r4, 4}};
    case FamilyId::A3_T: return {{"det", r4, r4, 6}};
    case FamilyId::ALLSIGN_SR_AT: return {{"A1", r3, {0, 1, 2}, 3}, {"A2", r3, {1, 2, 3}, 2}};
    case FamilyId::ALLSIGN_SSR_A1T:
    case FamilyId::ALLSIGN_SSR_A2TD:
    case FamilyId::ALLSIGN_SSR_A3TD: return {{"det", r3, r3, 2}};
    default: return {};
  }
}

Rational leading_coefficient(FamilyId id, const TaylorTerm& term, const Rational& a, const Rational& delta) {
  const Rational a2 = a * a, a3 = a2 * a, a4 = a3 * a, a5 = a4 * a, a6 = a5 * a;
  Rational c;
  switch (id) {
    case FamilyId::A1_T: c = 2 * (a3 - a4); break;
    case FamilyId::A2_T: c = q(-1084, 3) * (a3 - a4); break;
    case FamilyId::A3_T: c = q(-45, 4) * (2 * a3 - 5 * a4 + 4 * a5 - a6); break;
    case FamilyId::A4_T: c = q(2, 9) * (a3 - a4); break;
    case FamilyId::ALLSIGN_SR_AT: c = term.label == "A1" ? Rational(q(33, 20) * (a3 - a2)) : Rational(-a2); break;
    case FamilyId::ALLSIGN_SSR_A1T: c = a2; break;
    case FamilyId::ALLSIGN_SSR_A2TD: c = delta * a2 / 3; break;
    case FamilyId::ALLSIGN_SSR_A3TD: c = -2 * delta * a2; break;
    default: throw std::invalid_argument(to_string(id) + " has no leading term in t");
  }
  c.canonicalize();
  return c;
}

std::vector<TaylorCheck> taylor_leading_check(FamilyId id, const Rational& alpha, const Rational& delta, double rtol,
                                              mpfr_prec_t bits) {
  const auto terms = taylor_terms(id);
  if (terms.empty()) throw std::invalid_argument(to_string(id) + " has no leading term in t");
  const auto info = family_info(id);
  const FunctionSpec f = FunctionSpec::power(1, alpha, Domain::Pos);
  std::vector<TaylorCheck> out;
  for (const auto& term : terms) {
    TaylorCheck tc;
    tc.id = id;
    tc.label = term.label;
    tc.k = term.k;
    tc.alpha = alpha;
    tc.predicted = leading_coefficient(id, term, alpha, delta);
    const mpfr_prec_t prec = bits + 16 * term.k;
    // r(t) = det / t^k at t = 2^-14, 2^-15, 2^-16
    std::vector<Interval> r;
    for (int e = 14; e <= 16; ++e) {
      Params p;
      p.t = Rational(1);
      mpz_mul_2exp(p.t->get_den_mpz_t(), p.t->get_den_mpz_t(), static_cast<mp_bitcnt_t>(e));
      if (info.has_delta) p.delta = delta;
      QMatrix S = submatrix(instantiate(id, p), term.rows, term.cols);
      auto M = apply_entrywise(f, S);
      MinorLevels<Interval> L(M.enclose(prec));
      const int k = static_cast<int>(term.rows.size());
      Index all(static_cast<std::size_t>(k));
      for (int i = 0; i < k; ++i) all[static_cast<std::size_t>(i)] = i;
      Rational scale = 1;
      mpz_mul_2exp(scale.get_num_mpz_t(), scale.get_num_mpz_t(), static_cast<mp_bitcnt_t>(e * term.k));
      r.push_back(L.value(all, all) * Interval(scale, prec));
    }
    Interval r1a = Interval(2, prec) * r[1] - r[0];
    Interval r1b = Interval(2, prec) * r[2] - r[1];
    Interval r2 = (Interval(4, prec) * r1b - r1a) / Interval(3, prec);
    tc.measured = r2.mid();
    tc.inconclusive = tc.predicted == 0;
    const double pred = tc.predicted.get_d();
    tc.agree = !tc.inconclusive && std::abs(tc.measured - pred) <= rtol * std::abs(pred);
    out.push_back(tc);
  }
  return out;
}

// ---------------------------------------------------------------------------
// JSON

nlohmann::json to_json(const MinorSign& m) {
  nlohmann::json j;
  j["k"] = m.k;
  j["rows"] = m.rows;
  j["cols"] = m.cols;
  j["sign"] = sign_char(m.verdict);
  j["exact"] = m.exact ? nlohmann::json(to_string(*m.exact)) : nlohmann::json(nullptr);
  j["enclosure"] = m.enclosure ? to_json(*m.enclosure) : nlohmann::json(nullptr);
  j["structural"] = m.structural;
  return j;
}

nlohmann::json to_json(const WitnessReport& r) {
  nlohmann::json j;
  j["family"] = r.family;
  nlohmann::json p = nlohmann::json::object();
  if (r.params.t) p["t"] = to_string(*r.params.t);
  if (r.params.delta) p["delta"] = to_string(*r.params.delta);
  j["params"] = p;
  j["query"] = to_json(r.query);
  j["alpha"] = r.alpha.str();
  j["function"] = to_json(r.function);
  j["source"] = matrix_to_json(r.source);
  j["source_hi"] = r.source_hi ? matrix_to_json(*r.source_hi) : nlohmann::json(nullptr);
  j["source_pattern"] = r.source_pattern.str();
  j["kind"] = r.kind;
  j["claim"] = r.claim;
  nlohmann::json ms = nlohmann::json::array();
  for (const auto& m : r.minors) ms.push_back(to_json(m));
  j["minors"] = ms;
  if (r.bracket) {
    nlohmann::json b;
    b["name"] = r.bracket->name;
    b["lo"] = to_string(r.bracket->lo);
    b["hi"] = to_string(r.bracket->hi);
    b["sign_lo"] = r.bracket->sign_lo;
    b["sign_hi"] = r.bracket->sign_hi;
    j["bracket"] = b;
  } else {
    j["bracket"] = nullptr;
  }
  j["transcript"] = r.transcript;
  j["precision"] = {{"bits", r.precision.bits}, {"max_bits", r.precision.max_bits}};
  return j;
}

}  // namespace signreg
