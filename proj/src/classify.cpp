#include "signreg/classify.hpp"

#include "signreg/genmat.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace signreg {

// ---------------------------------------------------------------------------
// ExponentSet

namespace {

// Compare endpoints; nullopt lo is -inf, nullopt hi is +inf.
bool lo_le_hi_touch(const ExponentSet::Piece& a, const ExponentSet::Piece& b) {
  // Does a (earlier) reach or touch b?
  if (!a.hi || !b.lo) return true;
  if (*a.hi > *b.lo) return true;
  if (*a.hi == *b.lo) return a.hi_closed || b.lo_closed;
  return false;
}

bool lo_less(const ExponentSet::Piece& a, const ExponentSet::Piece& b) {
  if (!a.lo) return b.lo.has_value() || (a.lo_closed && !b.lo_closed);
  if (!b.lo) return false;
  if (*a.lo != *b.lo) return *a.lo < *b.lo;
  return a.lo_closed && !b.lo_closed;
}

// Upper end of a extends past that of b.
bool hi_greater(const ExponentSet::Piece& a, const ExponentSet::Piece& b) {
  if (!a.hi) return b.hi.has_value();
  if (!b.hi) return false;
  if (*a.hi != *b.hi) return *a.hi > *b.hi;
  return a.hi_closed && !b.hi_closed;
}

bool piece_contains(const ExponentSet::Piece& p, const Rational& x) {
  if (p.lo && (x < *p.lo || (x == *p.lo && !p.lo_closed))) return false;
  if (p.hi && (x > *p.hi || (x == *p.hi && !p.hi_closed))) return false;
  return true;
}

// p within q.
bool piece_within(const ExponentSet::Piece& p, const ExponentSet::Piece& q) {
  if (lo_less(p, q)) return false;
  if (hi_greater(p, q)) return false;
  return true;
}

}  // namespace

ExponentSet ExponentSet::point(const Rational& a) {
  ExponentSet s;
  s.pieces_.push_back({a, a, true, true});
  return s;
}

ExponentSet ExponentSet::interval(std::optional<Rational> lo, bool lo_closed, std::optional<Rational> hi,
                                  bool hi_closed) {
  ExponentSet s;
  if (!lo) lo_closed = false;
  if (!hi) hi_closed = false;
  if (lo && hi && (*lo > *hi || (*lo == *hi && !(lo_closed && hi_closed)))) return s;
  s.pieces_.push_back({lo, hi, lo_closed, hi_closed});
  return s;
}

ExponentSet ExponentSet::real() { return interval(std::nullopt, false, std::nullopt, false); }

ExponentSet ExponentSet::nonzero_reals() {
  return interval(std::nullopt, false, Rational(0), false).unite(interval(Rational(0), false, std::nullopt, false));
}

void ExponentSet::canonicalize() {
  std::sort(pieces_.begin(), pieces_.end(), [](const Piece& a, const Piece& b) { return lo_less(a, b); });
  std::vector<Piece> out;
  for (const auto& p : pieces_) {
    if (!out.empty() && lo_le_hi_touch(out.back(), p)) {
      if (hi_greater(p, out.back())) {
        out.back().hi = p.hi;
        out.back().hi_closed = p.hi_closed;
      }
    } else {
      out.push_back(p);
    }
  }
  pieces_ = std::move(out);
}

ExponentSet ExponentSet::unite(const ExponentSet& o) const {
  ExponentSet s = *this;
  s.pieces_.insert(s.pieces_.end(), o.pieces_.begin(), o.pieces_.end());
  s.canonicalize();
  return s;
}

bool ExponentSet::contains(const Rational& a) const {
  return std::any_of(pieces_.begin(), pieces_.end(), [&](const Piece& p) { return piece_contains(p, a); });
}

bool ExponentSet::contains(const Exponent& a) const {
  Piece p{a.lo, a.hi, true, true};
  return std::any_of(pieces_.begin(), pieces_.end(), [&](const Piece& q) { return piece_within(p, q); });
}

bool ExponentSet::subset_of(const ExponentSet& o) const {
  for (const auto& p : pieces_)
    if (std::none_of(o.pieces_.begin(), o.pieces_.end(), [&](const Piece& q) { return piece_within(p, q); }))
      return false;
  return true;
}

std::string ExponentSet::str() const {
  if (pieces_.empty()) return "{}";
  if (*this == real()) return "R";
  if (*this == nonzero_reals()) return "R\\{0}";
  std::string s;
  std::string pending_points;
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const auto& p = pieces_[i];
    if (i > 0) s += " U ";
    if (p.lo && p.hi && *p.lo == *p.hi) {
      // merge consecutive isolated points into one brace
      std::string pts = to_string(*p.lo);
      while (i + 1 < pieces_.size() && pieces_[i + 1].lo && pieces_[i + 1].hi &&
             *pieces_[i + 1].lo == *pieces_[i + 1].hi) {
        ++i;
        pts += "," + to_string(*pieces_[i].lo);
      }
      s += "{" + pts + "}";
      continue;
    }
    s += p.lo_closed ? "[" : "(";
    s += p.lo ? to_string(*p.lo) : "-inf";
    s += ",";
    s += p.hi ? to_string(*p.hi) : "inf";
    s += p.hi_closed ? "]" : ")";
  }
  return s;
}

ExponentSet ExponentSet::from_string(const std::string& text) {
  std::string t;
  for (char ch : text)
    if (ch != ' ') t += ch;
  if (t == "{}") return {};
  if (t == "R") return real();
  if (t == "R\\{0}") return nonzero_reals();
  ExponentSet s;
  std::size_t i = 0;
  auto fail = [&] { throw std::invalid_argument("bad exponent set '" + text + "'"); };
  while (i < t.size()) {
    if (t[i] == '{') {
      std::size_t j = t.find('}', i);
      if (j == std::string::npos) fail();
      std::stringstream ss(t.substr(i + 1, j - i - 1));
      std::string item;
      while (std::getline(ss, item, ',')) s = s.unite(point(parse_rational(item)));
      i = j + 1;
    } else if (t[i] == '[' || t[i] == '(') {
      bool lc = t[i] == '[';
      std::size_t j = t.find_first_of("])", i);
      if (j == std::string::npos) fail();
      bool hc = t[j] == ']';
      std::string body = t.substr(i + 1, j - i - 1);
      std::size_t comma = body.find(',');
      if (comma == std::string::npos) fail();
      std::string a = body.substr(0, comma), b = body.substr(comma + 1);
      std::optional<Rational> lo, hi;
      if (a != "-inf") lo = parse_rational(a);
      if (b != "inf") hi = parse_rational(b);
      s = s.unite(interval(lo, lc, hi, hc));
      i = j + 1;
    } else {
      fail();
    }
    if (i < t.size()) {
      if (t[i] != 'U') fail();
      ++i;
    }
  }
  return s;
}

// ---------------------------------------------------------------------------
// Ranges and clauses

std::string to_string(Mode m) { return m == Mode::SR ? "SR" : "SSR"; }

Mode parse_mode(const std::string& s) {
  if (s == "SR" || s == "sr") return Mode::SR;
  if (s == "SSR" || s == "ssr") return Mode::SSR;
  throw std::invalid_argument("mode must be SR or SSR, got '" + s + "'");
}

std::string range_str(Range r, const std::string& v) {
  switch (r) {
    case Range::Any: return v + " in R";
    case Range::Pos: return v + ">0";
    case Range::NonNeg: return v + ">=0";
    case Range::Neg: return v + "<0";
    case Range::NonPos: return v + "<=0";
    case Range::NonZero: return v + "!=0";
    case Range::Zero: return v + "=0";
    case Range::Definite: return v + ">=0 throughout or " + v + "<=0 throughout";
    case Range::StrictDefinite: return v + ">0 throughout or " + v + "<0 throughout";
  }
  return "?";
}

Range negate(Range r) {
  switch (r) {
    case Range::Pos: return Range::Neg;
    case Range::Neg: return Range::Pos;
    case Range::NonNeg: return Range::NonPos;
    case Range::NonPos: return Range::NonNeg;
    default: return r;
  }
}

bool range_admits(Range r, int s) {
  switch (r) {
    case Range::Any:
    case Range::Definite: return true;
    case Range::Pos: return s > 0;
    case Range::NonNeg: return s >= 0;
    case Range::Neg: return s < 0;
    case Range::NonPos: return s <= 0;
    case Range::NonZero:
    case Range::StrictDefinite: return s != 0;
    case Range::Zero: return s == 0;
  }
  return false;
}

std::string Clause::kind_name() const {
  switch (kind) {
    case Kind::AnyFunction: return "any_function";
    case Kind::Constant: return "constant";
    case Kind::ScaledSignum: return "scaled_signum";
    case Kind::ScaledPower: return "scaled_power";
    case Kind::PiecewiseTwoSided: return "piecewise_two_sided";
  }
  return "?";
}

std::vector<std::string> Clause::constraints() const {
  switch (kind) {
    case Kind::AnyFunction:
      return {range_str(neg, "f(x<0)"), range_str(at_zero, "f(0)"), range_str(pos, "f(x>0)")};
    case Kind::Constant:
    case Kind::ScaledSignum: return {range_str(c, "c")};
    case Kind::ScaledPower: return {range_str(c, "c"), "alpha in " + alpha.str()};
    case Kind::PiecewiseTwoSided:
      return {"x<0: c1*|x|^alpha1", range_str(neg_side.c, "c1"), "alpha1 in " + neg_side.alpha.str(),
              "x>0: c2*x^alpha2",   range_str(pos_side.c, "c2"), "alpha2 in " + pos_side.alpha.str(),
              range_str(at_zero, "f(0)")};
  }
  return {};
}

namespace {

Clause any_function(Range neg, Range zero, Range pos) {
  Clause c;
  c.kind = Clause::Kind::AnyFunction;
  c.neg = neg;
  c.at_zero = zero;
  c.pos = pos;
  return c;
}

Clause constant(Range r) {
  Clause c;
  c.kind = Clause::Kind::Constant;
  c.c = r;
  return c;
}

Clause signum(Range r) {
  Clause c;
  c.kind = Clause::Kind::ScaledSignum;
  c.c = r;
  return c;
}

Clause power(Range r, ExponentSet a) {
  Clause c;
  c.kind = Clause::Kind::ScaledPower;
  c.c = r;
  c.alpha = std::move(a);
  return c;
}

Clause piecewise(SideClause neg, SideClause pos, Range at_zero) {
  Clause c;
  c.kind = Clause::Kind::PiecewiseTwoSided;
  c.neg_side = std::move(neg);
  c.pos_side = std::move(pos);
  c.at_zero = at_zero;
  return c;
}

const Rational kZero(0), kOne(1);

ExponentSet nonneg_reals() { return ExponentSet::interval(kZero, true, std::nullopt, false); }
ExponentSet pos_reals() { return ExponentSet::interval(kZero, false, std::nullopt, false); }
ExponentSet unit_closed() { return ExponentSet::interval(kZero, true, kOne, true); }
ExponentSet unit_half_open() { return ExponentSet::interval(kZero, false, kOne, true); }
ExponentSet from_one() { return ExponentSet::interval(kOne, true, std::nullopt, false); }
ExponentSet zero_or_from_one() { return ExponentSet::point(kZero).unite(from_one()); }
ExponentSet zero_one() { return ExponentSet::point(kZero).unite(ExponentSet::point(kOne)); }

}  // namespace

// ---------------------------------------------------------------------------
// Queries

Query fixed_query(int m, int n, Mode mode, const SignPattern& eps) {
  Query q;
  q.m = m;
  q.n = n;
  q.mode = mode;
  q.eps = eps;
  q.validate();
  return q;
}

Query all_patterns_query(int m, int n, Mode mode, std::optional<Domain> domain) {
  Query q;
  q.m = m;
  q.n = n;
  q.mode = mode;
  q.all_patterns = true;
  q.entry_domain = domain;
  q.validate();
  return q;
}

void Query::validate() const {
  if (m < 1 || n < 1) throw std::invalid_argument("dimensions must be positive");
  if (all_patterns) {
    if (eps) throw std::invalid_argument("an all-patterns query takes no sign pattern");
    if (entry_domain) {
      Domain dm = *entry_domain;
      bool ok = mode == Mode::SR ? (dm == Domain::Real || dm == Domain::NonNeg)
                                 : (dm == Domain::RealNonZero || dm == Domain::Pos);
      if (!ok)
        throw std::invalid_argument("entry domain " + domain_keyword(dm) + " does not fit all-patterns " +
                                    to_string(mode));
    }
    return;
  }
  if (!eps) throw std::invalid_argument("a fixed-pattern query needs a sign pattern");
  if (eps->size() != d())
    throw std::invalid_argument("sign pattern length " + std::to_string(eps->size()) + " != min(m,n) = " +
                                std::to_string(d()));
  if (entry_domain && *entry_domain != domain())
    throw std::invalid_argument("entry domain " + domain_keyword(*entry_domain) +
                                " does not fit a fixed pattern with eps1 = " + std::to_string((*eps)(1)));
}

Domain Query::domain() const {
  if (all_patterns) {
    if (entry_domain) return *entry_domain;
    return mode == Mode::SR ? Domain::Real : Domain::RealNonZero;
  }
  bool plus = (*eps)(1) > 0;
  if (mode == Mode::SR) return plus ? Domain::NonNeg : Domain::NonPos;
  return plus ? Domain::Pos : Domain::Neg;
}

std::string Query::str() const {
  std::string s = std::to_string(m) + "x" + std::to_string(n) + " " + to_string(mode) + " ";
  s += all_patterns ? "all patterns" : "eps=" + eps->str();
  return s + " on " + domain_keyword(domain());
}

// ---------------------------------------------------------------------------
// Tables

namespace {

enum class Regime { Any, Definite, Powers, Linear };

// Row of the all-signs SR table, with or without restricted entries.
Regime all_sr_regime(int m, int n) {
  int d = std::min(m, n);
  if (m == n) {
    if (n == 1) return Regime::Any;
    if (n == 2) return Regime::Definite;
    if (n == 3) return Regime::Powers;
    return Regime::Linear;
  }
  if (d == 1) return Regime::Definite;
  if (d == 2) return Regime::Powers;
  return Regime::Linear;
}

PreserverFamily fixed_plus(const Query& q) {
  PreserverFamily f;
  const int d = q.d();
  const bool same = d >= 3 && (*q.eps)(2) == (*q.eps)(3);
  if (q.mode == Mode::SR) {
    if (d == 1) {
      f.clauses = {any_function(Range::Any, Range::NonNeg, Range::NonNeg)};
      f.table = "fixed SR, d=1: f non-negative";
    } else if (d == 2) {
      f.clauses = {signum(Range::NonNeg), power(Range::NonNeg, nonneg_reals())};
      f.table = "fixed SR, d=2";
    } else if (d == 3) {
      if (same) {
        f.clauses = {power(Range::NonNeg, zero_or_from_one())};
        f.table = "fixed SR, d=3, eps2=eps3";
      } else {
        f.clauses = {signum(Range::NonNeg), power(Range::NonNeg, unit_closed())};
        f.table = "fixed SR, d=3, eps2!=eps3";
      }
    } else {
      if (same) {
        f.clauses = {power(Range::NonNeg, zero_one())};
        f.table = "fixed SR, d>=4, eps2=eps3";
      } else {
        f.clauses = {signum(Range::NonNeg), power(Range::NonNeg, zero_one())};
        f.table = "fixed SR, d>=4, eps2!=eps3";
      }
    }
  } else {
    if (d == 1) {
      f.clauses = {any_function(Range::Any, Range::Any, Range::Pos)};
      f.table = "fixed SSR, d=1: f positive";
    } else if (d == 2) {
      f.clauses = {power(Range::Pos, pos_reals())};
      f.table = "fixed SSR, d=2";
    } else if (d == 3) {
      f.clauses = {power(Range::Pos, same ? from_one() : unit_half_open())};
      f.table = same ? "fixed SSR, d=3, eps2=eps3" : "fixed SSR, d=3, eps2!=eps3";
    } else {
      f.clauses = {power(Range::Pos, ExponentSet::point(kOne))};
      f.table = "fixed SSR, d>=4";
    }
  }
  return f;
}

// Hand-written tables for eps1 = -1, kept separate from mirror() so that the
// mirror law is a real check.
PreserverFamily fixed_minus(const Query& q) {
  PreserverFamily f;
  const int d = q.d();
  const bool same = d >= 3 && (*q.eps)(2) == (*q.eps)(3);
  if (q.mode == Mode::SR) {
    if (d == 1) {
      f.clauses = {any_function(Range::NonPos, Range::NonPos, Range::Any)};
      f.table = "fixed SR, eps1=-1, d=1: g non-positive";
    } else if (d == 2) {
      f.clauses = {signum(Range::NonPos), power(Range::NonPos, nonneg_reals())};
      f.table = "fixed SR, eps1=-1, d=2";
    } else if (d == 3) {
      if (!same) {
        f.clauses = {power(Range::NonPos, zero_or_from_one())};
        f.table = "fixed SR, eps1=-1, d=3, eps2!=eps3";
      } else {
        f.clauses = {signum(Range::NonPos), power(Range::NonPos, unit_closed())};
        f.table = "fixed SR, eps1=-1, d=3, eps2=eps3";
      }
    } else {
      if (!same) {
        f.clauses = {power(Range::NonPos, zero_one())};
        f.table = "fixed SR, eps1=-1, d>=4, eps2!=eps3";
      } else {
        f.clauses = {signum(Range::NonPos), power(Range::NonPos, zero_one())};
        f.table = "fixed SR, eps1=-1, d>=4, eps2=eps3";
      }
    }
  } else {
    if (d == 1) {
      f.clauses = {any_function(Range::Neg, Range::Any, Range::Any)};
      f.table = "fixed SSR, eps1=-1, d=1: g negative";
    } else if (d == 2) {
      f.clauses = {power(Range::Neg, pos_reals())};
      f.table = "fixed SSR, eps1=-1, d=2";
    } else if (d == 3) {
      f.clauses = {power(Range::Neg, same ? unit_half_open() : from_one())};
      f.table = same ? "fixed SSR, eps1=-1, d=3, eps2=eps3" : "fixed SSR, eps1=-1, d=3, eps2!=eps3";
    } else {
      f.clauses = {power(Range::Neg, ExponentSet::point(kOne))};
      f.table = "fixed SSR, eps1=-1, d>=4";
    }
  }
  return f;
}

PreserverFamily all_sr(const Query& q) {
  PreserverFamily f;
  Regime r = all_sr_regime(q.m, q.n);
  const bool real = q.domain() == Domain::Real;
  if (real) {
    switch (r) {
      case Regime::Any:
        f.clauses = {any_function(Range::Any, Range::Any, Range::Any)};
        f.table = "all SR, any function";
        break;
      case Regime::Definite:
        f.clauses = {any_function(Range::Definite, Range::Zero, Range::Definite),
                     any_function(Range::NonNeg, Range::Pos, Range::NonNeg),
                     any_function(Range::NonPos, Range::Neg, Range::NonPos)};
        f.table = "all SR, sign-definite pieces";
        break;
      case Regime::Powers:
        f.clauses = {constant(Range::NonZero),
                     piecewise({Range::Any, nonneg_reals()}, {Range::Any, nonneg_reals()}, Range::Zero)};
        f.table = "all SR, two-sided powers";
        break;
      case Regime::Linear:
        f.clauses = {constant(Range::NonZero), piecewise({Range::Any, ExponentSet::point(kOne)},
                                                         {Range::Any, ExponentSet::point(kOne)}, Range::Zero)};
        f.table = "all SR, two-sided linear";
        break;
    }
  } else {
    switch (r) {
      case Regime::Any:
      case Regime::Definite:
        f.clauses = {any_function(Range::Any, Range::NonNeg, Range::NonNeg)};
        f.table = "all SR, non-negative entries, f non-negative";
        break;
      case Regime::Powers:
        f.clauses = {signum(Range::NonNeg), power(Range::NonNeg, nonneg_reals())};
        f.table = "all SR, non-negative entries, powers";
        break;
      case Regime::Linear:
        f.clauses = {power(Range::NonNeg, zero_one())};
        f.table = "all SR, non-negative entries, alpha in {0,1}";
        break;
    }
  }
  return f;
}

const char* kTwoByTwoGap =
    "entrywise preservers of all 2x2 SSR matrices are not covered by the classification; "
    "see the sampled 2x2 strict conditions check";

PreserverFamily all_ssr(const Query& q) {
  PreserverFamily f;
  const int d = q.d();
  const bool real = q.domain() == Domain::RealNonZero;
  if (q.m == 2 && q.n == 2) {
    f.partial = kTwoByTwoGap;
    f.table = "all SSR, 2x2";
    return f;
  }
  if (d == 1) {
    if (real) {
      f.clauses = {q.m == q.n ? any_function(Range::NonZero, Range::Any, Range::NonZero)
                              : any_function(Range::StrictDefinite, Range::Any, Range::StrictDefinite)};
      f.table = q.m == q.n ? "all SSR, 1x1: f nonvanishing" : "all SSR, d=1: strict sign on each half-line";
    } else {
      f.clauses = {any_function(Range::Any, Range::Any, Range::Pos)};
      f.table = "all SSR, positive entries, d=1: f positive";
    }
  } else if (d == 2) {
    if (real) {
      f.clauses = {piecewise({Range::NonZero, ExponentSet::nonzero_reals()},
                             {Range::NonZero, ExponentSet::nonzero_reals()}, Range::Any)};
      f.table = "all SSR, d=2, m!=n: two-sided nonzero powers";
    } else {
      f.clauses = {power(Range::Pos, ExponentSet::nonzero_reals())};
      f.table = "all SSR, positive entries, d=2, m!=n";
    }
  } else {
    if (real) {
      f.clauses = {piecewise({Range::NonZero, ExponentSet::point(kOne)}, {Range::NonZero, ExponentSet::point(kOne)},
                             Range::Any)};
      f.table = "all SSR, d>=3: two-sided linear";
    } else {
      f.clauses = {power(Range::Pos, ExponentSet::point(kOne))};
      f.table = "all SSR, positive entries, d>=3: f = cx";
    }
  }
  return f;
}

}  // namespace

PreserverFamily classify(const Query& q) {
  q.validate();
  PreserverFamily f;
  if (q.all_patterns) f = q.mode == Mode::SR ? all_sr(q) : all_ssr(q);
  else f = (*q.eps)(1) > 0 ? fixed_plus(q) : fixed_minus(q);
  f.mode = q.mode;
  f.all_patterns = q.all_patterns;
  f.eps = q.eps;
  f.m = q.m;
  f.n = q.n;
  f.domain = q.domain();
  return f;
}

ExponentSet admissible_exponents(const Query& q) {
  q.validate();
  const int d = q.d();
  if (q.all_patterns) {
    if (q.mode == Mode::SSR) {
      if (d == 1) return ExponentSet::real();
      if (d == 2) return ExponentSet::nonzero_reals();
      return ExponentSet::point(kOne);
    }
    Regime r = all_sr_regime(q.m, q.n);
    if (q.domain() == Domain::Real) return r == Regime::Linear ? ExponentSet::point(kOne) : pos_reals();
    return r == Regime::Linear ? zero_one() : nonneg_reals();
  }
  // eps1 = -1 swaps the eps2 = eps3 branches.
  const bool same = d >= 3 && (((*q.eps)(2) == (*q.eps)(3)) == ((*q.eps)(1) > 0));
  if (q.mode == Mode::SR) {
    if (d <= 2) return nonneg_reals();
    if (d == 3) return same ? zero_or_from_one() : unit_closed();
    return zero_one();
  }
  if (d == 1) return ExponentSet::real();
  if (d == 2) return pos_reals();
  if (d == 3) return same ? from_one() : unit_half_open();
  return ExponentSet::point(kOne);
}

// ---------------------------------------------------------------------------
// Membership

namespace {

// f restricted to an open half-line, as c * |x|^alpha (alpha = 0: constant).
struct SideForm {
  Rational c;
  Exponent alpha;
  bool constant() const { return c == 0 || (alpha.is_exact() && alpha.value() == 0); }
};

SideForm side_form(const FunctionSpec& f, int side) {
  SideForm s;
  switch (f.kind) {
    case FunctionSpec::Kind::Power: {
      s.c = f.c;
      s.alpha = f.alpha;
      if (side < 0) {
        if (!f.alpha.is_exact() || !is_integer(f.alpha.value()))
          throw std::invalid_argument("x^alpha with fractional alpha is undefined on x<0");
        if (mpz_odd_p(f.alpha.value().get_num_mpz_t())) s.c = -s.c;
      }
      break;
    }
    case FunctionSpec::Kind::ScaledSignum:
      s.c = side > 0 ? f.c : Rational(-f.c);
      s.alpha = 0;
      break;
    case FunctionSpec::Kind::Constant:
      s.c = f.c;
      s.alpha = 0;
      break;
    case FunctionSpec::Kind::Piecewise: {
      const OneSided& o = side > 0 ? f.pos : f.neg;
      s.c = o.c;
      s.alpha = o.kind == OneSided::Kind::Power ? o.alpha : Exponent(0);
      break;
    }
  }
  if (s.constant()) s.alpha = 0;
  return s;
}

bool side_matches(const SideForm& s, const SideClause& cl) {
  if (!range_admits(cl.c, sign_of(s.c))) return false;
  if (s.c == 0) return !cl.alpha.empty();
  return cl.alpha.contains(s.alpha);
}

bool domain_covers(Domain f, Domain fam) {
  if (domain_has_negative(fam) && !domain_has_negative(f)) return false;
  if (domain_has_positive(fam) && !domain_has_positive(f)) return false;
  if (domain_has_zero(fam) && !domain_has_zero(f)) return false;
  return true;
}

struct Restricted {
  std::optional<SideForm> neg, pos;
  std::optional<Rational> zero;
  bool zero_undefined = false;
};

bool clause_matches(const Clause& cl, const Restricted& r, Domain dom) {
  std::vector<const SideForm*> sides;
  if (r.neg) sides.push_back(&*r.neg);
  if (r.pos) sides.push_back(&*r.pos);
  const bool has_zero = domain_has_zero(dom);
  if (has_zero && r.zero_undefined) return false;
  switch (cl.kind) {
    case Clause::Kind::AnyFunction:
      if (r.neg && !range_admits(cl.neg, sign_of(r.neg->c))) return false;
      if (r.pos && !range_admits(cl.pos, sign_of(r.pos->c))) return false;
      if (has_zero && !range_admits(cl.at_zero, sign_of(*r.zero))) return false;
      return true;
    case Clause::Kind::Constant: {
      std::optional<Rational> k;
      for (const SideForm* s : sides) {
        if (!s->constant()) return false;
        if (k && *k != s->c) return false;
        k = s->c;
      }
      if (has_zero) {
        if (k && *k != *r.zero) return false;
        k = *r.zero;
      }
      return range_admits(cl.c, sign_of(*k));
    }
    case Clause::Kind::ScaledSignum:
      for (const SideForm* s : sides)
        if (!s->constant() || !range_admits(cl.c, sign_of(s->c))) return false;
      if (sides.size() == 2 && sides[0]->c != sides[1]->c) return false;
      return !has_zero || *r.zero == 0;
    case Clause::Kind::ScaledPower: {
      if (sides.size() != 1) throw std::logic_error("scaled power clauses live on one half-line");
      const SideForm& s = *sides[0];
      if (!side_matches(s, {cl.c, cl.alpha})) return false;
      if (!has_zero) return true;
      if (s.c == 0) return *r.zero == 0;
      if (s.constant()) return *r.zero == s.c;  // c x^0 with 0^0 = 1
      return *r.zero == 0;
    }
    case Clause::Kind::PiecewiseTwoSided:
      if (r.neg && !side_matches(*r.neg, cl.neg_side)) return false;
      if (r.pos && !side_matches(*r.pos, cl.pos_side)) return false;
      if (has_zero && !range_admits(cl.at_zero, sign_of(*r.zero))) return false;
      return true;
  }
  return false;
}

}  // namespace

bool is_member(const FunctionSpec& f, const PreserverFamily& fam) {
  if (fam.partial) throw UndecidableMembership("membership undecidable: " + *fam.partial);
  if (!domain_covers(f.domain, fam.domain))
    throw std::invalid_argument("function domain " + to_string(f.domain) + " does not cover the family domain " +
                                to_string(fam.domain));
  Restricted r;
  if (domain_has_negative(fam.domain)) r.neg = side_form(f, -1);
  if (domain_has_positive(fam.domain)) r.pos = side_form(f, 1);
  if (domain_has_zero(fam.domain)) {
    try {
      r.zero = eval_exact(f, 0);
    } catch (const std::domain_error&) {
      r.zero_undefined = true;
    }
  }
  for (const auto& cl : fam.clauses)
    if (clause_matches(cl, r, fam.domain)) return true;
  return false;
}

bool signum_preserves(int m, int n, const std::optional<SignPattern>& eps) {
  const int d = std::min(m, n);
  if (!eps) return m == n ? n <= 3 : d <= 2;
  if (eps->size() != d) throw std::invalid_argument("sign pattern length must be min(m,n)");
  if (d <= 2) return true;
  const bool same = (*eps)(2) == (*eps)(3);
  return (*eps)(1) > 0 ? !same : same;
}

PreserverFamily mirror(const PreserverFamily& fam) {
  PreserverFamily g = fam;
  switch (fam.domain) {
    case Domain::NonNeg: g.domain = Domain::NonPos; break;
    case Domain::NonPos: g.domain = Domain::NonNeg; break;
    case Domain::Pos: g.domain = Domain::Neg; break;
    case Domain::Neg: g.domain = Domain::Pos; break;
    default: break;
  }
  if (fam.eps) g.eps = negation_map(*fam.eps);
  for (auto& cl : g.clauses) {
    cl.c = negate(cl.c);
    Range neg = cl.neg, pos = cl.pos;
    cl.neg = negate(pos);
    cl.pos = negate(neg);
    cl.at_zero = negate(cl.at_zero);
    SideClause ns = cl.neg_side, ps = cl.pos_side;
    cl.neg_side = {negate(ps.c), ps.alpha};
    cl.pos_side = {negate(ns.c), ns.alpha};
  }
  return g;
}

FunctionSpec power_map(const Query& q, const Exponent& alpha) {
  const Domain dom = q.domain();
  auto at_zero = [&]() -> std::optional<Rational> {
    if (alpha.lo > 0) return Rational(0);
    if (alpha.is_exact() && alpha.value() == 0) return Rational(1);
    return std::nullopt;
  };
  switch (dom) {
    case Domain::NonNeg:
    case Domain::Pos: return FunctionSpec::power(1, alpha, dom);
    case Domain::NonPos:
    case Domain::Neg: {
      auto z = at_zero();
      if (z) z = -*z;
      if (dom == Domain::Neg) z.reset();
      return FunctionSpec::piecewise({OneSided::Kind::Power, -1, alpha}, {OneSided::Kind::Power, -1, alpha}, z,
                                     dom);
    }
    case Domain::Real:
    case Domain::RealNonZero: {
      auto z = dom == Domain::Real ? at_zero() : std::nullopt;
      return FunctionSpec::piecewise({OneSided::Kind::Power, 1, alpha}, {OneSided::Kind::Power, 1, alpha}, z, dom);
    }
  }
  return FunctionSpec::power(1, alpha, dom);
}

// ---------------------------------------------------------------------------
// Empirical cross-check

EmpiricalVerdict test_preserver_empirically(const FunctionSpec& f, const Query& q, int trials,
                                            std::uint64_t seed, Precision p) {
  q.validate();
  EmpiricalVerdict v;
  const int d = q.d();
  for (int t = 0; t < trials; ++t) {
    auto rng = make_rng(seed, static_cast<std::uint64_t>(t));
    SignPattern eps;
    if (q.all_patterns) {
      std::vector<int> s(d);
      for (auto& x : s) x = (rng() & 1) ? 1 : -1;
      Domain dom = q.domain();
      if (dom == Domain::NonNeg || dom == Domain::Pos) s[0] = 1;
      eps = SignPattern(s);
    } else {
      eps = *q.eps;
    }
    const std::uint64_t sub = rng();
    QMatrix A = q.mode == Mode::SR ? random_sr(q.m, q.n, eps, sub) : random_ssr(q.m, q.n, eps, sub);
    ++v.trials_run;
    PatternCheck r;
    try {
      CertifiedMatrix img = apply_entrywise(f, A);
      if (q.all_patterns) r = q.mode == Mode::SR ? check_sr_any(img, p) : check_ssr_any(img, p);
      else r = q.mode == Mode::SR ? check_sr_with(img, eps, p) : check_ssr_with(img, eps, p);
    } catch (const std::domain_error& e) {
      v.consistent = false;
      v.violating_matrix = A;
      v.source_pattern = eps;
      v.note = std::string("image undefined: ") + e.what();
      return v;
    }
    if (r.verdict == Tri::False) {
      v.consistent = false;
      v.violating_matrix = A;
      v.source_pattern = eps;
      v.witness = r.witness;
      v.note = "certified violation in trial " + std::to_string(t);
      return v;
    }
    if (r.verdict == Tri::Undetermined) ++v.undetermined;
  }
  v.note = "no certified violation in " + std::to_string(trials) + " trials";
  if (v.undetermined > 0) v.note += " (" + std::to_string(v.undetermined) + " undetermined)";
  return v;
}

}  // namespace signreg
