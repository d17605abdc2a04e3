#include "signreg/funcspec.hpp"

#include <algorithm>
#include <memory>
#include <stdexcept>

namespace signreg {

std::string to_string(Domain d) {
  switch (d) {
    case Domain::NonNeg: return "[0,inf)";
    case Domain::Pos: return "(0,inf)";
    case Domain::Real: return "R";
    case Domain::RealNonZero: return "R\\{0}";
    case Domain::NonPos: return "(-inf,0]";
    case Domain::Neg: return "(-inf,0)";
  }
  return "?";
}

std::string domain_keyword(Domain d) {
  switch (d) {
    case Domain::NonNeg: return "nonneg";
    case Domain::Pos: return "positive";
    case Domain::Real: return "real";
    case Domain::RealNonZero: return "real-nonzero";
    case Domain::NonPos: return "nonpos";
    case Domain::Neg: return "negative";
  }
  return "?";
}

Domain parse_domain(const std::string& s) {
  for (Domain d : {Domain::NonNeg, Domain::Pos, Domain::Real, Domain::RealNonZero, Domain::NonPos,
                   Domain::Neg})
    if (s == to_string(d) || s == domain_keyword(d)) return d;
  throw std::invalid_argument("unknown domain '" + s + "'");
}

bool domain_contains(Domain d, const Rational& x) {
  int s = sgn(x);
  switch (d) {
    case Domain::NonNeg: return s >= 0;
    case Domain::Pos: return s > 0;
    case Domain::Real: return true;
    case Domain::RealNonZero: return s != 0;
    case Domain::NonPos: return s <= 0;
    case Domain::Neg: return s < 0;
  }
  return false;
}

bool domain_has_zero(Domain d) {
  return d == Domain::NonNeg || d == Domain::Real || d == Domain::NonPos;
}
bool domain_has_positive(Domain d) {
  return d == Domain::NonNeg || d == Domain::Pos || d == Domain::Real || d == Domain::RealNonZero;
}
bool domain_has_negative(Domain d) {
  return d == Domain::NonPos || d == Domain::Neg || d == Domain::Real || d == Domain::RealNonZero;
}

Exponent Exponent::enclosure(const Rational& lo, const Rational& hi) {
  if (lo > hi) throw std::invalid_argument("exponent enclosure with lo > hi");
  Exponent e;
  e.lo = lo;
  e.hi = hi;
  return e;
}

const Rational& Exponent::value() const {
  if (!is_exact()) throw std::logic_error("exponent is only known by an enclosure");
  return lo;
}

std::string Exponent::str() const {
  if (is_exact()) return to_string(lo);
  return "[" + to_string(lo) + "," + to_string(hi) + "]";
}

FunctionSpec FunctionSpec::power(const Rational& c, const Exponent& a, Domain d) {
  FunctionSpec f;
  f.kind = Kind::Power;
  f.c = c;
  f.alpha = a;
  f.domain = d;
  return f;
}

FunctionSpec FunctionSpec::signum(const Rational& c, Domain d) {
  FunctionSpec f;
  f.kind = Kind::ScaledSignum;
  f.c = c;
  f.alpha = 0;
  f.domain = d;
  return f;
}

FunctionSpec FunctionSpec::constant(const Rational& c, Domain d) {
  FunctionSpec f;
  f.kind = Kind::Constant;
  f.c = c;
  f.alpha = 0;
  f.domain = d;
  return f;
}

FunctionSpec FunctionSpec::piecewise(const OneSided& neg, const OneSided& pos,
                                     std::optional<Rational> at_zero, Domain d) {
  FunctionSpec f;
  f.kind = Kind::Piecewise;
  f.neg = neg;
  f.pos = pos;
  f.at_zero = std::move(at_zero);
  f.domain = d;
  return f;
}

namespace {
std::string side_str(const OneSided& s, bool negative) {
  std::string x = negative ? "|x|" : "x";
  switch (s.kind) {
    case OneSided::Kind::Power: return to_string(s.c) + "*" + x + "^" + s.alpha.str();
    case OneSided::Kind::Signum: return to_string(s.c) + "*sgn(" + x + ")";
    case OneSided::Kind::Constant: return to_string(s.c);
  }
  return "?";
}
}  // namespace

std::string FunctionSpec::describe() const {
  switch (kind) {
    case Kind::Power: return to_string(c) + "*x^" + alpha.str() + " on " + to_string(domain);
    case Kind::ScaledSignum: return to_string(c) + "*sgn(x) on " + to_string(domain);
    case Kind::Constant: return to_string(c) + " on " + to_string(domain);
    case Kind::Piecewise:
      return "x<0: " + side_str(neg, true) + "; x>0: " + side_str(pos, false) +
             "; f(0)=" + (at_zero ? to_string(*at_zero) : std::string("undefined")) + " on " +
             to_string(domain);
  }
  return "?";
}

std::optional<Rational> exact_pow(const Rational& b, const Rational& a) {
  if (b < 0) throw std::domain_error("exact_pow needs a non-negative base");
  if (b == 0) {
    if (a > 0) return Rational(0);
    if (a == 0) return Rational(1);
    throw std::domain_error("0 raised to a negative power");
  }
  if (a == 0) return Rational(1);
  const mpz_class& p = a.get_num();
  const mpz_class& q = a.get_den();
  if (!q.fits_ulong_p() || q.get_ui() > 4096) return std::nullopt;
  unsigned long qq = q.get_ui();
  mpz_class rn, rd;
  if (mpz_root(rn.get_mpz_t(), b.get_num_mpz_t(), qq) == 0) return std::nullopt;
  if (mpz_root(rd.get_mpz_t(), b.get_den_mpz_t(), qq) == 0) return std::nullopt;
  mpz_class ap = abs(p);
  if (!ap.fits_ulong_p()) return std::nullopt;
  unsigned long e = ap.get_ui();
  double cost = static_cast<double>(e) *
                static_cast<double>(mpz_sizeinbase(rn.get_mpz_t(), 2) + mpz_sizeinbase(rd.get_mpz_t(), 2));
  if (cost > 4e6) return std::nullopt;
  mpz_class n, d;
  mpz_pow_ui(n.get_mpz_t(), rn.get_mpz_t(), e);
  mpz_pow_ui(d.get_mpz_t(), rd.get_mpz_t(), e);
  Rational r = p > 0 ? Rational(n, d) : Rational(d, n);
  r.canonicalize();
  return r;
}

namespace {

void check_domain(const FunctionSpec& f, const Rational& x) {
  if (!domain_contains(f.domain, x))
    throw std::domain_error(to_string(x) + " lies outside the domain " + to_string(f.domain));
}

int exponent_sign(const Exponent& a) {
  if (a.lo > 0) return 1;
  if (a.hi < 0) return -1;
  if (a.lo == 0 && a.hi == 0) return 0;
  throw std::domain_error("exponent enclosure straddles 0; value at 0 is undecidable");
}

// c * |x|^alpha for x != 0, exact when possible.
std::optional<Rational> power_mag_exact(const Rational& c, const Exponent& a, const Rational& mag) {
  if (c == 0) return Rational(0);
  if (!a.is_exact()) return std::nullopt;
  auto p = exact_pow(mag, a.value());
  if (!p) return std::nullopt;
  return Rational(c * *p);
}

Interval power_mag_enclosure(const Rational& c, const Exponent& a, const Interval& mag) {
  Interval cc(c, mag.precision());
  if (c == 0) return cc;
  if (a.is_exact() && a.value() == 0) return cc;
  return cc * pow_positive(mag, a.interval(mag.precision()));
}

std::optional<Rational> side_exact(const OneSided& s, const Rational& mag) {
  if (s.kind == OneSided::Kind::Power) return power_mag_exact(s.c, s.alpha, mag);
  return s.c;
}

Interval side_enclosure(const OneSided& s, const Interval& mag) {
  if (s.kind == OneSided::Kind::Power) return power_mag_enclosure(s.c, s.alpha, mag);
  return Interval(s.c, mag.precision());
}

Rational value_at_zero(const FunctionSpec& f) {
  switch (f.kind) {
    case FunctionSpec::Kind::Power: {
      int s = exponent_sign(f.alpha);
      if (s < 0) throw std::domain_error("0 raised to a negative power");
      return s == 0 ? f.c : Rational(0);
    }
    case FunctionSpec::Kind::ScaledSignum: return 0;
    case FunctionSpec::Kind::Constant: return f.c;
    case FunctionSpec::Kind::Piecewise:
      if (!f.at_zero) throw std::domain_error("f(0) is undefined for this piecewise spec");
      return *f.at_zero;
  }
  return 0;
}

// Sign multiplier for x^alpha at negative x with integer alpha.
int negative_power_parity(const Exponent& a) {
  if (!a.is_exact() || !is_integer(a.value()))
    throw std::domain_error("negative base needs an integer exponent");
  return mpz_odd_p(a.value().get_num_mpz_t()) ? -1 : 1;
}

}  // namespace

std::optional<Rational> eval_exact(const FunctionSpec& f, const Rational& x) {
  check_domain(f, x);
  if (x == 0) return value_at_zero(f);
  const Rational mag = abs(x);
  const int s = sgn(x);
  switch (f.kind) {
    case FunctionSpec::Kind::Power: {
      int parity = s > 0 ? 1 : negative_power_parity(f.alpha);
      auto v = power_mag_exact(f.c, f.alpha, mag);
      if (!v) return std::nullopt;
      return Rational(parity * *v);
    }
    case FunctionSpec::Kind::ScaledSignum: return Rational(s * f.c);
    case FunctionSpec::Kind::Constant: return f.c;
    case FunctionSpec::Kind::Piecewise: return side_exact(s > 0 ? f.pos : f.neg, mag);
  }
  return std::nullopt;
}

Interval eval_enclosure(const FunctionSpec& f, const Rational& x, mpfr_prec_t bits) {
  if (auto e = eval_exact(f, x)) return Interval(*e, bits);
  const Interval mag(Rational(abs(x)), bits);
  const int s = sgn(x);
  if (f.kind == FunctionSpec::Kind::Power) {
    int parity = s > 0 ? 1 : negative_power_parity(f.alpha);
    Interval v = power_mag_enclosure(f.c, f.alpha, mag);
    return parity > 0 ? v : -v;
  }
  return side_enclosure(s > 0 ? f.pos : f.neg, mag);
}

std::string CertReal::str() const {
  if (exact) return to_string(*exact);
  return enclosure.to_string();
}

CertReal eval(const FunctionSpec& f, const Rational& x, mpfr_prec_t bits) {
  auto e = eval_exact(f, x);
  if (e) return {e, Interval(*e, bits)};
  return {std::nullopt, eval_enclosure(f, x, bits)};
}

CertifiedMatrix apply_entrywise(const FunctionSpec& f, const QMatrix& A) {
  std::vector<std::optional<Rational>> ex;
  ex.reserve(static_cast<std::size_t>(A.size()));
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < A.cols(); ++j) ex.push_back(eval_exact(f, A(i, j)));
  auto src = std::make_shared<QMatrix>(A);
  auto spec = std::make_shared<FunctionSpec>(f);
  CertifiedMatrix M(static_cast<int>(A.rows()), static_cast<int>(A.cols()),
                    [src, spec](int i, int j, mpfr_prec_t bits) {
                      return eval_enclosure(*spec, (*src)(i, j), bits);
                    },
                    std::move(ex));
  M.set_source(A, f.kind != FunctionSpec::Kind::Piecewise);
  return M;
}

std::optional<QMatrix> apply_entrywise_exact(const FunctionSpec& f, const QMatrix& A) {
  QMatrix B(A.rows(), A.cols());
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < A.cols(); ++j) {
      auto v = eval_exact(f, A(i, j));
      if (!v) return std::nullopt;
      B(i, j) = *v;
    }
  return B;
}

CertifiedMatrix hadamard_power(const QMatrix& A, const Exponent& alpha) {
  bool integral = alpha.is_exact() && is_integer(alpha.value());
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < A.cols(); ++j) {
      if (A(i, j) < 0 && !integral)
        throw std::domain_error("negative entry with a fractional exponent");
      if (A(i, j) == 0 && (alpha.hi < 0 || (alpha.lo < 0 && alpha.hi >= 0 && !alpha.is_exact())))
        throw std::domain_error("A^alpha is undefined: zero entry with a negative exponent");
    }
  return apply_entrywise(FunctionSpec::power(1, alpha, Domain::Real), A);
}

// ---------------------------------------------------------------------------

Interval RealFunction::at(const Rational& x, mpfr_prec_t bits) const {
  if (exact)
    if (auto e = exact(x)) return Interval(*e, bits);
  return enclose(Interval(x, bits));
}

RealFunction as_real_function(const FunctionSpec& f) {
  RealFunction r;
  r.name = f.describe();
  r.exact = [f](const Rational& x) { return eval_exact(f, x); };
  r.enclose = [f](const Interval& X) -> Interval {
    const mpfr_prec_t bits = X.precision();
    if (X.positive()) {
      if (!domain_has_positive(f.domain)) throw std::domain_error("argument outside the domain");
      switch (f.kind) {
        case FunctionSpec::Kind::Power: return power_mag_enclosure(f.c, f.alpha, X);
        case FunctionSpec::Kind::ScaledSignum:
        case FunctionSpec::Kind::Constant: return Interval(f.c, bits);
        case FunctionSpec::Kind::Piecewise: return side_enclosure(f.pos, X);
      }
    }
    if (X.negative()) {
      if (!domain_has_negative(f.domain)) throw std::domain_error("argument outside the domain");
      Interval mag = -X;
      switch (f.kind) {
        case FunctionSpec::Kind::Power: {
          Interval v = power_mag_enclosure(f.c, f.alpha, mag);
          return negative_power_parity(f.alpha) > 0 ? v : -v;
        }
        case FunctionSpec::Kind::ScaledSignum: return Interval(Rational(-f.c), bits);
        case FunctionSpec::Kind::Constant: return Interval(f.c, bits);
        case FunctionSpec::Kind::Piecewise: return side_enclosure(f.neg, mag);
      }
    }
    if (mpfr_zero_p(X.lower()) && mpfr_zero_p(X.upper())) {
      if (!domain_has_zero(f.domain)) throw std::domain_error("argument outside the domain");
      return Interval(value_at_zero(f), bits);
    }
    throw std::domain_error("argument range straddles 0");
  };
  return r;
}

std::vector<std::pair<Rational, Rational>> default_grid() {
  std::vector<Rational> mesh;
  for (int i = 0; i < 64; ++i) {
    int e = i / 2 - 16;
    Rational p = e >= 0 ? Rational(mpz_class(1) << e) : Rational(1, mpz_class(1) << -e);
    if (i % 2 == 1) p *= Rational(181, 128);  // about sqrt(2)
    mesh.push_back(p);
  }
  std::vector<std::pair<Rational, Rational>> grid;
  for (std::size_t i = 0; i < mesh.size(); ++i)
    for (std::size_t j = i; j < mesh.size(); j += 3) grid.emplace_back(mesh[i], mesh[j]);
  for (int k = 1; k <= 20; ++k) {
    Rational h(1, mpz_class(1) << k);
    grid.emplace_back(1 - h, 1 + h);
    grid.emplace_back(Rational(1), 1 + h);
    grid.emplace_back(1 - h, Rational(1));
  }
  return grid;
}

namespace {

// f(sqrt(p)) for rational p >= 0; exact argument when p is a perfect square.
Interval eval_at_sqrt(const RealFunction& f, const Rational& p, mpfr_prec_t bits) {
  if (auto r = exact_pow(p, Rational(1, 2))) return f.at(*r, bits);
  return f.enclose(sqrt(Interval(p, bits)));
}

}  // namespace

PropertyVerdict check_mid_convex(const RealFunction& f,
                                 const std::vector<std::pair<Rational, Rational>>& grid,
                                 mpfr_prec_t bits) {
  PropertyVerdict v;
  for (const auto& [x, y] : grid) {
    Interval fx = f.at(x, bits), fy = f.at(y, bits);
    Interval fm = eval_at_sqrt(f, x * y, bits);
    if (fx.negative() || fy.negative() || fm.negative())
      throw std::domain_error("mid-convexity is undefined for negative values of f");
    // f(sqrt(xy)) <= sqrt(f(x) f(y))  <=>  f(sqrt(xy))^2 <= f(x) f(y)
    Interval slack = fx * fy - fm * fm;
    if (slack.negative()) {
      v.holds = false;
      v.counterexample = {x, y};
      v.note = "f(sqrt(xy))^2 exceeds f(x)f(y) by " + (-slack).to_string(10);
      return v;
    }
    if (!slack.positive()) ++v.undecided;
  }
  v.note = "consistent on " + std::to_string(grid.size()) + " pairs";
  return v;
}

PropertyVerdict check_mid_convex(const FunctionSpec& f,
                                 const std::vector<std::pair<Rational, Rational>>& grid) {
  return check_mid_convex(as_real_function(f), grid);
}

PropertyVerdict check_functional_equation(const RealFunction& f,
                                          const std::vector<std::vector<Rational>>& samples,
                                          FunctionalForm form, mpfr_prec_t bits) {
  PropertyVerdict v;
  for (const auto& s : samples) {
    std::optional<Rational> lx, rx;
    Interval lhs(bits), rhs(bits);
    if (form == FunctionalForm::Fixed2x2) {
      if (s.size() != 2) throw std::invalid_argument("fixed 2x2 samples are (x, y)");
      lhs = f.at(s[0], bits) * f.at(s[1], bits);
      rhs = f.at(1, bits) * f.at(s[0] * s[1], bits);
    } else {
      if (s.size() != 3) throw std::invalid_argument("all-sign samples are (a, x, y)");
      const Rational &a = s[0], &x = s[1], &y = s[2];
      lhs = f.at(a * x, bits) * f.at(a * y, bits);
      rhs = f.at(a, bits) * f.at(a * x * y, bits);
    }
    Interval diff = lhs - rhs;
    v.max_residual = std::max(v.max_residual, std::max(std::abs(diff.lower_d()), std::abs(diff.upper_d())));
    if (!diff.contains_zero()) {
      v.holds = false;
      v.counterexample = s;
      v.note = "sides differ by " + diff.to_string(10);
      return v;
    }
    if (!(mpfr_zero_p(diff.lower()) && mpfr_zero_p(diff.upper()))) ++v.undecided;
  }
  v.note = "consistent on " + std::to_string(samples.size()) + " samples";
  return v;
}

PropertyVerdict check_functional_equation(const FunctionSpec& f,
                                          const std::vector<std::vector<Rational>>& samples,
                                          FunctionalForm form) {
  return check_functional_equation(as_real_function(f), samples, form);
}

PropertyVerdict check_monotone_and_sign(const RealFunction& f, HalfLine h,
                                        const std::vector<Rational>& samples, mpfr_prec_t bits) {
  PropertyVerdict v;
  const int side = h == HalfLine::Pos ? 1 : -1;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (sgn(samples[i]) != side) throw std::invalid_argument("sample outside the half-line");
    if (i > 0 && samples[i] <= samples[i - 1]) throw std::invalid_argument("samples must increase");
  }
  bool nonneg = true, nonpos = true, up = true, down = true;
  std::vector<Interval> vals;
  for (const auto& x : samples) vals.push_back(f.at(x, bits));
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (vals[i].negative()) nonneg = false;
    if (vals[i].positive()) nonpos = false;
    if (i > 0) {
      Interval d = vals[i] - vals[i - 1];
      if (d.negative()) up = false;
      if (d.positive()) down = false;
    }
  }
  for (bool s : {true, false})
    for (bool m : {true, false}) {
      if ((s ? nonneg : nonpos) && (m ? up : down))
        v.classes.push_back(std::string(s ? "non-negative" : "non-positive") + "/" +
                            (m ? "non-decreasing" : "non-increasing"));
    }
  // f(g x) f(g y) = f(g sqrt(xy))^2 with g the half-line sign, x, y > 0.
  for (std::size_t i = 0; i < samples.size(); ++i) {
    for (std::size_t j = i + 1; j < samples.size(); j += 2) {
      Rational x = abs(samples[i]), y = abs(samples[j]);
      Interval lhs = f.at(side * x, bits) * f.at(side * y, bits);
      Interval mid(bits);
      if (auto r = exact_pow(x * y, Rational(1, 2))) mid = f.at(side * *r, bits);
      else {
        Interval s = sqrt(Interval(x * y, bits));
        mid = f.enclose(side > 0 ? s : -s);
      }
      Interval diff = lhs - mid * mid;
      v.max_residual = std::max(v.max_residual, std::max(std::abs(diff.lower_d()), std::abs(diff.upper_d())));
      if (!diff.contains_zero()) {
        v.holds = false;
        v.counterexample = {samples[i], samples[j]};
        v.note = "sqrt identity fails by " + diff.to_string(10);
        return v;
      }
    }
  }
  if (v.classes.empty()) {
    v.holds = false;
    v.note = "samples fit no sign/monotonicity class";
  } else {
    v.note = "consistent with " + std::to_string(v.classes.size()) + " class(es)";
  }
  return v;
}

PropertyVerdict check_monotone_and_sign(const FunctionSpec& f, HalfLine h,
                                        const std::vector<Rational>& samples) {
  return check_monotone_and_sign(as_real_function(f), h, samples);
}

PropertyVerdict check_ssr2x2_conditions(const FunctionSpec& f, const std::vector<Rational>& samples) {
  if (f.domain != Domain::RealNonZero) throw std::invalid_argument("conditions are stated on R\\{0}");
  const mpfr_prec_t bits = 128;
  RealFunction g = as_real_function(f);
  Interval f1 = g.at(1, bits), fm1 = g.at(-1, bits);
  if (f1.contains_zero() || fm1.contains_zero())
    throw std::domain_error("f(1) or f(-1) is zero; the conditions degenerate");
  PropertyVerdict v;
  std::vector<Rational> pos, neg;
  for (const auto& x : samples) {
    if (x > 0) pos.push_back(x);
    else if (x < 0) neg.push_back(x);
  }
  // (1) strict sign constancy on each half-line.
  for (const auto* side : {&pos, &neg}) {
    int s0 = 0;
    for (const auto& x : *side) {
      int s = g.at(x, bits).certain_sign();
      if (s == 0) {
        v.holds = false;
        v.counterexample = {x};
        v.note = "f vanishes or changes sign near " + to_string(x);
        return v;
      }
      if (s0 == 0) s0 = s;
      else if (s != s0) {
        v.holds = false;
        v.counterexample = {(*side)[0], x};
        v.note = "sign changes within a half-line";
        return v;
      }
    }
  }
  // (2) injectivity.
  std::vector<Interval> vals;
  for (const auto& x : samples) vals.push_back(g.at(x, bits));
  for (std::size_t i = 0; i < samples.size(); ++i)
    for (std::size_t j = i + 1; j < samples.size(); ++j) {
      if (samples[i] == samples[j]) continue;
      auto ei = g.exact(samples[i]), ej = g.exact(samples[j]);
      if (ei && ej && *ei == *ej) {
        v.holds = false;
        v.counterexample = {samples[i], samples[j]};
        v.note = "not injective";
        return v;
      }
      if ((vals[i] - vals[j]).contains_zero() && !(ei && ej)) ++v.undecided;
    }
  // (3) g2(x) = f(x)/f(1) multiplicative on (0, inf).
  for (std::size_t i = 0; i < pos.size(); ++i)
    for (std::size_t j = i; j < pos.size(); ++j) {
      Interval d = g.at(pos[i] * pos[j], bits) * f1 - g.at(pos[i], bits) * g.at(pos[j], bits);
      if (!d.contains_zero()) {
        v.holds = false;
        v.counterexample = {pos[i], pos[j]};
        v.note = "f(x)/f(1) is not multiplicative";
        return v;
      }
    }
  // (4) negative side, determinant form: x1 x4 != x2 x3 must give
  // f(x1) f(x4) != f(x2) f(x3) for 2x2 quadruples of negative samples.
  const std::size_t lim = std::min<std::size_t>(neg.size(), 8);
  for (std::size_t a = 0; a < lim; ++a)
    for (std::size_t b = 0; b < lim; ++b)
      for (std::size_t c = 0; c < lim; ++c)
        for (std::size_t d = 0; d < lim; ++d) {
          const Rational &x1 = neg[a], &x2 = neg[b], &x3 = neg[c], &x4 = neg[d];
          if (x1 * x4 == x2 * x3) continue;
          auto e1 = g.exact(x1), e2 = g.exact(x2), e3 = g.exact(x3), e4 = g.exact(x4);
          if (e1 && e2 && e3 && e4) {
            if (*e1 * *e4 == *e2 * *e3) {
              v.holds = false;
              v.counterexample = {x1, x2, x3, x4};
              v.note = "2x2 image determinant vanishes on a non-singular quadruple";
              return v;
            }
            continue;
          }
          Interval dd = g.at(x1, bits) * g.at(x4, bits) - g.at(x2, bits) * g.at(x3, bits);
          if (dd.contains_zero()) ++v.undecided;
        }
  v.note = "consistent on " + std::to_string(samples.size()) + " samples";
  return v;
}

}  // namespace signreg
