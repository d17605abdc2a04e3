#include "signreg/expsum.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace signreg {

ExpSum::ExpSum(std::vector<ExpTerm> terms) {
  for (const auto& t : terms)
    if (t.base <= 0) throw std::invalid_argument("exponential sum bases must be positive");
  std::sort(terms.begin(), terms.end(),
            [](const ExpTerm& a, const ExpTerm& b) { return a.base < b.base; });
  for (auto& t : terms) {
    if (!terms_.empty() && terms_.back().base == t.base) terms_.back().c += t.c;
    else terms_.push_back(t);
  }
  terms_.erase(std::remove_if(terms_.begin(), terms_.end(), [](const ExpTerm& t) { return t.c == 0; }),
               terms_.end());
}

std::string ExpSum::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const auto& t = terms_[i];
    Rational c = t.c;
    if (i > 0) {
      s += c < 0 ? " - " : " + ";
      c = abs(c);
    } else if (c < 0) {
      s += "-";
      c = -c;
    }
    if (c != 1) s += to_string(c) + "*";
    s += to_string(t.base) + "^a";
  }
  return s;
}

bool ExpSum::operator==(const ExpSum& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i)
    if (terms_[i].c != o.terms_[i].c || terms_[i].base != o.terms_[i].base) return false;
  return true;
}

ExpSum from_hadamard_det(const QMatrix& A, int cap) {
  const int n = static_cast<int>(A.rows());
  if (n != A.cols()) throw std::invalid_argument("from_hadamard_det needs a square matrix");
  if (n > cap) throw std::invalid_argument("matrix exceeds the permutation-expansion cap");
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < A.cols(); ++j)
      if (A(i, j) <= 0) throw std::invalid_argument("from_hadamard_det needs positive entries");
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<ExpTerm> terms;
  do {
    int inv = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inv;
    Rational b = 1;
    for (int i = 0; i < n; ++i) b *= A(i, perm[i]);
    terms.push_back({Rational(inv % 2 == 0 ? 1 : -1), b});
  } while (std::next_permutation(perm.begin(), perm.end()));
  return ExpSum(std::move(terms));
}

std::optional<Rational> eval_exact(const ExpSum& S, const Rational& alpha) {
  Rational sum = 0;
  for (const auto& t : S.terms()) {
    auto p = exact_pow(t.base, alpha);
    if (!p) return std::nullopt;
    sum += t.c * *p;
  }
  return sum;
}

CertReal eval(const ExpSum& S, const Exponent& alpha, mpfr_prec_t bits) {
  if (alpha.is_exact())
    if (auto e = eval_exact(S, alpha.value())) return {e, Interval(*e, bits)};
  Rational exact_part = 0;
  Interval acc(Rational(0), bits);
  const Interval a = alpha.interval(bits);
  for (const auto& t : S.terms()) {
    if (alpha.is_exact())
      if (auto p = exact_pow(t.base, alpha.value())) {
        exact_part += t.c * *p;
        continue;
      }
    acc += Interval(t.c, bits) * pow_positive(Interval(t.base, bits), a);
  }
  return {std::nullopt, acc + Interval(exact_part, bits)};
}

int descartes_bound(const ExpSum& S) {
  int changes = 0;
  for (std::size_t i = 1; i < S.terms().size(); ++i)
    if (sgn(S.terms()[i].c) != sgn(S.terms()[i - 1].c)) ++changes;
  return changes;
}

namespace {

// prod b_i^{c_i} == 1, decided in exact arithmetic after clearing the
// coefficient denominators.
std::optional<bool> log_relation_vanishes(const ExpSum& S) {
  mpz_class den = 1;
  for (const auto& t : S.terms()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), t.c.get_den_mpz_t());
  Rational num_side = 1, den_side = 1;
  for (const auto& t : S.terms()) {
    mpz_class e = t.c.get_num() * (den / t.c.get_den());
    mpz_class ae = abs(e);
    if (!ae.fits_ulong_p() || ae.get_ui() > 100000) return std::nullopt;
    mpz_class pn, pd;
    mpz_pow_ui(pn.get_mpz_t(), t.base.get_num_mpz_t(), ae.get_ui());
    mpz_pow_ui(pd.get_mpz_t(), t.base.get_den_mpz_t(), ae.get_ui());
    Rational p(pn, pd);
    p.canonicalize();
    if (e > 0) num_side *= p;
    else den_side *= p;
  }
  return num_side == den_side;
}

}  // namespace

std::vector<TaylorCoefficient> taylor_at_zero(const ExpSum& S, int order, mpfr_prec_t bits) {
  if (order < 0) throw std::invalid_argument("Taylor order must be non-negative");
  std::vector<Interval> logs;
  for (const auto& t : S.terms()) logs.push_back(log(Interval(t.base, bits)));
  std::vector<TaylorCoefficient> out;
  mpz_class fact = 1;
  for (int j = 0; j <= order; ++j) {
    if (j > 0) fact *= j;
    TaylorCoefficient tc{j, std::nullopt, Interval(bits), ""};
    Interval acc(Rational(0), bits);
    std::string recipe;
    for (std::size_t i = 0; i < S.terms().size(); ++i) {
      const auto& t = S.terms()[i];
      acc += Interval(t.c, bits) * pow_int(logs[i], j);
      if (!recipe.empty()) recipe += " + ";
      recipe += "(" + to_string(t.c) + ")*log(" + to_string(t.base) + ")^" + std::to_string(j);
    }
    tc.enclosure = acc / Interval(Rational(fact), bits);
    tc.recipe = "[" + recipe + "]/" + fact.get_str();
    if (j == 0) {
      Rational s = 0;
      for (const auto& t : S.terms()) s += t.c;
      tc.exact = s;
      tc.enclosure = Interval(s, bits);
    } else if (j == 1) {
      auto v = log_relation_vanishes(S);
      if (v && *v) {
        tc.exact = Rational(0);
        tc.enclosure = Interval(Rational(0), bits);
        tc.recipe += " = 0 (product of b_i^c_i equals 1)";
      }
    }
    out.push_back(std::move(tc));
  }
  return out;
}

SignVerdict certified_sign(const ExpSum& S, const Exponent& alpha, Precision p) {
  if (alpha.is_exact())
    if (auto e = eval_exact(S, alpha.value())) return SignVerdict::of(sgn(*e));
  double w = 0;
  for (mpfr_prec_t bits = p.bits; bits <= p.max_bits; bits *= 2) {
    CertReal v = eval(S, alpha, bits);
    if (v.exact) return SignVerdict::of(sgn(*v.exact));
    int s = v.enclosure.certain_sign();
    if (s != 0) return SignVerdict::of(s);
    w = v.enclosure.width();
  }
  return SignVerdict::undetermined(w);
}

namespace {

struct SignedPoint {
  Rational x;
  int s;
};

class Bracketer {
 public:
  Bracketer(const ExpSum& S, Precision p) : S_(S), p_(p) {}

  SignVerdict at(const Rational& x) const { return certified_sign(S_, Exponent(x), p_); }

  // A point near x (inside [lo, hi]) with a certified nonzero sign.
  std::optional<SignedPoint> nonzero_near(const Rational& x, const Rational& lo, const Rational& hi) const {
    SignVerdict v = at(x);
    if (v.determined() && v.value() != 0) return SignedPoint{x, v.value()};
    Rational h = (hi - lo) / 64;
    for (int i = 0; i < 12; ++i, h /= 4) {
      for (int dir : {1, -1}) {
        Rational y = x + dir * h;
        if (y <= lo || y >= hi) continue;
        SignVerdict w = at(y);
        if (w.determined() && w.value() != 0) return SignedPoint{y, w.value()};
      }
    }
    return std::nullopt;
  }

  // Bisect [a, b] (opposite signs at the ends) down to width tol.
  std::optional<RootBracket> refine(SignedPoint a, SignedPoint b, const Rational& tol) const {
    for (int iter = 0; iter < 4000 && b.x - a.x > tol; ++iter) {
      Rational m = (a.x + b.x) / 2;
      SignVerdict v = at(m);
      if (v.determined() && v.value() == 0) {
        // Exact root at m: squeeze a symmetric bracket around it.
        Rational h = std::min<Rational>((b.x - a.x) / 4, tol / 2);
        for (int i = 0; i < 200; ++i, h /= 2) {
          SignVerdict l = at(m - h), r = at(m + h);
          if (l.determined() && r.determined() && l.value() * r.value() < 0)
            return RootBracket{m - h, m + h, l.sign, r.sign};
          if (l.determined() && r.determined() && l.value() == r.value() && l.value() != 0) {
            // Even-order root at m; the sign change lies on one side.
            if (l.value() != a.s) b = {m - h, l.value()};
            else a = {m + h, r.value()};
            break;
          }
        }
        continue;
      }
      if (!v.determined()) {
        auto q = nonzero_near(m, a.x, b.x);
        if (!q) throw std::runtime_error("bracket refinement: sign undetermined near " + to_string(m));
        if (q->s == a.s) a = *q;
        else b = *q;
        continue;
      }
      if (v.value() == a.s) a = {m, v.value()};
      else b = {m, v.value()};
    }
    if (b.x - a.x > tol) return std::nullopt;
    return RootBracket{a.x, b.x, SignVerdict::of(a.s).sign, SignVerdict::of(b.s).sign};
  }

 private:
  const ExpSum& S_;
  Precision p_;
};

}  // namespace

std::vector<RootBracket> bracket_roots(const ExpSum& S, const Rational& a, const Rational& b,
                                       const Rational& tol, Precision p, int grid) {
  if (a >= b) throw std::invalid_argument("bracket interval must have a < b");
  if (tol <= 0) throw std::invalid_argument("tolerance must be positive");
  Bracketer br(S, p);
  for (const Rational* e : {&a, &b})
    if (!br.at(*e).determined())
      throw std::runtime_error("endpoint sign undetermined at the precision cap: " + to_string(*e));
  // Sample points with certified nonzero sign; exact zeros become pairs.
  std::vector<SignedPoint> pts;
  Rational step = (b - a) / grid;
  for (int i = 0; i <= grid; ++i) {
    Rational x = a + step * i;
    SignVerdict v = br.at(x);
    if (v.determined() && v.value() != 0) {
      pts.push_back({x, v.value()});
      continue;
    }
    Rational lo = i == 0 ? a : x - step / 2, hi = i == grid ? b : x + step / 2;
    if (v.determined()) {
      // exact zero: look at both sides
      Rational h = std::min<Rational>(step / 4, tol / 2);
      for (int k = 0; k < 200; ++k, h /= 2) {
        SignVerdict l = i == 0 ? SignVerdict::of(0) : br.at(x - h);
        SignVerdict r = i == grid ? SignVerdict::of(0) : br.at(x + h);
        bool lok = i == 0 || (l.determined() && l.value() != 0);
        bool rok = i == grid || (r.determined() && r.value() != 0);
        if (lok && rok) {
          if (i != 0) pts.push_back({x - h, l.value()});
          if (i != grid) pts.push_back({x + h, r.value()});
          break;
        }
      }
      continue;
    }
    if (auto q = br.nonzero_near(x, lo, hi)) pts.push_back(*q);
  }
  std::vector<RootBracket> out;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (pts[i].s == pts[i - 1].s) continue;
    auto r = br.refine(pts[i - 1], pts[i], tol);
    if (!r) throw std::runtime_error("bracket refinement did not reach the tolerance");
    out.push_back(*r);
  }
  if (static_cast<int>(out.size()) > descartes_bound(S))
    throw std::logic_error("more sign changes than the Descartes bound allows");
  return out;
}

}  // namespace signreg
