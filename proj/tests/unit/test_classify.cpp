#include "doctest.h"
#include "signreg/classify.hpp"
#include "test_helpers.hpp"

using namespace signreg;
using signreg::testing::Q;

namespace {

std::vector<SignPattern> all_patterns_of(int d) {
  std::vector<SignPattern> out;
  for (int mask = 0; mask < (1 << d); ++mask) {
    std::vector<int> s(d);
    for (int i = 0; i < d; ++i) s[i] = (mask >> i) & 1 ? -1 : 1;
    out.emplace_back(s);
  }
  return out;
}

const std::vector<Rational> kAlphas{-2, Q("-1/2"), 0, Q("1/4"), Q("1/2"), Q("3/4"), 1, Q("3/2"), 2, 3};

}  // namespace

TEST_CASE("exponent sets") {
  auto s = ExponentSet::point(0).unite(ExponentSet::interval(Rational(1), true, std::nullopt, false));
  CHECK(s.str() == "{0} U [1,inf)");
  CHECK(ExponentSet::from_string(s.str()) == s);
  auto merged = ExponentSet::interval(Rational(0), true, Rational(1), true)
                    .unite(ExponentSet::interval(Rational(1), true, std::nullopt, false));
  CHECK(merged.str() == "[0,inf)");
  auto half_open = ExponentSet::interval(Rational(0), false, Rational(1), false).unite(ExponentSet::point(1));
  CHECK(half_open.str() == "(0,1]");
  CHECK(ExponentSet::point(0).unite(ExponentSet::point(1)).str() == "{0,1}");
  CHECK(ExponentSet::nonzero_reals().str() == "R\\{0}");
  CHECK(ExponentSet::from_string("R\\{0}") == ExponentSet::nonzero_reals());
  CHECK(ExponentSet::real().unite(ExponentSet::point(3)) == ExponentSet::real());
  CHECK(ExponentSet().str() == "{}");
  CHECK_FALSE(ExponentSet::nonzero_reals().contains(Rational(0)));
  CHECK(s.contains(Exponent::enclosure(Q("141/100"), Q("142/100"))));
  CHECK_FALSE(s.contains(Exponent::enclosure(Q("99/100"), Q("101/100"))));
  CHECK(ExponentSet::point(1).subset_of(s));
  CHECK_FALSE(merged.subset_of(s));
  CHECK_THROWS(ExponentSet::from_string("[0,1"));
}

TEST_CASE("fixed pattern tables") {
  auto f = classify(fixed_query(5, 7, Mode::SSR, SignPattern::parse("+-++-")));
  REQUIRE(f.clauses.size() == 1);
  CHECK(f.clauses[0].kind == Clause::Kind::ScaledPower);
  CHECK(f.clauses[0].c == Range::Pos);
  CHECK(f.clauses[0].alpha.str() == "{1}");
  CHECK(f.domain == Domain::Pos);

  auto g = classify(fixed_query(3, 3, Mode::SR, SignPattern::parse("++-")));
  REQUIRE(g.clauses.size() == 2);
  CHECK(g.clauses[0].kind == Clause::Kind::ScaledSignum);
  CHECK(g.clauses[1].alpha.str() == "[0,1]");

  auto h = classify(fixed_query(3, 4, Mode::SR, SignPattern::parse("+--")));
  REQUIRE(h.clauses.size() == 1);
  CHECK(h.clauses[0].alpha.str() == "{0} U [1,inf)");

  auto k = classify(fixed_query(2, 6, Mode::SSR, SignPattern::parse("-+")));
  CHECK(k.domain == Domain::Neg);
  CHECK(k.clauses[0].c == Range::Neg);
  CHECK(k.clauses[0].alpha.str() == "(0,inf)");

  CHECK_THROWS(fixed_query(3, 3, Mode::SR, SignPattern::parse("++")));
  CHECK_THROWS(classify(Query{3, 3, Mode::SR, false, SignPattern::parse("+++"), Domain::Real}));
}

TEST_CASE("all pattern tables") {
  auto f = classify(all_patterns_query(4, 4, Mode::SR));
  REQUIRE(f.clauses.size() == 2);
  CHECK(f.clauses[0].kind == Clause::Kind::Constant);
  CHECK(f.clauses[0].c == Range::NonZero);
  CHECK(f.clauses[1].kind == Clause::Kind::PiecewiseTwoSided);
  CHECK(f.clauses[1].neg_side.alpha.str() == "{1}");
  CHECK(f.clauses[1].at_zero == Range::Zero);

  CHECK(classify(all_patterns_query(2, 2, Mode::SSR)).partial.has_value());
  CHECK(classify(all_patterns_query(2, 2, Mode::SSR, Domain::Pos)).partial.has_value());
  auto r = classify(all_patterns_query(2, 5, Mode::SSR));
  CHECK(r.clauses[0].pos_side.alpha.str() == "R\\{0}");
  CHECK(classify(all_patterns_query(3, 5, Mode::SR)).clauses[1].pos_side.alpha.str() == "{1}");
  CHECK(classify(all_patterns_query(3, 3, Mode::SR)).clauses[1].pos_side.alpha.str() == "[0,inf)");
  CHECK(classify(all_patterns_query(5, 5, Mode::SR, Domain::NonNeg)).clauses[0].alpha.str() == "{0,1}");
  CHECK_THROWS(all_patterns_query(3, 3, Mode::SSR, Domain::NonNeg));
}

TEST_CASE("membership") {
  auto same = classify(fixed_query(3, 3, Mode::SR, SignPattern::parse("+++")));
  auto diff = classify(fixed_query(3, 3, Mode::SR, SignPattern::parse("++-")));
  CHECK(is_member(FunctionSpec::power(2, 2), same));
  CHECK(is_member(FunctionSpec::power(2, 0), same));
  CHECK_FALSE(is_member(FunctionSpec::power(2, Q("1/2")), same));
  CHECK_FALSE(is_member(FunctionSpec::signum(1), same));
  CHECK(is_member(FunctionSpec::signum(1), diff));
  CHECK(is_member(FunctionSpec::power(1, Q("1/2")), diff));
  CHECK_FALSE(is_member(FunctionSpec::power(-1, Q("1/2")), diff));
  CHECK(is_member(FunctionSpec::constant(0), diff));
  CHECK(is_member(FunctionSpec::constant(3), diff));  // 3 x^0
  CHECK(is_member(FunctionSpec::power(3, 0), diff));

  auto all3 = classify(all_patterns_query(3, 3, Mode::SR));
  auto pw = FunctionSpec::piecewise({OneSided::Kind::Power, -2, Q("1/2")}, {OneSided::Kind::Power, 5, 3}, Rational(0));
  CHECK(is_member(pw, all3));
  CHECK(is_member(FunctionSpec::constant(-4, Domain::Real), all3));
  CHECK(is_member(FunctionSpec::constant(0, Domain::Real), all3));
  CHECK(is_member(FunctionSpec::signum(2, Domain::Real), all3));
  CHECK_FALSE(is_member(FunctionSpec::signum(2, Domain::Real), classify(all_patterns_query(4, 4, Mode::SR))));
  CHECK(is_member(FunctionSpec::power(1, 3, Domain::Real), all3));
  CHECK_FALSE(is_member(pw, classify(all_patterns_query(4, 4, Mode::SR))));
  CHECK_THROWS_AS(is_member(pw, classify(all_patterns_query(2, 2, Mode::SSR))), UndecidableMembership);
  CHECK_THROWS_AS(is_member(FunctionSpec::power(1, 1), all3), std::invalid_argument);

  auto ssr = classify(all_patterns_query(3, 3, Mode::SSR));
  auto lin = FunctionSpec::piecewise({OneSided::Kind::Power, 3, 1}, {OneSided::Kind::Power, -1, 1}, std::nullopt,
                                     Domain::RealNonZero);
  CHECK(is_member(lin, ssr));
  CHECK(is_member(FunctionSpec::power(1, 1, Domain::RealNonZero), classify(all_patterns_query(1, 1, Mode::SSR))));
}

TEST_CASE("power maps agree with admissible exponents") {
  std::vector<Query> qs;
  for (int d = 1; d <= 6; ++d)
    for (auto mode : {Mode::SR, Mode::SSR})
      for (const auto& e : all_patterns_of(d)) {
        qs.push_back(fixed_query(d, d, mode, e));
        qs.push_back(fixed_query(d, d + 2, mode, e));
      }
  for (int m = 1; m <= 6; ++m)
    for (int n = 1; n <= 6; ++n) {
      if (!(m == 2 && n == 2)) {
        qs.push_back(all_patterns_query(m, n, Mode::SSR));
        qs.push_back(all_patterns_query(m, n, Mode::SSR, Domain::Pos));
      }
      qs.push_back(all_patterns_query(m, n, Mode::SR));
      qs.push_back(all_patterns_query(m, n, Mode::SR, Domain::NonNeg));
    }
  for (const auto& q : qs) {
    auto fam = classify(q);
    auto adm = admissible_exponents(q);
    for (const auto& a : kAlphas) {
      if (a == 0 && q.all_patterns && q.domain() == Domain::Real) continue;  // the constant 1
      bool member = is_member(power_map(q, a), fam);
      INFO(q.str(), " alpha=", to_string(a));
      CHECK(member == adm.contains(a));
    }
  }
}

TEST_CASE("admissible sets shrink with d") {
  for (auto mode : {Mode::SR, Mode::SSR})
    for (int d = 3; d <= 7; ++d)
      for (const auto& e : all_patterns_of(d + 1)) {
        auto big = admissible_exponents(fixed_query(d + 1, d + 1, mode, e));
        auto small = admissible_exponents(fixed_query(d, d, mode, e.prefix(d)));
        CHECK(big.subset_of(small));
      }
}

TEST_CASE("mirror law") {
  for (auto mode : {Mode::SR, Mode::SSR})
    for (int d = 1; d <= 8; ++d)
      for (const auto& e : all_patterns_of(d)) {
        if (e(1) < 0) continue;
        auto plus = classify(fixed_query(d, d, mode, e));
        auto minus = classify(fixed_query(d, d, mode, negation_map(e)));
        CHECK(mirror(plus) == minus);
        CHECK(mirror(minus) == plus);
      }
}

TEST_CASE("exchange conjugation leaves the family unchanged") {
  for (auto mode : {Mode::SR, Mode::SSR})
    for (int d = 1; d <= 8; ++d)
      for (const auto& e : all_patterns_of(d)) {
        auto a = classify(fixed_query(d, d, mode, e));
        auto b = classify(fixed_query(d, d, mode, exchange_map(e)));
        CHECK(a.clauses == b.clauses);
      }
}

TEST_CASE("signum preservation matches the tables") {
  for (int d = 1; d <= 6; ++d)
    for (const auto& e : all_patterns_of(d)) {
      auto q = fixed_query(d, d, Mode::SR, e);
      CHECK(signum_preserves(d, d, e) == is_member(FunctionSpec::signum(1, q.domain()), classify(q)));
    }
  for (int m = 1; m <= 6; ++m)
    for (int n = 1; n <= 6; ++n) {
      auto q = all_patterns_query(m, n, Mode::SR);
      CHECK(signum_preserves(m, n) == is_member(FunctionSpec::signum(1, Domain::Real), classify(q)));
    }
  CHECK(signum_preserves(3, 3));
  CHECK_FALSE(signum_preserves(4, 4));
  CHECK(signum_preserves(2, 7));
  CHECK_FALSE(signum_preserves(3, 4));
}

TEST_CASE("empirical check of an admissible power") {
  auto q = fixed_query(3, 3, Mode::SR, SignPattern::parse("+++"));
  auto v = test_preserver_empirically(FunctionSpec::power(1, 2), q, 20, 7);
  CHECK(v.consistent);
  CHECK(v.trials_run == 20);
  auto u = test_preserver_empirically(FunctionSpec::power(1, -1), q, 20, 7);
  CHECK_FALSE(u.consistent);
}
