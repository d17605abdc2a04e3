#include "doctest.h"
#include "signreg/funcspec.hpp"
#include "test_helpers.hpp"

#include <random>

using namespace signreg;
using signreg::testing::M;
using signreg::testing::Q;

namespace {

// f(x) = x^2 below 1 and x above: fails mid-convexity at (1/4, 4).
RealFunction kinked() {
  RealFunction f;
  f.name = "kinked";
  f.exact = [](const Rational& x) -> std::optional<Rational> { return x < 1 ? Rational(x * x) : x; };
  f.enclose = [](const Interval& X) -> Interval {
    if (X.upper_d() < 1) return X * X;
    return X;
  };
  return f;
}

RealFunction shift_by_one() {
  RealFunction f;
  f.name = "x+1";
  f.exact = [](const Rational& x) -> std::optional<Rational> { return Rational(x + 1); };
  f.enclose = [](const Interval& X) { return X + Interval(1); };
  return f;
}

}  // namespace

TEST_CASE("evaluation conventions") {
  CHECK(*eval_exact(FunctionSpec::power(1, 0), 0) == 1);
  CHECK(*eval_exact(FunctionSpec::power(1, 1), Q("7/3")) == Q("7/3"));
  CHECK(*eval_exact(FunctionSpec::signum(2), 5) == 2);
  CHECK(*eval_exact(FunctionSpec::signum(2), 0) == 0);
  CHECK_THROWS(eval_exact(FunctionSpec::power(1, -1), 0));
  CHECK_THROWS(eval_exact(FunctionSpec::power(1, 1), -1));
  CHECK(*eval_exact(FunctionSpec::power(1, 3, Domain::Real), -2) == -8);
  CHECK_THROWS(eval_exact(FunctionSpec::power(1, Q("1/2"), Domain::Real), -2));
  CHECK_FALSE(eval_exact(FunctionSpec::power(1, Q("1/2")), 2).has_value());
  CHECK(*eval_exact(FunctionSpec::power(1, Q("3/2")), Q("4/9")) == Q("8/27"));
}

TEST_CASE("entrywise application") {
  auto R = apply_entrywise_exact(FunctionSpec::power(1, Q("1/2")), M({{"4", "9"}, {"1", "16"}}));
  REQUIRE(R);
  CHECK(*R == M({{"2", "3"}, {"1", "4"}}));
  auto O = apply_entrywise_exact(FunctionSpec::power(1, 0), M({{"0", "3"}, {"1", "0"}}));
  CHECK(*O == QMatrix::Ones(2, 2));
  auto S = apply_entrywise_exact(FunctionSpec::signum(3), M({{"3", "1", "0"}, {"1", "1", "1"}, {"0", "2", "4"}}));
  CHECK(*S == M({{"3", "3", "0"}, {"3", "3", "3"}, {"0", "3", "3"}}));
  auto H = hadamard_power(M({{"3", "1", "2"}, {"1", "1", "4"}, {"1", "2", "9"}}), 2);
  CHECK(determinant(H.exact_matrix()) == 100);
  CHECK(hadamard_power(M({{"0"}}), 0).exact_matrix() == M({{"1"}}));
  CHECK_THROWS(hadamard_power(M({{"0", "1"}}), -1));
  CHECK_THROWS(hadamard_power(M({{"-2", "1"}}), Q("1/2")));
}

TEST_CASE("irrational images are certified") {
  auto C = hadamard_power(M({{"3", "1", "2"}, {"1", "1", "4"}, {"1", "2", "9"}}), Q("1/2"));
  CHECK_FALSE(C.is_exact());
  auto r = check_sr_with(C, SignPattern::parse("+++"));
  CHECK(r.verdict == Tri::False);
}

TEST_CASE("exchange commutes with entrywise maps") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> d(0, 16);
  for (int t = 0; t < 30; ++t) {
    QMatrix A(3, 4);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 4; ++j) A(i, j) = Rational(d(rng), 4), A(i, j).canonicalize();
    auto f = FunctionSpec::power(2, 3);
    QMatrix lhs = *apply_entrywise_exact(f, A) * exchange_matrix(4);
    QMatrix rhs = *apply_entrywise_exact(f, QMatrix(A * exchange_matrix(4)));
    CHECK(lhs == rhs);
  }
}

TEST_CASE("diagonal scaling identity for powers") {
  QMatrix A = M({{"1", "2"}, {"3", "5"}});
  std::vector<Rational> E{4, Q("1/9")}, F{9, 1};
  Rational a = Q("1/2");
  QMatrix lhs = hadamard_power(diagonal_scale(A, E, F), 3).exact_matrix();
  std::vector<Rational> E3{64, Q("1/729")}, F3{729, 1};
  QMatrix rhs = diagonal_scale(hadamard_power(A, 3).exact_matrix(), E3, F3);
  CHECK(lhs == rhs);
  QMatrix B = M({{"1", "4"}, {"9", "16"}});
  QMatrix lhs2 = hadamard_power(diagonal_scale(B, E, F), a).exact_matrix();
  QMatrix rhs2 = diagonal_scale(hadamard_power(B, a).exact_matrix(), {2, Q("1/3")}, {3, 1});
  CHECK(lhs2 == rhs2);
}

TEST_CASE("mid-convexity") {
  auto grid = default_grid();
  CHECK(check_mid_convex(FunctionSpec::power(3, Q("5/2")), grid).holds);
  CHECK(check_mid_convex(FunctionSpec::signum(2), grid).holds);
  auto bad = check_mid_convex(kinked(), {{Q("1/4"), 4}});
  CHECK_FALSE(bad.holds);
  CHECK(bad.counterexample == std::vector<Rational>{Q("1/4"), 4});
  CHECK_THROWS(check_mid_convex(FunctionSpec::power(-1, 1), grid));
}

TEST_CASE("functional equations") {
  std::vector<std::vector<Rational>> two{{2, 2}, {Q("1/3"), 5}, {7, Q("2/9")}};
  CHECK(check_functional_equation(FunctionSpec::power(3, Q("1/2")), two, FunctionalForm::Fixed2x2).holds);
  CHECK(check_functional_equation(FunctionSpec::signum(3), two, FunctionalForm::Fixed2x2).holds);
  CHECK(check_functional_equation(FunctionSpec::constant(4), two, FunctionalForm::Fixed2x2).holds);
  auto bad = check_functional_equation(shift_by_one(), {{2, 2}}, FunctionalForm::Fixed2x2);
  CHECK_FALSE(bad.holds);
  CHECK(bad.counterexample == std::vector<Rational>{2, 2});
  std::vector<std::vector<Rational>> three{{-2, 3, Q("1/2")}, {5, 2, 7}};
  auto pw = FunctionSpec::piecewise({OneSided::Kind::Power, -2, 3}, {OneSided::Kind::Power, 5, 3}, Rational(0));
  CHECK(check_functional_equation(pw, three, FunctionalForm::AllSign).holds);
}

TEST_CASE("monotonicity and sign classes") {
  std::vector<Rational> pos{Q("1/4"), Q("1/2"), 1, 2, 3, 8};
  auto sq = check_monotone_and_sign(FunctionSpec::power(1, 2), HalfLine::Pos, pos);
  CHECK(sq.holds);
  CHECK(sq.classes == std::vector<std::string>{"non-negative/non-decreasing"});
  std::vector<Rational> neg{-8, -3, -1, Q("-1/2")};
  auto pw = FunctionSpec::piecewise({OneSided::Kind::Power, -1, 1}, {OneSided::Kind::Power, 1, 1}, Rational(0));
  auto r = check_monotone_and_sign(pw, HalfLine::Neg, neg);
  CHECK(r.holds);
  CHECK(r.classes == std::vector<std::string>{"non-positive/non-decreasing"});
  auto c = check_monotone_and_sign(FunctionSpec::constant(5), HalfLine::Pos, pos);
  CHECK(c.classes.size() == 2);
}

TEST_CASE("2x2 strict conditions") {
  std::vector<Rational> s{-5, -3, -2, Q("-1/2"), Q("1/4"), 1, 2, 3, 4, 9};
  auto pw = FunctionSpec::piecewise({OneSided::Kind::Power, -1, Q("1/2")}, {OneSided::Kind::Power, 1, 3},
                                    std::nullopt, Domain::RealNonZero);
  CHECK(check_ssr2x2_conditions(pw, s).holds);
  CHECK(check_ssr2x2_conditions(FunctionSpec::power(1, 1, Domain::RealNonZero), s).holds);
  auto flat = check_ssr2x2_conditions(FunctionSpec::constant(5, Domain::RealNonZero), s);
  CHECK_FALSE(flat.holds);
  CHECK_THROWS(check_ssr2x2_conditions(FunctionSpec::power(1, 1), s));
}
