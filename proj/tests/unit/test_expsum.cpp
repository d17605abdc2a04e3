#include "doctest.h"
#include "signreg/expsum.hpp"
#include "test_helpers.hpp"

#include <random>

using namespace signreg;
using signreg::testing::M;
using signreg::testing::Q;

namespace {

const QMatrix kSingular = M({{"3", "1", "2"}, {"1", "1", "4"}, {"1", "2", "9"}});

}  // namespace

TEST_CASE("hadamard determinant expansion") {
  ExpSum S = from_hadamard_det(kSingular);
  ExpSum expect({{-1, 2}, {2, 4}, {-1, 9}, {-1, 24}, {1, 27}});
  CHECK(S == expect);
  CHECK(from_hadamard_det(M({{"1", "2"}, {"3", "4"}})) == ExpSum({{1, 4}, {-1, 6}}));
  QMatrix A2 = M({{"1", "2", "1"}, {"1", "4", "3"}, {"2", "9", "8"}});
  CHECK(from_hadamard_det(A2) ==
        ExpSum({{-1, 8}, {1, 9}, {1, 12}, {-1, 16}, {-1, 27}, {1, 32}}));
  CHECK_THROWS(from_hadamard_det(M({{"1", "0"}, {"1", "1"}})));
  CHECK_THROWS(from_hadamard_det(QMatrix::Ones(7, 7)));
}

TEST_CASE("exact evaluation") {
  ExpSum S = from_hadamard_det(kSingular);
  CHECK(*eval_exact(S, 1) == 0);
  CHECK(*eval_exact(S, 2) == 100);
  CHECK(*eval_exact(S, 0) == 0);
  CHECK_FALSE(eval_exact(S, Q("1/2")).has_value());
}

TEST_CASE("descartes bound") {
  CHECK(descartes_bound(from_hadamard_det(kSingular)) == 3);
  CHECK(descartes_bound(ExpSum({{5, 3}})) == 0);
  ExpSum A1({{-1, 2}, {1, 3}, {1, 4}, {-1, 8}, {-1, 12}, {1, 16}});
  CHECK(descartes_bound(A1) == 3);
}

TEST_CASE("merge is order and duplication invariant") {
  ExpSum a({{1, 2}, {-1, 3}, {2, 5}});
  ExpSum b({{2, 5}, {Q("1/2"), 2}, {-1, 3}, {Q("1/2"), 2}});
  CHECK(a == b);
  CHECK(ExpSum({{1, 2}, {-1, 2}}).empty());
}

TEST_CASE("certified sign") {
  ExpSum S = from_hadamard_det(kSingular);
  CHECK(certified_sign(S, Q("1/2")).sign == Sign::Negative);
  CHECK(certified_sign(S, 2).sign == Sign::Positive);
  CHECK(certified_sign(S, 1).sign == Sign::Zero);
  // irrational exponent given by an enclosure
  auto e = Exponent::enclosure(Q("141421356/100000000"), Q("141421357/100000000"));
  CHECK(certified_sign(S, e).sign == Sign::Positive);
}

TEST_CASE("value at one half") {
  // ~ -0.117 by an independent double evaluation
  ExpSum S = from_hadamard_det(kSingular);
  double ref = -std::sqrt(2.0) + 2 * 2 - 3 - std::sqrt(24.0) + std::sqrt(27.0);
  CertReal v = eval(S, Q("1/2"), 200);
  CHECK(v.enclosure.lower_d() <= ref + 1e-12);
  CHECK(v.enclosure.upper_d() >= ref - 1e-12);
  CHECK(ref == doctest::Approx(-0.117).epsilon(0.01));
}

TEST_CASE("taylor coefficients") {
  ExpSum S = from_hadamard_det(kSingular);
  auto c = taylor_at_zero(S, 3);
  REQUIRE(c.size() == 4);
  REQUIRE(c[0].exact);
  CHECK(*c[0].exact == 0);
  REQUIRE(c[1].exact);
  CHECK(*c[1].exact == 0);
  CHECK_FALSE(c[2].exact);
  // bordered-ones normal form: j=2 coefficient is log x1 log x4 - log x2 log x3
  auto n = normalize_3x3(kSingular);
  ExpSum N = from_hadamard_det(n.matrix);
  auto cn = taylor_at_zero(N, 2, 200);
  double x1 = n.x[0].get_d(), x2 = n.x[1].get_d(), x3 = n.x[2].get_d(), x4 = n.x[3].get_d();
  double ref = std::log(x1) * std::log(x4) - std::log(x2) * std::log(x3);
  CHECK(cn[2].enclosure.lower_d() <= ref + 1e-12);
  CHECK(cn[2].enclosure.upper_d() >= ref - 1e-12);
}

TEST_CASE("taylor consistency near zero") {
  ExpSum S({{1, 2}, {-3, 5}, {2, Q("7/3")}});
  auto c = taylor_at_zero(S, 3, 256);
  double prev = 0;
  for (int i = 0; i < 5; ++i) {
    Rational a(1, 1 << (6 + i));
    double ad = a.get_d();
    double poly = 0;
    for (int j = 0; j <= 3; ++j) poly += c[j].enclosure.mid() * std::pow(ad, j);
    double r = (eval(S, a, 256).enclosure.mid() - poly) / std::pow(ad, 4);
    if (i > 0) CHECK(r == doctest::Approx(prev).epsilon(0.05));
    prev = r;
  }
}

TEST_CASE("root brackets") {
  ExpSum two({{1, 2}, {-2, 1}});
  auto b = bracket_roots(two, 0, 2, Q("1/10000000000"));
  REQUIRE(b.size() == 1);
  CHECK(b[0].lo < 1);
  CHECK(b[0].hi > 1);
  CHECK(b[0].hi - b[0].lo <= Q("1/10000000000"));
  CHECK(bracket_roots(ExpSum({{3, 5}}), -4, 4, Q("1/1000")).empty());
  ExpSum A1({{-1, 2}, {1, 3}, {1, 4}, {-1, 8}, {-1, 12}, {1, 16}});
  auto r = bracket_roots(A1, -5, Q("-1/1000"), Q("1/10000000000"));
  for (const auto& br : r) {
    CHECK(br.sign_lo != br.sign_hi);
    CHECK(br.hi - br.lo <= Q("1/10000000000"));
  }
  CHECK(static_cast<int>(r.size()) <= descartes_bound(A1));
}

TEST_CASE("oracle equivalence with matrix determinants") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> d(1, 12);
  for (int t = 0; t < 20; ++t) {
    QMatrix A(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) A(i, j) = Rational(d(rng), 4), A(i, j).canonicalize();
    ExpSum S = from_hadamard_det(A);
    for (int q = -2; q <= 3; ++q) {
      QMatrix P(3, 3);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) P(i, j) = *exact_pow(A(i, j), q);
      CHECK(*eval_exact(S, q) == determinant(P));
    }
  }
}
