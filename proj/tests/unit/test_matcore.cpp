#include "doctest.h"
#include "signreg/matcore.hpp"
#include "test_helpers.hpp"

#include <random>

using namespace signreg;
using signreg::testing::M;
using signreg::testing::Q;

namespace {

// Independent oracle: cofactor expansion along the first row.
Rational laplace(const QMatrix& A) {
  const Eigen::Index n = A.rows();
  if (n == 0) return 1;
  if (n == 1) return A(0, 0);
  Rational s = 0;
  for (Eigen::Index j = 0; j < n; ++j) {
    QMatrix sub(n - 1, n - 1);
    for (Eigen::Index r = 1; r < n; ++r)
      for (Eigen::Index c = 0, cc = 0; c < n; ++c)
        if (c != j) sub(r - 1, cc++) = A(r, c);
    Rational term = A(0, j) * laplace(sub);
    s += (j % 2 == 0) ? term : Rational(-term);
  }
  return s;
}

QMatrix random_quarter_matrix(std::mt19937_64& rng, int m, int n) {
  std::uniform_int_distribution<int> d(-20, 20);
  QMatrix A(m, n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) {
      A(i, j) = Rational(d(rng), 4);
      A(i, j).canonicalize();
    }
  return A;
}

}  // namespace

TEST_CASE("sign pattern parsing and maps") {
  SignPattern e = SignPattern::parse("+-+");
  CHECK(e.size() == 3);
  CHECK(e(2) == -1);
  CHECK(SignPattern::parse("1,-1,1") == e);
  CHECK(exchange_map(SignPattern::parse("+++")) == SignPattern::parse("+--"));
  CHECK(exchange_map(SignPattern::parse("++++")) == SignPattern::parse("+--+"));
  CHECK(negation_map(SignPattern::parse("+++")) == SignPattern::parse("-+-"));
  CHECK_THROWS(SignPattern::parse("+0"));
}

TEST_CASE("bareiss determinant matches cofactor oracle") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 200; ++t) {
    int n = 1 + t % 5;
    QMatrix A = random_quarter_matrix(rng, n, n);
    CHECK(determinant(A) == laplace(A));
  }
  CHECK(determinant(M({{"3", "1", "2"}, {"1", "1", "4"}, {"1", "2", "9"}})) == 0);
}

TEST_CASE("all_minors ordering and count") {
  QMatrix A = M({{"1", "1", "1"}, {"1", "2", "4"}});
  auto mins = all_minors(A, 2);
  REQUIRE(mins.size() == 3);
  CHECK(mins[0].cols == Index{0, 1});
  CHECK(mins[0].value == 1);
  CHECK(mins[1].value == 3);
  CHECK(mins[2].value == 2);
  CHECK_THROWS(all_minors(A, 3));
}

TEST_CASE("detect_ssr on known matrices") {
  auto r = detect_ssr(M({{"1", "1", "1"}, {"1", "2", "4"}, {"1", "3", "9"}}));
  CHECK(r.is_ssr);
  CHECK(r.pattern->str() == "+++");
  auto s = detect_ssr(M({{"3", "1", "2"}, {"1", "1", "4"}, {"1", "2", "9"}}));
  CHECK_FALSE(s.is_ssr);
  REQUIRE(s.violating_minor);
  CHECK(s.violating_minor->k == 3);
  auto c = detect_ssr(M({{"2", "3", "4"}, {"3", "5", "7"}, {"4", "7", "99/10"}}));
  CHECK(c.is_ssr);
  CHECK(c.pattern->str() == "++-");
}

TEST_CASE("sr with pattern") {
  QMatrix S = M({{"3", "1", "2"}, {"1", "1", "4"}, {"1", "2", "9"}});
  CHECK(is_sr_with(S, SignPattern::parse("+++")));
  CHECK(is_sr_with(S, SignPattern::parse("++-")));
  CHECK_FALSE(is_sr_with(S, SignPattern::parse("+-+")));
  CHECK_FALSE(is_ssr_with(S, SignPattern::parse("+++")));
  QMatrix Z = QMatrix::Zero(3, 3);
  CHECK(compatible_patterns(Z).size() == 8);
}

TEST_CASE("exchange conjugation transports the pattern") {
  QMatrix V = M({{"1", "1", "1"}, {"1", "2", "4"}, {"1", "3", "9"}});
  auto x = exchange_conjugate(V);
  CHECK(x.matrix(0, 0) == 1);
  CHECK(x.matrix(1, 0) == 4);
  CHECK(is_ssr_with(x.matrix, x.apply(SignPattern::parse("+++"))));
}

TEST_CASE("normalize_3x3 gives the bordered-ones form") {
  QMatrix A = M({{"3", "1", "2"}, {"1", "1", "4"}, {"1", "2", "9"}});
  auto n = normalize_3x3(A);
  for (int i = 0; i < 3; ++i) {
    CHECK(n.matrix(0, i) == 1);
    CHECK(n.matrix(i, 0) == 1);
  }
  CHECK(diagonal_scale(A, n.E, n.F) == n.matrix);
  CHECK(n.x[0] == n.matrix(1, 1));
  CHECK(n.x[3] == n.matrix(2, 2));
}

TEST_CASE("tn2 zero pattern") {
  CHECK(tn2_zero_pattern_check(M({{"1", "0"}, {"1", "1"}})));
  CHECK_FALSE(tn2_zero_pattern_check(M({{"1", "0", "1"}, {"1", "1", "1"}})));
  CHECK_THROWS(tn2_zero_pattern_check(M({{"1", "2"}, {"3", "1"}}), true));
}

TEST_CASE("pad_with_zeros keeps sr") {
  QMatrix A = M({{"2", "1"}, {"1", "2"}});
  QMatrix P = pad_with_zeros(A, 3, 3);
  CHECK(P(2, 2) == 0);
  CHECK(is_sr_with(P, SignPattern::parse("+++")));
  CHECK(is_sr_with(P, SignPattern::parse("++-")));
  CHECK_THROWS(pad_with_zeros(A, 1, 3));
}

TEST_CASE("certified checks agree with exact ones") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 100; ++t) {
    int m = 1 + t % 4, n = 1 + (t / 4) % 4;
    QMatrix A = random_quarter_matrix(rng, m, n);
    auto C = CertifiedMatrix::exact(A);
    auto exact = detect_ssr(A);
    auto cert = detect_ssr(C);
    CHECK(exact.is_ssr == cert.is_ssr);
  }
}
