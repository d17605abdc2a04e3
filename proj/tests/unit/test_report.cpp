#include "doctest.h"
#include "signreg/report.hpp"
#include "signreg/witnesses.hpp"
#include "test_helpers.hpp"

using namespace signreg;
using signreg::testing::Q;

namespace {

std::vector<SignPattern> patterns(int d) {
  std::vector<SignPattern> out;
  for (int mask = 0; mask < (1 << d); ++mask) {
    std::vector<int> s(d);
    for (int i = 0; i < d; ++i) s[i] = (mask >> i) & 1 ? -1 : 1;
    out.emplace_back(s);
  }
  return out;
}

}  // namespace

TEST_CASE("function specs round-trip") {
  const std::vector<FunctionSpec> fs{
      FunctionSpec::power(Q("3/2"), Q("1/3"), Domain::Pos),
      FunctionSpec::power(-1, Exponent::enclosure(Q("1/3"), Q("1/2")), Domain::NonPos),
      FunctionSpec::signum(2, Domain::Real),
      FunctionSpec::constant(Q("-5"), Domain::RealNonZero),
      FunctionSpec::piecewise({OneSided::Kind::Power, -1, Q("2")}, {OneSided::Kind::Signum, 3, 1}, Rational(0)),
      FunctionSpec::piecewise({OneSided::Kind::Constant, 4, 1}, {OneSided::Kind::Power, 1, Q("1/2")}, std::nullopt,
                              Domain::RealNonZero),
  };
  for (const auto& f : fs) {
    auto j = to_json(f);
    INFO(j.dump());
    auto g = function_from_json(j);
    CHECK(to_json(g) == j);
    CHECK(g.describe() == f.describe());
  }
  CHECK(to_json(fs[0])["variant"] == "power");
  CHECK(to_json(fs[0])["c"] == "3/2");
  CHECK(to_json(fs[1])["alpha"]["hi"] == "1/2");
  CHECK_THROWS(function_from_json(nlohmann::json{{"variant", "cosine"}, {"domain", "real"}}));
}

TEST_CASE("every classification round-trips") {
  int n = 0;
  for (auto mode : {Mode::SR, Mode::SSR})
    for (int d = 1; d <= 5; ++d) {
      for (const auto& e : patterns(d)) {
        auto fam = classify(fixed_query(d, d + 1, mode, e));
        CHECK(family_from_json(to_json(fam)) == fam);
        ++n;
      }
      for (auto dom : {std::optional<Domain>{}, std::optional<Domain>{mode == Mode::SR ? Domain::NonNeg : Domain::Pos}}) {
        auto q = all_patterns_query(d, d, mode, dom);
        auto fam = classify(q);
        CHECK(family_from_json(to_json(fam)) == fam);
        auto qq = query_from_json(to_json(q));
        CHECK(qq.str() == q.str());
      }
    }
  CHECK(n == 2 * (2 + 4 + 8 + 16 + 32));
  auto j = to_json(classify(fixed_query(4, 4, Mode::SSR, SignPattern::parse("++++"))));
  REQUIRE(j["clauses"].size() == 1);
  CHECK(j["clauses"][0]["kind"] == "scaled_power");
  CHECK(j["clauses"][0]["alpha"] == "{1}");
  CHECK(j["clauses"][0]["constraints"][0] == "c>0");
  CHECK_THROWS(parse_range("positive-ish"));
}

TEST_CASE("exponential sums round-trip") {
  ExpSum s({{Q("-1"), Q("8")}, {Q("1"), Q("9")}, {Q("1"), Q("12")}, {Q("-1"), Q("16")}, {Q("-1"), Q("27")}, {Q("1"), Q("32")}});
  auto j = to_json(s);
  CHECK(j["terms"].size() == 6);
  CHECK(j["terms"][0]["c"] == "-1");
  CHECK(j["terms"][0]["base"] == "8");
  CHECK(expsum_from_json(j) == s);
}

TEST_CASE("reports round-trip through their own json") {
  Report r;
  r.command = "witness";
  r.settings.bits = 256;
  r.settings.tol = Q("1/1000");
  r.settings.seed = 42;
  r.inputs = {{"query", to_json(all_patterns_query(3, 3, Mode::SSR))}, {"alpha", "1/2"}};
  r.result = {{"report", to_json(find_violation(Q("1/2"), all_patterns_query(3, 3, Mode::SSR)))}};
  const std::string text = dump(r);
  CHECK(text.back() == '\n');
  auto back = report_from_json(nlohmann::json::parse(text));
  CHECK(back == r);
  CHECK(dump(back) == text);
  CHECK_THROWS(report_from_json(nlohmann::json{{"command", "check"}}));
}

TEST_CASE("interval endpoints round outward") {
  Interval third(Rational(1, 3), 128);
  auto j = to_json(third);
  CHECK(j["lo"] == "3.3333333333333333333e-01");
  CHECK(j["hi"] == "3.3333333333333333334e-01");
  auto ssr = to_json(detect_ssr(make_matrix({{1, 2}, {2, 4}})));
  CHECK(ssr["is_ssr"] == false);
  CHECK(ssr["violating_minor"]["k"] == 2);
}
