#pragma once

#include "signreg/classify.hpp"
#include "signreg/expsum.hpp"
#include "signreg/funcspec.hpp"
#include "signreg/matcore.hpp"

#include <json.hpp>

#include <string>

namespace signreg {

// Rationals travel as "p/q" strings; every from_json inverts its to_json.

nlohmann::json to_json(const Exponent& a);  // "p/q", or {lo, hi} for an enclosure
Exponent exponent_from_json(const nlohmann::json& j);

nlohmann::json to_json(const FunctionSpec& f);
FunctionSpec function_from_json(const nlohmann::json& j);

std::string range_keyword(Range r);  // "pos", "nonneg", ...
Range parse_range(const std::string& s);

nlohmann::json to_json(const Clause& c);
Clause clause_from_json(const nlohmann::json& j);
nlohmann::json to_json(const PreserverFamily& fam);
PreserverFamily family_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Query& q);
Query query_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ExpSum& s);
ExpSum expsum_from_json(const nlohmann::json& j);

nlohmann::json to_json(const SsrReport& r);
nlohmann::json to_json(const Interval& x);  // {lo, hi} as decimal strings

std::string version();

struct ReportSettings {
  mpfr_prec_t bits = 128;
  mpfr_prec_t max_bits = 1024;
  Rational tol = Rational(1, 10000000000);
  std::uint64_t seed = 1;
  bool operator==(const ReportSettings& o) const = default;
};

// Envelope shared by every CLI command.
struct Report {
  std::string command;
  nlohmann::json inputs = nlohmann::json::object();
  nlohmann::json result = nlohmann::json::object();
  std::string version = signreg::version();
  ReportSettings settings;
  bool operator==(const Report& o) const = default;
};
nlohmann::json to_json(const Report& r);
Report report_from_json(const nlohmann::json& j);
// Two-space indentation, keys sorted, trailing newline.
std::string dump(const Report& r);

}  // namespace signreg
