#pragma once

#include "signreg/classify.hpp"
#include "signreg/funcspec.hpp"
#include "signreg/matcore.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace signreg {

enum class FamilyId {
  SINGULAR_3x3,
  A1_T,
  A2_T,
  A3_T,
  A4_T,
  SIGNUM_3x3,
  SIGNUM_3x4,
  ALLSIGN_SR_4x4,
  ALLSIGN_SR_AT,
  ALLSIGN_SSR_A1T,
  ALLSIGN_SSR_A2TD,
  ALLSIGN_SSR_A3TD,
};
std::string to_string(FamilyId id);
FamilyId parse_family(const std::string& s);
std::vector<FamilyId> all_families();

struct Params {
  std::optional<Rational> t;
  std::optional<Rational> delta;
  std::string str() const;
};

struct FamilyInfo {
  FamilyId id;
  Mode mode;                            // SR or SSR inside the validity range
  std::vector<SignPattern> documented;  // patterns the source is claimed to have
  bool has_t = false;
  bool has_delta = false;
  std::string range;                    // validity range in words
};
FamilyInfo family_info(FamilyId id);

// Families are affine in t at fixed delta: A(t) = A0 + t * A1.
struct AffineFamily {
  QMatrix A0;
  QMatrix A1;
};
AffineFamily affine_form(FamilyId id, const std::optional<Rational>& delta = std::nullopt);

// Throws std::invalid_argument for parameters outside the validity range.
QMatrix instantiate(FamilyId id, const Params& p = {});

struct SourceCertificate {
  bool ok = false;
  Mode mode = Mode::SR;
  std::vector<SignPattern> compatible;  // patterns the matrix is SR (or SSR) with
  std::vector<std::string> transcript;
};
// Exact check of the structural claims made for the family; a failure means
// a bug and is reported with ok = false.
SourceCertificate certify_source(FamilyId id, const Params& p = {});

struct ParamBracket {
  std::string name = "t";
  Rational lo;
  Rational hi;
  int sign_lo = 0;  // certified sign of the tracked minor at lo
  int sign_hi = 0;
};

struct WitnessReport {
  std::string family;  // a FamilyId name, or ZERO_MATRIX, SSR_SAMPLE, SSR_NEAR:<family>
  Params params;
  Query query;
  Exponent alpha;
  FunctionSpec function;
  QMatrix source;
  std::optional<QMatrix> source_hi;  // other end of a parameter bracket
  SignPattern source_pattern;        // certified pattern of the source
  std::string kind;                  // wrong_sign, opposite_signs, singular_image, undefined_image, root_bracket
  std::string claim;
  std::vector<MinorSign> minors;     // the certified minors behind the claim
  std::optional<ParamBracket> bracket;
  Index block_rows;                  // rows/cols of the tracked minor for brackets
  Index block_cols;
  std::vector<std::string> transcript;
  Precision precision;
};

class NoWitness : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};
class SearchExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SearchOptions {
  Precision precision;
  Rational tol = Rational(1, 10000000000);  // bracket width
  std::uint64_t seed = 1;
};

// A certified counterexample showing that the power map for alpha does not
// preserve the class in q. Throws NoWitness when alpha is admissible.
WitnessReport find_violation(const Exponent& alpha, const Query& q, const SearchOptions& opt = {});
// Same for the signum map, when it is not a preserver.
WitnessReport find_signum_violation(const Query& q, const SearchOptions& opt = {});

// Recomputes every stored verdict from the report alone.
bool recheck(const WitnessReport& r);

struct TaylorTerm {
  std::string label;
  Index rows;
  Index cols;
  int k = 0;
};
std::vector<TaylorTerm> taylor_terms(FamilyId id);
// Closed-form leading coefficient of det(sub(A(t))^alpha) / t^k.
Rational leading_coefficient(FamilyId id, const TaylorTerm& term, const Rational& alpha,
                             const Rational& delta = Rational(1, 2));

struct TaylorCheck {
  FamilyId id;
  std::string label;
  int k = 0;
  Rational alpha;
  Rational predicted;
  double measured = 0;
  bool agree = false;
  bool inconclusive = false;  // leading coefficient vanishes at alpha
};
// Richardson extrapolation of det/t^k at t = 2^-14, 2^-15, 2^-16.
std::vector<TaylorCheck> taylor_leading_check(FamilyId id, const Rational& alpha,
                                              const Rational& delta = Rational(1, 2), double rtol = 1e-6,
                                              mpfr_prec_t bits = 256);

nlohmann::json to_json(const WitnessReport& r);
nlohmann::json to_json(const MinorSign& m);

}  // namespace signreg
