#pragma once

#include "signreg/matcore.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace signreg {

// Deterministic stream for (seed, index), so trial i is reproducible alone.
std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t index = 0);

// (x_i^(y_j)) for positive increasing nodes and increasing integer exponents.
QMatrix vandermonde(const std::vector<Rational>& nodes, const std::vector<int>& exponents);
QMatrix vandermonde(const std::vector<Rational>& nodes, int cols);

// Generalized Vandermonde on the 1/16 lattice of [1/4, 4], then a random
// positive diagonal scaling; certified TP before return.
QMatrix random_tp(int m, int n, std::uint64_t seed);

// Patterns reachable from all-plus under column reversal (eps_i ->
// (-1)^floor(i/2) eps_i) and negation (eps_i -> (-1)^i eps_i).
struct OrbitEntry {
  SignPattern eps;
  bool reverse = false;  // apply A -> A P_n
  bool negate = false;   // apply A -> -A
};
struct OrbitAnalysis {
  int d = 0;
  std::vector<OrbitEntry> reachable;
  std::vector<SignPattern> rejection_only;
  std::string str() const;
};
OrbitAnalysis orbit_analysis(int d);

class GenerationFailure : public std::runtime_error {
 public:
  GenerationFailure(const std::string& what, OrbitAnalysis orbit)
      : std::runtime_error(what), orbit_(std::move(orbit)) {}
  const OrbitAnalysis& orbit() const { return orbit_; }

 private:
  OrbitAnalysis orbit_;
};

// Appends a row to an SSR matrix so that it stays SSR with the given pattern
// (whose length covers the new order if one appears). With a target row the
// result is pulled as close to it as the margin allows.
std::optional<QMatrix> insert_row(const QMatrix& A, const SignPattern& eps, std::mt19937_64& rng,
                                  const std::optional<std::vector<Rational>>& target = std::nullopt,
                                  double margin = 0);
std::optional<QMatrix> insert_column(const QMatrix& A, const SignPattern& eps, std::mt19937_64& rng,
                                     const std::optional<std::vector<Rational>>& target = std::nullopt,
                                     double margin = 0);

// Borders A on the bottom and right up to m x n, keeping it SSR with eps.
std::optional<QMatrix> border_to(const QMatrix& A, int m, int n, const SignPattern& eps, std::mt19937_64& rng);

// An SSR(eps) matrix near the SR(eps) matrix W: alternate smoothing by the
// totally positive kernel (q^((i-j)^2)) with a bottom-right bump that raises
// the rank, until no minor vanishes. Entries move by O(q * max|W|).
std::optional<QMatrix> perturb_to_ssr(const QMatrix& W, const SignPattern& eps, const Rational& q);

struct GenOptions {
  int rejection_budget = 10000;
  std::string hint;  // "", "curated", "pad", "duplicate", "direct"
};

QMatrix random_ssr(int m, int n, const SignPattern& eps, std::uint64_t seed, const GenOptions& opt = {});
QMatrix random_sr(int m, int n, const SignPattern& eps, std::uint64_t seed, const GenOptions& opt = {});

}  // namespace signreg
