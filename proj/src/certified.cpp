#include "signreg/matcore.hpp"

#include <algorithm>

namespace signreg {

UndeterminedSign::UndeterminedSign(MinorSign m)
    : std::runtime_error("minor sign undetermined at the precision cap (order " +
                         std::to_string(m.k) + ")"),
      minor_(std::move(m)) {}

std::string to_string(Tri t) {
  switch (t) {
    case Tri::True: return "true";
    case Tri::False: return "false";
    case Tri::Undetermined: return "undetermined";
  }
  return "?";
}

// ----------------------------------------------------------------------------

CertifiedMatrix CertifiedMatrix::exact(const QMatrix& A) {
  auto shared = std::make_shared<QMatrix>(A);
  std::vector<std::optional<Rational>> ex;
  ex.reserve(static_cast<std::size_t>(A.size()));
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < A.cols(); ++j) ex.emplace_back(A(i, j));
  return CertifiedMatrix(
      static_cast<int>(A.rows()), static_cast<int>(A.cols()),
      [shared](int i, int j, mpfr_prec_t bits) { return Interval((*shared)(i, j), bits); },
      std::move(ex));
}

CertifiedMatrix::CertifiedMatrix(int rows, int cols, EntryFn enclose,
                                 std::vector<std::optional<Rational>> exact_entries)
    : rows_(rows), cols_(cols), enclose_(std::move(enclose)), exact_(std::move(exact_entries)) {
  if (exact_.empty()) exact_.resize(static_cast<std::size_t>(rows * cols));
  if (static_cast<int>(exact_.size()) != rows * cols)
    throw std::invalid_argument("exact entry table has the wrong size");
  exact_count_ = static_cast<int>(std::count_if(exact_.begin(), exact_.end(),
                                                [](const auto& e) { return e.has_value(); }));
}

void CertifiedMatrix::set_source(const QMatrix& source, bool scaling_covariant) {
  if (source.rows() != rows_ || source.cols() != cols_)
    throw std::invalid_argument("source shape differs from image shape");
  source_ = source;
  covariant_ = scaling_covariant;
}

QMatrix CertifiedMatrix::exact_matrix() const {
  if (!is_exact()) throw std::logic_error("matrix has irrational entries");
  QMatrix A(rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) A(i, j) = *exact_entry(i, j);
  return A;
}

Interval CertifiedMatrix::entry(int i, int j, mpfr_prec_t bits) const {
  if (const auto& e = exact_entry(i, j)) return Interval(*e, bits);
  return enclose_(i, j, bits);
}

Mat<Interval> CertifiedMatrix::enclose(mpfr_prec_t bits) const {
  Mat<Interval> E(rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) E(i, j) = entry(i, j, bits);
  return E;
}

bool CertifiedMatrix::block_exact(const Index& r, const Index& c) const {
  for (int i : r)
    for (int j : c)
      if (!exact_entry(i, j)) return false;
  return true;
}

bool CertifiedMatrix::lines_dependent(const Index& r, const Index& c, bool by_rows) const {
  const Index& outer = by_rows ? r : c;
  const Index& inner = by_rows ? c : r;
  auto ex = [&](int a, int b) -> const std::optional<Rational>& {
    return by_rows ? exact_entry(a, b) : exact_entry(b, a);
  };
  auto src = [&](int a, int b) -> const Rational& {
    return by_rows ? (*source_)(a, b) : (*source_)(b, a);
  };
  for (int a : outer) {
    bool zero = true;
    for (int b : inner) {
      const auto& e = ex(a, b);
      if (!e || *e != 0) {
        zero = false;
        break;
      }
    }
    if (zero) return true;
  }
  for (std::size_t p = 0; p < outer.size(); ++p) {
    for (std::size_t q = p + 1; q < outer.size(); ++q) {
      int a = outer[p], b = outer[q];
      bool equal = true;
      for (int x : inner) {
        const auto& ea = ex(a, x);
        const auto& eb = ex(b, x);
        if (!ea || !eb || *ea != *eb) {
          equal = false;
          break;
        }
      }
      if (equal) return true;
      if (!source_) continue;
      bool same = true;
      for (int x : inner)
        if (src(a, x) != src(b, x)) {
          same = false;
          break;
        }
      if (same) return true;
      if (!covariant_) continue;
      std::optional<Rational> lambda;
      bool prop = true;
      for (int x : inner) {
        const Rational& u = src(a, x);
        const Rational& v = src(b, x);
        if (u == 0 || v == 0) {
          if (u != v) {
            prop = false;
            break;
          }
          continue;
        }
        Rational l = v / u;
        if (lambda && *lambda != l) {
          prop = false;
          break;
        }
        lambda = l;
      }
      if (prop && lambda) return true;
    }
  }
  return false;
}

bool CertifiedMatrix::structurally_singular(const Index& r, const Index& c) const {
  return lines_dependent(r, c, true) || lines_dependent(r, c, false);
}

CertifiedMatrix CertifiedMatrix::times_exchange() const {
  auto fn = enclose_;
  int n = cols_;
  std::vector<std::optional<Rational>> ex(exact_.size());
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) ex[i * cols_ + j] = exact_entry(i, n - 1 - j);
  CertifiedMatrix r(rows_, cols_,
                    [fn, n](int i, int j, mpfr_prec_t bits) { return fn(i, n - 1 - j, bits); },
                    std::move(ex));
  if (source_) r.set_source(source_->rowwise().reverse(), covariant_);
  return r;
}

CertifiedMatrix CertifiedMatrix::transpose() const {
  auto fn = enclose_;
  std::vector<std::optional<Rational>> ex(exact_.size());
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) ex[j * rows_ + i] = exact_entry(i, j);
  CertifiedMatrix r(cols_, rows_,
                    [fn](int i, int j, mpfr_prec_t bits) { return fn(j, i, bits); },
                    std::move(ex));
  if (source_) r.set_source(source_->transpose(), covariant_);
  return r;
}

// ----------------------------------------------------------------------------

template <typename T>
MinorLevels<T>::MinorLevels(Mat<T> A) : A_(std::move(A)) {
  const int m = static_cast<int>(A_.rows()), n = static_cast<int>(A_.cols());
  if (m > 20 || n > 20) throw std::invalid_argument("minor tables limited to 20 lines");
  const int d = std::min(m, n);
  levels_.resize(d + 1);
  rpos_.resize(d + 1);
  cpos_.resize(d + 1);
  rcomb_.resize(d + 1);
  ccomb_.resize(d + 1);
}

template <typename T>
std::size_t MinorLevels<T>::key(const Index& idx) const {
  std::size_t mask = 0;
  for (int i : idx) mask |= std::size_t{1} << i;
  return mask;
}

template <typename T>
void MinorLevels<T>::build(int k) {
  if (!levels_[k].empty()) return;
  const int m = static_cast<int>(A_.rows()), n = static_cast<int>(A_.cols());
  rcomb_[k] = combinations(m, k);
  ccomb_[k] = combinations(n, k);
  rpos_[k].assign(std::size_t{1} << m, -1);
  cpos_[k].assign(std::size_t{1} << n, -1);
  for (std::size_t i = 0; i < rcomb_[k].size(); ++i) rpos_[k][key(rcomb_[k][i])] = static_cast<int>(i);
  for (std::size_t i = 0; i < ccomb_[k].size(); ++i) cpos_[k][key(ccomb_[k][i])] = static_cast<int>(i);
  const std::size_t nc = ccomb_[k].size();
  std::vector<T> out;
  out.reserve(rcomb_[k].size() * nc);
  if (k == 1) {
    for (const auto& r : rcomb_[k])
      for (const auto& c : ccomb_[k]) out.push_back(A_(r[0], c[0]));
    levels_[k] = std::move(out);
    return;
  }
  build(k - 1);
  const auto& prev = levels_[k - 1];
  const std::size_t pnc = ccomb_[k - 1].size();
  for (const auto& r : rcomb_[k]) {
    const int r0 = r[0];
    const std::size_t rest = key(r) & ~(std::size_t{1} << r0);
    const std::size_t rp = static_cast<std::size_t>(rpos_[k - 1][rest]);
    for (const auto& c : ccomb_[k]) {
      const std::size_t cm = key(c);
      std::optional<T> acc;
      for (int p = 0; p < k; ++p) {
        const std::size_t cp =
            static_cast<std::size_t>(cpos_[k - 1][cm & ~(std::size_t{1} << c[p])]);
        T term = A_(r0, c[p]) * prev[rp * pnc + cp];
        if (!acc) acc = (p % 2 == 0) ? term : T(-term);
        else if (p % 2 == 0) *acc += term;
        else *acc -= term;
      }
      out.push_back(std::move(*acc));
    }
  }
  levels_[k] = std::move(out);
}

template <typename T>
const T& MinorLevels<T>::value(const Index& rows, const Index& cols) {
  const int k = static_cast<int>(rows.size());
  if (k < 1 || k > max_order() || cols.size() != rows.size())
    throw std::out_of_range("minor selection out of range");
  build(k);
  int rp = rpos_[k][key(rows)], cp = cpos_[k][key(cols)];
  return levels_[k][static_cast<std::size_t>(rp) * ccomb_[k].size() + static_cast<std::size_t>(cp)];
}

template class MinorLevels<Interval>;
template class MinorLevels<Rational>;

// ----------------------------------------------------------------------------

MinorSigner::MinorSigner(const CertifiedMatrix& M, Precision p) : M_(M), p_(p) {}

MinorLevels<Interval>& MinorSigner::at(mpfr_prec_t bits) {
  auto& slot = cache_[bits];
  if (!slot) slot = std::make_unique<MinorLevels<Interval>>(M_.enclose(bits));
  return *slot;
}

MinorSign MinorSigner::sign(const Index& rows, const Index& cols) {
  MinorSign ms;
  ms.k = static_cast<int>(rows.size());
  ms.rows = rows;
  ms.cols = cols;
  if (M_.block_exact(rows, cols)) {
    QMatrix S(ms.k, ms.k);
    for (int i = 0; i < ms.k; ++i)
      for (int j = 0; j < ms.k; ++j) S(i, j) = *M_.exact_entry(rows[i], cols[j]);
    Rational v = determinant(S);
    ms.verdict = SignVerdict::of(sgn(v));
    ms.exact = v;
    return ms;
  }
  if (M_.structurally_singular(rows, cols)) {
    ms.verdict = SignVerdict::of(0);
    ms.exact = Rational(0);
    ms.structural = true;
    return ms;
  }
  for (mpfr_prec_t bits = p_.bits;; bits *= 2) {
    const Interval& v = at(bits).value(rows, cols);
    int s = v.certain_sign();
    if (s != 0) {
      ms.verdict = SignVerdict::of(s);
      ms.enclosure = v;
      return ms;
    }
    if (bits * 2 > p_.max_bits) {
      ms.verdict = SignVerdict::undetermined(v.width());
      ms.enclosure = v;
      return ms;
    }
  }
}

std::vector<MinorSign> MinorSigner::level(int k) {
  std::vector<MinorSign> out;
  for (const auto& r : combinations(M_.rows(), k))
    for (const auto& c : combinations(M_.cols(), k)) out.push_back(sign(r, c));
  return out;
}

// ----------------------------------------------------------------------------

namespace {

PatternCheck check_pattern(const CertifiedMatrix& M, const SignPattern& eps, Precision p,
                           bool strict) {
  const int d = std::min(M.rows(), M.cols());
  if (eps.size() != d) throw std::invalid_argument("sign pattern length must equal min(rows, cols)");
  MinorSigner signer(M, p);
  PatternCheck out;
  std::vector<MinorSign> pending;
  for (int k = 1; k <= d; ++k) {
    for (const auto& r : combinations(M.rows(), k)) {
      for (const auto& c : combinations(M.cols(), k)) {
        MinorSign s = signer.sign(r, c);
        if (!s.verdict.determined()) {
          pending.push_back(std::move(s));
          continue;
        }
        int v = s.verdict.value() * eps(k);
        if (v < 0 || (strict && v == 0)) {
          out.verdict = Tri::False;
          out.witness = {std::move(s)};
          return out;
        }
      }
    }
  }
  if (!pending.empty()) {
    out.verdict = Tri::Undetermined;
    out.witness = std::move(pending);
    return out;
  }
  out.verdict = Tri::True;
  out.pattern = eps;
  return out;
}

}  // namespace

PatternCheck check_sr_with(const CertifiedMatrix& M, const SignPattern& eps, Precision p) {
  return check_pattern(M, eps, p, false);
}

PatternCheck check_ssr_with(const CertifiedMatrix& M, const SignPattern& eps, Precision p) {
  return check_pattern(M, eps, p, true);
}

PatternCheck check_sr_any(const CertifiedMatrix& M, Precision p) {
  const int d = std::min(M.rows(), M.cols());
  MinorSigner signer(M, p);
  PatternCheck out;
  std::vector<MinorSign> pending;
  std::vector<int> eps;
  for (int k = 1; k <= d; ++k) {
    std::optional<MinorSign> pos, neg;
    for (const auto& r : combinations(M.rows(), k)) {
      for (const auto& c : combinations(M.cols(), k)) {
        MinorSign s = signer.sign(r, c);
        if (!s.verdict.determined()) {
          pending.push_back(std::move(s));
          continue;
        }
        int v = s.verdict.value();
        if (v > 0 && !pos) pos = s;
        if (v < 0 && !neg) neg = s;
        if (pos && neg) {
          out.verdict = Tri::False;
          out.witness = {*pos, *neg};
          return out;
        }
      }
    }
    eps.push_back(neg ? -1 : 1);
  }
  if (!pending.empty()) {
    out.verdict = Tri::Undetermined;
    out.witness = std::move(pending);
    return out;
  }
  out.verdict = Tri::True;
  out.pattern = SignPattern(eps);
  return out;
}

PatternCheck check_ssr_any(const CertifiedMatrix& M, Precision p) {
  const int d = std::min(M.rows(), M.cols());
  MinorSigner signer(M, p);
  PatternCheck out;
  std::vector<MinorSign> pending;
  std::vector<int> eps;
  for (int k = 1; k <= d; ++k) {
    std::optional<MinorSign> first;
    for (const auto& r : combinations(M.rows(), k)) {
      for (const auto& c : combinations(M.cols(), k)) {
        MinorSign s = signer.sign(r, c);
        if (!s.verdict.determined()) {
          pending.push_back(std::move(s));
          continue;
        }
        int v = s.verdict.value();
        if (v == 0) {
          out.verdict = Tri::False;
          out.witness = {std::move(s)};
          return out;
        }
        if (!first) {
          first = s;
        } else if (first->verdict.value() != v) {
          out.verdict = Tri::False;
          out.witness = {*first, std::move(s)};
          return out;
        }
      }
    }
    eps.push_back(first ? first->verdict.value() : 1);
  }
  if (!pending.empty()) {
    out.verdict = Tri::Undetermined;
    out.witness = std::move(pending);
    return out;
  }
  out.verdict = Tri::True;
  out.pattern = SignPattern(eps);
  return out;
}

SsrReport detect_ssr(const CertifiedMatrix& M, Precision p) {
  const int d = std::min(M.rows(), M.cols());
  MinorSigner signer(M, p);
  SsrReport rep;
  std::vector<int> eps;
  std::optional<MinorSign> undecided;
  for (int k = 1; k <= d; ++k) {
    int level_sign = 0;
    for (const auto& r : combinations(M.rows(), k)) {
      for (const auto& c : combinations(M.cols(), k)) {
        MinorSign s = signer.sign(r, c);
        if (!s.verdict.determined()) {
          if (!undecided) undecided = std::move(s);
          continue;
        }
        int v = s.verdict.value();
        if (v == 0 || (level_sign != 0 && v != level_sign)) {
          rep.is_ssr = false;
          rep.violating_minor = std::move(s);
          return rep;
        }
        level_sign = v;
      }
    }
    if (undecided) throw UndeterminedSign(*undecided);
    eps.push_back(level_sign);
  }
  rep.is_ssr = true;
  rep.pattern = SignPattern(eps);
  return rep;
}

}  // namespace signreg
