#include "signreg/matcore.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace signreg {

std::string to_string(Sign s) {
  switch (s) {
    case Sign::Positive: return "positive";
    case Sign::Negative: return "negative";
    case Sign::Zero: return "zero";
    case Sign::Undetermined: return "undetermined";
  }
  return "?";
}

SignVerdict SignVerdict::of(int s) {
  if (s > 0) return {Sign::Positive, 0};
  if (s < 0) return {Sign::Negative, 0};
  return {Sign::Zero, 0};
}

int SignVerdict::value() const {
  switch (sign) {
    case Sign::Positive: return 1;
    case Sign::Negative: return -1;
    case Sign::Zero: return 0;
    case Sign::Undetermined: break;
  }
  throw std::logic_error("value() of an undetermined sign");
}

SignPattern::SignPattern(std::vector<int> signs) : s_(std::move(signs)) {
  if (s_.empty()) throw std::invalid_argument("sign pattern must be non-empty");
  for (int v : s_)
    if (v != 1 && v != -1) throw std::invalid_argument("sign pattern entries must be +1 or -1");
}

SignPattern SignPattern::parse(std::string_view text) {
  std::vector<int> v;
  std::string tok;
  auto flush = [&] {
    if (tok.empty()) return;
    if (tok == "1" || tok == "+1") v.push_back(1);
    else if (tok == "-1") v.push_back(-1);
    else throw std::invalid_argument("bad sign token '" + tok + "'");
    tok.clear();
  };
  bool has_sep = text.find(',') != std::string_view::npos;
  for (char ch : text) {
    if (ch == ' ') continue;
    if (has_sep) {
      if (ch == ',') flush();
      else tok += ch;
    } else if (ch == '+') {
      v.push_back(1);
    } else if (ch == '-') {
      v.push_back(-1);
    } else {
      throw std::invalid_argument("bad sign pattern '" + std::string(text) + "'");
    }
  }
  if (has_sep) flush();
  return SignPattern(std::move(v));
}

std::string SignPattern::str() const {
  std::string r;
  for (int v : s_) r += v > 0 ? '+' : '-';
  return r;
}

SignPattern SignPattern::prefix(int d) const {
  return SignPattern(std::vector<int>(s_.begin(), s_.begin() + d));
}

SignPattern SignPattern::times(const SignPattern& o) const {
  if (o.size() != size()) throw std::invalid_argument("sign pattern length mismatch");
  std::vector<int> r(s_.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = s_[i] * o.s_[i];
  return SignPattern(std::move(r));
}

SignPattern exchange_map(const SignPattern& eps) {
  std::vector<int> r(eps.signs());
  for (int i = 1; i <= eps.size(); ++i)
    if ((i / 2) % 2 == 1) r[i - 1] = -r[i - 1];
  return SignPattern(std::move(r));
}

SignPattern negation_map(const SignPattern& eps) {
  std::vector<int> r(eps.signs());
  for (int i = 1; i <= eps.size(); ++i)
    if (i % 2 == 1) r[i - 1] = -r[i - 1];
  return SignPattern(std::move(r));
}

std::vector<Index> combinations(int n, int k) {
  std::vector<Index> out;
  if (k < 0 || k > n) return out;
  Index c(k);
  std::iota(c.begin(), c.end(), 0);
  while (true) {
    out.push_back(c);
    int i = k - 1;
    while (i >= 0 && c[i] == n - k + i) --i;
    if (i < 0) break;
    ++c[i];
    for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
  }
  return out;
}

Rational determinant(const QMatrix& A) {
  const int n = static_cast<int>(A.rows());
  if (n != A.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  if (n == 0) return 1;
  std::vector<mpz_class> M(static_cast<std::size_t>(n * n));
  mpz_class scale = 1;
  for (int i = 0; i < n; ++i) {
    mpz_class l = 1;
    for (int j = 0; j < n; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), A(i, j).get_den_mpz_t());
    for (int j = 0; j < n; ++j) M[i * n + j] = A(i, j).get_num() * (l / A(i, j).get_den());
    scale *= l;
  }
  mpz_class prev = 1;
  int sign = 1;
  for (int k = 0; k + 1 < n; ++k) {
    if (M[k * n + k] == 0) {
      int r = k + 1;
      while (r < n && M[r * n + k] == 0) ++r;
      if (r == n) return 0;
      for (int j = 0; j < n; ++j) std::swap(M[k * n + j], M[r * n + j]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        mpz_class t = M[i * n + j] * M[k * n + k] - M[i * n + k] * M[k * n + j];
        mpz_divexact(M[i * n + j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = M[k * n + k];
  }
  Rational d(mpz_class(sign * M[n * n - 1]), scale);
  d.canonicalize();
  return d;
}

QMatrix submatrix(const QMatrix& A, const Index& rows, const Index& cols) {
  QMatrix S(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) S(i, j) = A(rows[i], cols[j]);
  return S;
}

Rational minor(const QMatrix& A, const Index& rows, const Index& cols) {
  if (rows.size() != cols.size()) throw std::invalid_argument("minor needs a square selection");
  return determinant(submatrix(A, rows, cols));
}

std::vector<MinorEntry> all_minors(const QMatrix& A, int k) {
  const int m = static_cast<int>(A.rows()), n = static_cast<int>(A.cols());
  if (k < 1 || k > std::min(m, n)) throw std::out_of_range("minor order out of range");
  std::vector<MinorEntry> out;
  auto rs = combinations(m, k), cs = combinations(n, k);
  out.reserve(rs.size() * cs.size());
  for (const auto& r : rs)
    for (const auto& c : cs) out.push_back({r, c, minor(A, r, c)});
  return out;
}

SsrReport detect_ssr(const QMatrix& A) { return detect_ssr(CertifiedMatrix::exact(A)); }

bool is_sr_with(const QMatrix& A, const SignPattern& eps) {
  return check_sr_with(CertifiedMatrix::exact(A), eps).verdict == Tri::True;
}

bool is_ssr_with(const QMatrix& A, const SignPattern& eps) {
  return check_ssr_with(CertifiedMatrix::exact(A), eps).verdict == Tri::True;
}

std::vector<std::vector<int>> compatible_signs(const QMatrix& A) {
  const int d = static_cast<int>(std::min(A.rows(), A.cols()));
  std::vector<std::vector<int>> out;
  for (int k = 1; k <= d; ++k) {
    bool pos = false, neg = false;
    for (const auto& e : all_minors(A, k)) {
      int s = sgn(e.value);
      pos |= s > 0;
      neg |= s < 0;
      if (pos && neg) break;
    }
    if (pos && neg) out.push_back({});
    else if (pos) out.push_back({1});
    else if (neg) out.push_back({-1});
    else out.push_back({-1, 1});
  }
  return out;
}

std::vector<SignPattern> compatible_patterns(const QMatrix& A, std::size_t cap) {
  auto levels = compatible_signs(A);
  std::vector<std::vector<int>> acc = {{}};
  for (const auto& lv : levels) {
    std::vector<std::vector<int>> next;
    for (const auto& p : acc)
      for (int s : lv) {
        if (next.size() >= cap) break;
        auto q = p;
        q.push_back(s);
        next.push_back(std::move(q));
      }
    acc = std::move(next);
  }
  std::vector<SignPattern> out;
  for (auto& p : acc)
    if (!p.empty()) out.emplace_back(std::move(p));
  return out;
}

QMatrix exchange_matrix(int n) {
  QMatrix P = QMatrix::Constant(n, n, Rational(0));
  for (int i = 0; i < n; ++i) P(i, n - 1 - i) = 1;
  return P;
}

ExchangeResult exchange_conjugate(const QMatrix& A) {
  const int d = static_cast<int>(std::min(A.rows(), A.cols()));
  QMatrix AP = A.rowwise().reverse();
  return {AP, exchange_map(SignPattern::all_plus(d))};
}

QMatrix diagonal_scale(const QMatrix& A, const std::vector<Rational>& E,
                       const std::vector<Rational>& F) {
  if (static_cast<Eigen::Index>(E.size()) != A.rows() ||
      static_cast<Eigen::Index>(F.size()) != A.cols())
    throw std::invalid_argument("diagonal size mismatch");
  for (const auto& e : E)
    if (e <= 0) throw std::invalid_argument("diagonal entries must be positive");
  for (const auto& f : F)
    if (f <= 0) throw std::invalid_argument("diagonal entries must be positive");
  QMatrix B = A;
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < A.cols(); ++j) B(i, j) = E[i] * A(i, j) * F[j];
  return B;
}

Normalized3x3 normalize_3x3(const QMatrix& A) {
  if (A.rows() != 3 || A.cols() != 3) throw std::invalid_argument("normalize_3x3 needs a 3x3 matrix");
  for (Eigen::Index i = 0; i < 3; ++i)
    for (Eigen::Index j = 0; j < 3; ++j)
      if (A(i, j) <= 0) throw std::invalid_argument("normalize_3x3 needs positive entries");
  std::vector<Rational> E = {1 / A(0, 0), 1 / A(1, 0), 1 / A(2, 0)};
  std::vector<Rational> F = {1, A(0, 0) / A(0, 1), A(0, 0) / A(0, 2)};
  Normalized3x3 r;
  r.matrix = diagonal_scale(A, E, F);
  r.x = {r.matrix(1, 1), r.matrix(1, 2), r.matrix(2, 1), r.matrix(2, 2)};
  r.E = std::move(E);
  r.F = std::move(F);
  return r;
}

bool tn2_zero_pattern_check(const QMatrix& A, bool verify) {
  const int m = static_cast<int>(A.rows()), n = static_cast<int>(A.cols());
  if (verify) {
    auto eps = SignPattern::all_plus(std::min(2, std::min(m, n)));
    for (int k = 1; k <= eps.size(); ++k)
      for (const auto& e : all_minors(A, k))
        if (e.value < 0) throw std::invalid_argument("matrix is not TN2");
  }
  auto zero_block = [&](int r0, int r1, int c0, int c1) {
    for (int i = r0; i < r1; ++i)
      for (int j = c0; j < c1; ++j)
        if (A(i, j) != 0) return false;
    return true;
  };
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      if (A(i, j) != 0) continue;
      bool sw = zero_block(i, m, 0, j + 1);
      bool ne = zero_block(0, i + 1, j, n);
      bool row = zero_block(i, i + 1, 0, n);
      bool col = zero_block(0, m, j, j + 1);
      if (!(sw || ne || row || col)) return false;
    }
  }
  return true;
}

QMatrix pad_with_zeros(const QMatrix& A, int m, int n) {
  if (m < A.rows() || n < A.cols()) throw std::invalid_argument("padding cannot shrink a matrix");
  QMatrix B = QMatrix::Constant(m, n, Rational(0));
  B.topLeftCorner(A.rows(), A.cols()) = A;
  return B;
}

}  // namespace signreg
