#include "signreg/genmat.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <sstream>

namespace signreg {

std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32), 0x5eedu};
  return std::mt19937_64(seq);
}

namespace {

Rational ipow(const Rational& b, int e) {
  mpz_class num, den;
  const unsigned u = static_cast<unsigned>(std::abs(e));
  mpz_pow_ui(num.get_mpz_t(), b.get_num_mpz_t(), u);
  mpz_pow_ui(den.get_mpz_t(), b.get_den_mpz_t(), u);
  Rational r = e >= 0 ? Rational(num, den) : Rational(den, num);
  r.canonicalize();
  return r;
}

Rational lattice(int k, int den) {
  Rational r(k, den);
  r.canonicalize();
  return r;
}

int uniform(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

}  // namespace

QMatrix vandermonde(const std::vector<Rational>& nodes, const std::vector<int>& exponents) {
  QMatrix A(static_cast<Eigen::Index>(nodes.size()), static_cast<Eigen::Index>(exponents.size()));
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i] <= 0) throw std::invalid_argument("vandermonde nodes must be positive");
    for (std::size_t j = 0; j < exponents.size(); ++j) A(i, j) = ipow(nodes[i], exponents[j]);
  }
  return A;
}

QMatrix vandermonde(const std::vector<Rational>& nodes, int cols) {
  std::vector<int> e(cols);
  for (int j = 0; j < cols; ++j) e[j] = j;
  return vandermonde(nodes, e);
}

QMatrix random_tp(int m, int n, std::uint64_t seed) {
  if (m < 1 || n < 1) throw std::invalid_argument("dimensions must be positive");
  auto rng = make_rng(seed, 0x7470);
  for (;;) {
    std::vector<int> ks(61);
    for (int k = 0; k < 61; ++k) ks[k] = 4 + k;  // 1/16 lattice of [1/4, 4]
    std::shuffle(ks.begin(), ks.end(), rng);
    ks.resize(m);
    std::sort(ks.begin(), ks.end());
    std::vector<Rational> nodes;
    for (int k : ks) nodes.push_back(lattice(k, 16));
    std::vector<int> ex(n);
    ex[0] = uniform(rng, 0, 1);
    for (int j = 1; j < n; ++j) ex[j] = ex[j - 1] + (uniform(rng, 0, 3) == 0 ? 2 : 1);
    std::vector<Rational> E(m), F(n);
    for (auto& e : E) e = lattice(uniform(rng, 2, 8), 4);
    for (auto& f : F) f = lattice(uniform(rng, 2, 8), 4);
    QMatrix A = diagonal_scale(vandermonde(nodes, ex), E, F);
    if (is_ssr_with(A, SignPattern::all_plus(std::min(m, n)))) return A;
  }
}

std::string OrbitAnalysis::str() const {
  std::ostringstream os;
  os << "d=" << d << " reachable:";
  for (const auto& e : reachable) os << " " << e.eps.str();
  os << " rejection/bordering:";
  for (const auto& e : rejection_only) os << " " << e.str();
  return os.str();
}

OrbitAnalysis orbit_analysis(int d) {
  OrbitAnalysis o;
  o.d = d;
  std::set<SignPattern> seen;
  for (int rev = 0; rev < 2; ++rev)
    for (int neg = 0; neg < 2; ++neg) {
      SignPattern e = SignPattern::all_plus(d);
      if (rev) e = exchange_map(e);
      if (neg) e = negation_map(e);
      if (seen.insert(e).second) o.reachable.push_back({e, rev == 1, neg == 1});
    }
  for (int mask = 0; mask < (1 << d); ++mask) {
    std::vector<int> s(d);
    for (int i = 0; i < d; ++i) s[i] = (mask >> i) & 1 ? -1 : 1;
    SignPattern e(s);
    if (!seen.count(e)) o.rejection_only.push_back(e);
  }
  return o;
}

// ---------------------------------------------------------------------------
// Linear programming: maximize c.x subject to Ax <= b, x >= 0, by a dense
// two-phase simplex in dictionary form.

namespace {

using Real = long double;
constexpr Real kEps = 1e-13L;

class Simplex {
 public:
  Simplex(const std::vector<std::vector<Real>>& A, const std::vector<Real>& b, const std::vector<Real>& c)
      : m_(static_cast<int>(b.size())), n_(static_cast<int>(c.size())), B_(m_), N_(n_ + 1),
        D_(m_ + 2, std::vector<Real>(n_ + 2)) {
    for (int i = 0; i < m_; ++i)
      for (int j = 0; j < n_; ++j) D_[i][j] = A[i][j];
    for (int i = 0; i < m_; ++i) {
      B_[i] = n_ + i;
      D_[i][n_] = -1;
      D_[i][n_ + 1] = b[i];
    }
    for (int j = 0; j < n_; ++j) {
      N_[j] = j;
      D_[m_][j] = -c[j];
    }
    N_[n_] = -1;
    D_[m_ + 1][n_] = 1;
  }

  // nullopt when infeasible or unbounded.
  std::optional<std::vector<Real>> solve() {
    int r = 0;
    for (int i = 1; i < m_; ++i)
      if (D_[i][n_ + 1] < D_[r][n_ + 1]) r = i;
    if (m_ > 0 && D_[r][n_ + 1] < -kEps) {
      pivot(r, n_);
      if (!run(1) || D_[m_ + 1][n_ + 1] < -1e-9L) return std::nullopt;
      for (int i = 0; i < m_; ++i)
        if (B_[i] == -1) {
          int s = -1;
          for (int j = 0; j <= n_; ++j)
            if (s == -1 || D_[i][j] < D_[i][s] || (D_[i][j] == D_[i][s] && N_[j] < N_[s])) s = j;
          pivot(i, s);
        }
    }
    if (!run(2)) return std::nullopt;
    std::vector<Real> x(n_, 0);
    for (int i = 0; i < m_; ++i)
      if (B_[i] < n_ && B_[i] >= 0) x[B_[i]] = D_[i][n_ + 1];
    return x;
  }

 private:
  void pivot(int r, int s) {
    const Real inv = 1 / D_[r][s];
    for (int i = 0; i < m_ + 2; ++i)
      if (i != r && D_[i][s] != 0) {
        const Real f = D_[i][s] * inv;
        for (int j = 0; j < n_ + 2; ++j)
          if (j != s) D_[i][j] -= D_[r][j] * f;
        D_[i][s] = -f;
      }
    for (int j = 0; j < n_ + 2; ++j)
      if (j != s) D_[r][j] *= inv;
    D_[r][s] = inv;
    std::swap(B_[r], N_[s]);
  }

  bool run(int phase) {
    const int x = phase == 1 ? m_ + 1 : m_;
    for (int iter = 0; iter < 50000; ++iter) {
      int s = -1;
      for (int j = 0; j <= n_; ++j) {
        if (phase == 2 && N_[j] == -1) continue;
        if (s == -1 || D_[x][j] < D_[x][s] || (D_[x][j] == D_[x][s] && N_[j] < N_[s])) s = j;
      }
      if (D_[x][s] > -kEps) return true;
      int r = -1;
      for (int i = 0; i < m_; ++i) {
        if (D_[i][s] < kEps) continue;
        if (r == -1) {
          r = i;
          continue;
        }
        const Real lhs = D_[i][n_ + 1] / D_[i][s], rhs = D_[r][n_ + 1] / D_[r][s];
        if (lhs < rhs || (lhs == rhs && B_[i] < B_[r])) r = i;
      }
      if (r == -1) return false;
      pivot(r, s);
    }
    return false;
  }

  int m_, n_;
  std::vector<int> B_, N_;
  std::vector<std::vector<Real>> D_;
};

// s * (a . x) > 0 for the new row x.
struct Cone {
  std::vector<Rational> a;
  int s = 1;
  std::vector<Real> unit;  // a / |a| in floating point
};

Real to_real(const Rational& q) {
  long e1 = 0, e2 = 0;
  const double n = mpz_get_d_2exp(&e1, q.get_num_mpz_t());
  const double d = mpz_get_d_2exp(&e2, q.get_den_mpz_t());
  return std::ldexp(static_cast<Real>(n) / static_cast<Real>(d), static_cast<int>(e1 - e2));
}

std::optional<std::vector<Cone>> new_row_cones(const QMatrix& A, const SignPattern& eps) {
  const int r = static_cast<int>(A.rows()), n = static_cast<int>(A.cols());
  const int kmax = std::min(r + 1, n);
  if (eps.size() < kmax) throw std::invalid_argument("sign pattern too short for the bordered matrix");
  std::map<std::pair<Index, Index>, Rational> cache;
  auto sub = [&](const Index& R, const Index& C) -> const Rational& {
    auto key = std::make_pair(R, C);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, R.empty() ? Rational(1) : minor(A, R, C)).first;
    return it->second;
  };
  std::vector<Cone> out;
  for (int k = 1; k <= kmax; ++k)
    for (const auto& R : combinations(r, k - 1))
      for (const auto& C : combinations(n, k)) {
        Cone c;
        c.a.assign(n, Rational(0));
        c.s = eps(k);
        bool nonzero = false;
        for (int t = 0; t < k; ++t) {
          Index Cp;
          for (int u = 0; u < k; ++u)
            if (u != t) Cp.push_back(C[u]);
          Rational v = sub(R, Cp);
          if ((k - 1 + t) % 2) v = -v;
          if (v != 0) nonzero = true;
          c.a[C[t]] = v;
        }
        if (!nonzero) return std::nullopt;
        Real big = 0;
        std::vector<Real> f(n);
        for (int j = 0; j < n; ++j) big = std::max(big, std::fabs(f[j] = to_real(c.a[j])));
        Real norm = 0;
        for (auto& v : f) {
          v /= big;
          norm += v * v;
        }
        norm = std::sqrt(norm);
        for (auto& v : f) v /= norm;
        c.unit = std::move(f);
        out.push_back(std::move(c));
      }
  return out;
}

// Maximal margin t with s * unit.x >= t inside the box |x_j| <= B.
std::optional<std::pair<std::vector<Real>, Real>> max_margin(const std::vector<Cone>& cones, int n, Real B) {
  const Real T = B * std::sqrt(static_cast<Real>(n)) + B;
  std::vector<std::vector<Real>> A;
  std::vector<Real> b;
  for (const auto& c : cones) {
    std::vector<Real> row(n + 1);
    Real dot1 = 0;
    for (int j = 0; j < n; ++j) {
      row[j] = -c.s * c.unit[j];
      dot1 += c.unit[j];
    }
    row[n] = 1;
    A.push_back(row);
    b.push_back(T - c.s * B * dot1);
  }
  for (int j = 0; j < n; ++j) {
    std::vector<Real> row(n + 1, 0);
    row[j] = 1;
    A.push_back(row);
    b.push_back(2 * B);
  }
  std::vector<Real> row(n + 1, 0);
  row[n] = 1;
  A.push_back(row);
  b.push_back(T + B);
  std::vector<Real> obj(n + 1, 0);
  obj[n] = 1;
  auto sol = Simplex(A, b, obj).solve();
  if (!sol) return std::nullopt;
  std::vector<Real> x(n);
  for (int j = 0; j < n; ++j) x[j] = (*sol)[j] - B;
  return std::make_pair(x, (*sol)[n] - T);
}

// Closest point to w in the max norm with margin rho.
std::optional<std::vector<Real>> closest(const std::vector<Cone>& cones, const std::vector<Real>& w, Real rho,
                                         Real B) {
  const int n = static_cast<int>(w.size());
  std::vector<std::vector<Real>> A;
  std::vector<Real> b;
  for (const auto& c : cones) {
    std::vector<Real> row(n + 1, 0);
    Real dot1 = 0;
    for (int j = 0; j < n; ++j) {
      row[j] = -c.s * c.unit[j];
      dot1 += c.unit[j];
    }
    A.push_back(row);
    b.push_back(-rho - c.s * B * dot1);
  }
  for (int j = 0; j < n; ++j) {
    std::vector<Real> up(n + 1, 0), down(n + 1, 0), box(n + 1, 0);
    up[j] = 1;
    up[n] = -1;
    down[j] = -1;
    down[n] = -1;
    box[j] = 1;
    A.push_back(up);
    b.push_back(w[j] + B);
    A.push_back(down);
    b.push_back(-(w[j] + B));
    A.push_back(box);
    b.push_back(2 * B);
  }
  std::vector<Real> obj(n + 1, 0);
  obj[n] = -1;
  auto sol = Simplex(A, b, obj).solve();
  if (!sol) return std::nullopt;
  std::vector<Real> x(n);
  for (int j = 0; j < n; ++j) x[j] = (*sol)[j] - B;
  return x;
}

bool cones_hold(const std::vector<Cone>& cones, const std::vector<Rational>& x) {
  for (const auto& c : cones) {
    Rational v = 0;
    for (std::size_t j = 0; j < x.size(); ++j)
      if (c.a[j] != 0) v += c.a[j] * x[j];
    if (sign_of(v) != c.s) return false;
  }
  return true;
}

Rational dyadic(Real v, int exponent) {
  // round(v * 2^-exponent) * 2^exponent
  const Real scaled = std::round(std::ldexp(v, -exponent));
  mpz_class z;
  mpz_set_d(z.get_mpz_t(), static_cast<double>(scaled));
  Rational q(z);
  if (exponent >= 0) mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<unsigned long>(exponent));
  else mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<unsigned long>(-exponent));
  return q;
}

// Coarsest dyadic rounding of x, no coarser than step, that satisfies every
// cone exactly.
std::optional<std::vector<Rational>> rationalize(const std::vector<Cone>& cones, const std::vector<Real>& x, Real B,
                                                 Real step = 0) {
  const int top = std::ilogb(static_cast<double>(B));
  for (int k = 3; k <= 50; ++k) {
    if (step > 0 && std::ldexp(Real(1), top - k) > step) continue;
    std::vector<Rational> q;
    for (Real v : x) q.push_back(dyadic(v, top - k));
    if (cones_hold(cones, q)) return q;
  }
  return std::nullopt;
}

Real max_abs(const QMatrix& A) {
  Real b = 0;
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < A.cols(); ++j) b = std::max(b, std::fabs(to_real(A(i, j))));
  return b;
}

QMatrix append_row(const QMatrix& A, const std::vector<Rational>& x) {
  QMatrix R(A.rows() + 1, static_cast<Eigen::Index>(x.size()));
  if (A.rows() > 0) R.topRows(A.rows()) = A;
  for (std::size_t j = 0; j < x.size(); ++j) R(A.rows(), static_cast<Eigen::Index>(j)) = x[j];
  return R;
}

}  // namespace

std::optional<QMatrix> insert_row(const QMatrix& A, const SignPattern& eps, std::mt19937_64& rng,
                                  const std::optional<std::vector<Rational>>& target, double margin) {
  const int n = static_cast<int>(A.cols());
  auto cones = new_row_cones(A, eps);
  if (!cones) return std::nullopt;
  Real B = std::max<Real>(1, max_abs(A));
  if (target) {
    if (static_cast<int>(target->size()) != n) throw std::invalid_argument("target row has the wrong length");
    for (const auto& v : *target) B = std::max(B, std::fabs(to_real(v)));
  }
  auto mm = max_margin(*cones, n, B);
  if (!mm || mm->second <= 1e-12L * B) return std::nullopt;
  const Real tstar = mm->second;
  std::vector<Real> w(n);
  if (target) {
    for (int j = 0; j < n; ++j) w[j] = to_real((*target)[j]);
  } else {
    std::uniform_real_distribution<double> u(-1, 1);
    for (auto& v : w) v = static_cast<Real>(u(rng)) * B;
  }
  Real rho = margin > 0 ? std::min<Real>(static_cast<Real>(margin), tstar / 2) : tstar / 4;
  auto x = closest(*cones, w, rho, 2 * B);
  std::optional<std::vector<Rational>> q;
  if (x) q = rationalize(*cones, *x, B, target ? rho / 4 : 0);
  if (!q) q = rationalize(*cones, mm->first, B);
  if (!q) return std::nullopt;
  return append_row(A, *q);
}

std::optional<QMatrix> insert_column(const QMatrix& A, const SignPattern& eps, std::mt19937_64& rng,
                                     const std::optional<std::vector<Rational>>& target, double margin) {
  auto r = insert_row(A.transpose(), eps, rng, target, margin);
  if (!r) return std::nullopt;
  return QMatrix(r->transpose());
}

namespace {

// (q^((i-j)^2)), totally positive for 0 < q < 1.
QMatrix gaussian_kernel(int n, const Rational& q) {
  QMatrix G(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Rational v = 1;
      for (int k = 0; k < (i - j) * (i - j); ++k) v *= q;
      G(i, j) = v;
    }
  return G;
}

// Smallest order with a vanishing minor, or 0 when every minor is nonzero.
int first_zero_order(const QMatrix& A) {
  const int d = static_cast<int>(std::min(A.rows(), A.cols()));
  for (int k = 1; k <= d; ++k)
    for (const auto& e : all_minors(A, k))
      if (e.value == 0) return k;
  return 0;
}

}  // namespace

std::optional<QMatrix> perturb_to_ssr(const QMatrix& W, const SignPattern& eps, const Rational& q) {
  const int m = static_cast<int>(W.rows()), n = static_cast<int>(W.cols());
  if (!(q > 0 && q < 1)) throw std::invalid_argument("smoothing parameter must lie in (0,1)");
  if (!is_sr_with(W, eps)) return std::nullopt;
  const QMatrix Gm = gaussian_kernel(m, q), Gn = gaussian_kernel(n, q);
  Rational scale = 1;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) scale = std::max<Rational>(scale, abs(W(i, j)));
  QMatrix X = W;
  for (int round = 0; round <= std::min(m, n); ++round) {
    // minors up to the rank become strict
    X = Gm * X * Gn;
    const int j = first_zero_order(X);
    if (j == 0) return X;
    // a corner bump raises the rank; minors through (m,n) have cofactor
    // sign +1, so the new order-j minors take the sign of eps_{j-1}
    const int s = eps(j) * (j > 1 ? eps(j - 1) : 1);
    Rational eta = q * q * scale * s;
    bool placed = false;
    for (int halving = 0; halving < 200 && !placed; ++halving, eta /= 2) {
      QMatrix Y = X;
      Y(m - 1, n - 1) += eta;
      if (is_sr_with(Y, eps)) {
        X = Y;
        placed = true;
      }
    }
    if (!placed) return std::nullopt;
  }
  return is_ssr_with(X, eps) ? std::optional<QMatrix>(X) : std::nullopt;
}

// ---------------------------------------------------------------------------
// Generators

namespace {

QMatrix apply_orbit(const QMatrix& A, bool reverse, bool negate) {
  QMatrix R = reverse ? QMatrix(A * exchange_matrix(static_cast<int>(A.cols()))) : A;
  if (negate) R = -R;
  return R;
}

std::optional<OrbitEntry> orbit_move(const SignPattern& from, const SignPattern& to) {
  for (int rev = 0; rev < 2; ++rev)
    for (int neg = 0; neg < 2; ++neg) {
      SignPattern e = from;
      if (rev) e = exchange_map(e);
      if (neg) e = negation_map(e);
      if (e == to) return OrbitEntry{e, rev == 1, neg == 1};
    }
  return std::nullopt;
}

const SignPattern kSeedPattern = SignPattern::parse("++-");

QMatrix curated_pp_minus() {
  QMatrix S(3, 3);
  S << 2, 3, 4, 3, 5, 7, 4, 7, Rational(99, 10);
  return S;
}

// Cheap positivity screen before the exact check.
bool pp_minus_3x3(const QMatrix& A) {
  static const std::vector<Index> pairs{{0, 1}, {0, 2}, {1, 2}};
  for (const auto& r : pairs)
    for (const auto& c : pairs)
      if (A(r[0], c[0]) * A(r[1], c[1]) - A(r[0], c[1]) * A(r[1], c[0]) <= 0) return false;
  return determinant(A) < 0;
}

QMatrix seed_3x3(const SignPattern& p, std::mt19937_64& rng, int budget) {
  auto move = orbit_move(kSeedPattern, p);
  if (!move) throw std::logic_error("3x3 pattern outside both orbits");
  std::optional<QMatrix> base;
  for (int t = 0; t < budget && !base; ++t) {
    QMatrix A(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        int q = uniform(rng, 1, 10);
        A(i, j) = lattice(uniform(rng, 1, 10 * q), q);
      }
    if (pp_minus_3x3(A)) base = A;
  }
  if (!base) base = curated_pp_minus();
  return apply_orbit(*base, move->reverse, move->negate);
}

}  // namespace

std::optional<QMatrix> border_to(const QMatrix& Ain, int m, int n, const SignPattern& eps, std::mt19937_64& rng) {
  QMatrix A = Ain;
  while (A.rows() < m || A.cols() < n) {
    const bool add_row = A.rows() < m && (A.rows() <= A.cols() || A.cols() >= n);
    auto next = add_row ? insert_row(A, eps, rng) : insert_column(A, eps, rng);
    if (!next) return std::nullopt;
    A = *next;
  }
  return A;
}

namespace {

QMatrix positive_scaling(const QMatrix& A, std::mt19937_64& rng) {
  std::vector<Rational> E(A.rows()), F(A.cols());
  for (auto& e : E) e = lattice(uniform(rng, 2, 8), 4);
  for (auto& f : F) f = lattice(uniform(rng, 2, 8), 4);
  return diagonal_scale(A, E, F);
}

}  // namespace

namespace {

// Borders one row and one column at a time; when the cones get too thin the
// zero-padded matrix is smoothed back to strict instead.
std::optional<QMatrix> grow_square(const QMatrix& base, int d, const SignPattern& eps, std::mt19937_64& rng) {
  QMatrix A = base;
  while (A.rows() < d) {
    const int k = static_cast<int>(A.rows()) + 1;
    auto r = insert_row(A, eps, rng);
    std::optional<QMatrix> next;
    if (r) next = insert_column(*r, eps, rng);
    if (!next) next = perturb_to_ssr(pad_with_zeros(A, k, k), eps.prefix(k), Rational(1, 16));
    if (!next) return std::nullopt;
    A = *next;
  }
  return A;
}

}  // namespace

QMatrix random_ssr(int m, int n, const SignPattern& eps, std::uint64_t seed, const GenOptions& opt) {
  const int d = std::min(m, n);
  if (m < 1 || n < 1) throw std::invalid_argument("dimensions must be positive");
  if (eps.size() != d) throw std::invalid_argument("sign pattern length must be min(m,n)");
  auto rng = make_rng(seed, 0x7373);
  if (auto mv = orbit_move(SignPattern::all_plus(d), eps))
    return apply_orbit(random_tp(m, n, rng()), mv->reverse, mv->negate);
  for (int attempt = 0; attempt < 64; ++attempt) {
    const SignPattern p3 = eps.prefix(3);
    QMatrix base = orbit_move(SignPattern::all_plus(3), p3)
                       ? apply_orbit(random_tp(3, 3, rng()), orbit_move(SignPattern::all_plus(3), p3)->reverse,
                                     orbit_move(SignPattern::all_plus(3), p3)->negate)
                       : seed_3x3(p3, rng, opt.rejection_budget);
    // square up to d first so that every order appears with its own sign
    auto sq = grow_square(base, d, eps, rng);
    if (!sq) continue;
    auto full = border_to(*sq, m, n, eps, rng);
    if (full && is_ssr_with(*full, eps)) return *full;
  }
  throw GenerationFailure("could not generate a " + std::to_string(m) + "x" + std::to_string(n) +
                              " SSR matrix with pattern " + eps.str(),
                          orbit_analysis(d));
}

QMatrix random_sr(int m, int n, const SignPattern& eps, std::uint64_t seed, const GenOptions& opt) {
  const int d = std::min(m, n);
  if (m < 1 || n < 1) throw std::invalid_argument("dimensions must be positive");
  if (eps.size() != d) throw std::invalid_argument("sign pattern length must be min(m,n)");
  auto rng = make_rng(seed, 0x7372);
  std::string how = opt.hint;
  if (how.empty()) {
    static const char* kinds[] = {"direct", "pad", "duplicate", "curated"};
    how = kinds[uniform(rng, 0, m >= 3 && n >= 3 ? 3 : 2)];
  }
  if (how == "direct") return random_ssr(m, n, eps, rng(), opt);
  if (how == "pad") {
    const int p = uniform(rng, 1, m), q = uniform(rng, 1, n);
    QMatrix B = random_ssr(p, q, eps.prefix(std::min(p, q)), rng(), opt);
    return pad_with_zeros(B, m, n);
  }
  if (how == "duplicate") {
    const bool rows = m > 1 && (n == 1 || uniform(rng, 0, 1) == 0);
    const int total = rows ? m : n, other = rows ? n : m;
    const int keep = total > 1 ? uniform(rng, 1, total - 1) : 1;
    QMatrix B = rows ? random_ssr(keep, other, eps.prefix(std::min(keep, other)), rng(), opt)
                     : QMatrix(random_ssr(other, keep, eps.prefix(std::min(keep, other)), rng(), opt).transpose());
    // each extra line copies a random line, placed next to it
    std::vector<int> src(keep);
    for (int i = 0; i < keep; ++i) src[i] = i;
    while (static_cast<int>(src.size()) < total) {
      int at = uniform(rng, 0, static_cast<int>(src.size()) - 1);
      src.insert(src.begin() + at, src[at]);
    }
    QMatrix R(total, other);
    for (int i = 0; i < total; ++i) R.row(i) = B.row(src[i]);
    return rows ? R : QMatrix(R.transpose());
  }
  if (how == "curated") {
    if (m < 3 || n < 3) return random_ssr(m, n, eps, rng(), opt);
    QMatrix S(3, 3);
    S << 3, 1, 2, 1, 1, 4, 1, 2, 9;  // TN2, singular: SR for either third sign
    const SignPattern p3 = eps.prefix(3);
    std::optional<OrbitEntry> mv;
    for (int e3 : {1, -1})
      if (!mv) mv = orbit_move(SignPattern({1, 1, e3}), p3);
    QMatrix C = apply_orbit(S, mv->reverse, mv->negate);
    if (opt.hint.empty()) C = positive_scaling(C, rng);  // verbatim when asked for by name
    return pad_with_zeros(C, m, n);
  }
  throw std::invalid_argument("unknown generation hint '" + how + "'");
}

}  // namespace signreg
