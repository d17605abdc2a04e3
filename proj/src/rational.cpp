#include "signreg/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace signreg {

namespace {
[[noreturn]] void bad(std::string_view text) {
  throw std::invalid_argument("not a rational literal: '" + std::string(text) + "'");
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char ch : s)
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  return true;
}

Rational parse_decimal(std::string_view s, std::string_view whole) {
  bool neg = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  long exp10 = 0;
  auto epos = s.find_first_of("eE");
  if (epos != std::string_view::npos) {
    std::string_view e = s.substr(epos + 1);
    s = s.substr(0, epos);
    bool eneg = false;
    if (!e.empty() && (e.front() == '+' || e.front() == '-')) {
      eneg = e.front() == '-';
      e.remove_prefix(1);
    }
    if (!all_digits(e) || e.size() > 6) bad(whole);
    exp10 = std::stol(std::string(e));
    if (eneg) exp10 = -exp10;
  }
  std::string digits;
  auto dot = s.find('.');
  if (dot == std::string_view::npos) {
    if (!all_digits(s)) bad(whole);
    digits = std::string(s);
  } else {
    std::string_view ip = s.substr(0, dot), fp = s.substr(dot + 1);
    if (ip.empty() && fp.empty()) bad(whole);
    if ((!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp))) bad(whole);
    digits = std::string(ip) + std::string(fp);
    exp10 -= static_cast<long>(fp.size());
  }
  mpz_class num(digits.empty() ? "0" : digits, 10);
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
  Rational r = exp10 < 0 ? Rational(num, scale) : Rational(num * scale);
  r.canonicalize();
  return neg ? Rational(-r) : r;
}
}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = trim(text);
  if (s.empty()) bad(text);
  auto slash = s.find('/');
  if (slash == std::string_view::npos) return parse_decimal(s, text);
  Rational p = parse_decimal(trim(s.substr(0, slash)), text);
  Rational q = parse_decimal(trim(s.substr(slash + 1)), text);
  if (q == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  Rational r = p / q;
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

int sign_of(const Rational& q) { return sgn(q); }

bool is_integer(const Rational& q) { return q.get_den() == 1; }

QMatrix make_matrix(const std::vector<std::vector<Rational>>& rows) {
  if (rows.empty()) throw std::invalid_argument("empty matrix");
  const auto n = rows.front().size();
  if (n == 0) throw std::invalid_argument("empty matrix row");
  QMatrix A(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != n) throw std::invalid_argument("ragged matrix rows");
    for (std::size_t j = 0; j < n; ++j) A(i, j) = rows[i][j];
  }
  return A;
}

QMatrix identity_matrix(int n) {
  QMatrix I = QMatrix::Constant(n, n, Rational(0));
  for (int i = 0; i < n; ++i) I(i, i) = 1;
  return I;
}

}  // namespace signreg
