#include "signreg/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace signreg {

Rational rational_from_json(const nlohmann::json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(mpz_class(j.dump()));
  if (j.is_number_float()) return parse_rational(j.dump());
  throw std::invalid_argument("expected a rational literal, got " + j.dump());
}

QMatrix matrix_from_json(const nlohmann::json& j) {
  std::vector<Rational> flat;
  long rows = -1, cols = -1;
  const nlohmann::json* entries = &j;
  if (j.is_object()) {
    if (!j.contains("entries")) throw std::invalid_argument("matrix JSON lacks 'entries'");
    entries = &j.at("entries");
    if (j.contains("rows")) rows = j.at("rows").get<long>();
    if (j.contains("cols")) cols = j.at("cols").get<long>();
  }
  if (!entries->is_array() || entries->empty()) throw std::invalid_argument("matrix entries must be a non-empty array");
  if (entries->front().is_array()) {
    long r = static_cast<long>(entries->size());
    long c = static_cast<long>(entries->front().size());
    for (const auto& row : *entries) {
      if (!row.is_array() || static_cast<long>(row.size()) != c) throw std::invalid_argument("ragged matrix rows");
      for (const auto& e : row) flat.push_back(rational_from_json(e));
    }
    if ((rows >= 0 && rows != r) || (cols >= 0 && cols != c)) throw std::invalid_argument("declared shape disagrees with entries");
    rows = r;
    cols = c;
  } else {
    for (const auto& e : *entries) flat.push_back(rational_from_json(e));
    if (rows < 0 || cols < 0) throw std::invalid_argument("flat entries need rows and cols");
  }
  if (rows <= 0 || cols <= 0 || static_cast<long>(flat.size()) != rows * cols)
    throw std::invalid_argument("entries.length must equal rows*cols");
  QMatrix A(rows, cols);
  for (long i = 0; i < rows; ++i)
    for (long k = 0; k < cols; ++k) A(i, k) = flat[static_cast<std::size_t>(i * cols + k)];
  return A;
}

nlohmann::json matrix_to_json(const QMatrix& A) {
  nlohmann::json entries = nlohmann::json::array();
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index k = 0; k < A.cols(); ++k) entries.push_back(to_string(A(i, k)));
  return {{"rows", A.rows()}, {"cols", A.cols()}, {"entries", entries}};
}

QMatrix matrix_from_csv(const std::string& text) {
  std::vector<std::vector<Rational>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    for (char& ch : line)
      if (ch == ',' || ch == ';' || ch == '\t') ch = ' ';
    std::istringstream ls(line);
    std::vector<Rational> row;
    std::string tok;
    while (ls >> tok) row.push_back(parse_rational(tok));
    if (!row.empty()) rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::invalid_argument("no matrix rows found");
  return make_matrix(rows);
}

QMatrix parse_matrix_text(const std::string& text) {
  auto pos = text.find_first_not_of(" \t\r\n");
  if (pos == std::string::npos) throw std::invalid_argument("empty matrix input");
  if (text[pos] == '{' || text[pos] == '[') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw std::invalid_argument(std::string("malformed matrix JSON: ") + e.what());
    }
    return matrix_from_json(j);
  }
  return matrix_from_csv(text);
}

QMatrix read_matrix_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_matrix_text(ss.str());
}

}  // namespace signreg
