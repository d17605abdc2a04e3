#pragma once

#include "signreg/rational.hpp"

#include <json.hpp>

#include <string>

namespace signreg {

// {rows, cols, entries} with entries row-major (flat or nested), each a
// string literal ("p/q", "0.25") or a JSON number read from its literal text.
QMatrix matrix_from_json(const nlohmann::json& j);
nlohmann::json matrix_to_json(const QMatrix& A);

// Comma- or whitespace-separated rows; '#' starts a comment.
QMatrix matrix_from_csv(const std::string& text);

// JSON when the first non-blank character is '{' or '[', CSV otherwise.
QMatrix parse_matrix_text(const std::string& text);
QMatrix read_matrix_file(const std::string& path);

Rational rational_from_json(const nlohmann::json& j);

}  // namespace signreg
