#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "json.hpp"
#include "nfq/numberfield.hpp"

namespace nfq {

/// Parses JSON text; syntax errors become kInvalidInput with a line/column.
nlohmann::json parse_json_document(const std::string& text);

/// Integer from a JSON number or decimal string.
mpz_class json_integer(const nlohmann::json& v, const std::string& where);
/// Rational from a JSON integer or a "p/q" string.
mpq_class json_rational(const nlohmann::json& v, const std::string& where);
std::vector<mpq_class> json_rational_vector(const nlohmann::json& v, const std::string& where);

NumberField field_from_json(const nlohmann::json& doc);

}  // namespace nfq
