#include "nfq/spec_io.hpp"

#include <sstream>

#include "nfq/error.hpp"

namespace nfq {

using nlohmann::json;

namespace {

std::string line_col(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace

json parse_json_document(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::kInvalidInput, "malformed JSON at " + line_col(text, e.byte > 0 ? e.byte - 1 : 0));
  }
}

mpz_class json_integer(const json& v, const std::string& where) {
  if (v.is_number_integer()) return v.is_number_unsigned() ? mpz_class(std::to_string(v.get<std::uint64_t>()))
                                                           : mpz_class(std::to_string(v.get<std::int64_t>()));
  if (v.is_string()) {
    mpz_class z;
    if (z.set_str(v.get<std::string>(), 10) == 0) return z;
  }
  fail(ErrorKind::kInvalidInput, where + ": expected an integer");
}

mpq_class json_rational(const json& v, const std::string& where) {
  if (v.is_number_integer()) return mpq_class(json_integer(v, where));
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    const auto slash = s.find('/');
    mpz_class num, den = 1;
    bool ok = num.set_str(s.substr(0, slash), 10) == 0;
    if (ok && slash != std::string::npos) ok = den.set_str(s.substr(slash + 1), 10) == 0;
    if (ok && den != 0) {
      mpq_class q(num, den);
      q.canonicalize();
      return q;
    }
  }
  fail(ErrorKind::kInvalidInput, where + ": expected an integer or a \"p/q\" rational");
}

std::vector<mpq_class> json_rational_vector(const json& v, const std::string& where) {
  if (!v.is_array()) fail(ErrorKind::kInvalidInput, where + ": expected an array");
  std::vector<mpq_class> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(json_rational(v[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

NumberField field_from_json(const json& doc) {
  if (!doc.is_object()) fail(ErrorKind::kInvalidInput, "field spec: top level must be an object");
  poly::ZPoly f;
  if (doc.contains("poly")) {
    const json& p = doc["poly"];
    if (!p.is_array() || p.empty()) fail(ErrorKind::kInvalidInput, "field spec: \"poly\" must be a nonempty array");
    for (std::size_t i = 0; i < p.size(); ++i) f.push_back(json_integer(p[i], "field spec: poly[" + std::to_string(i) + "]"));
    f.push_back(1);
  } else if (doc.contains("coefficients")) {
    const json& p = doc["coefficients"];
    if (!p.is_array() || p.size() < 2) fail(ErrorKind::kInvalidInput, "field spec: \"coefficients\" must list c0..cn");
    for (std::size_t i = 0; i < p.size(); ++i)
      f.push_back(json_integer(p[i], "field spec: coefficients[" + std::to_string(i) + "]"));
    if (f.back() != 1) fail(ErrorKind::kInvalidInput, "field spec: polynomial is not monic");
  } else {
    fail(ErrorKind::kInvalidInput, "field spec: missing \"poly\"");
  }

  unsigned precision = kDefaultPrecisionBits;
  if (doc.contains("precision_bits")) {
    const json& pb = doc["precision_bits"];
    if (!pb.is_number_integer() || pb.get<std::int64_t>() < 64 || pb.get<std::int64_t>() > 1 << 20)
      fail(ErrorKind::kInvalidInput, "field spec: \"precision_bits\" must be an integer >= 64");
    precision = static_cast<unsigned>(pb.get<std::int64_t>());
  }

  std::optional<RatMatrix> basis;
  if (doc.contains("integral_basis")) {
    const json& b = doc["integral_basis"];
    const std::size_t n = f.size() - 1;
    if (!b.is_array() || b.size() != n) fail(ErrorKind::kInvalidInput, "field spec: \"integral_basis\" must have n rows");
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      auto row = json_rational_vector(b[i], "field spec: integral_basis[" + std::to_string(i) + "]");
      if (row.size() != n) fail(ErrorKind::kInvalidInput, "field spec: integral_basis rows must have n entries");
      for (std::size_t j = 0; j < n; ++j) m(i, j) = row[j];
    }
    basis = std::move(m);
  }
  std::string name = doc.contains("name") && doc["name"].is_string() ? doc["name"].get<std::string>() : std::string{};
  return make_field(f, basis, precision, std::move(name));
}

}  // namespace nfq
