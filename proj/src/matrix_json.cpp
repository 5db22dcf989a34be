#include "opmeans/matrix_json.hpp"

#include <cmath>
#include <string>

#include "opmeans/error.hpp"

namespace opmeans {

nlohmann::json matrix_to_json(const Matrix& m) {
  const std::size_t n = m.dim();
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < n; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < n; ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return {{"dim", n}, {"entries", std::move(rows)}};
}

Matrix matrix_from_json(const nlohmann::json& j) {
  auto fail = [](const std::string& why) -> Matrix { throw Error(ErrorCode::ParseError, why); };
  if (!j.is_object() || !j.contains("dim") || !j.contains("entries")) {
    return fail("matrix object needs \"dim\" and \"entries\"");
  }
  if (!j["dim"].is_number_integer() || j["dim"].get<long long>() < 1) {
    return fail("\"dim\" must be a positive integer");
  }
  const auto n = j["dim"].get<std::size_t>();
  Matrix m(n);
  const auto& rows = j["entries"];
  if (!rows.is_array() || rows.size() != n) return fail("\"entries\" must have dim rows");
  for (std::size_t r = 0; r < n; ++r) {
    const auto& row = rows[r];
    if (!row.is_array() || row.size() != n) return fail("row " + std::to_string(r) + " has wrong length");
    for (std::size_t c = 0; c < n; ++c) {
      const auto& z = row[c];
      if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number()) {
        return fail("entry must be [re, im]");
      }
      const Complex v{z[0].get<double>(), z[1].get<double>()};
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return fail("non-finite entry");
      m(r, c) = v;
    }
  }
  return m;
}

}  // namespace opmeans
