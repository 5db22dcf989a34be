#pragma once

#include "json.hpp"
#include "opmeans/matrix.hpp"

namespace opmeans {

/// {"dim": n, "entries": [[[re, im], ...], ...]}. Doubles are written in
/// shortest round-trip form, so decode(encode(m)) == m bit for bit.
nlohmann::json matrix_to_json(const Matrix& m);

/// Throws ParseError on malformed input, BadDimension for n outside [1, 16].
Matrix matrix_from_json(const nlohmann::json& j);

}  // namespace opmeans
