#pragma once

// JSON encodings shared by the CLI and the tests. Integers that do not fit in
// a signed 64-bit value are written as decimal strings.

#include <string>

#include "json.hpp"
#include "spreadlab/bigint.hpp"
#include "spreadlab/bounds.hpp"
#include "spreadlab/construct.hpp"
#include "spreadlab/gf.hpp"
#include "spreadlab/linalg.hpp"

namespace spreadlab::io {

using nlohmann::json;

json big_to_json(const BigInt& v);
/// Accepts JSON integers and decimal strings; throws ParseError otherwise.
BigInt big_from_json(const json& j);

/// {"p","e","modulus":[c0..ce]}
json field_to_json(const gf::Field& f);

/// {"q","n","dim","rows":[[...],...]}
json subspace_to_json(const linalg::Subspace& s);
/// Rows are canonicalised; a rank-deficient row set yields a smaller dim.
linalg::Subspace subspace_from_json(const json& j, const gf::Field& field, std::size_t n);

/// {"q","n","t","members":[Subspace,...]}
json spread_to_json(const construct::PartialSpread& s);
construct::PartialSpread spread_from_json(const json& j);

json verification_to_json(const construct::Verification& v);

/// {"q","n","t","r","lower","uppers":[{"value","source"}],"exact":{...}|null}
json report_to_json(const bounds::BoundReport& r);

/// Reads a whole file, or stdin for "-".
std::string read_text(const std::string& path);
/// Writes to a file, or stdout for "-" or an empty path.
void write_text(const std::string& path, const std::string& text);

}  // namespace spreadlab::io
