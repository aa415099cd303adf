#include "spreadlab/io.hpp"

#include <fstream>
#include <iostream>
#include <iterator>
#include <limits>
#include <sstream>

#include "spreadlab/error.hpp"

namespace spreadlab::io {

json big_to_json(const BigInt& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(v);
  return v.str();
}

BigInt big_from_json(const json& j) {
  if (j.is_number_unsigned()) return BigInt(j.get<std::uint64_t>());
  if (j.is_number_integer()) return BigInt(j.get<std::int64_t>());
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    const bool digits = !s.empty() && s.find_first_not_of("-0123456789") == std::string::npos &&
                        s.find('-', 1) == std::string::npos && s != "-";
    if (digits) return BigInt(s);
  }
  throw Error(ErrorCode::ParseError, "expected an integer, got " + j.dump());
}

json field_to_json(const gf::Field& f) {
  return json{{"p", f.p()}, {"e", f.e()}, {"modulus", f.modulus()}};
}

json subspace_to_json(const linalg::Subspace& s) {
  return json{{"q", s.field().q()}, {"n", s.ambient()}, {"dim", s.dim()}, {"rows", s.basis().to_rows()}};
}

namespace {

template <typename T>
T get_field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(ErrorCode::ParseError, std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("field '") + key + "': " + e.what());
  }
}

}  // namespace

linalg::Subspace subspace_from_json(const json& j, const gf::Field& field, std::size_t n) {
  if (get_field<std::uint64_t>(j, "q") != field.q())
    throw Error(ErrorCode::FieldMismatch, "member over GF(" + j.at("q").dump() + ")");
  if (get_field<std::size_t>(j, "n") != n) throw Error(ErrorCode::AmbientMismatch, "member ambient differs");
  const auto rows = get_field<std::vector<std::vector<gf::Elem>>>(j, "rows");
  if (get_field<std::size_t>(j, "dim") != rows.size())
    throw Error(ErrorCode::ParseError, "'dim' does not match the number of rows");
  return linalg::Subspace::span(linalg::Matrix(field, n, rows));
}

json spread_to_json(const construct::PartialSpread& s) {
  json members = json::array();
  for (const auto& m : s.members) members.push_back(subspace_to_json(m));
  return json{{"q", s.params.q}, {"n", s.params.n}, {"t", s.params.t}, {"members", std::move(members)}};
}

construct::PartialSpread spread_from_json(const json& j) {
  const auto params = bounds::SpreadParams::make(get_field<std::uint64_t>(j, "q"), get_field<unsigned>(j, "n"),
                                                 get_field<unsigned>(j, "t"));
  construct::PartialSpread s{params, gf::Field::of_order(params.q), {}, {}};
  if (!j.contains("members") || !j.at("members").is_array())
    throw Error(ErrorCode::ParseError, "missing 'members' array");
  for (const auto& m : j.at("members")) s.members.push_back(subspace_from_json(m, s.field, params.n));
  return s;
}

json verification_to_json(const construct::Verification& v) {
  json out;
  switch (v.status) {
    case construct::VerifyStatus::Unchecked: out["status"] = "unchecked"; break;
    case construct::VerifyStatus::Verified: out["status"] = "verified"; break;
    case construct::VerifyStatus::Failed: out["status"] = "failed"; break;
  }
  out["first_pair"] = v.first_pair ? json::array({v.first_pair->first, v.first_pair->second}) : json(nullptr);
  out["bad_member"] = v.bad_member ? json(*v.bad_member) : json(nullptr);
  out["reason"] = v.reason;
  return out;
}

json report_to_json(const bounds::BoundReport& r) {
  json uppers = json::array();
  for (const auto& u : r.uppers)
    uppers.push_back({{"value", big_to_json(u.value)}, {"source", bounds::source_tag(u.source)}});
  json out{{"q", r.params.q},
           {"n", r.params.n},
           {"t", r.params.t},
           {"r", r.params.r},
           {"lower", big_to_json(r.lower)},
           {"uppers", std::move(uppers)}};
  out["exact"] = r.exact ? json{{"value", big_to_json(r.exact->value)}, {"source", bounds::source_tag(r.exact->source)}}
                         : json(nullptr);
  return out;
}

std::string read_text(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::ParseError, "cannot write '" + path + "'");
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
}

}  // namespace spreadlab::io
