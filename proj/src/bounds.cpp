#include "spreadlab/bounds.hpp"

#include <algorithm>
#include <array>
#include <utility>

#include "spreadlab/error.hpp"
#include "spreadlab/gf.hpp"

namespace spreadlab::bounds {

namespace {

constexpr std::array<std::pair<Source, std::string_view>, 8> kTags{{
    {Source::TrivialOverlap, "TRIVIAL_OVERLAP"},
    {Source::DrakeFreeman, "DRAKE_FREEMAN"},
    {Source::MainTheorem, "MAIN_THEOREM"},
    {Source::NsExact, "NS_EXACT"},
    {Source::KurzExact, "KURZ_EXACT"},
    {Source::EjsssExact, "EJSSS_EXACT"},
    {Source::SpreadExact, "SPREAD_EXACT"},
    {Source::BhpExact, "BHP_EXACT"},
}};

std::string params_str(const SpreadParams& p) {
  return "(q=" + std::to_string(p.q) + ", n=" + std::to_string(p.n) + ", t=" + std::to_string(p.t) + ")";
}

// (q^n - q^{t+r})/(q^t - 1); the division is exact because n - t - r is a
// multiple of t.
BigInt spread_base(const SpreadParams& p) {
  return (big_pow(p.q, p.n) - big_pow(p.q, p.t + p.r)) / (big_pow(p.q, p.t) - 1);
}

}  // namespace

SpreadParams SpreadParams::make(std::uint64_t q, unsigned n, unsigned t) {
  if (gf::prime_power_decompose(q).first == 0)
    throw Error(ErrorCode::NotPrime, "q = " + std::to_string(q) + " is not a prime power");
  if (t < 1 || n <= t)
    throw Error(ErrorCode::InvalidParams,
                "need n > t >= 1, got n=" + std::to_string(n) + ", t=" + std::to_string(t));
  return SpreadParams{q, n, t, n % t};
}

std::string_view source_tag(Source s) {
  for (const auto& [src, tag] : kTags)
    if (src == s) return tag;
  return "UNKNOWN";
}

Source source_from_tag(std::string_view tag) {
  for (const auto& [src, name] : kTags)
    if (name == tag) return src;
  throw Error(ErrorCode::ParseError, "unknown bound source '" + std::string(tag) + "'");
}

BigInt theta(unsigned i, std::uint64_t q) { return (big_pow(q, i) - 1) / (q - 1); }

BigInt lower_bound(const SpreadParams& p) { return spread_base(p) + 1; }

BigInt omega_floor(std::uint64_t q, unsigned t, unsigned r) {
  if (r == 0) throw Error(ErrorCode::InvalidParams, "omega is defined only for r > 0");
  const BigInt qt = big_pow(q, t), qr = big_pow(q, r);
  const BigInt disc = 4 * qt * (qt - qr) + 1;
  const BigInt m = 2 * qt - 2 * qr + 1;
  // sqrt(disc) lies in [isqrt, isqrt + 1), so flooring with isqrt is exact.
  return floor_div(boost::multiprecision::sqrt(disc) - m, 2);
}

BigInt drake_freeman(const SpreadParams& p) {
  if (p.r == 0) throw Error(ErrorCode::InvalidParams, "Drake-Freeman bound needs r > 0 " + params_str(p));
  return spread_base(p) + big_pow(p.q, p.r) - omega_floor(p.q, p.t, p.r) - 1;
}

C1C2 c1_c2(std::uint64_t q, unsigned t) {
  if (t < 2) throw Error(ErrorCode::InvalidParams, "c1/c2 need t >= 2");
  C1C2 c;
  c.c1 = (t - 2) % q;
  const BigInt s = BigInt(q - 1) * (t - 2) + c.c1;
  c.c2 = (s % (BigInt(q) * q) == 0) ? q : 0;
  return c;
}

bool in_main_regime(const SpreadParams& p) {
  return p.r >= 2 && p.r < p.t && BigInt(p.t) <= theta(p.r, p.q);
}

BigInt main_offset(const SpreadParams& p) {
  const C1C2 c = c1_c2(p.q, p.t);
  return big_pow(p.q, p.r) - BigInt(p.q - 1) * (p.t - 2) - c.c1 + c.c2;
}

BigInt main_bound(const SpreadParams& p) {
  if (!in_main_regime(p))
    throw Error(ErrorCode::OutOfRegime, "main bound needs 2 <= r < t <= Θ_r " + params_str(p));
  return spread_base(p) + main_offset(p);
}

BigInt main_bound_relaxed(const SpreadParams& p) {
  if (!in_main_regime(p))
    throw Error(ErrorCode::OutOfRegime, "main bound needs 2 <= r < t <= Θ_r " + params_str(p));
  return spread_base(p) + big_pow(p.q, p.r) - BigInt(p.q - 1) * (BigInt(p.t) - 3) + 1;
}

BigInt compare_bounds(const SpreadParams& p) {
  if (!(p.r >= 2 && 2 * p.r <= p.t && BigInt(p.t) <= theta(p.r, p.q)))
    throw Error(ErrorCode::OutOfRegime, "comparison needs r >= 2 and 2r <= t <= Θ_r " + params_str(p));
  return main_bound(p) - drake_freeman(p);
}

BigInt compare_bounds_closed_form(const SpreadParams& p) {
  const C1C2 c = c1_c2(p.q, p.t);
  return big_pow(p.q, p.r) / 2 - BigInt(p.q - 1) * (p.t - 2) - c.c1 + c.c2;
}

bool in_tighter_regime(const SpreadParams& p) {
  if (p.r < 2) return false;
  const BigInt th = theta(p.r, p.q);
  const BigInt low = ceil_div(th, 2) + (p.q > 2 ? 4 : 5);
  return low <= p.t && BigInt(p.t) <= th;
}

BigInt delta(const BigInt& x, unsigned i, std::uint64_t q) {
  const BigInt qi = big_pow(q, i);
  const BigInt xt = x * theta(i, q);
  return qi * ceil_div(xt, qi) - xt;
}

BigInt h_of(const BigInt& x, std::uint64_t q, unsigned /*t*/) { return ceil_div(x, BigInt(q - 1)); }

BigInt ell(const SpreadParams& p) {
  return (big_pow(p.q, p.n - p.t) - big_pow(p.q, p.r)) / (big_pow(p.q, p.t) - 1);
}

std::optional<std::string> lemma_main_violation(const SpreadParams& p, const BigInt& x) {
  const BigInt q = p.q;
  if (x < 1) return "x >= 1";
  if (p.r < 2) return "r >= 2";
  if (x % q != 0) return "q | x";
  if (x % (q * q) == 0) return "q^2 does not divide x";
  if (BigInt(p.t) < theta(p.r, p.q) - h_of(x, p.q, p.t) + 2) return "t >= Theta_r - ceil(x/(q-1)) + 2";
  return std::nullopt;
}

BigInt lemma_main_bound(std::uint64_t q, unsigned n, unsigned t, const BigInt& x) {
  const SpreadParams p = SpreadParams::make(q, n, t);
  if (auto failed = lemma_main_violation(p, x))
    throw Error(ErrorCode::HypothesisViolated, *failed + " fails for " + params_str(p) + ", x=" + x.str());
  return ell(p) * big_pow(q, t) + x;
}

BoundReport best_known(const SpreadParams& p) {
  BoundReport rep;
  rep.params = p;
  const BigInt lower = lower_bound(p);
  rep.lower = lower;

  auto add = [&](Source s, BigInt v) { rep.uppers.push_back({std::move(v), s}); };
  const bool overlap = p.n < 2 * p.t;
  if (overlap) add(Source::TrivialOverlap, 1);
  if (p.r == 0) add(Source::SpreadExact, theta(p.n, p.q) / theta(p.t, p.q));
  if (p.r == 1) add(Source::BhpExact, lower);
  const bool ejsss = p.q == 2 && p.t == 3 && p.r == 2 && p.n >= 8;
  if (ejsss) add(Source::EjsssExact, (big_pow(2, p.n) - 32) / 7 + 2);
  const bool kurz = p.q == 2 && p.t > 3 && p.r == 2;
  if (kurz) add(Source::KurzExact, lower);
  const bool ns = BigInt(p.t) > theta(p.r, p.q);
  if (ns) add(Source::NsExact, lower);
  if (p.r > 0) add(Source::DrakeFreeman, drake_freeman(p));
  if (in_main_regime(p)) add(Source::MainTheorem, main_bound(p));

  // Precedence of the deciding source.
  static constexpr std::array<Source, 6> kOrder{Source::TrivialOverlap, Source::SpreadExact,
                                                Source::BhpExact,       Source::EjsssExact,
                                                Source::KurzExact,      Source::NsExact};
  for (Source s : kOrder) {
    auto it = std::find_if(rep.uppers.begin(), rep.uppers.end(),
                           [s](const SourcedValue& v) { return v.source == s; });
    if (it != rep.uppers.end()) {
      rep.exact = *it;
      break;
    }
  }
  rep.best_upper = rep.uppers.empty() ? BigInt(-1) : rep.uppers.front().value;
  for (const auto& u : rep.uppers) rep.best_upper = std::min(rep.best_upper, u.value);
  if (rep.exact) rep.lower = rep.exact->value;
  return rep;
}

}  // namespace spreadlab::bounds
