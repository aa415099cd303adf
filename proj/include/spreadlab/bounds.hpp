#pragma once

// Exact-integer bounds on the maximum size mu_q(n,t) of a partial
// (t-1)-spread of PG(n-1,q), the defect sequence delta_i used by the
// hyperplane-averaging descent, and the best-known-value oracle.
//
// Everything here is integer arithmetic on arbitrary-precision values; no
// floating point is used anywhere in this module.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spreadlab/bigint.hpp"

namespace spreadlab::bounds {

/// (q, n, t) with n > t >= 1 and r = n mod t.
struct SpreadParams {
  std::uint64_t q = 2;
  unsigned n = 0;
  unsigned t = 0;
  unsigned r = 0;

  /// Throws NotPrime if q is not a prime power, InvalidParams unless n > t >= 1.
  static SpreadParams make(std::uint64_t q, unsigned n, unsigned t);

  bool operator==(const SpreadParams&) const = default;
};

enum class Source {
  TrivialOverlap,
  DrakeFreeman,
  MainTheorem,
  NsExact,
  KurzExact,
  EjsssExact,
  SpreadExact,
  BhpExact,
};

std::string_view source_tag(Source s);
/// Inverse of source_tag; throws ParseError on unknown tags.
Source source_from_tag(std::string_view tag);

struct SourcedValue {
  BigInt value;
  Source source;
};

struct BoundReport {
  SpreadParams params;
  BigInt lower;
  std::vector<SourcedValue> uppers;
  BigInt best_upper;
  std::optional<SourcedValue> exact;
};

struct C1C2 {
  std::uint64_t c1 = 0;
  std::uint64_t c2 = 0;
};

/// Θ_i = (q^i - 1)/(q - 1); Θ_0 = 0.
BigInt theta(unsigned i, std::uint64_t q);

/// (q^n - q^{t+r})/(q^t - 1) + 1, the size reached by the classical construction.
BigInt lower_bound(const SpreadParams& p);

/// floor(omega) for 2 omega = sqrt(4 q^t (q^t - q^r) + 1) - (2 q^t - 2 q^r + 1),
/// via the integer square root. Throws InvalidParams when r = 0.
BigInt omega_floor(std::uint64_t q, unsigned t, unsigned r);

/// Throws InvalidParams when r = 0.
BigInt drake_freeman(const SpreadParams& p);

/// c1 = (t - 2) mod q, c2 = q if q^2 | (q-1)(t-2) + c1 and 0 otherwise.
C1C2 c1_c2(std::uint64_t q, unsigned t);

/// 2 <= r < t <= Θ_r
bool in_main_regime(const SpreadParams& p);

/// x* = q^r - (q-1)(t-2) - c1 + c2, the additive term of the main bound.
BigInt main_offset(const SpreadParams& p);

/// (q^n - q^{t+r})/(q^t - 1) + x*. Throws OutOfRegime outside 2 <= r < t <= Θ_r.
BigInt main_bound(const SpreadParams& p);

/// The c1/c2-free relaxation (q^n - q^{t+r})/(q^t - 1) + q^r - (q-1)(t-3) + 1.
BigInt main_bound_relaxed(const SpreadParams& p);

/// main_bound - drake_freeman. Throws OutOfRegime unless r >= 2 and 2r <= t <= Θ_r.
BigInt compare_bounds(const SpreadParams& p);

/// floor(q^r/2) - (q-1)(t-2) - c1 + c2, the closed form of compare_bounds.
BigInt compare_bounds_closed_form(const SpreadParams& p);

/// True where the main bound is guaranteed strictly below Drake-Freeman:
/// ceil(Θ_r/2) + 4 <= t <= Θ_r for q > 2, and ceil(Θ_r/2) + 5 <= t <= Θ_r for q = 2.
bool in_tighter_regime(const SpreadParams& p);

/// δ_i = q^i ceil(x Θ_i / q^i) - x Θ_i for x >= 1, i >= 1.
BigInt delta(const BigInt& x, unsigned i, std::uint64_t q);

/// ceil(x/(q-1)), which equals ceil(x Θ_t / q^t) whenever 0 < x < q^r, r < t.
BigInt h_of(const BigInt& x, std::uint64_t q, unsigned t);

/// ℓ = (q^{n-t} - q^r)/(q^t - 1).
BigInt ell(const SpreadParams& p);

/// Names the first failed hypothesis of the descent lemma (x >= 1, r >= 2,
/// q | x, q^2 ∤ x, t >= Θ_r - ceil(x/(q-1)) + 2), or nullopt if all hold.
std::optional<std::string> lemma_main_violation(const SpreadParams& p, const BigInt& x);

/// ℓ q^t + x. Throws HypothesisViolated naming the failed condition.
BigInt lemma_main_bound(std::uint64_t q, unsigned n, unsigned t, const BigInt& x);

/// Combines every applicable exact theorem and upper bound.
BoundReport best_known(const SpreadParams& p);

}  // namespace spreadlab::bounds
