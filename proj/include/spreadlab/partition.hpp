#pragma once

// Subspace partitions of V(n,q), hyperplane-type profiles with the
// Heden-Lehmann counting identities, Heden's lower bounds on the number of
// smallest parts, and descent certificates for the averaging upper bound.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "spreadlab/bigint.hpp"
#include "spreadlab/construct.hpp"
#include "spreadlab/linalg.hpp"

namespace spreadlab::partition {

using linalg::Subspace;

/// Dimension -> number of parts, largest dimension first.
using TypeVector = std::map<std::size_t, std::uint64_t, std::greater<>>;

struct SubspacePartition {
  gf::Field field;
  std::size_t ambient = 0;
  std::vector<Subspace> parts;
  TypeVector type;

  static SubspacePartition from_parts(gf::Field field, std::size_t ambient, std::vector<Subspace> parts);
};

std::string type_string(const TypeVector& type);

/// Members of a verified spread plus one 1-subspace per uncovered point.
/// Throws UnverifiedSpread if the spread has not been verified.
SubspacePartition partition_from_spread(const construct::PartialSpread& s);

struct PartitionCheck {
  bool ok = false;
  std::string reason;
  /// A point covered zero or several times.
  std::optional<std::vector<gf::Elem>> witness;
};

inline constexpr std::uint64_t kDefaultPointBudget = std::uint64_t{1} << 24;

/// Direct cover check over all points plus sum n_d Θ_d = Θ_n.
/// Throws BudgetExceeded when Θ_n exceeds `point_budget`.
PartitionCheck verify_partition(const SubspacePartition& p, std::uint64_t point_budget = kDefaultPointBudget);

struct HyperplaneProfile {
  std::size_t ambient = 0;
  /// Dimensions occurring in the partition, descending.
  std::vector<std::size_t> dims;
  /// b[h * dims.size() + k] = number of parts of dimension dims[k] inside
  /// hyperplane h (canonical hyperplane order).
  std::vector<std::uint32_t> b;
  /// s_b: number of hyperplanes of each type b (b ordered like `dims`).
  std::map<std::vector<std::uint32_t>, std::uint64_t> tally;

  std::uint64_t hyperplane_count() const { return dims.empty() ? 0 : b.size() / dims.size(); }
};

/// Reference profile: every hyperplane tested against every part with
/// linalg::contains. Single thread.
HyperplaneProfile hyperplane_profile_serial(const SubspacePartition& p);

/// Kernel profile: parts of dimension >= 2 scatter into the hyperplanes of
/// their annihilator; 1-dimensional parts are counted for all hyperplanes at
/// once with a coordinate-by-coordinate character transform. Parallel over
/// parts and transform blocks.
HyperplaneProfile hyperplane_profile_parallel(const SubspacePartition& p, int threads = 0);

/// Checks |P| = 1 + sum_d b_{H,d} q^d for every H, sum_b s_b = Θ_n and
/// sum_b b_d s_b = n_d Θ_{n-d}. Throws IdentityViolation naming the identity.
void check_profile_identities(const SubspacePartition& p, const HyperplaneProfile& prof);

/// Parallel kernel followed by the identity checks.
HyperplaneProfile hyperplane_profile(const SubspacePartition& p, int threads = 0);

enum class HedenCase { I, II, III, IV };

std::string_view heden_case_name(HedenCase c);

struct HedenResult {
  HedenCase which;
  /// Smallest admissible n_{d1} by the case's inequality.
  BigInt required;
  /// Case (ii) also admits exactly (q^{d2} - 1)/(q^{d1} - 1) when integral.
  std::optional<BigInt> exceptional;
  bool satisfied;
};

/// Heden's bound for the number n_{d1} of parts of the smallest dimension d1
/// given the second smallest dimension d2 > d1.
HedenResult heden_case(const BigInt& n_d1, unsigned d1, unsigned d2, std::uint64_t q);

// ---------------------------------------------------------------------------
// Descent certificates

struct DescentStep {
  unsigned j = 0;
  unsigned ambient = 0;  // H_j is isomorphic to V(n - j, q)
  BigInt delta;          // δ_{t-j}
  BigInt modulus;        // q^{t-j}; the 1-part count is ≡ δ_{t-j} modulo this
  BigInt c_cap;          // max(Θ_r - h - j, 0)
  // Present for j < t - 2: the averaging step into H_{j+1}.
  std::optional<BigInt> avg_bound;       // c_cap q^{t-j-1} + δ_{t-j}/q
  std::optional<BigInt> reduced;         // ((x + δ_{t-j})/q) mod q^{t-j-1}
  std::optional<BigInt> next_delta;      // δ_{t-j-1}
  std::optional<bool> recurrence_holds;  // reduced == next_delta and q | x + δ_{t-j}
};

struct CaseSAtLeast3 {
  unsigned s = 3;  // the minimum over s >= 3 is attained at s = 3
  BigInt theta_s;
  BigInt two_q_pow;  // 2 q^{s-1}
  BigInt q_pow;      // q^s
  BigInt minimum;
  bool exceeds_q_squared = false;
};

struct CaseSEquals2 {
  std::string heden_case;  // always "iv" since q | δ_2
  BigInt required;
  bool satisfied = false;
};

struct DescentFinal {
  BigInt delta2;
  BigInt q_squared;
  bool in_range = false;         // 0 < δ_2 < q^2
  bool divisible_by_q = false;   // q | δ_2
  BigInt c_cap;                  // 0 at j = t - 2
  CaseSAtLeast3 case_s_ge_3;
  CaseSEquals2 case_s_eq_2;
  bool contradiction = false;
};

struct DescentCertificate {
  std::uint64_t q = 0;
  unsigned n = 0, t = 0, r = 0;
  BigInt x;
  BigInt h;
  BigInt ell;
  BigInt bound;  // ℓ q^t + x
  BigInt n_t;    // ℓ q^t + 1 + x
  BigInt n_1;    // q^t Θ_r - x Θ_t
  BigInt n_1_split;  // q^t (Θ_r - h) + δ_t, equal to n_1
  std::vector<DescentStep> steps;
  DescentFinal final;
};

/// Default x = q^r - (q-1)(t-2) - c1 + c2.
BigInt default_descent_x(const bounds::SpreadParams& p);

/// Throws HypothesisViolated naming the failed hypothesis.
DescentCertificate descent_certificate(std::uint64_t q, unsigned n, unsigned t,
                                       std::optional<BigInt> x = std::nullopt);

nlohmann::json certificate_to_json(const DescentCertificate& c);

struct CertificateCheck {
  bool ok = false;
  /// JSON path of the first field that differs from the re-derivation.
  std::string first_mismatch;
  std::string detail;
};

/// Re-derives every field from (q, n, t, x) with theta/delta and integer
/// arithmetic only, then compares against the record.
CertificateCheck check_certificate(const nlohmann::json& cert);
CertificateCheck check_certificate(const DescentCertificate& cert);

}  // namespace spreadlab::partition
