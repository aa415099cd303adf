#pragma once

// Partial spreads: the classical lower-bound construction from lifted
// multiplication-map matrices and verification of arbitrary spreads.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spreadlab/bounds.hpp"
#include "spreadlab/gf.hpp"
#include "spreadlab/linalg.hpp"

namespace spreadlab::construct {

using bounds::SpreadParams;
using linalg::Subspace;

enum class VerifyStatus { Unchecked, Verified, Failed };

struct Verification {
  VerifyStatus status = VerifyStatus::Unchecked;
  /// Lexicographically first pair (i, j), i < j, of intersecting members.
  std::optional<std::pair<std::size_t, std::size_t>> first_pair;
  /// First member whose dimension or ambient space is wrong.
  std::optional<std::size_t> bad_member;
  std::string reason;

  bool verified() const { return status == VerifyStatus::Verified; }
  bool operator==(const Verification&) const = default;
};

struct PartialSpread {
  SpreadParams params;
  gf::Field field;
  std::vector<Subspace> members;
  Verification verification;

  std::size_t size() const { return members.size(); }
};

/// t x m matrix whose row i holds the coordinates of a * root^i in the power
/// basis of GF(q^m). Differences of distinct such matrices have rank t.
linalg::Matrix mult_map_matrix(const gf::ExtField& ext, gf::ExtField::Value a, unsigned t);

/// Spread of size lower_bound(p): the graphs rowspace[I_t | M_a], a in GF(q^m),
/// m = n - t, followed recursively by a spread of the last m coordinates;
/// the recursion ends with span(e_1..e_t) of the remaining t + r block.
/// The result is verified before it is returned.
PartialSpread build_lower_bound_spread(const SpreadParams& p);

/// Reference check: O(|S|^2) rank computations, single thread.
Verification verify_partial_spread_serial(const PartialSpread& s);

/// Point-incidence kernel: each member's points are listed in parallel and
/// collisions are found by sorting. Produces the same first violating pair
/// as the serial check. `threads` = 0 uses the OpenMP default.
Verification verify_partial_spread_parallel(const PartialSpread& s, int threads = 0);

/// Dispatches to the parallel kernel.
Verification verify_partial_spread(const PartialSpread& s, int threads = 0);

/// Runs verification and stores the outcome on the spread.
void verify_in_place(PartialSpread& s, int threads = 0);

}  // namespace spreadlab::construct
