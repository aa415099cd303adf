#pragma once

// Exhaustive branch-and-bound for maximum partial spreads at small
// parameters, plus a seeded greedy heuristic.

#include <cstdint>
#include <string_view>

#include "spreadlab/bounds.hpp"
#include "spreadlab/construct.hpp"

namespace spreadlab::search {

using bounds::SpreadParams;
using construct::PartialSpread;

enum class SearchStatus { Exact, LowerWitnessOnly, BudgetExhausted };

std::string_view status_tag(SearchStatus s);

struct SearchOptions {
  /// Largest [n,t]_q the search is willing to enumerate.
  std::uint64_t enumeration_budget = 200'000;
  /// Search-tree nodes; 0 means unlimited.
  std::uint64_t node_budget = 50'000'000;
  /// Wall-clock limit in seconds; 0 means unlimited.
  double time_budget = 60.0;
  /// Seed of the greedy warm start.
  std::uint64_t seed = 0;
  /// OpenMP threads; values <= 0 use the runtime default.
  int threads = 1;
};

struct SearchResult {
  SpreadParams params;
  std::uint64_t best_size = 0;
  PartialSpread witness;
  SearchStatus status = SearchStatus::BudgetExhausted;
  std::uint64_t nodes_explored = 0;
  double wall_time = 0.0;
};

/// Branch-and-bound over the t-subspaces in canonical order. The first
/// member is fixed to span(e_1..e_t). Each node picks the open point with
/// the fewest live candidates and branches on those candidates, in canonical
/// order, and finally on leaving the point uncovered.
///
/// When [n,t]_q exceeds the enumeration budget no search runs and the
/// witness is the constructed lower-bound spread (LowerWitnessOnly).
SearchResult max_partial_spread(const SpreadParams& params, const SearchOptions& options = {});

/// Same tree walked by one thread with no OpenMP involvement.
SearchResult max_partial_spread_serial(const SpreadParams& params, const SearchOptions& options = {});

/// Shuffles the canonical subspace order with mt19937_64(seed) and keeps
/// every subspace disjoint from those kept so far. The result is verified.
/// Throws BudgetExceeded when [n,t]_q exceeds `enumeration_budget`.
PartialSpread greedy_spread(const SpreadParams& params, std::uint64_t seed,
                            std::uint64_t enumeration_budget = 200'000);

}  // namespace spreadlab::search
