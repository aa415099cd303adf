#include "spreadlab/search.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <mutex>
#include <numeric>
#include <random>

#include <omp.h>

#include "spreadlab/error.hpp"
#include "spreadlab/linalg.hpp"

namespace spreadlab::search {

std::string_view status_tag(SearchStatus s) {
  switch (s) {
    case SearchStatus::Exact: return "EXACT";
    case SearchStatus::LowerWitnessOnly: return "LOWER_WITNESS_ONLY";
    case SearchStatus::BudgetExhausted: return "BUDGET_EXHAUSTED";
  }
  return "?";
}

namespace {

using Word = std::uint64_t;
using Bits = std::vector<Word>;
using Clock = std::chrono::steady_clock;

std::size_t words_for(std::size_t bits) { return (bits + 63) / 64; }
void set_bit(Bits& b, std::size_t i) { b[i >> 6] |= Word{1} << (i & 63); }
bool test_bit(const Bits& b, std::size_t i) { return (b[i >> 6] >> (i & 63)) & 1; }

std::size_t popcount(const Bits& b) {
  std::size_t c = 0;
  for (auto w : b) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

std::size_t popcount_and(const Bits& a, const Bits& b) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < a.size(); ++i) c += static_cast<std::size_t>(std::popcount(a[i] & b[i]));
  return c;
}

// Every t-subspace together with its point set, and for every point the
// candidates passing through it.
struct Instance {
  SpreadParams params;
  gf::Field field;
  std::vector<linalg::Subspace> subs;
  std::vector<std::vector<std::uint64_t>> sub_points;
  std::vector<Bits> sub_mask;    // over points
  std::vector<Bits> point_cands; // over candidates
  std::vector<std::vector<std::uint32_t>> point_list;
  std::size_t points = 0;
  std::size_t pw = 0;  // words per point mask
  std::size_t cw = 0;  // words per candidate mask
  std::uint64_t theta_t = 0;

  Instance(const SpreadParams& p, std::uint64_t enumeration_budget)
      : params(p), field(gf::Field::of_order(p.q)) {
    subs = linalg::all_subspaces(p.n, p.t, field, enumeration_budget);
    const linalg::PointSpace space(field, p.n);
    points = space.count();
    theta_t = static_cast<std::uint64_t>(bounds::theta(p.t, p.q));
    pw = words_for(points);
    cw = words_for(subs.size());
    sub_points.resize(subs.size());
    sub_mask.assign(subs.size(), Bits(pw, 0));
    point_cands.assign(points, Bits(cw, 0));
    point_list.resize(points);
    for (std::size_t i = 0; i < subs.size(); ++i) {
      sub_points[i] = space.points_of(subs[i]);
      for (auto pt : sub_points[i]) {
        set_bit(sub_mask[i], pt);
        set_bit(point_cands[pt], i);
        point_list[pt].push_back(static_cast<std::uint32_t>(i));
      }
    }
  }

  std::uint32_t first_member() const {
    const auto target = linalg::Subspace::coordinate(field, params.n, 0, params.t);
    const auto it = std::find(subs.begin(), subs.end(), target);
    return static_cast<std::uint32_t>(it - subs.begin());
  }

  PartialSpread spread_of(std::vector<std::uint32_t> chosen) const {
    std::sort(chosen.begin(), chosen.end());
    PartialSpread s{params, field, {}, {}};
    for (auto i : chosen) s.members.push_back(subs[i]);
    construct::verify_in_place(s, 1);
    return s;
  }
};

std::vector<std::uint32_t> greedy_indices(const Instance& inst, std::uint64_t seed) {
  std::vector<std::uint32_t> order(inst.subs.size());
  std::iota(order.begin(), order.end(), 0u);
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  Bits covered(inst.pw, 0);
  std::vector<std::uint32_t> kept;
  for (auto i : order) {
    bool free = true;
    for (std::size_t w = 0; w < inst.pw && free; ++w) free = (covered[w] & inst.sub_mask[i][w]) == 0;
    if (!free) continue;
    kept.push_back(i);
    for (std::size_t w = 0; w < inst.pw; ++w) covered[w] |= inst.sub_mask[i][w];
  }
  return kept;
}

struct Node {
  Bits closed;  // covered points and points written off as holes
  Bits alive;   // candidates disjoint from every closed point
  std::vector<std::uint32_t> chosen;
};

class Searcher {
 public:
  Searcher(const Instance& inst, const SearchOptions& opt, std::vector<std::uint32_t> incumbent)
      : inst_(inst), opt_(opt), best_(incumbent.size()), witness_(std::move(incumbent)), start_(Clock::now()) {}

  Node root() const {
    Node n{Bits(inst_.pw, 0), Bits(inst_.cw, 0), {}};
    for (std::size_t i = 0; i < inst_.subs.size(); ++i) set_bit(n.alive, i);
    return child(n, inst_.first_member());
  }

  // Children of `n` in search order: candidates through the branch point,
  // then the branch leaving that point uncovered. Empty when `n` is pruned
  // or a leaf. Updates the incumbent with `n` itself.
  std::vector<Node> expand(Node& n) {
    if (aborted_.load(std::memory_order_relaxed)) return {};
    const auto count = nodes_.fetch_add(1, std::memory_order_relaxed) + 1;
    if (opt_.node_budget && count > opt_.node_budget) {
      aborted_ = true;
      return {};
    }
    if (opt_.time_budget > 0 && (count & 1023) == 0 &&
        std::chrono::duration<double>(Clock::now() - start_).count() > opt_.time_budget) {
      aborted_ = true;
      return {};
    }
    offer(n.chosen);

    const std::uint64_t size = n.chosen.size();
    const std::uint64_t best = best_.load(std::memory_order_relaxed);
    const std::size_t alive = popcount(n.alive);
    if (size + alive <= best) return {};
    Bits reach(inst_.pw, 0);
    for (std::size_t w = 0; w < inst_.cw; ++w) {
      for (Word bits = n.alive[w]; bits; bits &= bits - 1) {
        const std::size_t c = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
        for (std::size_t k = 0; k < inst_.pw; ++k) reach[k] |= inst_.sub_mask[c][k];
      }
    }
    if (size + popcount(reach) / inst_.theta_t <= best) return {};

    // Branch point: reachable point with the fewest live candidates.
    std::size_t pivot = inst_.points, fewest = ~std::size_t{0};
    for (std::size_t w = 0; w < inst_.pw; ++w) {
      for (Word bits = reach[w]; bits; bits &= bits - 1) {
        const std::size_t pt = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
        const std::size_t k = popcount_and(inst_.point_cands[pt], n.alive);
        if (k < fewest) {
          fewest = k;
          pivot = pt;
        }
      }
    }
    std::vector<Node> out;
    for (auto c : inst_.point_list[pivot])
      if (test_bit(n.alive, c)) out.push_back(child(n, c));
    Node hole{n.closed, n.alive, n.chosen};
    for (std::size_t w = 0; w < inst_.pw; ++w) hole.closed[w] |= ~reach[w];
    set_bit(hole.closed, pivot);
    for (std::size_t w = 0; w < inst_.cw; ++w) hole.alive[w] &= ~inst_.point_cands[pivot][w];
    out.push_back(std::move(hole));
    return out;
  }

  void dfs(Node& n) {
    auto kids = expand(n);
    for (auto& k : kids) dfs(k);
  }

  std::uint64_t nodes() const { return nodes_.load(); }
  bool aborted() const { return aborted_.load(); }
  double elapsed() const { return std::chrono::duration<double>(Clock::now() - start_).count(); }
  const std::vector<std::uint32_t>& witness() const { return witness_; }

 private:
  Node child(const Node& n, std::uint32_t c) const {
    Node k{n.closed, n.alive, n.chosen};
    k.chosen.push_back(c);
    for (std::size_t w = 0; w < inst_.pw; ++w) k.closed[w] |= inst_.sub_mask[c][w];
    for (auto pt : inst_.sub_points[c])
      for (std::size_t w = 0; w < inst_.cw; ++w) k.alive[w] &= ~inst_.point_cands[pt][w];
    return k;
  }

  void offer(const std::vector<std::uint32_t>& chosen) {
    if (chosen.size() <= best_.load(std::memory_order_relaxed)) return;
    std::lock_guard lock(mutex_);
    if (chosen.size() <= best_.load()) return;
    witness_ = chosen;
    best_.store(chosen.size());
  }

  const Instance& inst_;
  const SearchOptions& opt_;
  std::atomic<std::uint64_t> best_;
  std::atomic<std::uint64_t> nodes_{0};
  std::atomic<bool> aborted_{false};
  std::mutex mutex_;
  std::vector<std::uint32_t> witness_;
  Clock::time_point start_;
};

bool within_budget(const SpreadParams& p, std::uint64_t budget) {
  return linalg::gaussian_binomial(p.n, p.t, p.q) <= budget;
}

SearchResult lower_witness_only(const SpreadParams& params) {
  const auto start = Clock::now();
  auto build = [&] {
    try {
      return construct::build_lower_bound_spread(params);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::Overflow) throw;
      throw Error(ErrorCode::BudgetExceeded, std::string("no search and no construction possible: ") + e.what());
    }
  };
  SearchResult r{params, 0, build(), SearchStatus::LowerWitnessOnly, 0, 0.0};
  r.best_size = r.witness.size();
  r.wall_time = std::chrono::duration<double>(Clock::now() - start).count();
  return r;
}

SearchResult run(const SpreadParams& params, const SearchOptions& opt, bool parallel) {
  if (!within_budget(params, opt.enumeration_budget)) return lower_witness_only(params);
  const Instance inst(params, opt.enumeration_budget);
  auto warm = greedy_indices(inst, opt.seed);
  Searcher s(inst, opt, warm);
  Node root = s.root();
  if (!parallel) {
    s.dfs(root);
  } else {
    auto top = s.expand(root);
    const int threads = opt.threads > 0 ? opt.threads : omp_get_max_threads();
    const std::int64_t count = static_cast<std::int64_t>(top.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
    for (std::int64_t i = 0; i < count; ++i) s.dfs(top[static_cast<std::size_t>(i)]);
  }
  SearchResult r{params, 0, inst.spread_of(s.witness()),
                 s.aborted() ? SearchStatus::BudgetExhausted : SearchStatus::Exact, s.nodes(), s.elapsed()};
  r.best_size = r.witness.size();
  return r;
}

}  // namespace

SearchResult max_partial_spread(const SpreadParams& params, const SearchOptions& options) {
  return run(params, options, true);
}

SearchResult max_partial_spread_serial(const SpreadParams& params, const SearchOptions& options) {
  return run(params, options, false);
}

PartialSpread greedy_spread(const SpreadParams& params, std::uint64_t seed, std::uint64_t enumeration_budget) {
  const Instance inst(params, enumeration_budget);
  return inst.spread_of(greedy_indices(inst, seed));
}

}  // namespace spreadlab::search
