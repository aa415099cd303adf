#include "spreadlab/construct.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include <omp.h>

#include "spreadlab/error.hpp"

namespace spreadlab::construct {

linalg::Matrix mult_map_matrix(const gf::ExtField& ext, gf::ExtField::Value a, unsigned t) {
  if (t < 1 || t > ext.degree())
    throw Error(ErrorCode::InvalidParams, "need 1 <= t <= m for the multiplication map");
  linalg::Matrix out(ext.base(), t, ext.degree());
  for (unsigned i = 0; i < t; ++i) {
    const auto c = ext.coord(ext.mul(a, ext.root_power(i)));
    std::copy(c.begin(), c.end(), out.row(i).begin());
  }
  return out;
}

PartialSpread build_lower_bound_spread(const SpreadParams& p) {
  PartialSpread s{p, gf::Field::of_order(p.q), {}, {}};
  const std::size_t n = p.n, t = p.t;
  std::size_t offset = 0;
  std::size_t remaining = n;
  while (remaining >= 2 * t) {
    const std::size_t m = remaining - t;
    const gf::ExtField ext(s.field, static_cast<std::uint32_t>(m));
    ext.require_enumerable();
    std::vector<gf::ExtField::Value> basis(t);
    for (std::size_t i = 0; i < t; ++i) basis[i] = ext.root_power(static_cast<std::uint32_t>(i));
    for (gf::ExtField::Value a = 0; a < ext.order(); ++a) {
      linalg::Matrix rows(s.field, t, n);
      for (std::size_t i = 0; i < t; ++i) {
        rows.at(i, offset + i) = 1;
        const auto c = ext.coord(ext.mul(a, basis[i]));
        for (std::size_t k = 0; k < m; ++k) rows.at(i, offset + t + k) = c[k];
      }
      s.members.push_back(Subspace::span(rows));
    }
    offset += t;
    remaining = m;
  }
  s.members.push_back(Subspace::coordinate(s.field, n, offset, t));

  if (BigInt(s.members.size()) != bounds::lower_bound(p))
    throw Error(ErrorCode::ConstructionSizeMismatch,
                "built " + std::to_string(s.members.size()) + " members, expected " +
                    bounds::lower_bound(p).str());
  verify_in_place(s);
  if (!s.verification.verified())
    throw std::logic_error("constructed spread failed verification: " + s.verification.reason);
  return s;
}

namespace {

std::optional<Verification> check_members(const PartialSpread& s) {
  for (std::size_t i = 0; i < s.members.size(); ++i) {
    const auto& m = s.members[i];
    if (m.ambient() != s.params.n || m.dim() != s.params.t || m.field() != s.field) {
      Verification v;
      v.status = VerifyStatus::Failed;
      v.bad_member = i;
      v.reason = "member " + std::to_string(i) + " has dimension " + std::to_string(m.dim()) +
                 " in V(" + std::to_string(m.ambient()) + "), expected " + std::to_string(s.params.t) +
                 " in V(" + std::to_string(s.params.n) + ")";
      return v;
    }
  }
  return std::nullopt;
}

Verification failed_pair(std::size_t i, std::size_t j) {
  Verification v;
  v.status = VerifyStatus::Failed;
  v.first_pair = std::make_pair(i, j);
  v.reason = "members " + std::to_string(i) + " and " + std::to_string(j) + " intersect";
  return v;
}

Verification ok() {
  Verification v;
  v.status = VerifyStatus::Verified;
  return v;
}

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

}  // namespace

Verification verify_partial_spread_serial(const PartialSpread& s) {
  if (auto bad = check_members(s)) return *bad;
  for (std::size_t i = 0; i < s.members.size(); ++i)
    for (std::size_t j = i + 1; j < s.members.size(); ++j)
      if (!linalg::is_disjoint(s.members[i], s.members[j])) return failed_pair(i, j);
  return ok();
}

Verification verify_partial_spread_parallel(const PartialSpread& s, int threads) {
  if (auto bad = check_members(s)) return *bad;
  const std::size_t count = s.members.size();
  if (count < 2) return ok();

  std::optional<linalg::PointSpace> space;
  try {
    space.emplace(s.field, s.params.n);
  } catch (const Error&) {
    space.reset();
  }
  if (threads <= 0) threads = omp_get_max_threads();

  if (!space) {
    // Ambient too large to number points: parallel pairwise ranks.
    std::size_t best = kNone;
#pragma omp parallel for schedule(dynamic) num_threads(threads) reduction(min : best)
    for (std::size_t i = 0; i < count; ++i) {
      for (std::size_t j = i + 1; j < count; ++j) {
        if (!linalg::is_disjoint(s.members[i], s.members[j])) {
          best = std::min(best, i * count + j);
          break;
        }
      }
    }
    return best == kNone ? ok() : failed_pair(best / count, best % count);
  }

  std::vector<std::vector<std::uint64_t>> pts(count);
#pragma omp parallel for schedule(dynamic, 64) num_threads(threads)
  for (std::size_t i = 0; i < count; ++i) pts[i] = space->points_of(s.members[i]);

  std::vector<std::pair<std::uint64_t, std::size_t>> incidence;
  std::size_t total = 0;
  for (const auto& v : pts) total += v.size();
  incidence.reserve(total);
  for (std::size_t i = 0; i < count; ++i)
    for (auto pt : pts[i]) incidence.emplace_back(pt, i);
  std::sort(incidence.begin(), incidence.end());

  // For a point shared by members m0 < m1 < ..., (m0, m1) is the smallest
  // intersecting pair through that point.
  std::pair<std::size_t, std::size_t> best{kNone, kNone};
  for (std::size_t k = 0; k + 1 < incidence.size(); ++k) {
    if (incidence[k].first == incidence[k + 1].first) {
      best = std::min(best, std::make_pair(incidence[k].second, incidence[k + 1].second));
      while (k + 1 < incidence.size() && incidence[k].first == incidence[k + 1].first) ++k;
    }
  }
  return best.first == kNone ? ok() : failed_pair(best.first, best.second);
}

Verification verify_partial_spread(const PartialSpread& s, int threads) {
  return verify_partial_spread_parallel(s, threads);
}

void verify_in_place(PartialSpread& s, int threads) { s.verification = verify_partial_spread(s, threads); }

}  // namespace spreadlab::construct
