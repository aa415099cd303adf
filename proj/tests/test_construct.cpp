#include <random>

#include "doctest.h"
#include "spreadlab/construct.hpp"
#include "support/oracle.hpp"
#include "support/random.hpp"

using namespace spreadlab;
using namespace spreadlab::construct;
using testing_support::random_subspace;

namespace {

PartialSpread spread_of(std::uint64_t q, unsigned n, unsigned t, std::vector<Subspace> members) {
  return PartialSpread{bounds::SpreadParams::make(q, n, t), gf::Field::of_order(q), std::move(members), {}};
}

// First intersecting pair by brute-force rank over GF(p): two t-subspaces
// meet iff their stacked bases have rank below 2t.
std::optional<std::pair<std::size_t, std::size_t>> oracle_first_pair(const std::vector<Subspace>& ms,
                                                                     std::uint32_t p) {
  for (std::size_t i = 0; i < ms.size(); ++i)
    for (std::size_t j = i + 1; j < ms.size(); ++j) {
      auto rows = ms[i].basis().to_rows();
      for (auto& r : ms[j].basis().to_rows()) rows.push_back(r);
      if (oracle::rank_mod(rows, p) < ms[i].dim() + ms[j].dim()) return std::pair{i, j};
    }
  return std::nullopt;
}

}  // namespace

TEST_CASE("multiplication map matrices") {
  const gf::ExtField e8(gf::Field::of_order(2), 3);
  const auto zero = mult_map_matrix(e8, 0, 2);
  CHECK(zero == linalg::Matrix(gf::Field::of_order(2), 2, 3));
  CHECK(mult_map_matrix(e8, e8.one(), 3) == linalg::Matrix::identity(gf::Field::of_order(2), 3));
  const auto m = mult_map_matrix(e8, 5, 2);
  CHECK(m.rows() == 2);
  CHECK(m.cols() == 3);
  for (std::uint32_t i = 0; i < 2; ++i) {
    const auto row = e8.coord(e8.mul(5, e8.root_power(i)));
    CHECK(std::vector<gf::Elem>(m.row(i).begin(), m.row(i).end()) == row);
  }
}

TEST_CASE("differences of multiplication maps have full rank") {
  for (std::uint32_t q : {2u, 3u}) {
    const auto f = gf::Field::of_order(q);
    for (std::uint32_t mdeg = 1; mdeg <= 4; ++mdeg) {
      const gf::ExtField ext(f, mdeg);
      for (unsigned t = 1; t <= mdeg; ++t) {
        std::vector<std::vector<std::vector<gf::Elem>>> mats;
        for (gf::ExtField::Value a = 0; a < ext.order(); ++a) mats.push_back(mult_map_matrix(ext, a, t).to_rows());
        bool ok = true;
        for (std::size_t a = 0; a < mats.size(); ++a)
          for (std::size_t b = a + 1; b < mats.size(); ++b) {
            auto diff = mats[a];
            for (unsigned i = 0; i < t; ++i)
              for (std::uint32_t c = 0; c < mdeg; ++c) diff[i][c] = (mats[a][i][c] + q - mats[b][i][c]) % q;
            ok &= oracle::rank_mod(diff, q) == t;
          }
        CAPTURE(q);
        CAPTURE(mdeg);
        CAPTURE(t);
        CHECK(ok);
      }
    }
  }
}

TEST_CASE("construction examples") {
  const auto s = build_lower_bound_spread(bounds::SpreadParams::make(2, 7, 3));
  CHECK(s.size() == 17);
  CHECK(s.verification.verified());
  CHECK(verify_partial_spread_serial(s).verified());

  const auto full = build_lower_bound_spread(bounds::SpreadParams::make(2, 6, 3));
  CHECK(full.size() == 9);
  const linalg::PointSpace space(full.field, 6);
  std::vector<int> hits(space.count(), 0);
  for (const auto& m : full.members)
    for (auto p : space.points_of(m)) ++hits[p];
  CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));

  CHECK(build_lower_bound_spread(bounds::SpreadParams::make(3, 5, 2)).size() == 28);

  const auto single = build_lower_bound_spread(bounds::SpreadParams::make(2, 5, 3));
  REQUIRE(single.size() == 1);
  CHECK(single.members[0] == Subspace::coordinate(single.field, 5, 0, 3));
}

TEST_CASE("construction grid matches the size formula and verifies") {
  for (std::uint32_t q : {2u, 3u})
    for (unsigned t = 2; t <= 4; ++t)
      for (unsigned n = 2 * t; n <= 3 * t; ++n) {
        CAPTURE(q);
        CAPTURE(n);
        CAPTURE(t);
        const auto p = bounds::SpreadParams::make(q, n, t);
        const auto s = build_lower_bound_spread(p);
        CHECK(BigInt(s.size()) == oracle::construction_size(q, n, t));
        CHECK(BigInt(s.size()) == bounds::lower_bound(p));
        CHECK(BigInt(s.size()) <= bounds::best_known(p).best_upper);
        CHECK(s.verification.verified());
        for (const auto& m : s.members) REQUIRE(m.dim() == t);
        if (q == 2 && n <= 9) CHECK(verify_partial_spread_serial(s).verified());
        if (n % t == 0 && n <= 9) {
          const linalg::PointSpace space(s.field, n);
          std::uint64_t covered = 0;
          for (const auto& m : s.members) covered += space.points_of(m).size();
          CHECK(covered == space.count());
        }
      }
}

TEST_CASE("verification of hand-made spreads") {
  const auto f2 = gf::Field::of_order(2);
  auto empty = spread_of(2, 4, 2, {});
  CHECK(verify_partial_spread_serial(empty).verified());
  CHECK(verify_partial_spread_parallel(empty).verified());

  const auto a = Subspace::coordinate(f2, 4, 0, 2), b = Subspace::coordinate(f2, 4, 2, 2);
  auto dup = spread_of(2, 4, 2, {a, b, a});
  const auto v = verify_partial_spread(dup);
  CHECK(v.status == VerifyStatus::Failed);
  REQUIRE(v.first_pair.has_value());
  CHECK(*v.first_pair == std::pair<std::size_t, std::size_t>{0, 2});
  CHECK(v == verify_partial_spread_serial(dup));

  auto wrong_dim = spread_of(2, 4, 2, {a, Subspace::coordinate(f2, 4, 2, 1)});
  const auto w = verify_partial_spread(wrong_dim);
  CHECK(w.status == VerifyStatus::Failed);
  CHECK(w.bad_member == std::optional<std::size_t>{1});
  CHECK(w == verify_partial_spread_serial(wrong_dim));

  auto wrong_ambient = spread_of(2, 4, 2, {a, Subspace::coordinate(f2, 5, 2, 2)});
  CHECK(verify_partial_spread(wrong_ambient).bad_member == std::optional<std::size_t>{1});

  verify_in_place(dup);
  CHECK(dup.verification.status == VerifyStatus::Failed);
}

TEST_CASE("serial and parallel verification agree") {
  std::mt19937_64 rng(29);
  for (std::uint32_t q : {2u, 3u}) {
    const auto f = gf::Field::of_order(q);
    for (int trial = 0; trial < 200; ++trial) {
      const unsigned n = 4 + static_cast<unsigned>(rng() % 3), t = 2;
      std::vector<Subspace> ms;
      const std::size_t count = 1 + rng() % 6;
      for (std::size_t i = 0; i < count; ++i) ms.push_back(random_subspace(f, n, t, rng));
      auto s = spread_of(q, n, t, ms);
      const auto serial = verify_partial_spread_serial(s);
      for (int threads : {1, 2, 4}) REQUIRE(verify_partial_spread_parallel(s, threads) == serial);
      REQUIRE(serial.first_pair == oracle_first_pair(ms, q));
      REQUIRE(serial.verified() == !serial.first_pair.has_value());
    }
  }

  // tamper with built spreads: replacing a member by a copy of an earlier one
  for (auto [q, n, t] : {std::tuple{2u, 8u, 3u}, {3u, 6u, 2u}, {2u, 9u, 4u}}) {
    auto s = build_lower_bound_spread(bounds::SpreadParams::make(q, n, t));
    const std::size_t victim = s.size() - 1, source = s.size() / 2;
    s.members[victim] = s.members[source];
    const auto serial = verify_partial_spread_serial(s);
    CHECK(serial.first_pair == std::optional<std::pair<std::size_t, std::size_t>>{{source, victim}});
    CHECK(verify_partial_spread_parallel(s, 4) == serial);
  }
}

TEST_CASE("ambient spaces too large to number points use pairwise ranks") {
  const auto f2 = gf::Field::of_order(2);
  std::vector<Subspace> ms;
  for (std::size_t k = 0; k < 6; ++k) ms.push_back(Subspace::coordinate(f2, 64, 10 * k, 10));
  auto s = spread_of(2, 64, 10, ms);
  CHECK(verify_partial_spread_parallel(s, 4).verified());
  s.members.push_back(Subspace::coordinate(f2, 64, 25, 10));
  const auto v = verify_partial_spread_parallel(s, 4);
  CHECK(v.first_pair == std::optional<std::pair<std::size_t, std::size_t>>{{2, 6}});
  CHECK(v == verify_partial_spread_serial(s));
}
