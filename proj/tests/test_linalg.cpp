#include <random>
#include <unordered_set>

#include "doctest.h"
#include "spreadlab/linalg.hpp"
#include "support/expect_error.hpp"
#include "support/oracle.hpp"
#include "support/random.hpp"

using namespace spreadlab;
using namespace spreadlab::linalg;
using testing_support::random_matrix;
using testing_support::random_subspace;

namespace {

std::vector<std::vector<std::uint32_t>> rows_of(const Matrix& m) { return m.to_rows(); }

bool is_rref(const Matrix& m) {
  std::size_t last = 0;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    std::size_t lead = 0;
    while (lead < m.cols() && m.at(r, lead) == 0) ++lead;
    if (lead == m.cols() || m.at(r, lead) != 1) return false;
    if (r > 0 && lead <= last) return false;
    for (std::size_t o = 0; o < m.rows(); ++o)
      if (o != r && m.at(o, lead) != 0) return false;
    last = lead;
  }
  return true;
}

}  // namespace

TEST_CASE("rref on fixed inputs") {
  const auto f2 = gf::Field::of_order(2);
  CHECK(rref(Matrix::identity(f2, 4)) == Matrix::identity(f2, 4));
  const Matrix m(f2, 3, {{1, 1, 0}, {0, 1, 1}});
  CHECK(rref(m).to_rows() == std::vector<std::vector<gf::Elem>>{{1, 0, 1}, {0, 1, 1}});
  const Matrix zero(gf::Field::of_order(3), 3, 4);
  CHECK(rref(zero).rows() == 0);
  CHECK(rank(zero) == 0);
}

TEST_CASE("matrix rows are validated") {
  const auto f3 = gf::Field::of_order(3);
  Matrix m(f3, 0, 3);
  CHECK_ERROR_CODE(m.append_row(std::vector<gf::Elem>{1, 2}), ErrorCode::AmbientMismatch);
  CHECK_ERROR_CODE(m.append_row(std::vector<gf::Elem>{1, 2, 3}), ErrorCode::InvalidParams);
  m.append_row(std::vector<gf::Elem>{1, 2, 0});
  CHECK(m.rows() == 1);
}

TEST_CASE("rref is idempotent, canonical and preserves the row space") {
  std::mt19937_64 rng(11);
  for (std::uint64_t q : {2, 3, 4}) {
    const auto f = gf::Field::of_order(q);
    for (int trial = 0; trial < 300; ++trial) {
      const std::size_t rows = 1 + rng() % 6, cols = 1 + rng() % 9;
      const auto m = random_matrix(f, rows, cols, rng);
      const auto r = rref(m);
      REQUIRE(is_rref(r));
      REQUIRE(rref(r) == r);
      REQUIRE(rank(stack(m, r)) == r.rows());
      if (q != 4) REQUIRE(r.rows() == oracle::rank_mod(rows_of(m), static_cast<std::uint32_t>(q)));
    }
  }
}

TEST_CASE("packed binary elimination matches the generic path on wide matrices") {
  std::mt19937_64 rng(5);
  const auto f2 = gf::Field::of_order(2);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t cols = 60 + rng() % 20;  // straddles the 64-column packed limit
    const auto m = random_matrix(f2, 1 + rng() % 12, cols, rng);
    const auto r = rref(m);
    REQUIRE(is_rref(r));
    REQUIRE(r.rows() == oracle::rank_mod(rows_of(m), 2));
  }
}

TEST_CASE("canonical form does not depend on the chosen basis") {
  std::mt19937_64 rng(3);
  for (std::uint64_t q : {2, 3, 4}) {
    const auto f = gf::Field::of_order(q);
    const auto base = random_subspace(f, 7, 3, rng);
    for (int i = 0; i < 200; ++i) {
      // random invertible recombination of the basis rows plus a redundant row
      Matrix gens(f, 0, 7);
      Matrix mix = random_matrix(f, 4, 3, rng);
      while (rank(mix) < 3) mix = random_matrix(f, 4, 3, rng);
      for (std::size_t r = 0; r < 4; ++r) {
        std::vector<gf::Elem> row(7, 0);
        for (std::size_t k = 0; k < 3; ++k)
          for (std::size_t c = 0; c < 7; ++c) row[c] = f.add(row[c], f.mul(mix.at(r, k), base.basis().at(k, c)));
        gens.append_row(row);
      }
      REQUIRE(Subspace::span(gens) == base);
      REQUIRE(Subspace::span(gens).hash() == base.hash());
    }
  }
}

TEST_CASE("intersection dimensions") {
  std::mt19937_64 rng(17);
  const auto f2 = gf::Field::of_order(2);
  const auto a = Subspace::coordinate(f2, 4, 0, 2), b = Subspace::coordinate(f2, 4, 2, 2);
  CHECK(intersect_dim(a, a) == 2);
  CHECK(intersect_dim(a, b) == 0);
  CHECK(is_disjoint(a, b));
  for (int i = 0; i < 200; ++i) {
    const auto x = random_subspace(f2, 5, 3, rng), y = random_subspace(f2, 5, 3, rng);
    REQUIRE(intersect_dim(x, y) >= 1);
  }
  CHECK_ERROR_CODE(intersect_dim(a, Subspace::coordinate(f2, 5, 0, 2)), ErrorCode::AmbientMismatch);
  CHECK_ERROR_CODE(intersect_dim(a, Subspace::coordinate(gf::Field::of_order(3), 4, 0, 2)), ErrorCode::FieldMismatch);
}

TEST_CASE("gaussian binomials") {
  for (std::uint64_t q : {2, 3, 4, 5, 7}) {
    CHECK(gaussian_binomial(2, 1, q) == q + 1);
    CHECK(gaussian_binomial(6, 0, q) == 1);
    for (unsigned n = 1; n < 9; ++n) CHECK(gaussian_binomial(n, 1, q) == oracle::theta(n, q));
  }
  CHECK(gaussian_binomial(4, 2, 2) == oracle::count_subspaces(4, 2, 2));
  CHECK(gaussian_binomial(4, 2, 2) == 35);
  const auto ordered = oracle::count_independent_tuples(7, 3, 2);
  const auto gl3 = oracle::count_independent_tuples(3, 3, 2);
  CHECK(gaussian_binomial(7, 3, 2) == ordered / gl3);
  CHECK(gaussian_binomial(7, 3, 2) == 11811);
}

TEST_CASE("enumeration yields each subspace once, in canonical order") {
  for (std::uint32_t q : {2u, 3u}) {
    const auto f = gf::Field::of_order(q);
    for (unsigned n = 1; n <= 4; ++n) {
      const auto oracle_counts = oracle::count_subspaces_by_dim(n, q);
      std::uint64_t total = 0, oracle_total = 0;
      for (unsigned d = 0; d <= n; ++d) {
        auto it = enumerate_subspaces(n, d, f);
        std::unordered_set<Subspace, SubspaceHash> seen;
        std::optional<std::vector<std::size_t>> last_pivots;
        while (auto s = it.next()) {
          REQUIRE(s->dim() == d);
          REQUIRE(Subspace::span(s->basis()) == *s);
          REQUIRE(seen.insert(*s).second);
          if (last_pivots) REQUIRE(*last_pivots <= s->pivots());
          last_pivots = s->pivots();
        }
        CHECK(BigInt(seen.size()) == gaussian_binomial(n, d, q));
        total += seen.size();
        oracle_total += oracle_counts[d];
      }
      CAPTURE(q);
      CAPTURE(n);
      CHECK(total == oracle_total);
    }
  }
  const auto f2 = gf::Field::of_order(2);
  CHECK(all_subspaces(7, 3, f2).size() == 11811);
  auto full = enumerate_subspaces(5, 5, f2);
  CHECK(full.next() == Subspace::full(f2, 5));
  CHECK_FALSE(full.next().has_value());
  full.reset();
  CHECK(full.next().has_value());
  CHECK(all_subspaces(4, 2, f2).front() == Subspace::coordinate(f2, 4, 0, 2));
  CHECK_ERROR_CODE(enumerate_subspaces(8, 4, f2, 1000), ErrorCode::BudgetExceeded);
}

TEST_CASE("point numbering") {
  for (std::uint64_t q : {2, 3, 4}) {
    const auto f = gf::Field::of_order(q);
    const PointSpace space(f, 4);
    CHECK(BigInt(space.count()) == oracle::theta(4, q));
    std::vector<gf::Elem> prev;
    for (std::uint64_t i = 0; i < space.count(); ++i) {
      const auto v = space.vector(i);
      REQUIRE(space.index(v) == i);
      REQUIRE(space.normalize(v) == v);
      if (i) REQUIRE(prev < v);
      prev = v;
    }
    std::mt19937_64 rng(q);
    for (int k = 0; k < 50; ++k) {
      const auto s = random_subspace(f, 4, 1 + rng() % 3, rng);
      const auto pts = space.points_of(s);
      REQUIRE(BigInt(pts.size()) == oracle::theta(static_cast<unsigned>(s.dim()), q));
      REQUIRE(std::is_sorted(pts.begin(), pts.end()));
      for (auto p : pts) {
        Matrix row(f, 0, 4);
        row.append_row(space.vector(p));
        REQUIRE(rank(stack(s.basis(), row)) == s.dim());
      }
    }
  }
  const PointSpace small(gf::Field::of_order(3), 3);
  CHECK_ERROR_CODE(small.index(std::vector<gf::Elem>{0, 1, 1, 0}), ErrorCode::AmbientMismatch);
  CHECK_ERROR_CODE(small.index(std::vector<gf::Elem>{0, 2, 1}), ErrorCode::InvalidParams);
  CHECK_ERROR_CODE(small.normalize(std::vector<gf::Elem>{0, 0, 0}), ErrorCode::InvalidParams);
  CHECK(small.normalize(std::vector<gf::Elem>{0, 2, 1}) == std::vector<gf::Elem>{0, 1, 2});
}

TEST_CASE("annihilators") {
  std::mt19937_64 rng(23);
  for (std::uint64_t q : {2, 3, 4}) {
    const auto f = gf::Field::of_order(q);
    for (int i = 0; i < 50; ++i) {
      const auto s = random_subspace(f, 6, 1 + rng() % 5, rng);
      const auto a = annihilator(s);
      REQUIRE(a.dim() == 6 - s.dim());
      REQUIRE(annihilator(a) == s);
    }
  }
}

TEST_CASE("hyperplanes") {
  const auto f2 = gf::Field::of_order(2);
  CHECK(hyperplanes(4, f2).count() == 15);
  auto it = hyperplanes(4, f2);
  std::uint64_t n = 0;
  while (auto h = it.next()) {
    ++n;
    CHECK_FALSE(contains(*h, Subspace::full(f2, 4)));
    CHECK(contains(*h, Subspace::zero(f2, 4)));
  }
  CHECK(n == 15);

  // each d-subspace lies in exactly Θ_{n-d} hyperplanes
  for (std::uint32_t q : {2u, 3u}) {
    const auto f = gf::Field::of_order(q);
    for (unsigned d : {1u, 2u, 3u}) {
      for (const auto& s : all_subspaces(4, d, f)) {
        auto hs = hyperplanes(4, f);
        std::uint64_t inside = 0;
        while (auto h = hs.next()) inside += contains(*h, s) ? 1 : 0;
        REQUIRE(BigInt(inside) == oracle::theta(4 - d, q));
      }
    }
  }
  auto hs = hyperplanes(3, f2);
  CHECK_ERROR_CODE(contains(*hs.next(), Subspace::full(f2, 4)), ErrorCode::AmbientMismatch);
}
