#pragma once

#include <random>

#include "spreadlab/linalg.hpp"

namespace testing_support {

inline spreadlab::linalg::Matrix random_matrix(const spreadlab::gf::Field& f, std::size_t rows, std::size_t cols,
                                               std::mt19937_64& rng) {
  std::uniform_int_distribution<spreadlab::gf::Elem> pick(0, f.q() - 1);
  spreadlab::linalg::Matrix m(f, rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m.at(r, c) = pick(rng);
  return m;
}

// Uniform over matrices of full row rank, so the span is a d-subspace.
inline spreadlab::linalg::Subspace random_subspace(const spreadlab::gf::Field& f, std::size_t n, std::size_t d,
                                                   std::mt19937_64& rng) {
  while (true) {
    auto m = random_matrix(f, d, n, rng);
    auto s = spreadlab::linalg::Subspace::span(m);
    if (s.dim() == d) return s;
  }
}

}  // namespace testing_support
