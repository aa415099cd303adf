#pragma once

// Brute-force reference computations used to freeze expected values.
// Nothing here calls into the library except the BigInt alias; the finite
// field work is restricted to prime orders so plain modular arithmetic
// suffices.

#include <algorithm>
#include <cstdint>
#include <set>
#include <vector>

#include "spreadlab/bigint.hpp"

namespace oracle {

using spreadlab::BigInt;

inline BigInt power(std::uint64_t q, unsigned k) {
  BigInt v = 1;
  for (unsigned i = 0; i < k; ++i) v *= q;
  return v;
}

// 1 + q + ... + q^{i-1}
inline BigInt theta(unsigned i, std::uint64_t q) {
  BigInt s = 0;
  for (unsigned k = 0; k < i; ++k) s += power(q, k);
  return s;
}

// Size of the classical construction: one block of q^{n-kt} graph subspaces
// per recursion level plus the closing coordinate subspace.
inline BigInt construction_size(std::uint64_t q, unsigned n, unsigned t) {
  BigInt s = 1;
  for (unsigned k = 1; n >= (k + 1) * t; ++k) s += power(q, n - k * t);
  return s;
}

// (-x Θ_i) mod q^i, which is the distance from x Θ_i up to the next
// multiple of q^i.
inline BigInt defect(const BigInt& x, unsigned i, std::uint64_t q) {
  const BigInt m = power(q, i);
  BigInt v = (-(x * theta(i, q))) % m;
  if (v < 0) v += m;
  return v;
}

// Largest w with 2w + (2q^t - 2q^r + 1) <= sqrt(4 q^t (q^t - q^r) + 1),
// found by bisection on the squared inequality.
inline BigInt omega_floor(std::uint64_t q, unsigned t, unsigned r) {
  const BigInt qt = power(q, t), qr = power(q, r);
  const BigInt disc = 4 * qt * (qt - qr) + 1;
  const BigInt shift = 2 * qt - 2 * qr + 1;
  auto fits = [&](const BigInt& w) {
    const BigInt lhs = 2 * w + shift;
    return lhs <= 0 || lhs * lhs <= disc;
  };
  BigInt lo = -shift, hi = qr + 1;  // fits(lo), !fits(hi)
  while (hi - lo > 1) {
    const BigInt mid = (lo + hi) / 2;
    (fits(mid) ? lo : hi) = mid;
  }
  return lo;
}

// ---------------------------------------------------------------------------
// Vectors over a prime field GF(p), encoded base p with the first coordinate
// most significant.

inline std::vector<std::uint32_t> decode(std::uint64_t code, unsigned n, std::uint32_t p) {
  std::vector<std::uint32_t> v(n);
  for (unsigned i = n; i-- > 0;) {
    v[i] = static_cast<std::uint32_t>(code % p);
    code /= p;
  }
  return v;
}

inline std::uint64_t encode(const std::vector<std::uint32_t>& v, std::uint32_t p) {
  std::uint64_t c = 0;
  for (auto x : v) c = c * p + x;
  return c;
}

inline std::uint64_t inverse_mod(std::uint64_t a, std::uint32_t p) {
  for (std::uint64_t b = 1; b < p; ++b)
    if (a * b % p == 1) return b;
  return 0;
}

inline std::size_t rank_mod(std::vector<std::vector<std::uint32_t>> rows, std::uint32_t p) {
  std::size_t rank = 0;
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t piv = rank;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[rank]);
    const auto inv = inverse_mod(rows[rank][c], p);
    for (auto& x : rows[rank]) x = static_cast<std::uint32_t>(x * inv % p);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][c] == 0) continue;
      const std::uint64_t f = rows[r][c];
      for (std::size_t k = 0; k < cols; ++k)
        rows[r][k] = static_cast<std::uint32_t>((rows[r][k] + (p - f) * rows[rank][k]) % p);
    }
    ++rank;
  }
  return rank;
}

// Number of d-subspaces of GF(p)^n for every d, found by closing the
// trivial subspace under "span with one more vector" and deduplicating the
// resulting vector sets.
inline std::vector<std::uint64_t> count_subspaces_by_dim(unsigned n, std::uint32_t p) {
  std::uint64_t total = 1;
  for (unsigned i = 0; i < n; ++i) total *= p;
  std::vector<std::uint64_t> counts{1};
  std::set<std::vector<std::uint64_t>> level{{0}};
  for (unsigned d = 1; d <= n; ++d) {
    std::set<std::vector<std::uint64_t>> next;
    for (const auto& s : level) {
      for (std::uint64_t v = 1; v < total; ++v) {
        if (std::binary_search(s.begin(), s.end(), v)) continue;
        const auto vv = decode(v, n, p);
        std::set<std::uint64_t> span;
        for (auto c : s) {
          auto w = decode(c, n, p);
          for (std::uint32_t a = 0; a < p; ++a) {
            span.insert(encode(w, p));
            for (unsigned i = 0; i < n; ++i) w[i] = (w[i] + vv[i]) % p;
          }
        }
        next.emplace(span.begin(), span.end());
      }
    }
    counts.push_back(next.size());
    level = std::move(next);
  }
  return counts;
}

inline std::uint64_t count_subspaces(unsigned n, unsigned d, std::uint32_t p) {
  return count_subspaces_by_dim(n, p).at(d);
}

// Ordered d-tuples of linearly independent vectors in GF(p)^n, by brute force.
inline std::uint64_t count_independent_tuples(unsigned n, unsigned d, std::uint32_t p) {
  std::uint64_t total = 1;
  for (unsigned i = 0; i < n; ++i) total *= p;
  std::uint64_t count = 0;
  std::vector<std::uint64_t> idx(d, 0);
  while (true) {
    std::vector<std::vector<std::uint32_t>> gens;
    for (auto c : idx) gens.push_back(decode(c, n, p));
    if (rank_mod(gens, p) == d) ++count;
    std::size_t k = 0;
    while (k < d && ++idx[k] == total) idx[k++] = 0;
    if (k == d) break;
  }
  return count;
}

}  // namespace oracle
