#include "spreadlab/linalg.hpp"

#include <algorithm>
#include <string>

#include "spreadlab/error.hpp"

namespace spreadlab::linalg {

Matrix::Matrix(Field field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

Matrix::Matrix(Field field, std::size_t cols, const std::vector<std::vector<Elem>>& rows)
    : field_(std::move(field)), rows_(0), cols_(cols) {
  data_.reserve(rows.size() * cols);
  for (const auto& r : rows) append_row(r);
}

Matrix Matrix::identity(const Field& field, std::size_t n) {
  Matrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

void Matrix::append_row(std::span<const Elem> values) {
  if (values.size() != cols_)
    throw Error(ErrorCode::AmbientMismatch, "row length " + std::to_string(values.size()) +
                                                " does not match " + std::to_string(cols_));
  for (Elem v : values)
    if (v >= field_.q()) throw Error(ErrorCode::InvalidParams, "matrix entry out of field range");
  data_.insert(data_.end(), values.begin(), values.end());
  ++rows_;
}

std::vector<std::vector<Elem>> Matrix::to_rows() const {
  std::vector<std::vector<Elem>> out;
  out.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out.emplace_back(row(r).begin(), row(r).end());
  return out;
}

Matrix stack(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols()) throw Error(ErrorCode::AmbientMismatch, "column counts differ");
  if (a.field() != b.field()) throw Error(ErrorCode::FieldMismatch, "matrices over different fields");
  Matrix out(a.field(), 0, a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) out.append_row(a.row(r));
  for (std::size_t r = 0; r < b.rows(); ++r) out.append_row(b.row(r));
  return out;
}

namespace {

bool packable(const Matrix& m) { return m.field().q() == 2 && m.cols() <= 64; }

std::vector<std::uint64_t> pack(const Matrix& m) {
  std::vector<std::uint64_t> rows(m.rows(), 0);
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (m.at(r, c)) rows[r] |= std::uint64_t{1} << c;
  return rows;
}

// Word-parallel Gauss-Jordan over GF(2); returns the rank and leaves the
// first `rank` rows in RREF.
std::size_t eliminate_packed(std::vector<std::uint64_t>& rows, std::size_t cols, bool full) {
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    const std::uint64_t bit = std::uint64_t{1} << c;
    std::size_t pivot = rank;
    while (pivot < rows.size() && !(rows[pivot] & bit)) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    for (std::size_t r = full ? 0 : rank + 1; r < rows.size(); ++r)
      if (r != rank && (rows[r] & bit)) rows[r] ^= rows[rank];
    ++rank;
  }
  return rank;
}

std::size_t eliminate_generic(Matrix& m, bool full) {
  const Field& f = m.field();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
    std::size_t pivot = rank;
    while (pivot < m.rows() && m.at(pivot, c) == 0) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != rank)
      std::swap_ranges(m.row(pivot).begin(), m.row(pivot).end(), m.row(rank).begin());
    const Elem scale = f.inv(m.at(rank, c));
    for (auto& v : m.row(rank)) v = f.mul(v, scale);
    for (std::size_t r = full ? 0 : rank + 1; r < m.rows(); ++r) {
      if (r == rank) continue;
      const Elem factor = m.at(r, c);
      if (factor == 0) continue;
      auto target = m.row(r);
      auto source = m.row(rank);
      for (std::size_t k = c; k < m.cols(); ++k)
        target[k] = f.sub(target[k], f.mul(factor, source[k]));
    }
    ++rank;
  }
  return rank;
}

}  // namespace

Matrix rref(const Matrix& m) {
  if (packable(m)) {
    auto rows = pack(m);
    const std::size_t r = eliminate_packed(rows, m.cols(), true);
    Matrix out(m.field(), r, m.cols());
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t c = 0; c < m.cols(); ++c) out.at(i, c) = (rows[i] >> c) & 1;
    return out;
  }
  Matrix work = m;
  const std::size_t r = eliminate_generic(work, true);
  Matrix out(m.field(), r, m.cols());
  for (std::size_t i = 0; i < r; ++i) std::copy(work.row(i).begin(), work.row(i).end(), out.row(i).begin());
  return out;
}

std::size_t rank(const Matrix& m) {
  if (packable(m)) {
    auto rows = pack(m);
    return eliminate_packed(rows, m.cols(), false);
  }
  Matrix work = m;
  return eliminate_generic(work, false);
}

// ---------------------------------------------------------------------------

Subspace Subspace::span(const Matrix& generators) { return Subspace(rref(generators)); }

Subspace Subspace::zero(const Field& field, std::size_t n) { return Subspace(Matrix(field, 0, n)); }

Subspace Subspace::full(const Field& field, std::size_t n) {
  return Subspace(Matrix::identity(field, n));
}

Subspace Subspace::coordinate(const Field& field, std::size_t n, std::size_t first,
                              std::size_t count) {
  if (first + count > n) throw Error(ErrorCode::InvalidParams, "coordinate block exceeds ambient");
  Matrix m(field, count, n);
  for (std::size_t i = 0; i < count; ++i) m.at(i, first + i) = 1;
  return Subspace(std::move(m));
}

std::vector<std::size_t> Subspace::pivots() const {
  std::vector<std::size_t> out;
  out.reserve(dim());
  for (std::size_t r = 0; r < dim(); ++r) {
    std::size_t c = 0;
    while (basis_.at(r, c) == 0) ++c;
    out.push_back(c);
  }
  return out;
}

std::size_t Subspace::hash() const {
  std::uint64_t h = 1469598103934665603ULL ^ ambient();
  for (std::size_t r = 0; r < dim(); ++r)
    for (Elem v : basis_.row(r)) h = (h ^ v) * 1099511628211ULL;
  return static_cast<std::size_t>(h);
}

std::size_t intersect_dim(const Subspace& a, const Subspace& b) {
  if (a.ambient() != b.ambient())
    throw Error(ErrorCode::AmbientMismatch, "subspaces live in V(" + std::to_string(a.ambient()) +
                                                ") and V(" + std::to_string(b.ambient()) + ")");
  return a.dim() + b.dim() - rank(stack(a.basis(), b.basis()));
}

bool is_disjoint(const Subspace& a, const Subspace& b) { return intersect_dim(a, b) == 0; }

BigInt gaussian_binomial(std::uint64_t n, std::uint64_t k, std::uint64_t q) {
  if (k > n) return 0;
  BigInt num = 1, den = 1;
  for (std::uint64_t i = 0; i < k; ++i) {
    num *= big_pow(q, static_cast<unsigned>(n - i)) - 1;
    den *= big_pow(q, static_cast<unsigned>(i + 1)) - 1;
  }
  return num / den;
}

// ---------------------------------------------------------------------------

SubspaceEnumerator::SubspaceEnumerator(Field field, std::size_t n, std::size_t d)
    : field_(std::move(field)), n_(n), d_(d) {
  reset();
}

void SubspaceEnumerator::reset() {
  started_ = false;
  done_ = d_ > n_;
  pivots_.resize(std::min(d_, n_));
  for (std::size_t i = 0; i < pivots_.size(); ++i) pivots_[i] = i;
}

void SubspaceEnumerator::load_free_positions() {
  free_.clear();
  for (std::size_t i = 0; i < d_; ++i)
    for (std::size_t c = pivots_[i] + 1; c < n_; ++c)
      if (!std::binary_search(pivots_.begin(), pivots_.end(), c)) free_.emplace_back(i, c);
  free_values_.assign(free_.size(), 0);
}

bool SubspaceEnumerator::advance_pivots() {
  std::size_t i = d_;
  while (i > 0) {
    --i;
    if (pivots_[i] < n_ - d_ + i) {
      ++pivots_[i];
      for (std::size_t k = i + 1; k < d_; ++k) pivots_[k] = pivots_[k - 1] + 1;
      return true;
    }
  }
  return false;
}

std::optional<Subspace> SubspaceEnumerator::next() {
  if (done_) return std::nullopt;
  if (!started_) {
    started_ = true;
    load_free_positions();
  } else {
    std::size_t i = free_values_.size();
    bool carried_out = true;
    while (i > 0) {
      --i;
      if (free_values_[i] + 1 < field_.q()) {
        ++free_values_[i];
        carried_out = false;
        break;
      }
      free_values_[i] = 0;
    }
    if (carried_out) {
      if (!advance_pivots()) {
        done_ = true;
        return std::nullopt;
      }
      load_free_positions();
    }
  }
  Matrix m(field_, d_, n_);
  for (std::size_t i = 0; i < d_; ++i) m.at(i, pivots_[i]) = 1;
  for (std::size_t k = 0; k < free_.size(); ++k) m.at(free_[k].first, free_[k].second) = free_values_[k];
  return Subspace(std::move(m));
}

SubspaceEnumerator enumerate_subspaces(std::size_t n, std::size_t d, const Field& field,
                                       std::uint64_t budget) {
  const BigInt total = gaussian_binomial(n, d, field.q());
  if (total > budget)
    throw Error(ErrorCode::BudgetExceeded, "[" + std::to_string(n) + "," + std::to_string(d) + "]_" +
                                               std::to_string(field.q()) + " = " + total.str() +
                                               " subspaces exceeds budget " + std::to_string(budget));
  return SubspaceEnumerator(field, n, d);
}

std::vector<Subspace> all_subspaces(std::size_t n, std::size_t d, const Field& field,
                                    std::uint64_t budget) {
  auto it = enumerate_subspaces(n, d, field, budget);
  std::vector<Subspace> out;
  out.reserve(static_cast<std::size_t>(it.count()));
  while (auto s = it.next()) out.push_back(std::move(*s));
  return out;
}

// ---------------------------------------------------------------------------

PointSpace::PointSpace(Field field, std::size_t n) : field_(std::move(field)), n_(n) {
  const std::uint64_t q = field_.q();
  qpow_.assign(n_ + 1, 1);
  theta_.assign(n_ + 1, 0);
  for (std::size_t i = 1; i <= n_; ++i) {
    if (qpow_[i - 1] > (std::uint64_t{1} << 62) / q)
      throw Error(ErrorCode::Overflow, "q^n too large for point indexing");
    qpow_[i] = qpow_[i - 1] * q;
    theta_[i] = theta_[i - 1] + qpow_[i - 1];
  }
}

std::uint64_t PointSpace::index(std::span<const Elem> v) const {
  if (v.size() != n_) throw Error(ErrorCode::AmbientMismatch, "vector length differs from the ambient dimension");
  std::size_t k = 0;
  while (k < n_ && v[k] == 0) ++k;
  if (k == n_ || v[k] != 1) throw Error(ErrorCode::InvalidParams, "vector is not normalized");
  std::uint64_t tail = 0;
  for (std::size_t j = k + 1; j < n_; ++j) tail = tail * field_.q() + v[j];
  return theta_[n_ - 1 - k] + tail;
}

std::vector<Elem> PointSpace::vector(std::uint64_t index) const {
  if (index >= count()) throw Error(ErrorCode::InvalidParams, "point index out of range");
  std::size_t len = 0;
  while (theta_[len + 1] <= index) ++len;
  std::uint64_t tail = index - theta_[len];
  std::vector<Elem> v(n_, 0);
  const std::size_t k = n_ - 1 - len;
  v[k] = 1;
  for (std::size_t j = n_; j-- > k + 1;) {
    v[j] = static_cast<Elem>(tail % field_.q());
    tail /= field_.q();
  }
  return v;
}

std::vector<Elem> PointSpace::normalize(std::span<const Elem> v) const {
  std::size_t k = 0;
  while (k < v.size() && v[k] == 0) ++k;
  if (k == v.size()) throw Error(ErrorCode::InvalidParams, "zero vector has no point");
  const Elem scale = field_.inv(v[k]);
  std::vector<Elem> out(v.size());
  for (std::size_t j = 0; j < v.size(); ++j) out[j] = field_.mul(v[j], scale);
  return out;
}

std::vector<std::uint64_t> PointSpace::points_of(const Subspace& s) const {
  if (s.ambient() != n_) throw Error(ErrorCode::AmbientMismatch, "subspace ambient differs");
  const std::size_t d = s.dim();
  const std::uint32_t q = field_.q();
  const bool prime = field_.e() == 1;
  const Matrix& b = s.basis();
  std::vector<std::uint64_t> out;
  out.reserve(static_cast<std::size_t>(theta_[std::min(d, n_)]));
  std::vector<Elem> coeff(d), vec(n_);
  // In RREF, a combination whose first nonzero coefficient is 1 is already
  // normalized, so the points are exactly those combinations. The odometer
  // over the trailing coefficients updates `vec` one row at a time.
  for (std::size_t lead = 0; lead < d; ++lead) {
    std::fill(coeff.begin(), coeff.end(), 0);
    coeff[lead] = 1;
    std::copy(b.row(lead).begin(), b.row(lead).end(), vec.begin());
    while (true) {
      out.push_back(index(vec));
      std::size_t i = d;
      bool more = false;
      while (i > lead + 1) {
        --i;
        const Elem old = coeff[i];
        const Elem now = old + 1 < q ? old + 1 : 0;
        coeff[i] = now;
        // For prime q every odometer step (including the wrap) adds one row.
        const Elem step = prime ? 1 : field_.sub(now, old);
        const auto row = b.row(i);
        for (std::size_t c = 0; c < n_; ++c)
          if (row[c]) vec[c] = field_.add(vec[c], step == 1 ? row[c] : field_.mul(step, row[c]));
        if (now != 0) {
          more = true;
          break;
        }
      }
      if (!more) break;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Subspace annihilator(const Subspace& s) {
  const std::size_t n = s.ambient();
  const Field& f = s.field();
  const auto piv = s.pivots();
  Matrix gens(f, 0, n);
  std::vector<Elem> v(n);
  for (std::size_t c = 0; c < n; ++c) {
    if (std::binary_search(piv.begin(), piv.end(), c)) continue;
    std::fill(v.begin(), v.end(), 0);
    v[c] = 1;
    for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = f.neg(s.basis().at(i, c));
    gens.append_row(v);
  }
  return Subspace::span(gens);
}

std::optional<Hyperplane> HyperplaneEnumerator::next() {
  if (next_index_ >= points_.count()) return std::nullopt;
  return Hyperplane{points_.ambient(), points_.vector(next_index_++)};
}

HyperplaneEnumerator hyperplanes(std::size_t n, const Field& field) {
  return HyperplaneEnumerator(field, n);
}

bool contains(const Hyperplane& h, const Subspace& s) {
  if (h.ambient != s.ambient()) throw Error(ErrorCode::AmbientMismatch, "hyperplane ambient differs");
  const Field& f = s.field();
  for (std::size_t r = 0; r < s.dim(); ++r) {
    Elem acc = 0;
    for (std::size_t c = 0; c < h.ambient; ++c)
      if (h.dual[c]) acc = f.add(acc, f.mul(h.dual[c], s.basis().at(r, c)));
    if (acc != 0) return false;
  }
  return true;
}

}  // namespace spreadlab::linalg
