#pragma once

// Exact arithmetic in GF(p^e) and in extensions GF(q^m) over a base GF(q).
//
// Elements are plain integers: the polynomial sum c_i X^i with digits
// c_i in [0, p) is encoded as sum c_i p^i (for p = 2 this is bit packing).
// Extension elements over GF(q) use the same scheme with base-q digits,
// where each digit is itself a base-field encoding.

#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

namespace spreadlab::gf {

using Elem = std::uint32_t;
using Poly = std::vector<Elem>;  // coefficients low to high

inline constexpr std::uint64_t kDefaultMaxOrder = std::uint64_t{1} << 20;
inline constexpr std::uint64_t kDefaultEnumerationLimit = std::uint64_t{1} << 24;

/// Field-order cap. SPREADLAB_MAX_Q overrides the default of 2^20.
std::uint64_t max_field_order();

bool is_prime(std::uint64_t v);

/// Returns (p, e) with q = p^e, or (0, 0) if q is not a prime power.
std::pair<std::uint32_t, std::uint32_t> prime_power_decompose(std::uint64_t q);

namespace detail {
struct FieldData;
}

class Field {
 public:
  /// GF(p^e) with the smallest monic irreducible modulus of degree e, where
  /// candidates are ordered by the base-p integer of their low-to-high
  /// coefficient tuple. Throws NotPrime or Overflow.
  static Field make(std::uint32_t p, std::uint32_t e);

  /// GF(q) for a prime power q. Throws NotPrime if q is not a prime power.
  static Field of_order(std::uint64_t q);

  std::uint32_t p() const;
  std::uint32_t e() const;
  std::uint32_t q() const;
  /// Monic modulus, e + 1 coefficients over GF(p), low to high.
  const Poly& modulus() const;

  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const;
  Elem neg(Elem a) const;
  Elem mul(Elem a, Elem b) const;
  /// Throws DivisionByZero for a = 0.
  Elem inv(Elem a) const;
  Elem pow(Elem a, std::uint64_t k) const;

  bool operator==(const Field& other) const;
  bool operator!=(const Field& other) const { return !(*this == other); }

 private:
  explicit Field(std::shared_ptr<const detail::FieldData> data) : data_(std::move(data)) {}
  std::shared_ptr<const detail::FieldData> data_;
};

/// A value bound to its field; mixing fields throws FieldMismatch.
class FieldElement {
 public:
  FieldElement(Field field, Elem value);

  const Field& field() const { return field_; }
  Elem value() const { return value_; }

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator-() const;
  FieldElement inv() const;
  FieldElement pow(std::uint64_t k) const;

  bool operator==(const FieldElement& o) const;

 private:
  const Field& same_field(const FieldElement& o) const;

  Field field_;
  Elem value_;
};

// Polynomial helpers over a field, exposed for the extension-field builder
// and for tests.
Poly poly_trim(Poly a);
Poly poly_mulmod(const Field& f, const Poly& a, const Poly& b, const Poly& modulus);
Poly poly_mod(const Field& f, Poly a, const Poly& modulus);
Poly poly_gcd(const Field& f, Poly a, Poly b);
/// Ben-Or irreducibility test for a monic polynomial of degree >= 1.
bool is_irreducible(const Field& f, const Poly& monic);

/// Smallest monic irreducible of degree m over `base` in encoding order.
Poly smallest_irreducible(const Field& base, std::uint32_t m);

/// GF(q^m) as a degree-m extension of a base field GF(q), with the power
/// basis 1, a, ..., a^{m-1} of the adjoined root a.
class ExtField {
 public:
  using Value = std::uint64_t;

  ExtField(Field base, std::uint32_t m);

  const Field& base() const { return base_; }
  std::uint32_t degree() const { return m_; }
  const Poly& modulus() const { return modulus_; }
  std::uint64_t order() const { return order_; }

  Value add(Value a, Value b) const;
  Value mul(Value a, Value b) const;
  Value one() const { return 1; }
  /// The adjoined root raised to k (a power-basis element when k < m).
  Value root_power(std::uint32_t k) const;

  std::vector<Elem> coord(Value a) const;
  Value from_coord(const std::vector<Elem>& c) const;

  /// Throws Overflow if the order exceeds the enumeration limit.
  void require_enumerable(std::uint64_t limit = kDefaultEnumerationLimit) const;

 private:
  Poly to_poly(Value a) const;
  Value from_poly(const Poly& c) const;

  Field base_;
  std::uint32_t m_;
  Poly modulus_;
  std::uint64_t order_;
};

}  // namespace spreadlab::gf
