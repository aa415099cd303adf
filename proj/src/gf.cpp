#include "spreadlab/gf.hpp"

#include <cstdlib>
#include <string>

#include "spreadlab/error.hpp"

namespace spreadlab::gf {

std::uint64_t max_field_order() {
  if (const char* env = std::getenv("SPREADLAB_MAX_Q")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v >= 2) return v;
  }
  return kDefaultMaxOrder;
}

bool is_prime(std::uint64_t v) {
  if (v < 2) return false;
  for (std::uint64_t d = 2; d * d <= v; ++d)
    if (v % d == 0) return false;
  return true;
}

std::pair<std::uint32_t, std::uint32_t> prime_power_decompose(std::uint64_t q) {
  if (q < 2) return {0, 0};
  std::uint64_t p = 0;
  for (std::uint64_t d = 2; d * d <= q; ++d) {
    if (q % d == 0) {
      p = d;
      break;
    }
  }
  if (p == 0) p = q;
  std::uint32_t e = 0;
  while (q % p == 0) {
    q /= p;
    ++e;
  }
  if (q != 1 || p > 0xffffffffULL) return {0, 0};
  return {static_cast<std::uint32_t>(p), e};
}

namespace detail {

struct FieldData {
  std::uint32_t p = 0;
  std::uint32_t e = 0;
  std::uint32_t q = 0;
  Poly modulus;
  std::vector<std::uint32_t> ppow;  // p^i for i <= e
  // log/antilog tables, populated when q <= 2^16
  std::vector<Elem> log;
  std::vector<Elem> exp;
  // full addition table for odd p and q <= 256
  std::vector<Elem> add_table;

  Elem digit_add(Elem a, Elem b) const {
    if (p == 2) return a ^ b;
    if (!add_table.empty()) return add_table[a * q + b];
    Elem out = 0;
    for (std::uint32_t i = 0; i < e; ++i) {
      const std::uint32_t da = a % p, db = b % p;
      a /= p;
      b /= p;
      out += ((da + db) % p) * ppow[i];
    }
    return out;
  }

  Elem digit_neg(Elem a) const {
    if (p == 2) return a;
    Elem out = 0;
    for (std::uint32_t i = 0; i < e; ++i) {
      const std::uint32_t da = a % p;
      a /= p;
      out += ((p - da) % p) * ppow[i];
    }
    return out;
  }

  // Schoolbook product of the digit polynomials reduced by the modulus.
  Elem poly_mul(Elem a, Elem b) const {
    if (e == 1) return static_cast<Elem>((std::uint64_t{a} * b) % p);
    std::vector<std::uint64_t> da(e), db(e), prod(2 * e - 1, 0);
    for (std::uint32_t i = 0; i < e; ++i) {
      da[i] = a % p;
      a /= p;
      db[i] = b % p;
      b /= p;
    }
    for (std::uint32_t i = 0; i < e; ++i) {
      if (da[i] == 0) continue;
      for (std::uint32_t j = 0; j < e; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
    }
    for (std::uint32_t k = 2 * e - 2; k >= e; --k) {
      const std::uint64_t c = prod[k];
      if (c == 0) continue;
      prod[k] = 0;
      // X^k = X^{k-e} * X^e and X^e = -(m_0 + ... + m_{e-1} X^{e-1})
      for (std::uint32_t i = 0; i < e; ++i)
        prod[k - e + i] = (prod[k - e + i] + (p - modulus[i]) % p * c) % p;
    }
    Elem out = 0;
    for (std::uint32_t i = 0; i < e; ++i) out += static_cast<Elem>(prod[i]) * ppow[i];
    return out;
  }

  Elem mul(Elem a, Elem b) const {
    if (a == 0 || b == 0) return 0;
    if (!log.empty()) return exp[log[a] + log[b]];
    return poly_mul(a, b);
  }

  Elem pow(Elem a, std::uint64_t k) const {
    Elem result = 1;
    while (k > 0) {
      if (k & 1) result = mul(result, a);
      a = mul(a, a);
      k >>= 1;
    }
    return result;
  }

  void build_tables() {
    if (p % 2 == 1 && q <= 256) {
      std::vector<Elem> table(std::size_t{q} * q);
      for (Elem a = 0; a < q; ++a)
        for (Elem b = 0; b < q; ++b) table[std::size_t{a} * q + b] = digit_add(a, b);
      add_table = std::move(table);
    }
    if (q > (1u << 16) || q == 2) {
      if (q == 2) {
        log = {0, 0};
        exp = {1, 1};
      }
      return;
    }
    // Smallest primitive element by encoding.
    std::vector<std::uint64_t> factors;
    std::uint64_t rest = q - 1;
    for (std::uint64_t d = 2; d * d <= rest; ++d) {
      if (rest % d == 0) {
        factors.push_back(d);
        while (rest % d == 0) rest /= d;
      }
    }
    if (rest > 1) factors.push_back(rest);
    Elem gen = 0;
    for (Elem g = 2; g < q && gen == 0; ++g) {
      bool primitive = true;
      for (auto f : factors) {
        if (pow(g, (q - 1) / f) == 1) {
          primitive = false;
          break;
        }
      }
      if (primitive) gen = g;
    }
    std::vector<Elem> ex(2 * (std::size_t{q} - 1));
    std::vector<Elem> lg(q, 0);
    Elem cur = 1;
    for (std::uint32_t i = 0; i < q - 1; ++i) {
      ex[i] = cur;
      lg[cur] = i;
      cur = poly_mul(cur, gen);
    }
    for (std::uint32_t i = q - 1; i < 2 * (q - 1); ++i) ex[i] = ex[i - (q - 1)];
    exp = std::move(ex);
    log = std::move(lg);
  }
};

}  // namespace detail

Field Field::make(std::uint32_t p, std::uint32_t e) {
  if (!is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  if (e < 1) throw Error(ErrorCode::InvalidParams, "extension degree must be >= 1");
  const std::uint64_t cap = max_field_order();
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < e; ++i) {
    q *= p;
    if (q > cap || q > 0x7fffffffULL)
      throw Error(ErrorCode::Overflow, std::to_string(p) + "^" + std::to_string(e) +
                                           " exceeds the field-order cap " + std::to_string(cap));
  }
  auto data = std::make_shared<detail::FieldData>();
  data->p = p;
  data->e = e;
  data->q = static_cast<std::uint32_t>(q);
  data->ppow.resize(e + 1);
  data->ppow[0] = 1;
  for (std::uint32_t i = 1; i <= e; ++i) data->ppow[i] = data->ppow[i - 1] * p;
  if (e == 1) {
    data->modulus = {0, 1};
  } else {
    const Field prime = make(p, 1);
    data->modulus = smallest_irreducible(prime, e);
  }
  data->build_tables();
  return Field(std::move(data));
}

Field Field::of_order(std::uint64_t q) {
  const auto [p, e] = prime_power_decompose(q);
  if (p == 0) throw Error(ErrorCode::NotPrime, std::to_string(q) + " is not a prime power");
  return make(p, e);
}

std::uint32_t Field::p() const { return data_->p; }
std::uint32_t Field::e() const { return data_->e; }
std::uint32_t Field::q() const { return data_->q; }
const Poly& Field::modulus() const { return data_->modulus; }

Elem Field::add(Elem a, Elem b) const { return data_->digit_add(a, b); }
Elem Field::sub(Elem a, Elem b) const { return data_->digit_add(a, data_->digit_neg(b)); }
Elem Field::neg(Elem a) const { return data_->digit_neg(a); }
Elem Field::mul(Elem a, Elem b) const { return data_->mul(a, b); }

Elem Field::inv(Elem a) const {
  if (a == 0) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
  if (!data_->log.empty()) {
    const std::uint32_t order = data_->q - 1;
    return data_->exp[(order - data_->log[a]) % order];
  }
  return data_->pow(a, data_->q - 2);
}

Elem Field::pow(Elem a, std::uint64_t k) const { return data_->pow(a, k); }

bool Field::operator==(const Field& other) const {
  if (data_ == other.data_) return true;
  return data_->p == other.data_->p && data_->e == other.data_->e &&
         data_->modulus == other.data_->modulus;
}

FieldElement::FieldElement(Field field, Elem value) : field_(std::move(field)), value_(value) {
  if (value_ >= field_.q())
    throw Error(ErrorCode::InvalidParams, "element encoding out of range");
}

const Field& FieldElement::same_field(const FieldElement& o) const {
  if (field_ != o.field_) throw Error(ErrorCode::FieldMismatch, "operands from different fields");
  return field_;
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  return {same_field(o), field_.add(value_, o.value_)};
}
FieldElement FieldElement::operator-(const FieldElement& o) const {
  return {same_field(o), field_.sub(value_, o.value_)};
}
FieldElement FieldElement::operator*(const FieldElement& o) const {
  return {same_field(o), field_.mul(value_, o.value_)};
}
FieldElement FieldElement::operator-() const { return {field_, field_.neg(value_)}; }
FieldElement FieldElement::inv() const { return {field_, field_.inv(value_)}; }
FieldElement FieldElement::pow(std::uint64_t k) const { return {field_, field_.pow(value_, k)}; }

bool FieldElement::operator==(const FieldElement& o) const {
  return field_ == o.field_ && value_ == o.value_;
}

// ---------------------------------------------------------------------------
// Polynomials over a field

Poly poly_trim(Poly a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

Poly poly_mod(const Field& f, Poly a, const Poly& modulus) {
  a = poly_trim(std::move(a));
  const Poly m = poly_trim(modulus);
  const std::size_t dm = m.size() - 1;
  const Elem lead_inv = f.inv(m.back());
  while (a.size() > dm) {
    const std::size_t shift = a.size() - 1 - dm;
    const Elem c = f.mul(a.back(), lead_inv);
    for (std::size_t i = 0; i <= dm; ++i) a[shift + i] = f.sub(a[shift + i], f.mul(c, m[i]));
    a = poly_trim(std::move(a));
  }
  return a;
}

Poly poly_mulmod(const Field& f, const Poly& a, const Poly& b, const Poly& modulus) {
  if (a.empty() || b.empty()) return {};
  Poly prod(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      prod[i + j] = f.add(prod[i + j], f.mul(a[i], b[j]));
  }
  return poly_mod(f, std::move(prod), modulus);
}

Poly poly_gcd(const Field& f, Poly a, Poly b) {
  a = poly_trim(std::move(a));
  b = poly_trim(std::move(b));
  while (!b.empty()) {
    Poly r = poly_mod(f, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const Elem lead_inv = f.inv(a.back());
    for (auto& c : a) c = f.mul(c, lead_inv);
  }
  return a;
}

namespace {

Poly poly_powmod(const Field& f, Poly base, std::uint64_t k, const Poly& modulus) {
  Poly result{1};
  base = poly_mod(f, std::move(base), modulus);
  while (k > 0) {
    if (k & 1) result = poly_mulmod(f, result, base, modulus);
    base = poly_mulmod(f, base, base, modulus);
    k >>= 1;
  }
  return result;
}

}  // namespace

bool is_irreducible(const Field& f, const Poly& monic) {
  const Poly m = poly_trim(monic);
  if (m.size() < 2) return false;
  const std::size_t deg = m.size() - 1;
  if (deg == 1) return true;
  Poly h{0, 1};
  for (std::size_t i = 1; i <= deg / 2; ++i) {
    h = poly_powmod(f, h, f.q(), m);
    Poly diff = h;
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = f.sub(diff[1], 1);
    if (poly_gcd(f, diff, m).size() > 1) return false;
  }
  return true;
}

Poly smallest_irreducible(const Field& base, std::uint32_t m) {
  if (m == 0) throw Error(ErrorCode::InvalidParams, "degree must be >= 1");
  const std::uint64_t q = base.q();
  Poly cand(m + 1, 0);
  cand[m] = 1;
  // Odometer over the m low coefficients; digit 0 varies fastest, which is
  // exactly increasing order of sum c_i q^i.
  while (true) {
    if (is_irreducible(base, cand)) return cand;
    std::uint32_t i = 0;
    while (i < m && cand[i] == q - 1) cand[i++] = 0;
    if (i == m) break;
    ++cand[i];
  }
  throw Error(ErrorCode::InvalidParams, "no irreducible polynomial found");
}

// ---------------------------------------------------------------------------
// Extension fields

ExtField::ExtField(Field base, std::uint32_t m) : base_(std::move(base)), m_(m) {
  if (m_ < 1) throw Error(ErrorCode::InvalidParams, "extension degree must be >= 1");
  std::uint64_t order = 1;
  for (std::uint32_t i = 0; i < m_; ++i) {
    if (order > (std::uint64_t{1} << 62) / base_.q())
      throw Error(ErrorCode::Overflow, "extension order exceeds 2^62");
    order *= base_.q();
  }
  order_ = order;
  modulus_ = m_ == 1 ? Poly{0, 1} : smallest_irreducible(base_, m_);
}

Poly ExtField::to_poly(Value a) const {
  Poly c(m_);
  for (std::uint32_t i = 0; i < m_; ++i) {
    c[i] = static_cast<Elem>(a % base_.q());
    a /= base_.q();
  }
  return c;
}

ExtField::Value ExtField::from_poly(const Poly& c) const {
  Value v = 0;
  for (std::size_t i = c.size(); i-- > 0;) v = v * base_.q() + c[i];
  return v;
}

ExtField::Value ExtField::add(Value a, Value b) const {
  Poly ca = to_poly(a);
  const Poly cb = to_poly(b);
  for (std::uint32_t i = 0; i < m_; ++i) ca[i] = base_.add(ca[i], cb[i]);
  return from_poly(ca);
}

ExtField::Value ExtField::mul(Value a, Value b) const {
  return from_poly(poly_mulmod(base_, to_poly(a), to_poly(b), modulus_));
}

ExtField::Value ExtField::root_power(std::uint32_t k) const {
  Poly xk(k + 1, 0);
  xk[k] = 1;
  return from_poly(poly_mod(base_, std::move(xk), modulus_));
}

std::vector<Elem> ExtField::coord(Value a) const { return to_poly(a); }

ExtField::Value ExtField::from_coord(const std::vector<Elem>& c) const {
  if (c.size() != m_) throw Error(ErrorCode::InvalidParams, "coordinate length mismatch");
  return from_poly(c);
}

void ExtField::require_enumerable(std::uint64_t limit) const {
  if (order_ > limit)
    throw Error(ErrorCode::Overflow, "extension of order " + std::to_string(order_) +
                                         " exceeds the enumeration limit");
}

}  // namespace spreadlab::gf
