#include "spreadlab/partition.hpp"

#include <algorithm>
#include <numeric>

#include <omp.h>

#include "spreadlab/error.hpp"
#include "spreadlab/io.hpp"

namespace spreadlab::partition {

using bounds::delta;
using bounds::theta;
using nlohmann::json;

SubspacePartition SubspacePartition::from_parts(gf::Field field, std::size_t ambient,
                                                std::vector<Subspace> parts) {
  SubspacePartition p{std::move(field), ambient, std::move(parts), {}};
  for (const auto& s : p.parts) ++p.type[s.dim()];
  return p;
}

std::string type_string(const TypeVector& type) {
  std::string out = "[";
  bool first = true;
  for (const auto& [d, count] : type) {
    if (!first) out += ",";
    first = false;
    out += std::to_string(d) + "^" + std::to_string(count);
  }
  return out + "]";
}

SubspacePartition partition_from_spread(const construct::PartialSpread& s) {
  if (!s.verification.verified())
    throw Error(ErrorCode::UnverifiedSpread, "spread must be verified before it becomes a partition");
  const linalg::PointSpace space(s.field, s.params.n);
  std::vector<bool> covered(space.count(), false);
  for (const auto& m : s.members)
    for (auto pt : space.points_of(m)) covered[pt] = true;
  std::vector<Subspace> parts = s.members;
  for (std::uint64_t pt = 0; pt < space.count(); ++pt) {
    if (covered[pt]) continue;
    linalg::Matrix row(s.field, 0, s.params.n);
    row.append_row(space.vector(pt));
    parts.push_back(Subspace::span(row));
  }
  return SubspacePartition::from_parts(s.field, s.params.n, std::move(parts));
}

PartitionCheck verify_partition(const SubspacePartition& p, std::uint64_t point_budget) {
  const linalg::PointSpace space(p.field, p.ambient);
  if (space.count() > point_budget)
    throw Error(ErrorCode::BudgetExceeded, "V(" + std::to_string(p.ambient) + "," + std::to_string(p.field.q()) +
                                               ") has " + std::to_string(space.count()) + " points");
  PartitionCheck out;
  for (std::size_t i = 0; i < p.parts.size(); ++i) {
    const auto& s = p.parts[i];
    if (s.ambient() != p.ambient || s.dim() == 0 || s.field() != p.field) {
      out.reason = "part " + std::to_string(i) + " is trivial or lives in another space";
      return out;
    }
  }
  std::vector<std::uint8_t> hits(space.count(), 0);
  for (const auto& s : p.parts)
    for (auto pt : space.points_of(s))
      if (hits[pt] < 2) ++hits[pt];
  for (std::uint64_t pt = 0; pt < space.count(); ++pt) {
    if (hits[pt] != 1) {
      out.witness = space.vector(pt);
      out.reason = hits[pt] == 0 ? "point " + std::to_string(pt) + " is not covered"
                                 : "point " + std::to_string(pt) + " is covered more than once";
      return out;
    }
  }
  BigInt covered = 0;
  for (const auto& [d, count] : p.type) covered += theta(static_cast<unsigned>(d), p.field.q()) * count;
  if (covered != theta(static_cast<unsigned>(p.ambient), p.field.q())) {
    out.reason = "sum n_d Θ_d = " + covered.str() + " differs from Θ_n";
    return out;
  }
  out.ok = true;
  return out;
}

// ---------------------------------------------------------------------------
// Hyperplane profiles

namespace {

std::vector<std::size_t> dims_of(const SubspacePartition& p) {
  std::vector<std::size_t> dims;
  for (const auto& [d, count] : p.type) dims.push_back(d);
  return dims;
}

void fill_tally(HyperplaneProfile& prof) {
  const std::size_t k = prof.dims.size();
  prof.tally.clear();
  if (k == 0) return;
  for (std::size_t h = 0; h < prof.b.size() / k; ++h) {
    std::vector<std::uint32_t> key(prof.b.begin() + h * k, prof.b.begin() + (h + 1) * k);
    ++prof.tally[key];
  }
}

std::size_t dim_slot(const std::vector<std::size_t>& dims, std::size_t d) {
  return static_cast<std::size_t>(std::find(dims.begin(), dims.end(), d) - dims.begin());
}

// counts[code(H)] = #{points v of `codes` : H·v = 0} for every vector H,
// indexed by the base-q code of H. Each pass turns one coordinate of the
// point into the matching coordinate of the functional, carrying the
// partial dot product in an extra axis of size q.
std::vector<std::uint32_t> hyperplane_point_counts(const gf::Field& f, std::size_t n,
                                                   const std::vector<std::uint64_t>& codes, int threads) {
  const std::uint32_t q = f.q();
  std::vector<std::uint64_t> qpow(n + 1, 1);
  for (std::size_t i = 1; i <= n; ++i) qpow[i] = qpow[i - 1] * q;
  const std::uint64_t total = qpow[n];
  std::vector<std::uint32_t> table(total * q, 0);
  for (auto c : codes) ++table[c * q];

  // shift[h][a][c] = c - h*a
  std::vector<std::uint32_t> shift(std::size_t{q} * q * q);
  for (std::uint32_t h = 0; h < q; ++h)
    for (std::uint32_t a = 0; a < q; ++a)
      for (std::uint32_t c = 0; c < q; ++c) shift[(h * q + a) * q + c] = f.sub(c, f.mul(h, a));

  const std::int64_t groups = static_cast<std::int64_t>(total / q);
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t stride = qpow[n - 1 - i];
#pragma omp parallel num_threads(threads)
    {
      std::vector<std::uint32_t> old(std::size_t{q} * q);
#pragma omp for schedule(static)
      for (std::int64_t g = 0; g < groups; ++g) {
        const std::uint64_t hi = static_cast<std::uint64_t>(g) / stride;
        const std::uint64_t lo = static_cast<std::uint64_t>(g) % stride;
        const std::uint64_t base = hi * stride * q + lo;
        for (std::uint32_t a = 0; a < q; ++a)
          std::copy_n(&table[(base + a * stride) * q], q, &old[a * q]);
        for (std::uint32_t h = 0; h < q; ++h) {
          std::uint32_t* out = &table[(base + h * stride) * q];
          for (std::uint32_t c = 0; c < q; ++c) {
            std::uint32_t acc = 0;
            for (std::uint32_t a = 0; a < q; ++a) acc += old[a * q + shift[(h * q + a) * q + c]];
            out[c] = acc;
          }
        }
      }
    }
  }
  std::vector<std::uint32_t> zero_counts(total);
  for (std::uint64_t v = 0; v < total; ++v) zero_counts[v] = table[v * q];
  return zero_counts;
}

}  // namespace

HyperplaneProfile hyperplane_profile_serial(const SubspacePartition& p) {
  HyperplaneProfile prof;
  prof.ambient = p.ambient;
  prof.dims = dims_of(p);
  const std::size_t k = prof.dims.size();
  auto it = linalg::hyperplanes(p.ambient, p.field);
  prof.b.assign(it.count() * k, 0);
  std::uint64_t h = 0;
  while (auto hp = it.next()) {
    for (const auto& s : p.parts)
      if (linalg::contains(*hp, s)) ++prof.b[h * k + dim_slot(prof.dims, s.dim())];
    ++h;
  }
  fill_tally(prof);
  return prof;
}

HyperplaneProfile hyperplane_profile_parallel(const SubspacePartition& p, int threads) {
  if (threads <= 0) threads = omp_get_max_threads();
  HyperplaneProfile prof;
  prof.ambient = p.ambient;
  prof.dims = dims_of(p);
  const std::size_t k = prof.dims.size();
  const linalg::PointSpace space(p.field, p.ambient);
  const std::uint64_t hcount = space.count();
  prof.b.assign(hcount * k, 0);
  if (k == 0) return prof;

  const std::uint64_t q = p.field.q();
  std::uint64_t qn = 1;
  for (std::size_t i = 0; i < p.ambient; ++i) qn *= q;
  const bool use_transform = qn * q <= (std::uint64_t{1} << 27);

  std::vector<std::size_t> scatter;
  std::vector<std::size_t> lines;
  for (std::size_t i = 0; i < p.parts.size(); ++i)
    (p.parts[i].dim() == 1 && use_transform ? lines : scatter).push_back(i);

  const std::int64_t nscatter = static_cast<std::int64_t>(scatter.size());
#pragma omp parallel num_threads(threads)
  {
    std::vector<std::uint32_t> local(hcount * k, 0);
#pragma omp for schedule(dynamic, 16)
    for (std::int64_t idx = 0; idx < nscatter; ++idx) {
      const Subspace& s = p.parts[scatter[static_cast<std::size_t>(idx)]];
      const std::size_t slot = dim_slot(prof.dims, s.dim());
      for (auto h : space.points_of(linalg::annihilator(s))) ++local[h * k + slot];
    }
#pragma omp critical
    for (std::size_t i = 0; i < local.size(); ++i) prof.b[i] += local[i];
  }

  if (!lines.empty()) {
    std::vector<std::uint64_t> codes;
    codes.reserve(lines.size());
    for (auto i : lines) {
      std::uint64_t code = 0;
      for (auto v : p.parts[i].basis().row(0)) code = code * q + v;
      codes.push_back(code);
    }
    const auto counts = hyperplane_point_counts(p.field, p.ambient, codes, threads);
    const std::size_t slot = dim_slot(prof.dims, 1);
    for (std::uint64_t h = 0; h < hcount; ++h) {
      std::uint64_t code = 0;
      for (auto v : space.vector(h)) code = code * q + v;
      prof.b[h * k + slot] = counts[code];
    }
  }
  fill_tally(prof);
  return prof;
}

void check_profile_identities(const SubspacePartition& p, const HyperplaneProfile& prof) {
  const std::uint64_t q = p.field.q();
  const std::size_t k = prof.dims.size();
  const BigInt size = p.parts.size();
  const std::uint64_t hcount = prof.hyperplane_count();
  for (std::uint64_t h = 0; h < hcount; ++h) {
    BigInt rhs = 1;
    for (std::size_t i = 0; i < k; ++i) rhs += BigInt(prof.b[h * k + i]) * big_pow(q, static_cast<unsigned>(prof.dims[i]));
    if (rhs != size)
      throw Error(ErrorCode::IdentityViolation, "|P| = 1 + sum b_{H,d} q^d fails at hyperplane " + std::to_string(h) +
                                                    ": " + rhs.str() + " != " + size.str());
  }
  BigInt hyperplanes = 0;
  for (const auto& [key, count] : prof.tally) hyperplanes += count;
  const BigInt theta_n = theta(static_cast<unsigned>(p.ambient), q);
  if (hyperplanes != theta_n)
    throw Error(ErrorCode::IdentityViolation, "sum s_b = " + hyperplanes.str() + " != Θ_n = " + theta_n.str());
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t d = prof.dims[i];
    BigInt lhs = 0;
    for (const auto& [key, count] : prof.tally) lhs += BigInt(key[i]) * count;
    const BigInt rhs = BigInt(p.type.at(d)) * theta(static_cast<unsigned>(p.ambient - d), q);
    if (lhs != rhs)
      throw Error(ErrorCode::IdentityViolation, "sum b_d s_b = n_d Θ_{n-d} fails for d = " + std::to_string(d) + ": " +
                                                    lhs.str() + " != " + rhs.str());
  }
}

HyperplaneProfile hyperplane_profile(const SubspacePartition& p, int threads) {
  auto prof = hyperplane_profile_parallel(p, threads);
  check_profile_identities(p, prof);
  return prof;
}

// ---------------------------------------------------------------------------
// Heden's theorem

std::string_view heden_case_name(HedenCase c) {
  switch (c) {
    case HedenCase::I: return "i";
    case HedenCase::II: return "ii";
    case HedenCase::III: return "iii";
    case HedenCase::IV: return "iv";
  }
  return "?";
}

HedenResult heden_case(const BigInt& n_d1, unsigned d1, unsigned d2, std::uint64_t q) {
  if (!(d2 > d1 && d1 >= 1)) throw Error(ErrorCode::InvalidParams, "need d2 > d1 >= 1");
  const BigInt gap = big_pow(q, d2 - d1);
  const bool divides = n_d1 % gap == 0;
  const bool close = d2 < 2 * d1;
  HedenResult r{};
  if (!divides && close) {
    r.which = HedenCase::I;
    r.required = big_pow(q, d1) + 1;
  } else if (!divides) {
    r.which = HedenCase::II;
    r.required = 2 * gap + 1;
    const BigInt num = big_pow(q, d2) - 1, den = big_pow(q, d1) - 1;
    if (num % den == 0) r.exceptional = num / den;
  } else if (close) {
    r.which = HedenCase::III;
    r.required = big_pow(q, d2) - big_pow(q, d1) + gap;
  } else {
    r.which = HedenCase::IV;
    r.required = big_pow(q, d2);
  }
  r.satisfied = n_d1 >= r.required || (r.exceptional && n_d1 == *r.exceptional);
  return r;
}

// ---------------------------------------------------------------------------
// Descent certificates

BigInt default_descent_x(const bounds::SpreadParams& p) { return bounds::main_offset(p); }

DescentCertificate descent_certificate(std::uint64_t q, unsigned n, unsigned t, std::optional<BigInt> x_opt) {
  const auto p = bounds::SpreadParams::make(q, n, t);
  const BigInt x = x_opt ? *x_opt : default_descent_x(p);
  if (auto failed = bounds::lemma_main_violation(p, x))
    throw Error(ErrorCode::HypothesisViolated, *failed + " fails for q=" + std::to_string(q) + ", n=" +
                                                   std::to_string(n) + ", t=" + std::to_string(t) + ", x=" + x.str());
  DescentCertificate c;
  c.q = q;
  c.n = n;
  c.t = t;
  c.r = p.r;
  c.x = x;
  c.h = bounds::h_of(x, q, t);
  c.ell = bounds::ell(p);
  const BigInt qt = big_pow(q, t);
  const BigInt theta_r = theta(p.r, q);
  c.bound = c.ell * qt + x;
  c.n_t = c.bound + 1;
  c.n_1 = qt * theta_r - x * theta(t, q);
  c.n_1_split = qt * (theta_r - c.h) + delta(x, t, q);

  for (unsigned j = 0; j + 2 <= t; ++j) {
    DescentStep st;
    st.j = j;
    st.ambient = n - j;
    st.delta = delta(x, t - j, q);
    st.modulus = big_pow(q, t - j);
    st.c_cap = std::max(BigInt(theta_r - c.h - j), BigInt(0));
    if (j + 2 < t) {
      const BigInt next_mod = big_pow(q, t - j - 1);
      st.avg_bound = st.c_cap * next_mod + st.delta / q;
      st.next_delta = delta(x, t - j - 1, q);
      st.reduced = ((x + st.delta) / q) % next_mod;
      st.recurrence_holds = (x + st.delta) % q == 0 && *st.reduced == *st.next_delta;
    }
    c.steps.push_back(std::move(st));
  }

  DescentFinal& f = c.final;
  f.delta2 = delta(x, 2, q);
  f.q_squared = BigInt(q) * q;
  f.in_range = f.delta2 > 0 && f.delta2 < f.q_squared;
  f.divisible_by_q = f.delta2 % q == 0;
  f.c_cap = c.steps.back().c_cap;
  auto& s3 = f.case_s_ge_3;
  s3.s = 3;
  s3.theta_s = theta(3, q);
  s3.two_q_pow = 2 * big_pow(q, 2);
  s3.q_pow = big_pow(q, 3);
  s3.minimum = std::min({s3.theta_s, s3.two_q_pow, s3.q_pow});
  s3.exceeds_q_squared = s3.minimum > f.q_squared;
  const HedenResult hc = heden_case(f.delta2, 1, 2, q);
  f.case_s_eq_2.heden_case = std::string(heden_case_name(hc.which));
  f.case_s_eq_2.required = hc.required;
  f.case_s_eq_2.satisfied = hc.satisfied;
  f.contradiction = f.in_range && f.divisible_by_q && f.c_cap == 0 && s3.exceeds_q_squared &&
                    hc.which == HedenCase::IV && !hc.satisfied;
  return c;
}

json certificate_to_json(const DescentCertificate& c) {
  using io::big_to_json;
  json steps = json::array();
  for (const auto& s : c.steps) {
    json js{{"j", s.j},
            {"ambient", s.ambient},
            {"delta", big_to_json(s.delta)},
            {"modulus", big_to_json(s.modulus)},
            {"c_cap", big_to_json(s.c_cap)}};
    if (s.avg_bound) {
      js["avg_bound"] = big_to_json(*s.avg_bound);
      js["reduced"] = big_to_json(*s.reduced);
      js["next_delta"] = big_to_json(*s.next_delta);
      js["recurrence_holds"] = *s.recurrence_holds;
    }
    steps.push_back(std::move(js));
  }
  const auto& f = c.final;
  json fin{{"delta2", big_to_json(f.delta2)},
           {"q_squared", big_to_json(f.q_squared)},
           {"in_range", f.in_range},
           {"divisible_by_q", f.divisible_by_q},
           {"c_cap", big_to_json(f.c_cap)},
           {"case_s_ge_3",
            {{"s", f.case_s_ge_3.s},
             {"theta_s", big_to_json(f.case_s_ge_3.theta_s)},
             {"two_q_pow", big_to_json(f.case_s_ge_3.two_q_pow)},
             {"q_pow", big_to_json(f.case_s_ge_3.q_pow)},
             {"minimum", big_to_json(f.case_s_ge_3.minimum)},
             {"exceeds_q_squared", f.case_s_ge_3.exceeds_q_squared}}},
           {"case_s_eq_2",
            {{"heden_case", f.case_s_eq_2.heden_case},
             {"required", big_to_json(f.case_s_eq_2.required)},
             {"satisfied", f.case_s_eq_2.satisfied}}},
           {"contradiction", f.contradiction}};
  return json{{"kind", "descent_certificate"},
              {"q", c.q},
              {"n", c.n},
              {"t", c.t},
              {"r", c.r},
              {"x", big_to_json(c.x)},
              {"h", big_to_json(c.h)},
              {"ell", big_to_json(c.ell)},
              {"bound", big_to_json(c.bound)},
              {"n_t", big_to_json(c.n_t)},
              {"n_1", big_to_json(c.n_1)},
              {"n_1_split", big_to_json(c.n_1_split)},
              {"steps", std::move(steps)},
              {"final", std::move(fin)}};
}

namespace {

// Independent re-derivation of a certificate record from (q, n, t, x).
// Shares nothing with descent_certificate beyond theta and delta.
json rederive(std::uint64_t q, unsigned n, unsigned t, const BigInt& x) {
  using io::big_to_json;
  const unsigned r = n % t;
  const BigInt Q = q;
  const BigInt qt = big_pow(q, t);
  const BigInt h = (x + (q - 2)) / (q - 1);
  const BigInt ell = (big_pow(q, n - t) - big_pow(q, r)) / (qt - 1);
  const BigInt theta_r = theta(r, q);

  json out;
  out["kind"] = "descent_certificate";
  out["q"] = q;
  out["n"] = n;
  out["t"] = t;
  out["r"] = r;
  out["x"] = big_to_json(x);
  out["h"] = big_to_json(h);
  out["ell"] = big_to_json(ell);
  out["bound"] = big_to_json(ell * qt + x);
  out["n_t"] = big_to_json(ell * qt + 1 + x);
  out["n_1"] = big_to_json(qt * theta_r - x * theta(t, q));
  out["n_1_split"] = big_to_json(qt * (theta_r - h) + delta(x, t, q));

  json steps = json::array();
  BigInt last_cap;
  for (unsigned j = 0; j <= t - 2; ++j) {
    const BigInt d = delta(x, t - j, q);
    BigInt cap = theta_r - h - j;
    if (cap < 0) cap = 0;
    json s{{"j", j},
           {"ambient", n - j},
           {"delta", big_to_json(d)},
           {"modulus", big_to_json(big_pow(q, t - j))},
           {"c_cap", big_to_json(cap)}};
    if (j < t - 2) {
      const BigInt lower_mod = big_pow(q, t - j - 1);
      const BigInt nd = delta(x, t - j - 1, q);
      const BigInt red = ((x + d) / Q) % lower_mod;
      s["avg_bound"] = big_to_json(cap * lower_mod + d / Q);
      s["reduced"] = big_to_json(red);
      s["next_delta"] = big_to_json(nd);
      s["recurrence_holds"] = ((x + d) % Q == 0) && red == nd;
    }
    last_cap = cap;
    steps.push_back(std::move(s));
  }
  out["steps"] = std::move(steps);

  const BigInt d2 = delta(x, 2, q);
  const BigInt qq = Q * Q;
  const BigInt th3 = Q * Q + Q + 1, two = 2 * Q * Q, cube = Q * Q * Q;
  BigInt mn = th3;
  if (two < mn) mn = two;
  if (cube < mn) mn = cube;
  // q | δ_2 and d2 = 2 = 2 d1, so Heden case (iv) applies and demands q^2.
  const bool in_range = d2 > 0 && d2 < qq;
  const bool div = d2 % Q == 0;
  const bool iv_satisfied = d2 >= qq;
  json fin;
  fin["delta2"] = big_to_json(d2);
  fin["q_squared"] = big_to_json(qq);
  fin["in_range"] = in_range;
  fin["divisible_by_q"] = div;
  fin["c_cap"] = big_to_json(last_cap);
  fin["case_s_ge_3"] = {{"s", 3},
                        {"theta_s", big_to_json(th3)},
                        {"two_q_pow", big_to_json(two)},
                        {"q_pow", big_to_json(cube)},
                        {"minimum", big_to_json(mn)},
                        {"exceeds_q_squared", mn > qq}};
  fin["case_s_eq_2"] = {{"heden_case", div ? "iv" : "ii"}, {"required", big_to_json(div ? qq : 2 * Q + 1)},
                        {"satisfied", div ? iv_satisfied : d2 >= 2 * Q + 1 || d2 == Q + 1}};
  fin["contradiction"] = in_range && div && last_cap == 0 && mn > qq && !iv_satisfied;
  out["final"] = std::move(fin);
  return out;
}

std::string first_difference(const json& expected, const json& actual, const std::string& path) {
  const bool numbers = expected.is_number() && actual.is_number();
  if (!numbers && expected.type() != actual.type()) return path.empty() ? "<root>" : path;
  if (expected.is_object()) {
    for (auto it = expected.begin(); it != expected.end(); ++it) {
      const std::string sub = path.empty() ? it.key() : path + "." + it.key();
      if (!actual.contains(it.key())) return sub;
      auto d = first_difference(it.value(), actual.at(it.key()), sub);
      if (!d.empty()) return d;
    }
    for (auto it = actual.begin(); it != actual.end(); ++it)
      if (!expected.contains(it.key())) return path.empty() ? it.key() : path + "." + it.key();
    return {};
  }
  if (expected.is_array()) {
    for (std::size_t i = 0; i < std::min(expected.size(), actual.size()); ++i) {
      auto d = first_difference(expected[i], actual[i], path + "[" + std::to_string(i) + "]");
      if (!d.empty()) return d;
    }
    if (expected.size() != actual.size()) return path + "[" + std::to_string(std::min(expected.size(), actual.size())) + "]";
    return {};
  }
  return expected == actual ? std::string() : path;
}

CertificateCheck reject(std::string field, std::string detail) {
  return CertificateCheck{false, std::move(field), std::move(detail)};
}

}  // namespace

CertificateCheck check_certificate(const json& cert) {
  if (!cert.is_object()) return reject("<root>", "certificate must be a JSON object");
  for (const char* key : {"q", "n", "t"})
    if (!cert.contains(key) || !cert.at(key).is_number_unsigned())
      return reject(key, "missing or non-integer parameter");
  if (!cert.contains("x")) return reject("x", "missing parameter");
  BigInt x;
  try {
    x = io::big_from_json(cert.at("x"));
  } catch (const Error& e) {
    return reject("x", e.what());
  }
  const auto q = cert.at("q").get<std::uint64_t>();
  const auto n64 = cert.at("n").get<std::uint64_t>();
  const auto t64 = cert.at("t").get<std::uint64_t>();
  if (n64 > 4096 || t64 > 4096) return reject("n", "parameters out of range");
  const auto n = static_cast<unsigned>(n64), t = static_cast<unsigned>(t64);
  bounds::SpreadParams p;
  try {
    p = bounds::SpreadParams::make(q, n, t);
  } catch (const Error& e) {
    return reject("q", e.what());
  }
  if (auto failed = bounds::lemma_main_violation(p, x)) return reject("x", "hypothesis fails: " + *failed);

  const json expected = rederive(q, n, t, x);
  const std::string diff = first_difference(expected, cert, "");
  if (!diff.empty()) return reject(diff, "field differs from its re-derivation");
  if (!expected.at("final").at("contradiction").get<bool>())
    return reject("final.contradiction", "closing arithmetic does not yield a contradiction");
  for (const auto& s : expected.at("steps"))
    if (s.contains("recurrence_holds") && !s.at("recurrence_holds").get<bool>())
      return reject("steps", "residue recurrence fails");
  return CertificateCheck{true, {}, {}};
}

CertificateCheck check_certificate(const DescentCertificate& cert) {
  return check_certificate(certificate_to_json(cert));
}

}  // namespace spreadlab::partition
