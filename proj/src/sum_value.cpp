#include "charsumlab/sum_value.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "charsumlab/error.hpp"

namespace charsumlab {

namespace {

constexpr long double kTwoPiL = 6.283185307179586476925286766559005768L;

std::vector<i64> poly_divide_exact(std::vector<i64> num, const std::vector<i64>& den) {
  // den is monic; returns the quotient, asserting zero remainder.
  const size_t dn = den.size() - 1;
  if (num.size() <= dn) return {0};
  std::vector<i64> quot(num.size() - dn, 0);
  for (size_t k = num.size(); k-- > dn;) {
    const i64 c = num[k];
    quot[k - dn] = c;
    if (c == 0) continue;
    for (size_t j = 0; j <= dn; ++j) num[k - dn + j] -= c * den[j];
  }
  return quot;
}

}  // namespace

std::vector<i64> cyclotomic_polynomial(u64 n) {
  static std::mutex mutex;
  static std::map<u64, std::vector<i64>> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(n); it != cache.end()) return it->second;
  }
  std::vector<i64> poly(n + 1, 0);
  poly[0] = -1;
  poly[n] = 1;
  for (u64 d = 1; d < n; ++d)
    if (n % d == 0) poly = poly_divide_exact(poly, cyclotomic_polynomial(d));
  std::lock_guard lock(mutex);
  cache.emplace(n, poly);
  return poly;
}

Cyclotomic::Cyclotomic(u64 q) : q_(q), coeffs_(q, 0) {
  if (q == 0) throw Error(ErrorCode::InvalidArgument, "cyclotomic order must be positive");
}

Cyclotomic Cyclotomic::root(u64 q, i64 k) {
  Cyclotomic c(q);
  c.add_root(k);
  return c;
}

Cyclotomic Cyclotomic::integer(u64 q, i64 value) {
  Cyclotomic c(q);
  c.coeffs_[0] = value;
  return c;
}

void Cyclotomic::add_root(i64 k, i64 multiplicity) { coeffs_[reduce(k, q_)] += multiplicity; }

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& other) {
  if (other.q_ != q_) throw Error(ErrorCode::InvalidArgument, "cyclotomic orders differ");
  for (u64 k = 0; k < q_; ++k) coeffs_[k] += other.coeffs_[k];
  return *this;
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& other) {
  if (other.q_ != q_) throw Error(ErrorCode::InvalidArgument, "cyclotomic orders differ");
  for (u64 k = 0; k < q_; ++k) coeffs_[k] -= other.coeffs_[k];
  return *this;
}

Cyclotomic Cyclotomic::scaled(i64 factor) const {
  Cyclotomic c = *this;
  for (auto& x : c.coeffs_) x *= factor;
  return c;
}

Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.q_ != b.q_) throw Error(ErrorCode::InvalidArgument, "cyclotomic orders differ");
  Cyclotomic out(a.q_);
  for (u64 i = 0; i < a.q_; ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (u64 j = 0; j < a.q_; ++j) out.coeffs_[(i + j) % a.q_] += a.coeffs_[i] * b.coeffs_[j];
  }
  return out;
}

std::vector<i64> Cyclotomic::canonical() const {
  const auto phi = cyclotomic_polynomial(q_);
  const size_t deg = phi.size() - 1;
  std::vector<i64> r = coeffs_;
  for (size_t k = r.size(); k-- > deg;) {
    const i64 c = r[k];
    if (c == 0) continue;
    for (size_t j = 0; j <= deg; ++j) r[k - deg + j] -= c * phi[j];
  }
  r.resize(deg);
  return r;
}

bool Cyclotomic::equals(const Cyclotomic& other) const {
  return other.q_ == q_ && (*this - other).is_zero();
}

bool Cyclotomic::is_zero() const {
  for (i64 c : canonical())
    if (c != 0) return false;
  return true;
}

std::optional<i64> Cyclotomic::as_integer() const {
  const auto r = canonical();
  for (size_t k = 1; k < r.size(); ++k)
    if (r[k] != 0) return std::nullopt;
  return r.empty() ? 0 : r[0];
}

cplx Cyclotomic::to_complex() const {
  long double re = 0, im = 0;
  for (u64 k = 0; k < q_; ++k) {
    if (coeffs_[k] == 0) continue;
    const long double angle = kTwoPiL * static_cast<long double>(k) / static_cast<long double>(q_);
    re += static_cast<long double>(coeffs_[k]) * cosl(angle);
    im += static_cast<long double>(coeffs_[k]) * sinl(angle);
  }
  return {static_cast<double>(re), static_cast<double>(im)};
}

SumValue SumValue::from_exact(const Cyclotomic& value) {
  double weight = 0;
  for (i64 c : value.coefficients()) weight += std::abs(static_cast<double>(c));
  SumValue out(value.to_complex(), kUnitTermErr * weight);
  out.exact = value;
  return out;
}

bool SumValue::agrees_with(const SumValue& other, double slack) const {
  return std::abs(value() - other.value()) <= err + other.err + slack;
}

bool SumValue::consistent() const {
  if (!exact) return true;
  return std::abs(value() - exact->to_complex()) <= err + 2 * kEps * (1 + magnitude());
}

SumValue operator+(const SumValue& a, const SumValue& b) {
  const cplx v = a.value() + b.value();
  SumValue out(v, a.err + b.err + kEps * std::abs(v));
  if (a.exact && b.exact && a.exact->order() == b.exact->order()) out.exact = *a.exact + *b.exact;
  return out;
}

SumValue operator-(const SumValue& a, const SumValue& b) {
  const cplx v = a.value() - b.value();
  SumValue out(v, a.err + b.err + kEps * std::abs(v));
  if (a.exact && b.exact && a.exact->order() == b.exact->order()) out.exact = *a.exact - *b.exact;
  return out;
}

SumValue operator*(const SumValue& a, const SumValue& b) {
  const double ma = a.magnitude(), mb = b.magnitude();
  const cplx v = a.value() * b.value();
  SumValue out(v, ma * b.err + mb * a.err + a.err * b.err + 2 * kEps * ma * mb);
  if (a.exact && b.exact && a.exact->order() == b.exact->order()) out.exact = *a.exact * *b.exact;
  return out;
}

SumValue scale(const SumValue& a, double factor) {
  const cplx v = a.value() * factor;
  SumValue out(v, a.err * std::abs(factor) + kEps * std::abs(v));
  if (a.exact && factor == std::trunc(factor) && std::abs(factor) < 9.0e15)
    out.exact = a.exact->scaled(static_cast<i64>(factor));
  return out;
}

SumValue conj(const SumValue& a) {
  SumValue out(std::conj(a.value()), a.err);
  if (a.exact) {
    const u64 q = a.exact->order();
    Cyclotomic c(q);
    for (u64 k = 0; k < q; ++k) c.add_root(-static_cast<i64>(k), a.exact->coefficients()[k]);
    out.exact = c;
  }
  return out;
}

SumValue SumAccumulator::value() const {
  const cplx v = sum_.value();
  return SumValue(v, err_ + 2 * kEps * std::abs(v));
}

RootTable::RootTable(u64 n) : roots_(n) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "root table order must be positive");
  for (u64 k = 0; k < n; ++k) {
    const long double angle = kTwoPiL * static_cast<long double>(k) / static_cast<long double>(n);
    roots_[k] = cplx(static_cast<double>(cosl(angle)), static_cast<double>(sinl(angle)));
  }
}

SumValue additive_character(i64 x, u64 q, ValueMode mode) {
  if (q == 0) throw Error(ErrorCode::InvalidArgument, "modulus must be positive");
  if (mode == ValueMode::Exact) {
    SumValue out = SumValue::from_exact(Cyclotomic::root(q, x));
    out.err = kUnitTermErr;
    return out;
  }
  const long double angle = kTwoPiL * static_cast<long double>(reduce(x, q)) / static_cast<long double>(q);
  return SumValue(cplx(static_cast<double>(cosl(angle)), static_cast<double>(sinl(angle))), kUnitTermErr);
}

SumValue FloatingBackend::Sum::finish() const {
  const cplx v = sum_.value();
  return SumValue(v, static_cast<double>(terms_) * kUnitTermErr + 2 * kEps * std::abs(v));
}

}  // namespace charsumlab
