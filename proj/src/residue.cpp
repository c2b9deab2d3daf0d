#include "charsumlab/residue.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "charsumlab/error.hpp"

namespace charsumlab {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NonInvertible: return "NonInvertible";
    case ErrorCode::NotCoprime: return "NotCoprime";
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::NotPrimitive: return "NotPrimitive";
    case ErrorCode::RangeTooLarge: return "RangeTooLarge";
    case ErrorCode::UnsupportedModulus: return "UnsupportedModulus";
    case ErrorCode::ModulusTooLarge: return "ModulusTooLarge";
    case ErrorCode::CoefficientVanishes: return "CoefficientVanishes";
    case ErrorCode::PoleProximity: return "PoleProximity";
    case ErrorCode::PoleAtOne: return "PoleAtOne";
    case ErrorCode::QuadratureNotConverged: return "QuadratureNotConverged";
    case ErrorCode::TruncationInsufficient: return "TruncationInsufficient";
    case ErrorCode::EmptyFamily: return "EmptyFamily";
    case ErrorCode::OverlappingBoxes: return "OverlappingBoxes";
  }
  return "Unknown";
}

u64 pow_mod(u64 base, u64 exponent, u64 m) {
  if (m == 1) return 0;
  u64 result = 1;
  base %= m;
  while (exponent > 0) {
    if (exponent & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exponent >>= 1;
  }
  return result;
}

Modulus::Modulus(u64 q) : q_(q) {
  if (q == 0) throw Error(ErrorCode::InvalidArgument, "modulus must be positive");
  u64 n = q;
  for (u64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p != 0) continue;
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    factors_.push_back({p, e});
  }
  if (n > 1) factors_.push_back({n, 1});
}

std::vector<u64> Modulus::primes() const {
  std::vector<u64> out;
  out.reserve(factors_.size());
  for (const auto& f : factors_) out.push_back(f.prime);
  return out;
}

bool Modulus::is_squarefree() const {
  return std::all_of(factors_.begin(), factors_.end(), [](const PrimePower& f) { return f.exponent == 1; });
}

u64 Modulus::totient() const {
  u64 phi = 1;
  for (const auto& f : factors_) {
    phi *= f.prime - 1;
    for (unsigned k = 1; k < f.exponent; ++k) phi *= f.prime;
  }
  return phi;
}

void Modulus::require_prime() const {
  if (!is_prime()) throw Error(ErrorCode::NotPrime, "modulus " + std::to_string(q_) + " is not prime");
}

void Modulus::require_squarefree() const {
  if (!is_squarefree())
    throw Error(ErrorCode::UnsupportedModulus, "modulus " + std::to_string(q_) + " is not squarefree");
}

u64 mod_inverse(i64 a, u64 q) {
  if (q == 1) return 0;
  i64 r0 = static_cast<i64>(q), r1 = static_cast<i64>(reduce(a, q));
  i64 t0 = 0, t1 = 1;
  while (r1 != 0) {
    const i64 quot = r0 / r1;
    r0 -= quot * r1;
    std::swap(r0, r1);
    t0 -= quot * t1;
    std::swap(t0, t1);
  }
  if (r0 != 1)
    throw Error(ErrorCode::NonInvertible,
                std::to_string(a) + " is not invertible modulo " + std::to_string(q));
  return reduce(t0, q);
}

u64 mod_inverse(i64 a, const Modulus& q) { return mod_inverse(a, q.value()); }

std::pair<u64, u64> crt_split(i64 a, const Modulus& q1, const Modulus& q2) {
  if (std::gcd(q1.value(), q2.value()) != 1)
    throw Error(ErrorCode::NotCoprime, "CRT moduli must be coprime");
  return {reduce(a, q1.value()), reduce(a, q2.value())};
}

u64 crt_combine(u64 a1, u64 a2, const Modulus& q1, const Modulus& q2) {
  if (std::gcd(q1.value(), q2.value()) != 1)
    throw Error(ErrorCode::NotCoprime, "CRT moduli must be coprime");
  const u64 m1 = q1.value(), m2 = q2.value(), q = m1 * m2;
  // a = a1 * q2 * (q2^{-1} mod q1) + a2 * q1 * (q1^{-1} mod q2)
  const u64 e1 = mul_mod(m2, mod_inverse(static_cast<i64>(m2), m1), q);
  const u64 e2 = mul_mod(m1, mod_inverse(static_cast<i64>(m1), m2), q);
  return (mul_mod(a1 % m1, e1, q) + mul_mod(a2 % m2, e2, q)) % q;
}

std::vector<u64> primes_in(u64 lo, u64 hi, std::optional<Congruence> congruence) {
  if (hi > kPrimeRangeCap)
    throw Error(ErrorCode::RangeTooLarge, "prime range upper bound exceeds 1e8");
  if (lo < 2 || lo > hi) throw Error(ErrorCode::InvalidArgument, "require 2 <= lo <= hi");
  if (congruence && congruence->modulus == 0)
    throw Error(ErrorCode::InvalidArgument, "congruence modulus must be positive");

  const u64 root = static_cast<u64>(std::sqrt(static_cast<double>(hi))) + 1;
  std::vector<char> small(root + 1, 1);
  std::vector<u64> base;
  for (u64 i = 2; i <= root; ++i) {
    if (!small[i]) continue;
    base.push_back(i);
    for (u64 j = i * i; j <= root; j += i) small[j] = 0;
  }

  std::vector<u64> out;
  constexpr u64 kSegment = 1 << 18;
  std::vector<char> seg;
  for (u64 start = lo; start <= hi; start += kSegment) {
    const u64 stop = std::min(hi, start + kSegment - 1);
    seg.assign(stop - start + 1, 1);
    for (u64 p : base) {
      if (p * p > stop) break;
      u64 first = std::max(p * p, (start + p - 1) / p * p);
      for (u64 j = first; j <= stop; j += p) seg[j - start] = 0;
    }
    for (u64 n = start; n <= stop; ++n) {
      if (!seg[n - start]) continue;
      if (congruence && n % congruence->modulus != congruence->residue % congruence->modulus) continue;
      out.push_back(n);
    }
    if (stop == hi) break;
  }
  return out;
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p = 2; p * p <= n; ++p)
    if (n % p == 0) return false;
  return true;
}

int mobius(u64 n) {
  const Modulus m(n);
  if (!m.is_squarefree()) return 0;
  return m.factorization().size() % 2 == 0 ? 1 : -1;
}

u64 totient(u64 n) { return Modulus(n).totient(); }

std::vector<u32> inverse_table(u64 p) {
  std::vector<u32> inv(p, 0);
  if (p < 2) return inv;
  inv[1] = 1;
  // inv[x] = -(p / x) * inv[p mod x] mod p
  for (u64 x = 2; x < p; ++x) inv[x] = static_cast<u32>((p - mul_mod(p / x, inv[p % x], p)) % p);
  return inv;
}

}  // namespace charsumlab
