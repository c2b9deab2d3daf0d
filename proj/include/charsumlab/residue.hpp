#pragma once

// Exact modular arithmetic on word-sized moduli: factorization, inverses,
// CRT splitting, prime enumeration.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace charsumlab {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

inline u64 mul_mod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 pow_mod(u64 base, u64 exponent, u64 m);

/// Canonical representative of x in [0, q).
inline u64 reduce(i64 x, u64 q) {
  const i64 r = x % static_cast<i64>(q);
  return static_cast<u64>(r < 0 ? r + static_cast<i64>(q) : r);
}

struct PrimePower {
  u64 prime;
  unsigned exponent;
};

/// A positive modulus together with its factorization.
class Modulus {
 public:
  explicit Modulus(u64 q);

  u64 value() const { return q_; }
  const std::vector<PrimePower>& factorization() const { return factors_; }
  std::vector<u64> primes() const;

  bool is_prime() const { return factors_.size() == 1 && factors_[0].exponent == 1; }
  bool is_squarefree() const;
  u64 totient() const;

  void require_prime() const;
  void require_squarefree() const;

  friend bool operator==(const Modulus& a, const Modulus& b) { return a.q_ == b.q_; }

 private:
  u64 q_;
  std::vector<PrimePower> factors_;
};

u64 mod_inverse(i64 a, u64 q);
u64 mod_inverse(i64 a, const Modulus& q);

/// Residues (a mod q1, a mod q2); recombine with crt_combine.
std::pair<u64, u64> crt_split(i64 a, const Modulus& q1, const Modulus& q2);
u64 crt_combine(u64 a1, u64 a2, const Modulus& q1, const Modulus& q2);

struct Congruence {
  u64 residue;
  u64 modulus;
};

inline constexpr u64 kPrimeRangeCap = 100'000'000;

/// Primes in [lo, hi], optionally restricted to p = residue (mod modulus).
std::vector<u64> primes_in(u64 lo, u64 hi, std::optional<Congruence> congruence = std::nullopt);

bool is_prime(u64 n);
int mobius(u64 n);
u64 totient(u64 n);

/// inv[x] = x^{-1} mod p for 1 <= x < p, inv[0] = 0.
std::vector<u32> inverse_table(u64 p);

}  // namespace charsumlab
