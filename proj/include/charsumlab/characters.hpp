#pragma once

// Dirichlet characters modulo odd squarefree q, built as CRT products of
// characters modulo the prime factors. A character is the exponent vector
// (e_1, ..., e_k) against the smallest primitive root g_j of each prime p_j:
//
//   chi(n) = prod_j e(e_j * ind_{g_j}(n mod p_j) / (p_j - 1)).

#include <complex>
#include <memory>
#include <optional>
#include <vector>

#include "charsumlab/residue.hpp"
#include "charsumlab/sum_value.hpp"

namespace charsumlab {

inline constexpr u64 kMaxCharacterModulus = 10'000;

/// Smallest primitive root modulo the prime p.
u64 primitive_root(u64 p);

/// Discrete-log data for one prime factor.
struct CharacterComponent {
  u64 prime = 0;
  u64 generator = 0;
  std::shared_ptr<const std::vector<u32>> dlog;  // dlog[n] for 1 <= n < p
  std::shared_ptr<const std::vector<u32>> power;  // power[k] = g^k for 0 <= k < p - 1

  static CharacterComponent build(u64 p);
};

class CharacterGroup {
 public:
  static std::shared_ptr<const CharacterGroup> create(const Modulus& q);
  static std::shared_ptr<const CharacterGroup> from_components(std::vector<CharacterComponent> components);

  u64 modulus() const { return q_; }
  const std::vector<CharacterComponent>& components() const { return components_; }
  u64 size() const;
  /// L = lcm(p_j - 1); every character value is e(k / L).
  u64 phase_denominator() const { return denom_; }
  const RootTable& roots() const { return roots_; }

 private:
  CharacterGroup(std::vector<CharacterComponent> components);

  u64 q_ = 1;
  std::vector<CharacterComponent> components_;
  u64 denom_ = 1;
  RootTable roots_;
};

class DirichletCharacter {
 public:
  DirichletCharacter(std::shared_ptr<const CharacterGroup> group, std::vector<u64> exponents);

  u64 modulus() const { return group_->modulus(); }
  const std::vector<u64>& exponents() const { return exponents_; }
  const CharacterGroup& group() const { return *group_; }
  const std::shared_ptr<const CharacterGroup>& group_ptr() const { return group_; }

  /// chi(n) = e(k / L); nullopt when gcd(n, q) > 1.
  std::optional<u64> phase(i64 n) const;
  cplx operator()(i64 n) const;
  SumValue evaluate(i64 n) const;

  bool is_primitive() const;
  bool is_trivial() const;
  /// chi(-1) in {+1, -1}.
  int parity() const;
  bool is_even() const { return parity() == 1; }

  DirichletCharacter conjugate() const;
  /// Restriction to the j-th prime factor.
  DirichletCharacter component(std::size_t j) const;
  /// Position in enumerate_characters(q, All) order.
  u64 index() const;

  /// chi1 * chi2 for coprime moduli (a character modulo q1 q2).
  static DirichletCharacter product(const DirichletCharacter& a, const DirichletCharacter& b);

  friend bool operator==(const DirichletCharacter& a, const DirichletCharacter& b) {
    return a.modulus() == b.modulus() && a.exponents_ == b.exponents_;
  }

 private:
  std::shared_ptr<const CharacterGroup> group_;
  std::vector<u64> exponents_;
};

enum class CharacterFilter { All, Primitive, PrimitiveEven };

/// One representative per character, ordered by index().
std::vector<DirichletCharacter> enumerate_characters(const Modulus& q, CharacterFilter filter);
std::vector<DirichletCharacter> enumerate_characters(std::shared_ptr<const CharacterGroup> group,
                                                     CharacterFilter filter);

/// F[chi.index()] = sum over units a of chi(a) f[a], for every chi mod q at
/// once. f has length q (entries at non-units are ignored). Separable DFT over
/// the discrete-log axes, cost q * sum_j (p_j - 1).
std::vector<cplx> character_transform(const CharacterGroup& group, const std::vector<cplx>& f);

/// Closed form of sum over primitive chi mod prime q of chi(n) conj(chi(ell)):
/// phi(q) [n == ell (mod q)] - 1.
i64 primitive_sum_identity(const Modulus& q, i64 n, i64 ell);

}  // namespace charsumlab
