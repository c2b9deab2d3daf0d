#include <cmath>
#include <numeric>

#include "charsumlab/error.hpp"
#include "charsumlab/residue.hpp"
#include "charsumlab/sum_value.hpp"
#include "doctest.h"

using namespace charsumlab;

namespace {

// Plain Eratosthenes up to n, the oracle for the segmented sieve.
std::vector<u64> oracle_primes(u64 n) {
  std::vector<bool> comp(n + 1, false);
  std::vector<u64> out;
  for (u64 i = 2; i <= n; ++i) {
    if (comp[i]) continue;
    out.push_back(i);
    for (u64 j = i * i; j <= n; j += i) comp[j] = true;
  }
  return out;
}

}  // namespace

TEST_CASE("modulus factorization") {
  const Modulus m(2 * 2 * 3 * 7 * 7 * 13);
  u64 prod = 1;
  for (const auto& pp : m.factorization())
    for (unsigned k = 0; k < pp.exponent; ++k) prod *= pp.prime;
  CHECK(prod == m.value());
  CHECK_FALSE(m.is_squarefree());
  CHECK(Modulus(65).is_squarefree());
  CHECK(Modulus(13).is_prime());
  CHECK(Modulus(65).totient() == 48);
  CHECK_THROWS_AS(Modulus(15).require_prime(), Error);
  CHECK_THROWS_AS(Modulus(18).require_squarefree(), Error);
}

TEST_CASE("mod_inverse examples and exhaustive check") {
  CHECK(mod_inverse(1, 7) == 1);
  CHECK(mod_inverse(3, 7) == 5);
  for (u64 p : oracle_primes(1000)) {
    for (u64 a = 1; a < p; ++a) {
      const u64 x = mod_inverse(static_cast<i64>(a), p);
      REQUIRE(a * x % p == 1);
      REQUIRE(mod_inverse(static_cast<i64>(x), p) == a);
    }
  }
  CHECK(mod_inverse(-3, 7) == 2);
  try {
    mod_inverse(6, 9);
    FAIL("expected NonInvertible");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonInvertible);
  }
}

TEST_CASE("inverse table matches mod_inverse") {
  for (u64 p : {2ull, 3ull, 97ull, 997ull}) {
    const auto inv = inverse_table(p);
    for (u64 a = 1; a < p; ++a) REQUIRE(inv[a] == mod_inverse(static_cast<i64>(a), p));
  }
}

TEST_CASE("crt split and combine") {
  const Modulus q1(3), q2(5);
  CHECK(crt_split(8, q1, q2) == std::pair<u64, u64>(2, 3));
  CHECK(crt_split(0, q1, q2) == std::pair<u64, u64>(0, 0));
  for (u64 a = 0; a < 65; ++a) {
    auto [a1, a2] = crt_split(static_cast<i64>(a), Modulus(5), Modulus(13));
    REQUIRE(crt_combine(a1, a2, Modulus(5), Modulus(13)) == a);
  }
  for (u64 m1 = 1; m1 <= 100; ++m1) {
    for (u64 m2 = 1; m2 <= 100; m2 += 7) {
      if (std::gcd(m1, m2) != 1) continue;
      for (u64 a = 0; a < m1 * m2; a += 1 + m1 * m2 / 37) {
        auto [a1, a2] = crt_split(static_cast<i64>(a), Modulus(m1), Modulus(m2));
        REQUIRE(crt_combine(a1, a2, Modulus(m1), Modulus(m2)) == a);
      }
    }
  }
  CHECK_THROWS_AS(crt_split(1, Modulus(6), Modulus(4)), Error);
}

TEST_CASE("primes_in") {
  CHECK(primes_in(10, 30, Congruence{1, 4}) == std::vector<u64>{13, 17, 29});
  CHECK(primes_in(2, 2) == std::vector<u64>{2});
  const auto oracle = oracle_primes(1'000'000);
  CHECK(primes_in(2, 1'000'000) == oracle);
  std::vector<u64> lo_part;
  for (u64 p : oracle)
    if (p >= 500'000) lo_part.push_back(p);
  CHECK(primes_in(500'000, 1'000'000) == lo_part);
  CHECK_THROWS_AS(primes_in(2, 100'000'001), Error);
  CHECK_THROWS_AS(primes_in(1, 10), Error);
}

TEST_CASE("mobius and totient") {
  CHECK(mobius(1) == 1);
  CHECK(mobius(30) == -1);
  CHECK(mobius(12) == 0);
  for (u64 n = 1; n <= 200; ++n) {
    u64 phi = 0;
    for (u64 a = 1; a <= n; ++a) phi += std::gcd(a, n) == 1;
    REQUIRE(totient(n) == phi);
  }
}

TEST_CASE("additive character") {
  CHECK(additive_character(0, 7).value() == cplx(1, 0));
  const auto half = additive_character(5, 10);
  CHECK(std::abs(half.value() - cplx(-1, 0)) <= half.err);
  for (u64 q : {1ull, 2ull, 7ull, 30ull, 60ull}) {
    SumAccumulator acc;
    for (u64 x = 0; x < q; ++x) acc.add(additive_character(static_cast<i64>(x), q));
    const auto s = acc.value();
    const double expect = q == 1 ? 1.0 : 0.0;
    CHECK(std::abs(s.value() - expect) <= s.err);
  }
  const auto ex = additive_character(3, 12, ValueMode::Exact);
  REQUIRE(ex.exact);
  CHECK(ex.consistent());
}

TEST_CASE("cyclotomic arithmetic") {
  // 1 + z + ... + z^{q-1} = 0 for q > 1
  Cyclotomic all(12);
  for (int k = 0; k < 12; ++k) all.add_root(k);
  CHECK(all.is_zero());
  // z^a * z^b = z^{a+b}
  CHECK((Cyclotomic::root(9, 4) * Cyclotomic::root(9, 7)).equals(Cyclotomic::root(9, 2)));
  // (z + z^{-1})^2 for q = 8 is 2 + z^2 + z^6; z^2 + z^6 = 0 since z^4 = -1
  const auto s = Cyclotomic::root(8, 1) + Cyclotomic::root(8, 7);
  CHECK((s * s).as_integer() == std::optional<i64>(2));
  CHECK(cyclotomic_polynomial(12) == std::vector<i64>{1, 0, -1, 0, 1});
}

TEST_CASE("exact and floating backends agree on sums of up to q^3 terms") {
  for (u64 q = 2; q <= 60; q += (q < 20 ? 1 : 7)) {
    FloatingBackend fb(q);
    ExactBackend eb(q);
    auto f = fb.sum();
    auto e = eb.sum();
    // terms x^3 + 2x y + z over a q^3 box, capped for speed at larger q
    const u64 box = q <= 20 ? q : 20;
    for (u64 x = 0; x < box; ++x)
      for (u64 y = 0; y < box; ++y)
        for (u64 z = 0; z < q; ++z) {
          const u64 t = (x * x % q * x + 2 * x * y + z) % q;
          f.add(t);
          e.add(t);
        }
    const auto fv = f.finish();
    const auto ev = e.finish();
    REQUIRE(ev.consistent());
    REQUIRE(std::abs(fv.value() - ev.exact->to_complex()) <= fv.err + ev.err);
  }
}

TEST_CASE("sum value error propagation") {
  const SumValue a(cplx(3, 4), 1e-12), b(cplx(1, -2), 2e-12);
  const auto p = a * b;
  CHECK(p.err >= 5 * 2e-12 + std::sqrt(5.0) * 1e-12);
  CHECK((a + b).err >= 3e-12);
  CHECK(conj(a).value() == cplx(3, -4));
}
