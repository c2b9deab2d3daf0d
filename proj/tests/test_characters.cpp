#include <cmath>
#include <numeric>

#include "charsumlab/characters.hpp"
#include "charsumlab/error.hpp"
#include "doctest.h"

using namespace charsumlab;

namespace {

bool odd_squarefree(u64 q) { return q % 2 == 1 && Modulus(q).is_squarefree(); }

// chi is induced from modulus d | q (d < q) iff chi(a) = 1 for every unit a = 1 mod d.
bool primitive_by_induction_search(const DirichletCharacter& chi) {
  const u64 q = chi.modulus();
  for (u64 d = 1; d < q; ++d) {
    if (q % d != 0) continue;
    bool induced = true;
    for (u64 a = 1; a < q && induced; a += d)
      if (std::gcd(a, q) == 1 && std::abs(chi(static_cast<i64>(a)) - cplx(1, 0)) > 1e-9) induced = false;
    if (induced) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("primitive roots are smallest generators") {
  for (u64 p : primes_in(3, 500)) {
    const u64 g = primitive_root(p);
    u64 x = 1, order = 0;
    do {
      x = x * g % p;
      ++order;
    } while (x != 1);
    REQUIRE(order == p - 1);
    for (u64 h = 2; h < g; ++h) {
      u64 y = 1, o = 0;
      do {
        y = y * h % p;
        ++o;
      } while (y != 1);
      REQUIRE(o < p - 1);
    }
  }
}

TEST_CASE("enumeration counts") {
  CHECK(enumerate_characters(Modulus(5), CharacterFilter::All).size() == 4);
  CHECK(enumerate_characters(Modulus(5), CharacterFilter::Primitive).size() == 3);
  CHECK(enumerate_characters(Modulus(5), CharacterFilter::PrimitiveEven).size() == 1);
  CHECK(enumerate_characters(Modulus(3), CharacterFilter::All).size() == 2);
  const auto prim3 = enumerate_characters(Modulus(3), CharacterFilter::Primitive);
  REQUIRE(prim3.size() == 1);
  CHECK(prim3[0].parity() == -1);
  CHECK(enumerate_characters(Modulus(1), CharacterFilter::All).size() == 1);

  for (u64 q = 3; q <= 300; q += 2) {
    if (!odd_squarefree(q)) continue;
    const auto all = enumerate_characters(Modulus(q), CharacterFilter::All);
    REQUIRE(all.size() == totient(q));
    u64 expect_prim = 1;
    for (u64 p : Modulus(q).primes()) expect_prim *= p - 2;
    u64 prim = 0, prim_even = 0;
    for (const auto& chi : all) {
      const bool is_prim = chi.is_primitive();
      if (q <= 120) REQUIRE(is_prim == primitive_by_induction_search(chi));
      if (!is_prim) continue;
      ++prim;
      // parity by direct evaluation at -1
      const cplx v = chi(-1);
      REQUIRE(std::abs(std::abs(v.real()) - 1) < 1e-12);
      if (v.real() > 0) ++prim_even;
      REQUIRE((v.real() > 0) == chi.is_even());
    }
    REQUIRE(prim == expect_prim);
    REQUIRE(enumerate_characters(Modulus(q), CharacterFilter::Primitive).size() == prim);
    REQUIRE(enumerate_characters(Modulus(q), CharacterFilter::PrimitiveEven).size() == prim_even);
  }
}

TEST_CASE("unsupported moduli rejected") {
  CHECK_THROWS_AS(enumerate_characters(Modulus(4), CharacterFilter::All), Error);
  CHECK_THROWS_AS(enumerate_characters(Modulus(9), CharacterFilter::All), Error);
  CHECK_THROWS_AS(enumerate_characters(Modulus(10'007), CharacterFilter::All), Error);
}

TEST_CASE("evaluation: values, zeros and multiplicativity") {
  for (u64 q = 3; q <= 50; q += 2) {
    if (!odd_squarefree(q)) continue;
    for (const auto& chi : enumerate_characters(Modulus(q), CharacterFilter::All)) {
      REQUIRE(std::abs(chi(1) - cplx(1, 0)) < 1e-15);
      for (i64 m = 0; m < static_cast<i64>(q); ++m) {
        const bool unit = std::gcd(static_cast<u64>(m), q) == 1;
        REQUIRE((std::abs(chi(m)) > 0.5) == unit);
        REQUIRE(std::abs(chi(m) - chi(m + 3 * static_cast<i64>(q))) < 1e-15);
        for (i64 n = 0; n < static_cast<i64>(q); ++n)
          REQUIRE(std::abs(chi(m * n) - chi(m) * chi(n)) < 1e-12);
      }
    }
  }
}

TEST_CASE("conjugate negates exponents and conjugates values") {
  for (const auto& chi : enumerate_characters(Modulus(3 * 5 * 7), CharacterFilter::All)) {
    const auto bar = chi.conjugate();
    const auto& comps = chi.group().components();
    for (size_t j = 0; j < comps.size(); ++j)
      REQUIRE((chi.exponents()[j] + bar.exponents()[j]) % (comps[j].prime - 1) == 0);
    for (i64 n = -20; n < 120; ++n) REQUIRE(std::abs(bar(n) - std::conj(chi(n))) < 1e-12);
  }
}

TEST_CASE("product and component agree with CRT splitting") {
  const auto c5 = enumerate_characters(Modulus(5), CharacterFilter::All);
  const auto c13 = enumerate_characters(Modulus(13), CharacterFilter::All);
  for (const auto& a : c5)
    for (const auto& b : c13) {
      const auto ab = DirichletCharacter::product(a, b);
      REQUIRE(ab.modulus() == 65);
      REQUIRE(ab.component(0) == a);
      REQUIRE(ab.component(1) == b);
      REQUIRE(ab.is_primitive() == (a.is_primitive() && b.is_primitive()));
      for (i64 n = 0; n < 65; ++n) REQUIRE(std::abs(ab(n) - a(n) * b(n)) < 1e-12);
    }
}

TEST_CASE("orthogonality") {
  for (u64 q = 3; q <= 200; q += 2) {
    if (!odd_squarefree(q)) continue;
    const auto chars = enumerate_characters(Modulus(q), CharacterFilter::All);
    const u64 step = q <= 60 ? 1 : 7;
    for (u64 n = 1; n < q; n += step) {
      if (std::gcd(n, q) != 1) continue;
      for (u64 l = 1; l < q; l += step) {
        if (std::gcd(l, q) != 1) continue;
        cplx s = 0;
        for (const auto& chi : chars) s += chi(static_cast<i64>(n)) * std::conj(chi(static_cast<i64>(l)));
        const double expect = n == l ? static_cast<double>(totient(q)) : 0.0;
        REQUIRE(std::abs(s - expect) < 1e-9 * q);
      }
    }
  }
}

TEST_CASE("primitive sum identity") {
  CHECK(primitive_sum_identity(Modulus(5), 2, 2) == 3);
  CHECK(primitive_sum_identity(Modulus(5), 2, 3) == -1);
  for (u64 p : primes_in(3, 50)) {
    const auto prim = enumerate_characters(Modulus(p), CharacterFilter::Primitive);
    for (i64 n = 1; n < static_cast<i64>(p); ++n)
      for (i64 l = 1; l < static_cast<i64>(p); ++l) {
        cplx s = 0;
        for (const auto& chi : prim) s += chi(n) * std::conj(chi(l));
        REQUIRE(std::abs(s - static_cast<double>(primitive_sum_identity(Modulus(p), n, l))) < 1e-9);
      }
  }
  CHECK_THROWS_AS(primitive_sum_identity(Modulus(15), 1, 1), Error);
  CHECK_THROWS_AS(primitive_sum_identity(Modulus(7), 7, 1), Error);
}

TEST_CASE("even projector halves the primitive characters of prime moduli") {
  for (u64 p : primes_in(3, 200)) {
    const auto prim = enumerate_characters(Modulus(p), CharacterFilter::Primitive);
    u64 killed = 0;
    for (const auto& chi : prim)
      if (std::abs(1.0 + chi(-1)) < 1e-12) ++killed;
    // p - 2 primitive characters, (p - 1)/2 odd ones; the trivial character is even
    REQUIRE(killed == (p - 1) / 2);
    REQUIRE(prim.size() - killed == (p - 1) / 2 - 1);
  }
}

TEST_CASE("character transform matches direct sums") {
  for (u64 q : {1ull, 3ull, 15ull, 105ull, 221ull}) {
    const auto group = CharacterGroup::create(Modulus(q));
    std::vector<cplx> f(q);
    for (u64 a = 0; a < q; ++a) f[a] = cplx(std::sin(1.0 + a), std::cos(2.0 * a));
    const auto t = character_transform(*group, f);
    for (const auto& chi : enumerate_characters(group, CharacterFilter::All)) {
      cplx s = 0;
      for (u64 a = 0; a < q; ++a) s += chi(static_cast<i64>(a)) * f[a];
      if (q == 1) s = f[0];
      REQUIRE(std::abs(t[chi.index()] - s) < 1e-10 * q);
    }
  }
}
