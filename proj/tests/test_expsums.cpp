#include <chrono>
#include <cmath>
#include <numeric>

#include "charsumlab/error.hpp"
#include "charsumlab/expsums.hpp"
#include "doctest.h"

using namespace charsumlab;

namespace {

const double kTwoPi = 2 * std::acos(-1.0);

cplx e(i64 x, u64 q) {
  const i64 r = ((x % static_cast<i64>(q)) + static_cast<i64>(q)) % static_cast<i64>(q);
  return std::polar(1.0, kTwoPi * static_cast<double>(r) / static_cast<double>(q));
}

// Inverse by search, independent of the library's extended Euclid.
u64 inv_search(u64 a, u64 p) {
  for (u64 x = 1; x < p; ++x)
    if (a % p * x % p == 1) return x;
  return 0;
}

cplx kloosterman_oracle(i64 a, i64 b, u64 p) {
  cplx s = 0;
  for (u64 x = 1; x < p; ++x) s += e(a * static_cast<i64>(x) + b * static_cast<i64>(inv_search(x, p)), p);
  return s;
}

cplx hyper_oracle(i64 u, u64 p) {
  cplx s = 0;
  for (u64 a = 1; a < p; ++a)
    for (u64 b = 1; b < p; ++b) s += e(static_cast<i64>(a + b) + u * static_cast<i64>(inv_search(a * b % p, p)), p);
  return s;
}

cplx gauss_oracle(const DirichletCharacter& chi) {
  cplx s = 0;
  for (u64 a = 0; a < chi.modulus(); ++a) s += chi(static_cast<i64>(a)) * e(static_cast<i64>(a), chi.modulus());
  return s;
}

}  // namespace

TEST_CASE("gauss sum of the quadratic character mod 5 is +sqrt 5") {
  const auto chars = enumerate_characters(Modulus(5), CharacterFilter::PrimitiveEven);
  REQUIRE(chars.size() == 1);
  const auto g = gauss_sum(chars[0]);
  CHECK(std::abs(g.value() - gauss_oracle(chars[0])) < 1e-12);
  CHECK(std::abs(g.value() - cplx(std::sqrt(5.0), 0)) <= g.err + 1e-14);
  const auto gx = gauss_sum(chars[0], ValueMode::Exact);
  CHECK(gx.consistent());
}

TEST_CASE("gauss sums: modulus and conjugation law") {
  for (u64 q = 3; q <= 300; q += 2) {
    const Modulus m(q);
    if (!m.is_squarefree()) continue;
    const auto group = CharacterGroup::create(m);
    const auto batch = gauss_sums(*group);
    for (const auto& chi : enumerate_characters(group, CharacterFilter::Primitive)) {
      const auto g = gauss_sum(chi);
      REQUIRE(std::abs(std::norm(g.value()) - static_cast<double>(q)) < 1e-9 * q);
      REQUIRE(std::abs(batch[chi.index()].value() - g.value()) <= batch[chi.index()].err + g.err);
      if (q <= 100) {
        REQUIRE(std::abs(g.value() - gauss_oracle(chi)) < 1e-9);
        const auto gbar = gauss_sum(chi.conjugate());
        REQUIRE(std::abs(static_cast<double>(chi.parity()) * std::conj(g.value()) - gbar.value()) < 1e-9);
      }
    }
  }
}

TEST_CASE("exact gauss sums agree with floating ones") {
  for (u64 q : {3ull, 5ull, 7ull, 13ull, 15ull, 21ull}) {
    for (const auto& chi : enumerate_characters(Modulus(q), CharacterFilter::All)) {
      const auto gx = gauss_sum(chi, ValueMode::Exact);
      const auto gf = gauss_sum(chi);
      REQUIRE(gx.consistent());
      REQUIRE(std::abs(gx.exact->to_complex() - gf.value()) <= gf.err + gx.err);
    }
  }
  CHECK_THROWS_AS(gauss_sum(enumerate_characters(Modulus(61), CharacterFilter::All)[1], ValueMode::Exact), Error);
}

TEST_CASE("gauss splitting") {
  const u64 ps[] = {5, 13, 17, 29};
  for (u64 q1 : ps)
    for (u64 q2 : ps) {
      if (q1 == q2) continue;
      for (const auto& a : enumerate_characters(Modulus(q1), CharacterFilter::Primitive))
        for (const auto& b : enumerate_characters(Modulus(q2), CharacterFilter::Primitive)) {
          const auto rep = gauss_splitting_check(a, b);
          REQUIRE(rep.pass);
        }
    }
  const auto a = enumerate_characters(Modulus(5), CharacterFilter::All)[1];
  CHECK_THROWS_AS(gauss_splitting_check(a, a), Error);
}

TEST_CASE("ramanujan sums") {
  for (u64 p : primes_in(3, 200)) CHECK(ramanujan_sum(Modulus(p), 1) == -1);
  for (u64 q = 1; q <= 1000; ++q) {
    const Modulus m(q);
    REQUIRE(ramanujan_sum(m, 0) == static_cast<i64>(totient(q)));
    for (i64 n : {1, 2, 3, 6, 12, 35, 97}) {
      // oracle: the raw exponential sum
      cplx s = 0;
      for (u64 a = 1; a <= q; ++a)
        if (std::gcd(a, q) == 1) s += e(static_cast<i64>(a) * n, q);
      REQUIRE(std::abs(s - static_cast<double>(ramanujan_sum(m, n))) < 1e-8 * q);
      if (q <= 200) {
        const auto d = ramanujan_sum_direct(m, n);
        REQUIRE(std::abs(d.value() - static_cast<double>(ramanujan_sum(m, n))) <= d.err);
      }
    }
  }
  CHECK(ramanujan_sum(Modulus(7), 14) == 6);
  const auto x = ramanujan_sum_direct(Modulus(30), 4, ValueMode::Exact);
  CHECK(x.exact->as_integer() == std::optional<i64>(ramanujan_sum(Modulus(30), 4)));
}

TEST_CASE("kloosterman sums") {
  for (u64 p : primes_in(3, 500)) {
    const Modulus m(p);
    CHECK(std::abs(kloosterman(0, 0, m).value() - static_cast<double>(p - 1)) < 1e-9);
    CHECK(std::abs(kloosterman(3, 0, m).value() - static_cast<double>(ramanujan_sum(m, 3))) < 1e-9);
    const auto table = hyper_kloosterman_table(p);
    for (u64 b = 1; b < p; ++b) {
      const double s = table->kloosterman_row()[b];
      REQUIRE(std::abs(s) <= 2 * std::sqrt(static_cast<double>(p)) + 1e-9);
    }
    if (p <= 60) {
      for (i64 b = 0; b < static_cast<i64>(p); ++b) {
        const auto k = kloosterman(1, b, m);
        REQUIRE(std::abs(k.value() - kloosterman_oracle(1, b, p)) < 1e-10);
        REQUIRE(std::abs(k.im) <= k.err + 1e-12);
        REQUIRE(std::abs(k.re - table->kloosterman_row()[b]) < 1e-10);
        const auto kx = kloosterman(2, b, m, ValueMode::Exact);
        REQUIRE(kx.consistent());
      }
    }
  }
}

TEST_CASE("hyper-Kloosterman sums") {
  for (u64 p : primes_in(3, 200)) {
    const Modulus m(p);
    const auto table = hyper_kloosterman_table(p);
    CHECK(std::abs(table->at(0) - cplx(1, 0)) <= table->err());
    for (u64 u = 0; u < p; ++u)
      REQUIRE(std::abs(std::conj((*table)[u]) - table->at(-static_cast<i64>(u))) <= 2 * table->err());
    if (p <= 23) {
      for (i64 u = 0; u < static_cast<i64>(p); ++u) {
        const auto d = hyper_kloosterman(u, m);
        REQUIRE(std::abs(d.value() - hyper_oracle(u, p)) < 1e-9);
        REQUIRE(std::abs(d.value() - table->at(u)) <= d.err + table->err());
      }
    } else {
      for (i64 u : {1, 2, 5, 11, 17, 42, 101, 150, 170, 199}) {
        const auto d = hyper_kloosterman(u, m);
        REQUIRE(std::abs(d.value() - table->at(u)) <= d.err + table->err());
      }
    }
  }
  CHECK(std::abs(hyper_kloosterman(0, Modulus(13)).value() - cplx(1, 0)) < 1e-12);
  const auto x = hyper_kloosterman(3, Modulus(13), ValueMode::Exact);
  CHECK(x.consistent());
  CHECK_THROWS_AS(HyperKloostermanTable(Modulus(1009)), Error);
}

TEST_CASE("hyper-Kloosterman table at p = 997 is fast") {
  const auto t0 = std::chrono::steady_clock::now();
  HyperKloostermanTable table(Modulus(997));
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  CHECK(secs < 10.0);
  CHECK(std::abs(table.at(0) - cplx(1, 0)) <= table.err());
  for (i64 u : {1, 500, 996}) {
    const auto d = hyper_kloosterman(u, Modulus(997));
    CHECK(std::abs(d.value() - table.at(u)) <= d.err + table.err());
  }
}

TEST_CASE("cubed gauss identity") {
  for (u64 p : {5ull, 13ull, 17ull}) {
    for (i64 r = 1; r < static_cast<i64>(p); ++r)
      for (i64 m = 1; m < static_cast<i64>(p); ++m) {
        const auto rep = cubed_gauss_identity(Modulus(p), r, m);
        REQUIRE(rep.pass);
        REQUIRE(rep.abs_err < 1e-9 * p * p * p);
        // summing over all characters adds g(chi_0)^3 = c_p(1)^3 = -1
        const auto all = cubed_gauss_sum(Modulus(p), r, m, CharacterFilter::All);
        const cplx rhs = static_cast<double>(p - 1) * hyper_oracle(m * static_cast<i64>(inv_search(r, p)), p);
        REQUIRE(std::abs(all.value() - rhs) < 1e-9 * p * p * p);
      }
  }
  CHECK_THROWS_AS(cubed_gauss_identity(Modulus(15), 1, 1), Error);
  CHECK_THROWS_AS(cubed_gauss_identity(Modulus(13), 13, 1), Error);
  for (u64 p : primes_in(3, 60)) {
    const auto sw = cubed_gauss_sweep(p);
    REQUIRE(sw.cases == (p - 1) * (p - 1));
    REQUIRE(sw.failures == 0);
  }
  for (u64 p : {61ull, 151ull, 293ull}) {
    const auto sw = cubed_gauss_sweep(p, 50, 7);
    REQUIRE(sw.cases == 50);
    REQUIRE(sw.failures == 0);
  }
}

TEST_CASE("deligne measurement") {
  const auto rep = deligne_measure(300, 200);
  CHECK(rep.max_ratio <= 3.0);
  CHECK(rep.max_ratio >= 1.0);
  CHECK(rep.conj_law_ok);
  for (const auto& row : rep.rows) REQUIRE(row.weil_ratio <= 1.0 + 1e-12);
}
