#include <cmath>
#include <numeric>

#include "charsumlab/error.hpp"
#include "charsumlab/lfunctions.hpp"
#include "doctest.h"

using namespace charsumlab;

namespace {

const double kPi = std::acos(-1.0);

// Borwein's alternating-series acceleration for eta(s), then zeta = eta / (1 - 2^{1-s}).
cplx zeta_borwein(cplx s) {
  const int n = 40;
  std::vector<double> d(n + 1);
  double term = 1.0 / n, sum = term;  // k = 0 term of n sum (n+i-1)! 4^i / ((n-i)! (2i)!)
  d[0] = sum;
  for (int i = 1; i <= n; ++i) {
    term *= static_cast<double>(n + i - 1) * 4.0 * static_cast<double>(n - i + 1) / (static_cast<double>(2 * i - 1) * (2 * i));
    sum += term;
    d[i] = sum;
  }
  cplx acc = 0;
  for (int k = 0; k < n; ++k) {
    const double sign = k % 2 == 0 ? 1.0 : -1.0;
    acc += sign * (d[n] - d[k]) * std::exp(-s * std::log(static_cast<double>(k + 1)));
  }
  const cplx eta = acc / d[n];
  return eta / (1.0 - std::exp((1.0 - s) * std::log(2.0)));
}

std::vector<DirichletCharacter> primitive_even(u64 q) {
  return enumerate_characters(Modulus(q), CharacterFilter::PrimitiveEven);
}

}  // namespace

TEST_CASE("Hurwitz zeta oracles") {
  // direct summation of 1/n^2 with a tail estimate
  double direct = 0;
  const double N = 1e6;
  for (int n = 1000000; n >= 1; --n) direct += 1.0 / (static_cast<double>(n) * n);
  direct += 1 / N - 1 / (2 * N * N) + 1 / (6 * N * N * N);
  CHECK(std::abs(riemann_zeta(2.0) - direct) < 1e-10);
  CHECK(std::abs(riemann_zeta(2.0) - kPi * kPi / 6) < 1e-12);
  for (cplx s : {cplx(0.5, 0), cplx(0.5, 3), cplx(2.5, -1), cplx(-1.5, 0.7), cplx(0.2, 14.1347)}) {
    const cplx oracle = zeta_borwein(s);
    CHECK(std::abs(riemann_zeta(s) - oracle) <= 1e-10 * std::max(1.0, std::abs(oracle)));
  }
  for (double a : {0.1, 0.37, 0.5, 0.99, 1.0}) CHECK(std::abs(hurwitz_zeta(0.0, a) - (0.5 - a)) < 1e-12);
  // multiplication formula: sum_{j < m} zeta(s, a + j/m) = m^s zeta(s, m a)
  for (cplx s : {cplx(0.5, 0), cplx(3, 2), cplx(-0.5, 20), cplx(1.5, -45)}) {
    const int m = 4;
    const double a = 0.2;
    cplx lhs = 0;
    for (int j = 0; j < m; ++j) lhs += hurwitz_zeta(s, a + static_cast<double>(j) / m);
    const cplx rhs = std::exp(s * std::log(static_cast<double>(m))) * hurwitz_zeta(s, m * a);
    CHECK(std::abs(lhs - rhs) <= 1e-10 * std::abs(rhs));
  }
  try {
    hurwitz_zeta(1.0, 0.5);
    FAIL("expected PoleAtOne");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::PoleAtOne);
  }
  CHECK_THROWS_AS(hurwitz_zeta(-2.5, 0.5), Error);
  CHECK_THROWS_AS(hurwitz_zeta(2.0, 0.0), Error);
}

TEST_CASE("Dirichlet L-values by two routes") {
  const auto trivial = enumerate_characters(Modulus(1), CharacterFilter::All);
  REQUIRE(trivial.size() == 1);
  CHECK(std::abs(dirichlet_L(2.0, trivial[0]) - kPi * kPi / 6) < 1e-12);
  CHECK_THROWS_AS(dirichlet_L(1.0, trivial[0]), Error);
  for (u64 q : {5, 7, 13, 15, 29, 105}) {
    for (const auto& chi : enumerate_characters(Modulus(q), CharacterFilter::Primitive)) {
      const cplx h = dirichlet_L(0.5, chi), a = dirichlet_L(0.5, chi, LRoute::Afe);
      CHECK(std::abs(h - a) <= 1e-8);
    }
  }
  const auto quad = primitive_even(5);
  REQUIRE(quad.size() == 1);
  MESSAGE("L(1/2, quadratic character mod 5) = " << dirichlet_L(0.5, quad[0]).real());
  // s = 2 against the absolutely convergent series
  for (const auto& chi : enumerate_characters(Modulus(13), CharacterFilter::All)) {
    cplx series = 0;
    for (i64 n = 200000; n >= 1; --n) series += chi(n) / (static_cast<double>(n) * static_cast<double>(n));
    CHECK(std::abs(dirichlet_L(2.0, chi) - series) < 1e-5);
  }
  // non-trivial characters are regular at s = 1: compare against the series with averaging
  const auto chi5 = enumerate_characters(Modulus(5), CharacterFilter::Primitive)[1];
  cplx partial = 0;
  for (i64 n = 1; n <= 500000; ++n) partial += chi5(n) / static_cast<double>(n);
  CHECK(std::abs(dirichlet_L(1.0, chi5) - partial) < 1e-5);
}

TEST_CASE("batch L-values agree with single evaluation") {
  for (u64 q : {1, 3, 13, 35, 221}) {
    const auto group = CharacterGroup::create(Modulus(q));
    for (cplx s : {cplx(0.5, 0), cplx(0.5, 2), cplx(3, 0)}) {
      const auto all = dirichlet_L_all(*group, s);
      for (const auto& chi : enumerate_characters(group, CharacterFilter::All))
        CHECK(std::abs(all[chi.index()] - dirichlet_L(s, chi)) <= 1e-10 * std::max(1.0, std::abs(all[chi.index()])));
    }
  }
}

TEST_CASE("functional equation of the completed L-function") {
  for (u64 q : {5, 13}) {
    for (const auto& chi : primitive_even(q)) {
      const cplx eps = degree_one_root_number(chi);
      for (cplx s : {cplx(0.5, 0), cplx(0.5, 0.5), cplx(0.8, 1.5)}) {
        const cplx lhs = completed_L(s, chi), rhs = eps * completed_L(1.0 - s, chi.conjugate());
        CHECK(std::abs(lhs - rhs) <= 1e-8);
      }
    }
  }
  // odd characters carry i^{-1} and Gamma_R(s + 1)
  for (const auto& chi : enumerate_characters(Modulus(13), CharacterFilter::Primitive)) {
    if (chi.is_even()) continue;
    const cplx s(0.3, 0.7);
    CHECK(std::abs(completed_L(s, chi) - degree_one_root_number(chi) * completed_L(1.0 - s, chi.conjugate())) <= 1e-8);
  }
}

TEST_CASE("root numbers") {
  std::size_t count = 0;
  for (u64 q = 3; q <= 100; q += 2) {
    const Modulus m(q);
    if (!m.is_squarefree()) continue;
    for (const auto& chi : enumerate_characters(m, CharacterFilter::Primitive)) {
      const cplx e = epsilon_factor(chi);
      CHECK(std::abs(std::abs(e) - 1.0) < 1e-10);
      const double sign = chi.parity();
      CHECK(std::abs(epsilon_factor(chi.conjugate()) - sign * sign * sign * std::conj(e)) < 1e-10);
      ++count;
    }
  }
  CHECK(count > 1000);
  CHECK(std::abs(epsilon_factor(primitive_even(5)[0]) - 1.0) < 1e-12);
  const auto imprimitive = enumerate_characters(Modulus(15), CharacterFilter::All)[1];
  REQUIRE_FALSE(imprimitive.is_primitive());
  try {
    epsilon_factor(imprimitive);
    FAIL("expected NotPrimitive");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotPrimitive);
  }
}

TEST_CASE("triple divisor coefficients") {
  const auto d3 = d3_table(10000);
  for (u64 n = 1; n <= 1000; ++n) {
    u64 count = 0;
    for (u64 a = 1; a <= n; ++a)
      if (n % a == 0)
        for (u64 b = 1; b <= n / a; ++b)
          if ((n / a) % b == 0) ++count;
    CHECK(d3[n] == count);
  }
  CHECK(d3[1] == 1);
  bool multiplicative = true;
  for (u64 m = 1; m <= 100; ++m)
    for (u64 n = 1; m * n <= 10000; ++n)
      if (std::gcd(m, n) == 1) multiplicative = multiplicative && d3[m * n] == d3[m] * d3[n];
  CHECK(multiplicative);
  const ToyGL3Form form;
  CHECK(form.lambda(2) == 3);
  CHECK(form.lambda(12) == 18);
  CHECK(form.dual_lambda(720) == d3[720]);
  // mean square against N^{1.1}
  const auto big = d3_table(100000);
  for (u64 N : {1000, 10000, 100000}) {
    double s = 0;
    for (u64 n = 1; n <= N; ++n) s += static_cast<double>(big[n]) * big[n];
    const double ratio = s / std::pow(static_cast<double>(N), 1.1);
    MESSAGE("sum d3^2 / N^1.1 at N = " << N << ": " << ratio);
    CHECK(ratio < 1e4);
  }
}

TEST_CASE("twisted central value of the toy form") {
  const ToyGL3Form form;
  for (const auto& chi : primitive_even(5)) {
    // Gaussian-smoothed Dirichlet series: the smoothing error is O((q^{3/2}/N)^2)
    const double N = 1e4;
    const auto lambda = form.coefficients(static_cast<u64>(7 * N));
    cplx sum = 0;
    for (u64 n = 1; n <= static_cast<u64>(7 * N); ++n) {
      const double x = n / N;
      sum += static_cast<double>((*lambda)[n]) * chi(static_cast<i64>(n)) * std::exp(-x * x) / std::sqrt(static_cast<double>(n));
    }
    const cplx L3 = twisted_central_value(form, chi);
    CHECK(std::abs(sum - L3) <= 1e-4 * std::abs(L3));
  }
  for (const auto& chi : enumerate_characters(Modulus(5), CharacterFilter::Primitive))
    if (!chi.is_even()) CHECK_THROWS_AS(twisted_central_value(form, chi), Error);
}

TEST_CASE("approximate functional equation") {
  const ToyGL3Form form;
  for (u64 q : {5, 13, 17, 29}) {
    for (double X : {0.1, 1.0, 10.0}) {
      const auto reports = afe_check_all(form, q, X);
      CHECK(reports.size() == primitive_even(q).size());
      for (const auto& r : reports) {
        CHECK(r.pass);
        CHECK(r.rel_err <= 1e-4);
      }
    }
    // X-independence
    for (const auto& chi : primitive_even(q)) {
      const cplx a = afe_check(form, chi, 0.5).rhs, b = afe_check(form, chi, 1.0).rhs, c = afe_check(form, chi, 2.0).rhs;
      const double scale = std::max(1.0, std::abs(b));
      CHECK(std::abs(a - b) <= 1e-6 * scale);
      CHECK(std::abs(b - c) <= 1e-6 * scale);
    }
  }
  // single and batch agree
  const auto batch = afe_check_all(form, 13, 1.0);
  for (const auto& chi : primitive_even(13)) {
    const auto single = afe_check(form, chi, 1.0);
    bool found = false;
    for (const auto& r : batch)
      if (r.chi_index == single.chi_index) {
        found = true;
        CHECK(std::abs(r.rhs - single.rhs) < 1e-10);
        MESSAGE("q = 13, chi " << r.chi_index << ": L^3 = " << r.lhs << ", rel err " << r.rel_err);
      }
    CHECK(found);
  }
  CHECK_THROWS_AS(afe_check_all(form, 53, 1.0), Error);
  CHECK_THROWS_AS(afe_check_all(form, 13, 1e3), Error);
}
