#include <cmath>
#include <random>

#include "charsumlab/archimedean.hpp"
#include "charsumlab/error.hpp"
#include "doctest.h"

using namespace charsumlab;

namespace {

const double kPi = std::acos(-1.0);
const double kEulerGamma = 0.57721566490153286061;

double zeta_oracle(int k) {
  if (k == 2) return kPi * kPi / 6;
  const int N = 1000;
  double s = 0;
  for (int n = N - 1; n >= 1; --n) s += std::pow(n, -k);
  const double x = N;
  return s + std::pow(x, 1 - k) / (k - 1) + 0.5 * std::pow(x, -k) + k * std::pow(x, -k - 1) / 12;
}

// log Gamma(1 + z) = -gamma z + sum_{k >= 2} (-1)^k zeta(k) z^k / k for |z| < 1
cplx log_gamma1_series(cplx z) {
  cplx acc = -kEulerGamma * z, p = z;
  for (int k = 2; k <= 50; ++k) {
    p *= z;
    acc += (k % 2 == 0 ? 1.0 : -1.0) * zeta_oracle(k) * p / static_cast<double>(k);
  }
  return acc;
}

// Gamma(w) for any w off the poles: shift w to 1 + z with |z| <= 1/2 by the recurrence.
cplx gamma_oracle(cplx w) {
  cplx factor = 1.0;
  while (w.real() > 1.5) {
    w -= 1.0;
    factor *= w;
  }
  while (w.real() < 0.5) {
    factor /= w;
    w += 1.0;
  }
  return factor * std::exp(log_gamma1_series(w - 1.0));
}

}  // namespace

TEST_CASE("log gamma against the power series oracle") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (int i = 0; i < 20; ++i) {
    const cplx z(0.5 * unit(rng), 0.35 * unit(rng));
    const cplx expect = std::exp(log_gamma1_series(z));
    CHECK(std::abs(gamma_fn(1.0 + z) - expect) <= 1e-12 * std::abs(expect));
  }
  // further out: recurrence and reflection
  for (int i = 0; i < 20; ++i) {
    const cplx w(6 * unit(rng), 0.4 * unit(rng));
    const cplx expect = gamma_oracle(w);
    CHECK(std::abs(gamma_fn(w) - expect) <= 1e-11 * std::abs(expect));
  }
  CHECK(std::abs(gamma_fn(0.5) - std::sqrt(kPi)) < 1e-14);
  CHECK(std::abs(gamma_fn(cplx(5, 0)) - 24.0) < 1e-12);
  // large arguments: compare the recurrence Gamma(z + 1) = z Gamma(z) in log form
  for (cplx z : {cplx(40, 30), cplx(-30.5, 20), cplx(90, -7), cplx(0.5, 60)}) {
    const cplx diff = log_gamma(z + 1.0) - log_gamma(z) - std::log(z);
    const double wrapped = std::remainder(diff.imag(), 2 * kPi);
    CHECK(std::abs(cplx(diff.real(), wrapped)) < 1e-11);
  }
}

TEST_CASE("Gamma_R and gamma factors") {
  CHECK(std::abs(gamma_r(1.0) - 1.0) < 1e-14);
  CHECK(std::abs(gamma_r(2.0) - 1.0 / kPi) < 1e-14);
  const LanglandsParams zero;
  for (cplx s : {cplx(0.5, 0), cplx(2.3, -1.2), cplx(-0.7, 3)}) {
    const cplx g = gamma_r(s);
    CHECK(std::abs(gamma_factor(s, zero) - g * g * g) <= 1e-12 * std::abs(g * g * g));
  }
  try {
    gamma_factor(cplx(-2.0 + 1e-8, 0), zero);
    FAIL("expected PoleProximity");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::PoleProximity);
  }
  const LanglandsParams shifted({cplx(0.3, 1), cplx(-0.1, 0), cplx(0.2, -1)});
  CHECK_THROWS_AS(gamma_factor(cplx(0.3 - 4, 1), shifted), Error);
  CHECK_NOTHROW(gamma_factor(cplx(0.3 - 4, 1.01), shifted));
}

TEST_CASE("Langlands parameter validation and parsing") {
  CHECK_THROWS_AS(LanglandsParams({cplx(0.41, 0), 0, 0}), Error);
  CHECK_NOTHROW(LanglandsParams({cplx(0.4, 3), 0, 0}));
  CHECK_THROWS_AS(LanglandsParams({cplx(0.2, 0), 0, 0}, true), Error);
  CHECK_NOTHROW(LanglandsParams({cplx(0.2, 1), cplx(-0.2, -1), 0}, true));
  const auto p = LanglandsParams::parse("0.1+2i, -0.1-2i,0");
  REQUIRE(p.degree() == 3);
  CHECK(p.alpha()[0] == cplx(0.1, 2));
  CHECK(p.alpha()[1] == cplx(-0.1, -2));
  CHECK(p.alpha()[2] == cplx(0, 0));
  CHECK(LanglandsParams::parse("1e-1,-3i,0.25").alpha()[1] == cplx(0, -3));
  CHECK_THROWS_AS(LanglandsParams::parse("0,,0"), Error);
  CHECK_THROWS_AS(LanglandsParams::parse("0,x,0"), Error);
  CHECK_THROWS_AS(LanglandsParams::parse("0.5,0,0"), Error);
}

TEST_CASE("V is independent of the contour") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::vector<LanglandsParams> params = {
      LanglandsParams(), LanglandsParams({cplx(0.4, 0), cplx(-0.2, 0), cplx(-0.2, 0)}),
      LanglandsParams({cplx(0.1, 2.5), cplx(0.1, -2.5), cplx(-0.2, 0)}), LanglandsParams({cplx(0.35, 1), 0, cplx(-0.3, 4)})};
  for (int i = 0; i < 20; ++i) {
    const auto& pa = params[i % params.size()];
    const double y = std::exp(std::log(0.2) + unit(rng) * std::log(25.0));
    AFEConfig c1, c2, c3;
    c1.sigma = 1;
    c2.sigma = 2;
    c3.sigma = 3;
    const cplx v1 = V(y, pa, c1), v2 = V(y, pa, c2), v3 = V(y, pa, c3);
    CHECK(std::abs(v1 - v3) <= 1e-8);
    CHECK(std::abs(v2 - v3) <= 1e-8);
    // crossing the pole at 0 picks up the residue 1
    CHECK(std::abs(V(y, pa) - v3) <= 1e-8);
  }
  AFEConfig left;
  left.sigma = -0.05;
  AFEConfig right;
  right.sigma = 3;
  CHECK(std::abs(V(1.0, LanglandsParams(), left) - V(1.0, LanglandsParams(), right)) <= 1e-8);
}

TEST_CASE("V near zero and at infinity") {
  const LanglandsParams zero;
  const auto fit = fit_small_y(zero, {1e-5, 1e-4, 1e-3});
  MESSAGE("small-y exponent " << fit.exponent << ", constant " << fit.constant);
  CHECK(fit.exponent >= 0.09);
  CHECK(std::abs(V(1e-4, zero) - 1.0) <= fit.constant * std::pow(1e-4, 0.09));
  const auto edge = fit_small_y(LanglandsParams({cplx(0.4, 0), cplx(-0.2, 0), cplx(-0.2, 0)}), {1e-5, 1e-4, 1e-3});
  MESSAGE("small-y exponent with a simple pole at -1/10: " << edge.exponent);
  CHECK(edge.exponent >= 0.09);
  // a double pole at -1/10 adds y^{1/10} log y, which pulls the finite-range slope lower
  const auto doubled = fit_small_y(LanglandsParams({cplx(0.4, 0), cplx(0.4, 0), cplx(-0.8, 0)}), {1e-5, 1e-4, 1e-3});
  MESSAGE("small-y exponent with a double pole at -1/10: " << doubled.exponent);
  CHECK(doubled.exponent > 0.0);
  CHECK(doubled.exponent < 0.1);
  CHECK(std::abs(V(1e3, zero)) <= 1e-6);
  // V is real for real parameters and decreases through (0, 1]
  double prev = 1.0;
  for (double y : {1e-3, 1e-2, 0.1, 0.5, 1.0, 2.0, 5.0}) {
    const cplx v = V(y, zero);
    CHECK(std::abs(v.imag()) < 1e-12);
    CHECK(v.real() < prev);
    prev = v.real();
  }
}

TEST_CASE("quadrature refinement and truncation") {
  const LanglandsParams zero;
  for (double y : {0.01, 0.3, 1.0, 7.0}) {
    const VResult r = cutoff_v(y, zero);
    CHECK(r.err < 1e-9);
    AFEConfig longer;
    longer.T = 2 * r.T;
    longer.sigma = r.sigma;
    const VResult s = cutoff_v(y, zero, longer);
    CHECK(std::abs(s.value - r.value) <= r.err + s.err);
  }
  AFEConfig coarse;
  coarse.h = 2.0;
  coarse.sigma = 3;
  try {
    cutoff_v(0.5, zero, coarse);
    FAIL("expected QuadratureNotConverged");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::QuadratureNotConverged);
  }
  CHECK_THROWS_AS(cutoff_v(0.0, zero), Error);
  AFEConfig on_pole;
  on_pole.sigma = -0.5;
  CHECK_THROWS_AS(cutoff_v(0.5, zero, on_pole), Error);
}

TEST_CASE("degree one cutoff") {
  for (int kappa : {0, 1}) {
    const auto p = LanglandsParams::dirichlet(kappa);
    AFEConfig c2, c3;
    c2.sigma = 2;
    c3.sigma = 3;
    CHECK(std::abs(V(0.7, p, c2) - V(0.7, p, c3)) <= 1e-8);
    CHECK(std::abs(V(1e-6, p) - 1.0) < 1e-2);
  }
}

TEST_CASE("Chebyshev cutoff table") {
  const LanglandsParams zero;
  const double y_hi = cutoff_decay_point(zero, 1e-13);
  MESSAGE("V below 1e-13 from y = " << y_hi);
  CHECK(std::abs(V(y_hi, zero)) < 1e-13);
  CHECK(y_hi < 100);
  const CutoffTable table(zero, 1e-6, y_hi);
  CHECK(table.err() < 1e-10);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(std::log(1e-6), std::log(y_hi));
  for (int i = 0; i < 30; ++i) {
    const double y = std::exp(u(rng));
    CHECK(std::abs(table(y) - V(y, zero)) <= table.err());
  }
  CHECK(table(2 * y_hi) == cplx(0, 0));
  CHECK_THROWS_AS(table(1e-7), Error);
  const auto shared = cutoff_table(zero, 1e-5);
  CHECK(shared->y_lo() <= 1e-5);
  CHECK(cutoff_table(zero, 1e-4).get() == shared.get());
}
