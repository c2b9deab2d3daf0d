#include <algorithm>
#include <cmath>
#include <set>

#include "charsumlab/error.hpp"
#include "charsumlab/moment.hpp"
#include "doctest.h"

using namespace charsumlab;

namespace {

bool naive_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(a); }

}  // namespace

TEST_CASE("family construction") {
  const auto fam = build_family(10, 40);
  REQUIRE(fam.members.size() == 8);
  std::vector<u64> q1s, q2s;
  for (u64 p = 10; p <= 20; ++p)
    if (naive_prime(p) && p % 4 == 1) q1s.push_back(p);
  for (u64 p = 40; p <= 80; ++p)
    if (naive_prime(p) && p % 4 == 1) q2s.push_back(p);
  CHECK(q1s == std::vector<u64>{13, 17});
  CHECK(q2s == std::vector<u64>{41, 53, 61, 73});
  u64 y = 0;
  std::set<u64> products;
  for (std::size_t i = 0; i < fam.members.size(); ++i) {
    const auto& m = fam.members[i];
    CHECK(m.q == m.q1 * m.q2);
    CHECK(std::find(q1s.begin(), q1s.end(), m.q1) != q1s.end());
    CHECK(std::find(q2s.begin(), q2s.end(), m.q2) != q2s.end());
    if (i > 0) CHECK(fam.members[i - 1].q < m.q);
    products.insert(m.q);
    y += m.q;
  }
  CHECK(products.size() == fam.members.size());
  CHECK(fam.Y() == y);
  try {
    build_family(40, 40);
    FAIL("expected OverlappingBoxes");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OverlappingBoxes);
  }
  CHECK_THROWS_AS(build_family(10, 15), Error);
  CHECK_THROWS_AS(build_family(4, 40), Error);
  try {
    build_family(6, 31);  // 7 and 11 are both 3 mod 4
    FAIL("expected EmptyFamily");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EmptyFamily);
  }
}

TEST_CASE("twist index validation") {
  const auto fam = build_family(10, 40);
  CHECK_NOTHROW(validate_ell(fam, 1));
  CHECK_NOTHROW(validate_ell(fam, 9));
  CHECK_THROWS_AS(validate_ell(fam, 0), Error);
  CHECK_THROWS_AS(validate_ell(fam, 13), Error);
  CHECK_THROWS_AS(validate_ell(fam, 6), Error);
  CHECK_NOTHROW(validate_ell(fam, 6, {true}));
  CHECK_THROWS_AS(validate_ell(fam, 40), Error);
}

TEST_CASE("direct twisted average") {
  const ToyGL3Form form;
  const ModulusFamily single{5, 41, 0.01, {{5, 41, 205}}};
  // even projector: 2 * (sum over even) equals sum over all primitive of (1 + chi(-1))
  const auto group = CharacterGroup::create(Modulus(205));
  cplx projected = 0;
  for (const auto& chi : enumerate_characters(group, CharacterFilter::Primitive)) {
    const cplx L = dirichlet_L(0.5, chi);
    projected += L * L * L * (1.0 + chi.parity()) * std::conj(chi(2));
  }
  const cplx T = twisted_average_direct(single, form, 2);
  CHECK(std::abs(T - projected) <= 1e-9 * std::abs(T));
  // ell = 1: conjugate pairs make T real
  const cplx T1 = twisted_average_direct(build_family(10, 40), form, 1);
  CHECK(std::abs(T1.imag()) <= 1e-9 * std::abs(T1));
}

TEST_CASE("moment pipeline identity") {
  const ToyGL3Form form;
  const auto fam = build_family(10, 40);
  for (u64 ell : {1, 2, 3}) {
    const auto rep = moment_pipeline(fam, form, ell, 1.0);
    MESSAGE("ell = " << ell << ": T = " << rep.T_direct << ", F + S = " << rep.T_decomposed << ", rel " << rep.identity_rel_err
                     << ", F routes " << rep.F_route_rel_err << ", S routes " << rep.S_route_rel_err << ", residual / Y "
                     << std::abs(rep.residual) / static_cast<double>(rep.Y) << ", E " << rep.E_diagnostic);
    CHECK(rep.identity_pass);
    CHECK(rep.identity_rel_err <= 1e-4);
    CHECK(rep.F_route_rel_err <= 1e-6);
    CHECK(rep.S_route_rel_err <= 1e-6);
    CHECK(rep.main_term == cplx(static_cast<double>(form.lambda(ell)) / std::sqrt(static_cast<double>(ell)) * static_cast<double>(rep.Y), 0));
    for (const auto& m : rep.members) CHECK(m.primitive_count == (m.member.q1 - 2) * (m.member.q2 - 2));
    cplx lead = 0;
    for (cplx v : rep.leading) lead += v;
    CHECK(std::abs(rep.F_term - lead - rep.F_offdiagonal) < 1e-9 * std::abs(rep.F_term));
    CHECK(std::abs(rep.S_term - rep.R_plus - rep.R_minus - rep.S_remainder) < 1e-9 * std::abs(rep.S_term));
  }
  // ell = 2: main term uses d3(2) = 3
  const auto rep2 = moment_pipeline(fam, form, 2, 1.0);
  CHECK(std::abs(rep2.main_term - 3.0 / std::sqrt(2.0) * static_cast<double>(fam.Y())) < 1e-9);
}

TEST_CASE("diagonal leading terms") {
  const ToyGL3Form form;
  const auto fam = build_family(10, 40);
  for (u64 ell : {1, 2}) {
    const double X = 0.5;
    const auto rep = moment_pipeline(fam, form, ell, X);
    for (const auto& m : rep.members) {
      // sum_r mu(q/r) phi(r) over the four roles is (q1 - 2)(q2 - 2); V by quadrature
      const double y = static_cast<double>(ell) * X / std::pow(static_cast<double>(m.member.q), 1.5);
      const double expected = static_cast<double>(m.primitive_count) * static_cast<double>(form.lambda(ell)) /
                              std::sqrt(static_cast<double>(ell)) * V(y, form.params()).real();
      cplx diag = 0;
      for (cplx v : m.diagonal) diag += v;
      CHECK(std::abs(diag - expected) <= 1e-8 * std::abs(expected));
    }
    cplx lead = 0;
    for (cplx v : rep.leading) lead += v;
    MESSAGE("ell = " << ell << ": sum_r L_r / main = " << lead / rep.main_term);
  }
}

TEST_CASE("X-invariance and off-diagonal scaling") {
  const ToyGL3Form form;
  const auto fam = build_family(10, 40);
  const auto a = moment_pipeline(fam, form, 2, 1.0), b = moment_pipeline(fam, form, 2, 2.0);
  CHECK(rel(a.T_decomposed, b.T_decomposed) <= 1e-4);
  const double Q = 10.0 * 40.0;
  for (double X : {0.25, 1.0, 4.0}) {
    const auto r = moment_pipeline(fam, form, 1, X);
    const double shape = std::pow(Q, 1.1) * static_cast<double>(fam.members.size()) / std::sqrt(X);
    MESSAGE("X = " << X << ": |F off-diagonal| = " << std::abs(r.F_offdiagonal) << ", constant " << std::abs(r.F_offdiagonal) / shape);
    CHECK(std::abs(r.F_offdiagonal) / shape < 10.0);
  }
}

TEST_CASE("moment trend over a ladder") {
  const ToyGL3Form form;
  const auto trend = moment_trend(3, form, 1);
  REQUIRE(trend.rungs.size() == 3);
  for (const auto& r : trend.rungs)
    MESSAGE("Q1 = " << r.Q1 << ", Q2 = " << r.Q2 << ", members " << r.members << ": |residual| / Y = " << r.residual_ratio
                    << ", |S| / main at X = " << r.X << ": " << r.S_ratio);
  CHECK(trend.rungs[0].members == 8);
  MESSAGE("residual decreasing: " << trend.residual_decreasing << ", S ratio decreasing: " << trend.S_ratio_decreasing);
}

TEST_CASE("dual sum against the main term") {
  const ToyGL3Form form;
  const auto rungs = s_dominance(kDominanceBoxes, form, 1);
  REQUIRE(rungs.size() == 3);
  for (const auto& r : rungs) {
    MESSAGE("Q1 Q2 = " << r.Q1 * r.Q2 << ", members " << r.members << ": |S| / main = " << r.ratio);
    CHECK(r.ratio < 1.0);
  }
}
