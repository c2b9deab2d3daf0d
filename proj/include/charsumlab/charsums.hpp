#pragma once

// Composite hyper-Kloosterman sums over a triple of primes (q1, q2, q2'):
//
//   A(n) = sum_{a mod q1} K_q1(a l q2bar^3) K_q1(-a l q2'bar^3) e_q1(a q2bar q2'bar n)
//   B(n) = sum_{a mod q2 q2'} K_q2(a l q1bar^3) K_q2'(-a l q1bar^3) e_{q2 q2'}(a q1bar n)
//   C(n) = sum_{a mod q1 q2 q2'} K_q1(a l q2bar^3) K_q2(a l q1bar^3)
//                               K_q1(-a l q2'bar^3) K_q2'(-a l q1bar^3) e_{q1 q2 q2'}(a n)
//
// with C = A B by the Chinese remainder theorem.

#include <optional>
#include <string>
#include <vector>

#include "charsumlab/residue.hpp"
#include "charsumlab/sum_value.hpp"

namespace charsumlab {

inline constexpr u64 kMaxASumModulus = 500;
inline constexpr u64 kMaxBSumModulus = 100'000;
inline constexpr u64 kMaxCSumModulus = 1'000'000;
inline constexpr u64 kMaxNaiveModulus = 30;
inline constexpr u64 kMaxXiModulus = 60;

struct TripleModulus {
  u64 q1 = 0;
  u64 q2 = 0;
  u64 q2p = 0;
  i64 ell = 1;
  i64 n = 0;

  /// Odd primes, q1 not in {q2, q2'}, 1 <= ell < min(q2, q2'), gcd(ell, q1 q2 q2') = 1.
  void validate() const;
  bool diagonal() const { return q2 == q2p; }
  TripleModulus with_n(i64 m) const {
    TripleModulus t = *this;
    t.n = m;
    return t;
  }
};

SumValue a_sum(const TripleModulus& t);
SumValue b_sum(const TripleModulus& t);
SumValue c_sum(const TripleModulus& t);
/// C(n) for several frequencies sharing one product table.
std::vector<SumValue> c_sum(const TripleModulus& t, const std::vector<i64>& ns);

/// A(n) by five nested loops over alpha, a, b, c, d (q1 <= 30).
SumValue a_sum_naive(const TripleModulus& t);

/// sum over x in (F_q1^*)^3 of e_q1(f(x)) for the Laurent polynomial attached to t.
SumValue a_laurent_sum(const TripleModulus& t);

/// q1 | n:  q1^2 c_q1(1 - q2^3 q2'bar^3) - q1.
/// q1 !| n: q1 * sum e_q1(f(x)) - q1.
SumValue a_closed_form(const TripleModulus& t);

/// q2 != q2': zero when q2 | n or q2' | n, otherwise
/// q2 q2' S(1, -l q1bar^2 q2' nbar; q2) S(1, l q1bar^2 q2 nbar; q2').
/// nullopt on the diagonal.
std::optional<SumValue> b_closed_form(const TripleModulus& t);

struct XiReport {
  SumValue a_definition;
  SumValue midway;  // q1 * sum over (a, b, c, d) on the congruence
  SumValue restricted;  // q1 * sum over b and (c, d) with xi a unit
  SumValue xi_partial;  // q1 * sum over b, d and xi with xi + l q2 a unit
  SumValue xi_full;  // q1 * sum over all units b, xi, d
  SumValue missing_slice;  // the xi = -l q2 slice (without the factor q1)
  SumValue laurent;  // q1 * sum e(f) - q1
  bool coprimality_ok = true;  // every solution (c, d) has xi coprime to q1
  double max_abs_err = 0.0;
  bool pass = false;
};

/// Evaluates each intermediate form of A for q1 !| n, q1 <= 60.
XiReport xi_substitution_check(const TripleModulus& t);

enum class CorollaryRegime { ZeroOffDiagonal, ZeroDiagonal, NonzeroOffDiagonal, NonzeroDiagonal };

std::string regime_name(CorollaryRegime r);
CorollaryRegime corollary_regime(const TripleModulus& t);

/// Envelope for |C| with Q1 = q1, Q2 = max(q2, q2'), Q = Q1 Q2:
/// 0, Q^3 Q2, Q^{5/2} Q2^{1/2} (q1, n), Q^{5/2} Q2^{3/2} (q1, n).
double corollary_envelope(const TripleModulus& t);

}  // namespace charsumlab
