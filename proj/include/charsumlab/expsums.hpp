#pragma once

// Gauss, Ramanujan, Kloosterman and hyper-Kloosterman sums.
//
//   g(chi)    = sum_a chi(a) e_q(a)
//   c_q(n)    = sum*_a e_q(a n)
//   S(a,b;p)  = sum*_x e_p(a x + b xbar)
//   K_p(u)    = sum*_{a,b} e_p(a + b + u (ab)bar)

#include <memory>
#include <vector>

#include "charsumlab/characters.hpp"
#include "charsumlab/residue.hpp"
#include "charsumlab/sum_value.hpp"

namespace charsumlab {

inline constexpr u64 kMaxDirectModulus = 10'000;
inline constexpr u64 kMaxTableModulus = 1'000;
inline constexpr u64 kMaxExactModulus = 60;

SumValue gauss_sum(const DirichletCharacter& chi, ValueMode mode = ValueMode::Floating);

/// g(chi) for every character of the group, indexed by DirichletCharacter::index().
std::vector<SumValue> gauss_sums(const CharacterGroup& group);

struct IdentityReport {
  SumValue lhs;
  SumValue rhs;
  double abs_err = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// g(chi1 chi2) by the direct length-q1 q2 sum against chi1(q2) chi2(q1) g(chi1) g(chi2).
/// Passes when the relative error is at most rel_tol.
IdentityReport gauss_splitting_check(const DirichletCharacter& chi1, const DirichletCharacter& chi2,
                                     double rel_tol = 1e-9);

/// c_q(n) from the Moebius closed form sum_{d | (q,n)} mu(q/d) d.
i64 ramanujan_sum(const Modulus& q, i64 n);
SumValue ramanujan_sum_direct(const Modulus& q, i64 n, ValueMode mode = ValueMode::Floating);

SumValue kloosterman(i64 a, i64 b, const Modulus& p, ValueMode mode = ValueMode::Floating);
SumValue hyper_kloosterman(i64 u, const Modulus& p, ValueMode mode = ValueMode::Floating);

/// All K_p(u), u mod p, in O(p^2): first S(1, m; p) for every m, then
/// K_p(u) = sum_{c != 0} S(1, cbar; p) e_p(u c).
class HyperKloostermanTable {
 public:
  explicit HyperKloostermanTable(const Modulus& p);

  u64 modulus() const { return p_; }
  const cplx& operator[](u64 u) const { return values_[u]; }
  cplx at(i64 u) const { return values_[reduce(u, p_)]; }
  SumValue value(i64 u) const { return SumValue(at(u), err_); }
  double err() const { return err_; }
  const std::vector<cplx>& values() const { return values_; }
  /// S(1, m; p) from the first stage.
  const std::vector<double>& kloosterman_row() const { return s_; }

 private:
  u64 p_;
  std::vector<double> s_;
  std::vector<cplx> values_;
  double err_ = 0.0;
};

/// Shared, lazily built tables keyed by p (thread-safe).
std::shared_ptr<const HyperKloostermanTable> hyper_kloosterman_table(u64 p);

/// sum over chi mod p (primitive or all) of g(chi)^3 chi(r) conj(chi)(m).
SumValue cubed_gauss_sum(const Modulus& p, i64 r, i64 m, CharacterFilter filter = CharacterFilter::Primitive);

/// Brute-force left side against phi(p) K_p(m rbar) + 1.
/// Tolerance is 1e-6 p^3 absolute.
IdentityReport cubed_gauss_identity(const Modulus& p, i64 r, i64 m);

struct CubedGaussSweep {
  u64 p = 0;
  u64 cases = 0;
  u64 failures = 0;
  double max_abs_err = 0.0;
  double tolerance = 0.0;
};

/// The identity for every admissible (r, m) modulo p, or `samples` seeded
/// random pairs when samples > 0.
CubedGaussSweep cubed_gauss_sweep(u64 p, u64 samples = 0, u64 seed = 0);

struct DeligneRow {
  u64 p = 0;
  double max_ratio = 0.0;  // max_{u != 0} |K_p(u)| / p
  i64 argmax_u = 0;
  double conj_law_err = 0.0;  // max_u |conj K_p(u) - K_p(-u)|
  double table_err = 0.0;
  double weil_ratio = 0.0;  // max_b |S(1,b;p)| / (2 sqrt p)
};

struct DeligneReport {
  std::vector<DeligneRow> rows;
  double max_ratio = 0.0;
  u64 argmax_p = 0;
  bool conj_law_ok = true;
};

DeligneReport deligne_measure(u64 pmax, u64 conj_pmax);

}  // namespace charsumlab
