#pragma once

// Dirichlet L-values, the triple-divisor toy form whose twists satisfy
// L(s, pi x chi) = L(s, chi)^3, root numbers and the approximate functional
// equation
//
//   L(1/2, pi x chi) = sum_n lambda(n) chi(n) n^{-1/2} V(n X / q^{3/2})
//                    + eps_chi sum_n lambda~(n) conj(chi)(n) n^{-1/2} V(n / (X q^{3/2})).

#include <memory>
#include <vector>

#include "charsumlab/archimedean.hpp"
#include "charsumlab/characters.hpp"

namespace charsumlab {

struct HurwitzConfig {
  unsigned direct_terms = 50;
  unsigned order = 6;  // Bernoulli terms B_2 .. B_{2 order}, at most 10
};

/// zeta(s, a) for a in (0, 1], Re(s) > -2; throws PoleAtOne at s = 1.
cplx hurwitz_zeta(cplx s, double a, const HurwitzConfig& cfg = {});
cplx riemann_zeta(cplx s, const HurwitzConfig& cfg = {});

enum class LRoute { Hurwitz, Afe };

/// L(s, chi). The Hurwitz route works for every character and s; the
/// smoothed approximate functional equation route needs chi primitive, q > 1
/// and s = 1/2.
cplx dirichlet_L(cplx s, const DirichletCharacter& chi, LRoute route = LRoute::Hurwitz);

/// L(s, chi) for every chi mod q, indexed by DirichletCharacter::index().
std::vector<cplx> dirichlet_L_all(const CharacterGroup& group, cplx s);

/// g(chi) / (i^kappa sqrt q) for primitive chi of parity (-1)^kappa.
cplx degree_one_root_number(const DirichletCharacter& chi);

/// q^{s/2} Gamma_R(s + kappa) L(s, chi) for primitive chi.
cplx completed_L(cplx s, const DirichletCharacter& chi);

/// g(chi)^3 / q^{3/2}; throws NotPrimitive.
cplx epsilon_factor(const DirichletCharacter& chi);

/// d3(n) = #{(a, b, c) : abc = n} for 0 <= n <= N (d3(0) = 0).
std::vector<u32> d3_table(u64 N);

class ToyGL3Form {
 public:
  /// lambda(n, 1) = d3(n), self-dual, alpha = (0, 0, 0).
  ToyGL3Form();

  const LanglandsParams& params() const { return params_; }
  /// lambda(n, 1) for n <= N; shared and grown on demand.
  std::shared_ptr<const std::vector<u32>> coefficients(u64 N) const;
  u64 lambda(u64 n) const;
  u64 dual_lambda(u64 n) const { return lambda(n); }

 private:
  LanglandsParams params_;
  struct Cache;
  std::shared_ptr<Cache> cache_;
};

/// L(1/2, chi)^3 for primitive even chi (InvalidArgument for odd chi).
cplx twisted_central_value(const ToyGL3Form& form, const DirichletCharacter& chi);

/// A[r] = sum over n <= N, n = r mod q of lambda[n] n^{-1/2} V(n scale).
std::vector<cplx> residue_class_sums(const std::vector<u32>& lambda, u64 q, u64 N, double scale, const CutoffTable& V);

struct AfeReport {
  u64 q = 0;
  u64 chi_index = 0;
  double X = 0.0;
  cplx lhs;  // L(1/2, chi)^3
  cplx rhs;
  cplx first_sum;
  cplx second_sum;
  u64 first_terms = 0;
  u64 second_terms = 0;
  double abs_err = 0.0;
  double rel_err = 0.0;
  bool pass = false;  // rel_err <= 1e-4
};

inline constexpr u64 kMaxAfeModulus = 50;
inline constexpr u64 kMaxAfeTerms = 50'000'000;

/// The right side of the approximate functional equation against the Hurwitz
/// route, for primitive even chi with q <= 50 and X in [1e-2, 1e2]. Throws
/// TruncationInsufficient when the cutoff table cannot certify 1e-8.
AfeReport afe_check(const ToyGL3Form& form, const DirichletCharacter& chi, double X);

/// afe_check for every primitive even chi mod q (ordered by index).
std::vector<AfeReport> afe_check_all(const ToyGL3Form& form, u64 q, double X);

}  // namespace charsumlab
