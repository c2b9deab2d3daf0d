#pragma once

// The twisted first moment
//
//   T = sum_{q in family} sum*_{chi mod q} L(1/2, pi x chi) (1 + chi(-1)) conj(chi)(ell)
//
// over q = q1 q2 with primes q_i = 1 mod 4 in disjoint boxes [Q_i, 2 Q_i], computed
// directly from L-values and through the approximate functional equation as F + S.

#include <array>
#include <utility>
#include <vector>

#include "charsumlab/lfunctions.hpp"

namespace charsumlab {

struct FamilyMember {
  u64 q1 = 0;
  u64 q2 = 0;
  u64 q = 0;
};

struct ModulusFamily {
  u64 Q1 = 0;
  u64 Q2 = 0;
  double delta = 0.01;
  std::vector<FamilyMember> members;  // sorted by q

  /// Y = sum of q over the family.
  u64 Y() const;
};

/// Throws OverlappingBoxes when [Q1, 2Q1] meets [Q2, 2Q2], InvalidArgument
/// outside 5 <= Q_i <= 500, EmptyFamily when a box holds no prime = 1 mod 4.
ModulusFamily build_family(u64 Q1, u64 Q2);

struct MomentOptions {
  bool allow_any_ell = false;  // otherwise ell must be 1 or a prime power
};

/// ell >= 1, ell < Q2, coprime to every member.
void validate_ell(const ModulusFamily& fam, u64 ell, const MomentOptions& opts = {});

/// Roles r in R = {1, q1, q2, q1 q2}, in that order.
inline constexpr std::size_t kRoles = 4;

struct MemberReport {
  FamilyMember member;
  u64 primitive_count = 0;  // (q1 - 2)(q2 - 2)
  cplx T_direct;
  cplx F_definition;
  cplx F_decomposed;
  std::array<std::array<cplx, kRoles>, 2> F_parts{};  // [+, -][role]
  std::array<cplx, kRoles> diagonal{};  // the n = ell term of F_{+, r}
  cplx S_definition;
  cplx S_kproduct;
  cplx R_plus;  // phi(q) q^{-3/2} sum K K, sign +
  cplx R_minus;
  u64 F_terms = 0;
  u64 S_terms = 0;
};

struct MomentReport {
  u64 ell = 1;
  double X = 1.0;
  u64 Y = 0;
  cplx T_direct;
  cplx T_decomposed;  // F_decomposed + S_kproduct
  cplx main_term;  // lambda(ell) / sqrt(ell) * Y
  cplx F_term;
  cplx F_definition;
  std::array<cplx, kRoles> leading{};  // L_r summed over the family
  cplx F_offdiagonal;
  cplx S_term;
  cplx S_definition;
  cplx R_plus;
  cplx R_minus;
  cplx S_remainder;  // S - R_+ - R_-
  double E_diagnostic = 0.0;  // at s = 0.01, n up to the longest dual sum
  cplx residual;  // T_direct - main_term
  double identity_rel_err = 0.0;  // |T_direct - T_decomposed| / |T_direct|
  double F_route_rel_err = 0.0;
  double S_route_rel_err = 0.0;
  bool identity_pass = false;  // all three within 1e-4
  std::vector<MemberReport> members;
};

/// T by summing 2 L(1/2, chi)^3 conj(chi)(ell) over primitive even chi.
cplx twisted_average_direct(const ModulusFamily& fam, const ToyGL3Form& form, u64 ell, const MomentOptions& opts = {});

/// Full report: T directly, F and S by both routes, the diagonal and the diagnostics.
MomentReport moment_pipeline(const ModulusFamily& fam, const ToyGL3Form& form, u64 ell, double X,
                             const MomentOptions& opts = {});

struct TrendRung {
  u64 Q1 = 0;
  u64 Q2 = 0;
  std::size_t members = 0;
  u64 Y = 0;
  cplx T_direct;
  cplx main_term;
  double residual_ratio = 0.0;  // |T - main| / Y
  double X = 0.0;  // (Q1 Q2)^{-1/2}
  double S_ratio = 0.0;  // |S| / |main| at that X
};

struct TrendReport {
  u64 ell = 1;
  std::vector<TrendRung> rungs;
  bool residual_decreasing = false;
  bool S_ratio_decreasing = false;
};

/// Rungs (Q1, Q2) = (5 (k + 2), 20 (k + 2)) for k < ladder.
TrendReport moment_trend(std::size_t ladder, const ToyGL3Form& form, u64 ell, const MomentOptions& opts = {});

struct DominanceRung {
  u64 Q1 = 0;
  u64 Q2 = 0;
  std::size_t members = 0;
  u64 Y = 0;
  double X = 0.0;  // (Q1 Q2)^{-1/2}
  cplx S_term;
  cplx main_term;
  double ratio = 0.0;  // |S| / |main|
};

/// Boxes with Q1 Q2 = 200, 800, 2000.
inline const std::vector<std::pair<u64, u64>> kDominanceBoxes{{5, 40}, {10, 80}, {20, 100}};

/// |S| against the main term at X = (Q1 Q2)^{-1/2} for each pair of boxes.
std::vector<DominanceRung> s_dominance(const std::vector<std::pair<u64, u64>>& boxes, const ToyGL3Form& form, u64 ell,
                                       const MomentOptions& opts = {});

/// S by the hyper-Kloosterman product route only.
cplx S_term_kproduct(const ModulusFamily& fam, const ToyGL3Form& form, u64 ell, double X);

}  // namespace charsumlab
