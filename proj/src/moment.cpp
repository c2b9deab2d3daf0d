#include "charsumlab/moment.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "charsumlab/error.hpp"
#include "charsumlab/expsums.hpp"
#include "charsumlab/parallel.hpp"

namespace charsumlab {

namespace {

constexpr double kIdentityTol = 1e-4;
constexpr double kDiagnosticS = 0.01;

std::vector<u64> box_primes(u64 Q) { return primes_in(Q, 2 * Q, Congruence{1, 4}); }

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(a), 1e-300); }

u64 inv_cube(u64 x, u64 p) {
  const u64 i = mod_inverse(static_cast<i64>(x % p), p);
  return mul_mod(mul_mod(i, i, p), i, p);
}

struct Sums {
  std::shared_ptr<const CutoffTable> table;
  std::shared_ptr<const std::vector<u32>> lambda;
  u64 N = 0;
  std::vector<cplx> classes;
};

// Residue-class sums for V(n scale), n up to where the table vanishes.
Sums class_sums_for(const ToyGL3Form& form, u64 q, double scale) {
  Sums s;
  s.table = cutoff_table(form.params(), scale);
  s.N = static_cast<u64>(s.table->y_hi() / scale);
  if (s.N > kMaxAfeTerms) throw Error(ErrorCode::TruncationInsufficient, "moment sums too long");
  s.lambda = form.coefficients(s.N);
  s.classes = residue_class_sums(*s.lambda, q, s.N, scale, *s.table);
  return s;
}

// sum over the two signs of (phi(q1) K_q1(m l q2bar^3) + 1)(phi(q2) K_q2(m l q1bar^3) + 1) at +-m,
// split into the phi(q) K K products and the rest.
struct KProduct {
  std::vector<cplx> full, plus, minus;
};

KProduct kproduct_weights(const FamilyMember& mem, u64 ell) {
  const auto K1 = hyper_kloosterman_table(mem.q1);
  const auto K2 = hyper_kloosterman_table(mem.q2);
  const u64 c1 = mul_mod(ell % mem.q1, inv_cube(mem.q2, mem.q1), mem.q1);
  const u64 c2 = mul_mod(ell % mem.q2, inv_cube(mem.q1, mem.q2), mem.q2);
  const double phi1 = static_cast<double>(mem.q1 - 1), phi2 = static_cast<double>(mem.q2 - 1);
  KProduct w;
  w.full.assign(mem.q, 0.0);
  w.plus.assign(mem.q, 0.0);
  w.minus.assign(mem.q, 0.0);
  for (u64 m = 1; m < mem.q; ++m) {
    if (m % mem.q1 == 0 || m % mem.q2 == 0) continue;
    for (int sign : {1, -1}) {
      const i64 m1 = sign * static_cast<i64>(mul_mod(m % mem.q1, c1, mem.q1));
      const i64 m2 = sign * static_cast<i64>(mul_mod(m % mem.q2, c2, mem.q2));
      const cplx k1 = K1->at(m1), k2 = K2->at(m2);
      w.full[m] += (phi1 * k1 + 1.0) * (phi2 * k2 + 1.0);
      (sign > 0 ? w.plus : w.minus)[m] = phi1 * phi2 * k1 * k2;
    }
  }
  return w;
}

cplx dot(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  CompensatedSum acc;
  for (std::size_t i = 0; i < a.size(); ++i) acc.add(a[i] * b[i]);
  return acc.value();
}

cplx member_direct(const FamilyMember& mem, u64 ell) {
  const auto group = CharacterGroup::create(Modulus(mem.q));
  const auto L = dirichlet_L_all(*group, cplx(0.5, 0));
  CompensatedSum acc;
  for (const auto& chi : enumerate_characters(group, CharacterFilter::PrimitiveEven)) {
    const cplx l = L[chi.index()];
    acc.add(2.0 * l * l * l * std::conj(chi(static_cast<i64>(ell))));
  }
  return acc.value();
}

MemberReport member_pipeline(const FamilyMember& mem, const ToyGL3Form& form, u64 ell, double X) {
  MemberReport rep;
  rep.member = mem;
  rep.primitive_count = (mem.q1 - 2) * (mem.q2 - 2);
  const u64 q = mem.q;
  const double q32 = std::pow(static_cast<double>(q), 1.5);
  const auto group = CharacterGroup::create(Modulus(q));
  const auto L = dirichlet_L_all(*group, cplx(0.5, 0));
  const auto g = gauss_sums(*group);
  const auto primitive = enumerate_characters(group, CharacterFilter::Primitive);

  // brute-force inner character sums per residue class
  std::vector<cplx> c_def(q, 0.0), d_def(q, 0.0);
  CompensatedSum direct;
  for (const auto& chi : primitive) {
    const cplx wl = std::conj(chi(static_cast<i64>(ell)));
    const double proj = 1.0 + chi.parity();
    const cplx gi = g[chi.index()].value();
    const cplx g3 = gi * gi * gi;
    for (u64 r = 1; r < q; ++r) {
      const cplx c = chi(static_cast<i64>(r));
      if (c == cplx(0, 0)) continue;
      c_def[r] += c * proj * wl;
      d_def[r] += g3 * proj * std::conj(c) * wl;
    }
    if (chi.is_even()) {
      const cplx l = L[chi.index()];
      direct.add(2.0 * l * l * l * wl);
    }
  }
  rep.T_direct = direct.value();

  // F
  const Sums F = class_sums_for(form, q, X / q32);
  rep.F_terms = F.N;
  rep.F_definition = dot(c_def, F.classes);
  const u64 roles[kRoles] = {1, mem.q1, mem.q2, q};
  const double lead = static_cast<double>((*F.lambda)[ell]) / std::sqrt(static_cast<double>(ell)) *
                      (ell <= F.N ? (*F.table)(static_cast<double>(ell) * X / q32).real() : 0.0);
  for (std::size_t j = 0; j < kRoles; ++j) {
    const u64 r = roles[j];
    const double coeff = mobius(q / r) * static_cast<double>(totient(r));
    for (int s = 0; s < 2; ++s) {
      const u64 target = reduce(s == 0 ? static_cast<i64>(ell) : -static_cast<i64>(ell), r);
      CompensatedSum acc;
      for (u64 m = 1; m < q; ++m)
        if (m % mem.q1 != 0 && m % mem.q2 != 0 && m % r == target) acc.add(F.classes[m]);
      rep.F_parts[s][j] = coeff * acc.value();
    }
    rep.diagonal[j] = coeff * lead;
  }
  rep.F_decomposed = 0;
  for (const auto& side : rep.F_parts)
    for (cplx v : side) rep.F_decomposed += v;

  // S
  const Sums S = class_sums_for(form, q, 1 / (X * q32));
  rep.S_terms = S.N;
  rep.S_definition = dot(d_def, S.classes) / q32;
  const KProduct w = kproduct_weights(mem, ell);
  rep.S_kproduct = dot(w.full, S.classes) / q32;
  rep.R_plus = dot(w.plus, S.classes) / q32;
  rep.R_minus = dot(w.minus, S.classes) / q32;
  return rep;
}

double e_diagnostic(const ModulusFamily& fam, u64 ell, u64 N) {
  std::vector<u64> q1s, q2s;
  for (const auto& m : fam.members) {
    if (std::find(q1s.begin(), q1s.end(), m.q1) == q1s.end()) q1s.push_back(m.q1);
    if (std::find(q2s.begin(), q2s.end(), m.q2) == q2s.end()) q2s.push_back(m.q2);
  }
  double total = 0;
  for (u64 q1 : q1s) {
    const auto K1 = hyper_kloosterman_table(q1);
    for (u64 n = 1; n <= N; ++n) {
      cplx inner = 0;
      for (u64 q2 : q2s) {
        const auto K2 = hyper_kloosterman_table(q2);
        const u64 nl1 = mul_mod(mul_mod(n % q1, ell % q1, q1), inv_cube(q2, q1), q1);
        const u64 nl2 = mul_mod(mul_mod(n % q2, ell % q2, q2), inv_cube(q1, q2), q2);
        inner += static_cast<double>(q2 - 1) / std::pow(static_cast<double>(q2), 1.5 - kDiagnosticS) * (*K1)[nl1] * (*K2)[nl2];
      }
      total += std::norm(inner);
    }
  }
  return total;
}

cplx main_term(const ToyGL3Form& form, u64 ell, u64 Y) {
  return static_cast<double>(form.lambda(ell)) / std::sqrt(static_cast<double>(ell)) * static_cast<double>(Y);
}

}  // namespace

u64 ModulusFamily::Y() const {
  u64 y = 0;
  for (const auto& m : members) y += m.q;
  return y;
}

ModulusFamily build_family(u64 Q1, u64 Q2) {
  if (Q1 < 5 || Q2 < 5 || Q1 > 500 || Q2 > 500) throw Error(ErrorCode::InvalidArgument, "box parameters must lie in [5, 500]");
  if (!(2 * Q1 < Q2 || 2 * Q2 < Q1)) throw Error(ErrorCode::OverlappingBoxes, "boxes [Q1, 2Q1] and [Q2, 2Q2] overlap");
  ModulusFamily fam;
  fam.Q1 = Q1;
  fam.Q2 = Q2;
  const auto p1 = box_primes(Q1), p2 = box_primes(Q2);
  if (p1.empty() || p2.empty()) throw Error(ErrorCode::EmptyFamily, "a box contains no prime = 1 mod 4");
  for (u64 a : p1)
    for (u64 b : p2) fam.members.push_back({a, b, a * b});
  std::sort(fam.members.begin(), fam.members.end(), [](const FamilyMember& x, const FamilyMember& y) { return x.q < y.q; });
  return fam;
}

void validate_ell(const ModulusFamily& fam, u64 ell, const MomentOptions& opts) {
  if (ell < 1) throw Error(ErrorCode::InvalidArgument, "ell must be positive");
  if (ell >= fam.Q2) throw Error(ErrorCode::InvalidArgument, "ell must be below Q2");
  if (!opts.allow_any_ell && ell > 1 && Modulus(ell).primes().size() != 1)
    throw Error(ErrorCode::InvalidArgument, "ell must be a prime power");
  for (const auto& m : fam.members)
    if (std::gcd(ell, m.q) != 1) throw Error(ErrorCode::NotCoprime, "ell must be coprime to every modulus");
}

cplx twisted_average_direct(const ModulusFamily& fam, const ToyGL3Form&, u64 ell, const MomentOptions& opts) {
  validate_ell(fam, ell, opts);
  const auto parts = parallel_map(fam.members.size(), [&](std::size_t i) { return member_direct(fam.members[i], ell); });
  CompensatedSum acc;
  for (cplx v : parts) acc.add(v);
  return acc.value();
}

MomentReport moment_pipeline(const ModulusFamily& fam, const ToyGL3Form& form, u64 ell, double X, const MomentOptions& opts) {
  validate_ell(fam, ell, opts);
  if (!(X > 0)) throw Error(ErrorCode::InvalidArgument, "X must be positive");
  // build shared tables once before the parallel section
  u64 qmax = 0;
  for (const auto& m : fam.members) qmax = std::max(qmax, m.q);
  const double q32 = std::pow(static_cast<double>(qmax), 1.5);
  cutoff_table(form.params(), std::min(X / q32, 1 / (X * q32)));
  for (const auto& m : fam.members) {
    hyper_kloosterman_table(m.q1);
    hyper_kloosterman_table(m.q2);
  }
  MomentReport rep;
  rep.ell = ell;
  rep.X = X;
  rep.Y = fam.Y();
  rep.members = parallel_map(fam.members.size(), [&](std::size_t i) { return member_pipeline(fam.members[i], form, ell, X); });
  CompensatedSum T, Fd, Fk, Sd, Sk, Rp, Rm;
  std::array<CompensatedSum, kRoles> lead;
  u64 longest = 0;
  for (const auto& m : rep.members) {
    T.add(m.T_direct);
    Fd.add(m.F_definition);
    Fk.add(m.F_decomposed);
    Sd.add(m.S_definition);
    Sk.add(m.S_kproduct);
    Rp.add(m.R_plus);
    Rm.add(m.R_minus);
    for (std::size_t j = 0; j < kRoles; ++j) lead[j].add(m.diagonal[j]);
    longest = std::max(longest, m.S_terms);
  }
  rep.T_direct = T.value();
  rep.F_definition = Fd.value();
  rep.F_term = Fk.value();
  rep.S_definition = Sd.value();
  rep.S_term = Sk.value();
  rep.R_plus = Rp.value();
  rep.R_minus = Rm.value();
  rep.S_remainder = rep.S_term - rep.R_plus - rep.R_minus;
  cplx diag = 0;
  for (std::size_t j = 0; j < kRoles; ++j) {
    rep.leading[j] = lead[j].value();
    diag += rep.leading[j];
  }
  rep.F_offdiagonal = rep.F_term - diag;
  rep.T_decomposed = rep.F_term + rep.S_term;
  rep.main_term = main_term(form, ell, rep.Y);
  rep.residual = rep.T_direct - rep.main_term;
  rep.E_diagnostic = e_diagnostic(fam, ell, longest);
  rep.identity_rel_err = rel(rep.T_direct, rep.T_decomposed);
  rep.F_route_rel_err = rel(rep.F_definition, rep.F_term);
  rep.S_route_rel_err = rel(rep.S_definition, rep.S_term);
  rep.identity_pass = rep.identity_rel_err <= kIdentityTol && rep.F_route_rel_err <= kIdentityTol && rep.S_route_rel_err <= kIdentityTol;
  return rep;
}

cplx S_term_kproduct(const ModulusFamily& fam, const ToyGL3Form& form, u64 ell, double X) {
  for (const auto& m : fam.members) {
    hyper_kloosterman_table(m.q1);
    hyper_kloosterman_table(m.q2);
  }
  u64 qmax = 0;
  for (const auto& m : fam.members) qmax = std::max(qmax, m.q);
  cutoff_table(form.params(), 1 / (X * std::pow(static_cast<double>(qmax), 1.5)));
  const auto parts = parallel_map(fam.members.size(), [&](std::size_t i) {
    const auto& m = fam.members[i];
    const double q32 = std::pow(static_cast<double>(m.q), 1.5);
    const Sums S = class_sums_for(form, m.q, 1 / (X * q32));
    return dot(kproduct_weights(m, ell).full, S.classes) / q32;
  });
  CompensatedSum acc;
  for (cplx v : parts) acc.add(v);
  return acc.value();
}

TrendReport moment_trend(std::size_t ladder, const ToyGL3Form& form, u64 ell, const MomentOptions& opts) {
  TrendReport rep;
  rep.ell = ell;
  for (std::size_t k = 0; k < ladder; ++k) {
    TrendRung r;
    r.Q1 = 5 * (k + 2);
    r.Q2 = 20 * (k + 2);
    const auto fam = build_family(r.Q1, r.Q2);
    r.members = fam.members.size();
    r.Y = fam.Y();
    r.T_direct = twisted_average_direct(fam, form, ell, opts);
    r.main_term = main_term(form, ell, r.Y);
    r.residual_ratio = std::abs(r.T_direct - r.main_term) / static_cast<double>(r.Y);
    r.X = 1 / std::sqrt(static_cast<double>(r.Q1 * r.Q2));
    r.S_ratio = std::abs(S_term_kproduct(fam, form, ell, r.X)) / std::abs(r.main_term);
    rep.rungs.push_back(r);
  }
  rep.residual_decreasing = rep.S_ratio_decreasing = rep.rungs.size() >= 2;
  for (std::size_t k = 1; k < rep.rungs.size(); ++k) {
    rep.residual_decreasing = rep.residual_decreasing && rep.rungs[k].residual_ratio < rep.rungs[k - 1].residual_ratio;
    rep.S_ratio_decreasing = rep.S_ratio_decreasing && rep.rungs[k].S_ratio < rep.rungs[k - 1].S_ratio;
  }
  return rep;
}

std::vector<DominanceRung> s_dominance(const std::vector<std::pair<u64, u64>>& boxes, const ToyGL3Form& form, u64 ell,
                                       const MomentOptions& opts) {
  std::vector<DominanceRung> out;
  for (const auto& [Q1, Q2] : boxes) {
    const auto fam = build_family(Q1, Q2);
    validate_ell(fam, ell, opts);
    DominanceRung r;
    r.Q1 = Q1;
    r.Q2 = Q2;
    r.members = fam.members.size();
    r.Y = fam.Y();
    r.X = 1 / std::sqrt(static_cast<double>(Q1 * Q2));
    r.S_term = S_term_kproduct(fam, form, ell, r.X);
    r.main_term = main_term(form, ell, r.Y);
    r.ratio = std::abs(r.S_term) / std::abs(r.main_term);
    out.push_back(r);
  }
  return out;
}

}  // namespace charsumlab
