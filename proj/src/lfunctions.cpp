#include "charsumlab/lfunctions.hpp"

#include <cmath>
#include <mutex>
#include <numeric>

#include "charsumlab/error.hpp"
#include "charsumlab/expsums.hpp"

namespace charsumlab {

namespace {

// B_2 .. B_20
const double kBernoulli[] = {1.0 / 6,   -1.0 / 30,       1.0 / 42,         -1.0 / 30,  5.0 / 66,
                             -691.0 / 2730, 7.0 / 6, -3617.0 / 510, 43867.0 / 798, -174611.0 / 330};

// Euler-Maclaurin for zeta(s, a); at s = 1 the pole 1/(s - 1) is dropped and the finite part returned.
cplx hurwitz_core(cplx s, double a, const HurwitzConfig& cfg) {
  if (!(a > 0 && a <= 1)) throw Error(ErrorCode::InvalidArgument, "Hurwitz parameter must lie in (0, 1]");
  if (s.real() <= -2) throw Error(ErrorCode::InvalidArgument, "Hurwitz zeta requires Re(s) > -2");
  if (cfg.order == 0 || cfg.order > 10) throw Error(ErrorCode::InvalidArgument, "Euler-Maclaurin order must be 1..10");
  const unsigned N = cfg.direct_terms;
  CompensatedSum acc;
  for (unsigned k = 0; k < N; ++k) acc.add(std::exp(-s * std::log(k + a)));
  const double x = N + a, lx = std::log(x);
  cplx tail;
  if (s == cplx(1, 0))
    tail = -lx;
  else
    tail = std::exp((1.0 - s) * lx) / (s - 1.0);
  tail += 0.5 * std::exp(-s * lx);
  cplx rising = s;  // (s)_{2j-1}
  double fact = 2;  // (2j)!
  for (unsigned j = 1; j <= cfg.order; ++j) {
    tail += kBernoulli[j - 1] / fact * rising * std::exp((-s - static_cast<double>(2 * j - 1)) * lx);
    rising *= (s + static_cast<double>(2 * j - 1)) * (s + static_cast<double>(2 * j));
    fact *= static_cast<double>((2 * j + 1) * (2 * j + 2));
  }
  return acc.value() + tail;
}

cplx i_power(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {1, 0};
    case 1: return {0, 1};
    case 2: return {-1, 0};
    default: return {0, -1};
  }
}

void require_primitive(const DirichletCharacter& chi) {
  if (!chi.is_primitive()) throw Error(ErrorCode::NotPrimitive, "character must be primitive");
}

struct AfeSetup {
  u64 N1 = 0, N2 = 0;
  double scale1 = 0, scale2 = 0;
  std::shared_ptr<const CutoffTable> table;
  std::vector<cplx> A, B;
};

AfeSetup afe_setup(const ToyGL3Form& form, u64 q, double X) {
  if (q > kMaxAfeModulus) throw Error(ErrorCode::ModulusTooLarge, "AFE check requires q <= 50");
  if (!(X >= 1e-2 && X <= 1e2)) throw Error(ErrorCode::InvalidArgument, "X must lie in [1e-2, 1e2]");
  AfeSetup s;
  const double q32 = std::pow(static_cast<double>(q), 1.5);
  s.scale1 = X / q32;
  s.scale2 = 1 / (X * q32);
  s.table = cutoff_table(form.params(), std::min(s.scale1, s.scale2));
  if (s.table->err() > 1e-8) throw Error(ErrorCode::TruncationInsufficient, "cutoff table error exceeds 1e-8");
  s.N1 = static_cast<u64>(s.table->y_hi() / s.scale1);
  s.N2 = static_cast<u64>(s.table->y_hi() / s.scale2);
  if (std::max(s.N1, s.N2) > kMaxAfeTerms) throw Error(ErrorCode::TruncationInsufficient, "AFE sums too long");
  const auto lambda = form.coefficients(std::max(s.N1, s.N2));
  s.A = residue_class_sums(*lambda, q, s.N1, s.scale1, *s.table);
  s.B = residue_class_sums(*lambda, q, s.N2, s.scale2, *s.table);
  return s;
}

AfeReport finish_report(u64 q, u64 index, double X, cplx lhs, cplx first, cplx second, cplx eps, const AfeSetup& s) {
  AfeReport r;
  r.q = q;
  r.chi_index = index;
  r.X = X;
  r.lhs = lhs;
  r.first_sum = first;
  r.second_sum = second;
  r.rhs = first + eps * second;
  r.first_terms = s.N1;
  r.second_terms = s.N2;
  r.abs_err = std::abs(r.rhs - r.lhs);
  r.rel_err = r.abs_err / std::max(std::abs(r.lhs), 1e-300);
  r.pass = r.rel_err <= 1e-4;
  return r;
}

}  // namespace

std::vector<cplx> residue_class_sums(const std::vector<u32>& lambda, u64 q, u64 N, double scale, const CutoffTable& V) {
  std::vector<CompensatedSum> acc(q);
  for (u64 n = 1; n <= N; ++n) acc[n % q].add(static_cast<double>(lambda[n]) / std::sqrt(static_cast<double>(n)) * V(n * scale));
  std::vector<cplx> out(q);
  for (u64 r = 0; r < q; ++r) out[r] = acc[r].value();
  return out;
}

cplx hurwitz_zeta(cplx s, double a, const HurwitzConfig& cfg) {
  if (s == cplx(1, 0)) throw Error(ErrorCode::PoleAtOne, "zeta(s, a) has a pole at s = 1");
  return hurwitz_core(s, a, cfg);
}

cplx riemann_zeta(cplx s, const HurwitzConfig& cfg) { return hurwitz_zeta(s, 1.0, cfg); }

cplx dirichlet_L(cplx s, const DirichletCharacter& chi, LRoute route) {
  const u64 q = chi.modulus();
  if (route == LRoute::Afe) {
    require_primitive(chi);
    if (q == 1) throw Error(ErrorCode::InvalidArgument, "the AFE route needs q > 1");
    if (s != cplx(0.5, 0)) throw Error(ErrorCode::InvalidArgument, "the AFE route is implemented at s = 1/2");
    const auto params = LanglandsParams::dirichlet(chi.is_even() ? 0 : 1);
    const double scale = 1 / std::sqrt(static_cast<double>(q));
    const auto table = cutoff_table(params, scale);
    const u64 N = static_cast<u64>(table->y_hi() / scale);
    CompensatedSum first, second;
    for (u64 n = 1; n <= N; ++n) {
      const cplx c = chi(static_cast<i64>(n));
      if (c == cplx(0, 0)) continue;
      const cplx v = (*table)(n * scale) / std::sqrt(static_cast<double>(n));
      first.add(c * v);
      second.add(std::conj(c) * v);
    }
    return first.value() + degree_one_root_number(chi) * second.value();
  }
  if (s == cplx(1, 0) && chi.is_trivial()) throw Error(ErrorCode::PoleAtOne, "L(s, chi_0) has a pole at s = 1");
  if (q == 1) return riemann_zeta(s);
  CompensatedSum acc;
  for (u64 a = 1; a < q; ++a) {
    const cplx c = chi(static_cast<i64>(a));
    if (c == cplx(0, 0)) continue;
    acc.add(c * hurwitz_core(s, static_cast<double>(a) / static_cast<double>(q), {}));
  }
  return acc.value() * std::exp(-s * std::log(static_cast<double>(q)));
}

std::vector<cplx> dirichlet_L_all(const CharacterGroup& group, cplx s) {
  if (s == cplx(1, 0)) throw Error(ErrorCode::PoleAtOne, "the trivial character has a pole at s = 1");
  const u64 q = group.modulus();
  if (q == 1) return {riemann_zeta(s)};
  std::vector<cplx> f(q);
  for (u64 a = 1; a < q; ++a)
    if (std::gcd(a, q) == 1) f[a] = hurwitz_core(s, static_cast<double>(a) / static_cast<double>(q), {});
  auto out = character_transform(group, f);
  const cplx qs = std::exp(-s * std::log(static_cast<double>(q)));
  for (auto& v : out) v *= qs;
  return out;
}

cplx degree_one_root_number(const DirichletCharacter& chi) {
  require_primitive(chi);
  const int kappa = chi.is_even() ? 0 : 1;
  return gauss_sum(chi).value() / (i_power(kappa) * std::sqrt(static_cast<double>(chi.modulus())));
}

cplx completed_L(cplx s, const DirichletCharacter& chi) {
  require_primitive(chi);
  const double kappa = chi.is_even() ? 0 : 1;
  return std::exp(0.5 * s * std::log(static_cast<double>(chi.modulus()))) * gamma_r(s + kappa) * dirichlet_L(s, chi);
}

cplx epsilon_factor(const DirichletCharacter& chi) {
  require_primitive(chi);
  const cplx g = gauss_sum(chi).value();
  return g * g * g / std::pow(static_cast<double>(chi.modulus()), 1.5);
}

std::vector<u32> d3_table(u64 N) {
  std::vector<u32> d2(N + 1, 0), d3(N + 1, 0);
  for (u64 i = 1; i <= N; ++i)
    for (u64 j = i; j <= N; j += i) ++d2[j];
  for (u64 i = 1; i <= N; ++i)
    for (u64 j = i; j <= N; j += i) d3[j] += d2[i];
  return d3;
}

struct ToyGL3Form::Cache {
  std::mutex mu;
  std::shared_ptr<const std::vector<u32>> table;
};

ToyGL3Form::ToyGL3Form() : cache_(std::make_shared<Cache>()) {}

std::shared_ptr<const std::vector<u32>> ToyGL3Form::coefficients(u64 N) const {
  std::lock_guard<std::mutex> lock(cache_->mu);
  if (!cache_->table || cache_->table->size() <= N) {
    const u64 have = cache_->table ? cache_->table->size() : 0;
    cache_->table = std::make_shared<const std::vector<u32>>(d3_table(std::max<u64>(N, 2 * have)));
  }
  return cache_->table;
}

u64 ToyGL3Form::lambda(u64 n) const { return (*coefficients(n))[n]; }

cplx twisted_central_value(const ToyGL3Form&, const DirichletCharacter& chi) {
  require_primitive(chi);
  if (!chi.is_even()) throw Error(ErrorCode::InvalidArgument, "the twisted central value needs an even character");
  const cplx L = dirichlet_L(cplx(0.5, 0), chi);
  return L * L * L;
}

AfeReport afe_check(const ToyGL3Form& form, const DirichletCharacter& chi, double X) {
  require_primitive(chi);
  if (!chi.is_even()) throw Error(ErrorCode::InvalidArgument, "the AFE check needs an even character");
  const u64 q = chi.modulus();
  const AfeSetup s = afe_setup(form, q, X);
  CompensatedSum first, second;
  for (u64 r = 1; r < q; ++r) {
    const cplx c = chi(static_cast<i64>(r));
    first.add(c * s.A[r]);
    second.add(std::conj(c) * s.B[r]);
  }
  return finish_report(q, chi.index(), X, twisted_central_value(form, chi), first.value(), second.value(),
                       epsilon_factor(chi), s);
}

std::vector<AfeReport> afe_check_all(const ToyGL3Form& form, u64 q, double X) {
  const auto group = CharacterGroup::create(Modulus(q));
  const AfeSetup s = afe_setup(form, q, X);
  const auto first = character_transform(*group, s.A);
  std::vector<cplx> Bc(q);
  for (u64 r = 0; r < q; ++r) Bc[r] = std::conj(s.B[r]);
  const auto second = character_transform(*group, Bc);
  const auto L = dirichlet_L_all(*group, cplx(0.5, 0));
  const auto g = gauss_sums(*group);
  const double q32 = std::pow(static_cast<double>(q), 1.5);
  std::vector<AfeReport> out;
  for (const auto& chi : enumerate_characters(group, CharacterFilter::PrimitiveEven)) {
    const u64 i = chi.index();
    const cplx gi = g[i].value();
    out.push_back(finish_report(q, i, X, L[i] * L[i] * L[i], first[i], std::conj(second[i]), gi * gi * gi / q32, s));
  }
  return out;
}

}  // namespace charsumlab
