#include "charsumlab/expsums.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <random>

#include "charsumlab/error.hpp"

namespace charsumlab {

namespace {

void require_exact_size(u64 q, ValueMode mode) {
  if (mode == ValueMode::Exact && q > kMaxExactModulus)
    throw Error(ErrorCode::ModulusTooLarge, "exact backend is limited to q <= 60");
}

void require_direct_size(u64 q) {
  if (q > kMaxDirectModulus) throw Error(ErrorCode::ModulusTooLarge, "modulus exceeds 1e4");
}

template <class Backend>
SumValue kloosterman_with(const Backend& backend, i64 a, i64 b, u64 p, const std::vector<u32>& inv) {
  auto sum = backend.sum();
  const u64 ar = reduce(a, p), br = reduce(b, p);
  for (u64 x = 1; x < p; ++x) sum.add((mul_mod(ar, x, p) + mul_mod(br, inv[x], p)) % p);
  return sum.finish();
}

template <class Backend>
SumValue hyper_kloosterman_with(const Backend& backend, i64 u, u64 p, const std::vector<u32>& inv) {
  auto sum = backend.sum();
  const u64 ur = reduce(u, p);
  for (u64 a = 1; a < p; ++a) {
    for (u64 b = 1; b < p; ++b) {
      const u64 ab_inv = mul_mod(inv[a], inv[b], p);
      sum.add((a + b + mul_mod(ur, ab_inv, p)) % p);
    }
  }
  return sum.finish();
}

template <class Backend>
SumValue ramanujan_with(const Backend& backend, u64 q, i64 n) {
  auto sum = backend.sum();
  const u64 nr = reduce(n, q);
  for (u64 a = 1; a <= q; ++a)
    if (std::gcd(a, q) == 1) sum.add(mul_mod(a % q, nr, q));
  return sum.finish();
}

}  // namespace

SumValue gauss_sum(const DirichletCharacter& chi, ValueMode mode) {
  const u64 q = chi.modulus();
  require_direct_size(q);
  require_exact_size(q, mode);
  const u64 denom = chi.group().phase_denominator();
  if (mode == ValueMode::Exact) {
    const u64 order = std::lcm(denom, q);
    Cyclotomic acc(order);
    for (u64 a = 1; a < q; ++a) {
      const auto k = chi.phase(static_cast<i64>(a));
      if (!k) continue;
      acc.add_root(static_cast<i64>(*k * (order / denom) + a * (order / q)));
    }
    return SumValue::from_exact(acc);
  }
  const RootTable additive(q);
  SumAccumulator acc;
  for (u64 a = 1; a < q; ++a) {
    const auto k = chi.phase(static_cast<i64>(a));
    if (!k) continue;
    acc.add(chi.group().roots()[*k] * additive[a], 2 * kUnitTermErr);
  }
  return acc.value();
}

std::vector<SumValue> gauss_sums(const CharacterGroup& group) {
  const u64 q = group.modulus();
  require_direct_size(q);
  const RootTable additive(q);
  std::vector<cplx> f(q);
  for (u64 a = 0; a < q; ++a) f[a] = additive[a];
  const auto g = character_transform(group, f);
  u64 axes = 1;
  for (const auto& c : group.components()) axes += c.prime - 1;
  const double err = kUnitTermErr * static_cast<double>(group.size()) * static_cast<double>(axes);
  std::vector<SumValue> out;
  out.reserve(g.size());
  for (const auto& v : g) out.emplace_back(v, err);
  return out;
}

IdentityReport gauss_splitting_check(const DirichletCharacter& chi1, const DirichletCharacter& chi2,
                                     double rel_tol) {
  const u64 q1 = chi1.modulus(), q2 = chi2.modulus();
  if (std::gcd(q1, q2) != 1) throw Error(ErrorCode::NotCoprime, "moduli must be coprime");
  const auto chi = DirichletCharacter::product(chi1, chi2);
  IdentityReport rep;
  rep.lhs = gauss_sum(chi);
  rep.rhs = chi1.evaluate(static_cast<i64>(q2)) * chi2.evaluate(static_cast<i64>(q1)) * gauss_sum(chi1) *
            gauss_sum(chi2);
  rep.abs_err = std::abs(rep.lhs.value() - rep.rhs.value());
  rep.tolerance = rel_tol * std::max(rep.rhs.magnitude(), 1.0);
  rep.pass = rep.abs_err <= rep.tolerance;
  return rep;
}

i64 ramanujan_sum(const Modulus& q, i64 n) {
  const u64 g = std::gcd(q.value(), reduce(n, q.value()));
  i64 total = 0;
  for (u64 d = 1; d <= g; ++d) {
    if (g % d != 0) continue;
    total += mobius(q.value() / d) * static_cast<i64>(d);
  }
  return total;
}

SumValue ramanujan_sum_direct(const Modulus& q, i64 n, ValueMode mode) {
  require_exact_size(q.value(), mode);
  if (mode == ValueMode::Exact) return ramanujan_with(ExactBackend(q.value()), q.value(), n);
  return ramanujan_with(FloatingBackend(q.value()), q.value(), n);
}

SumValue kloosterman(i64 a, i64 b, const Modulus& p, ValueMode mode) {
  p.require_prime();
  require_direct_size(p.value());
  require_exact_size(p.value(), mode);
  const auto inv = inverse_table(p.value());
  if (mode == ValueMode::Exact) return kloosterman_with(ExactBackend(p.value()), a, b, p.value(), inv);
  return kloosterman_with(FloatingBackend(p.value()), a, b, p.value(), inv);
}

SumValue hyper_kloosterman(i64 u, const Modulus& p, ValueMode mode) {
  p.require_prime();
  require_direct_size(p.value());
  require_exact_size(p.value(), mode);
  const auto inv = inverse_table(p.value());
  if (mode == ValueMode::Exact) return hyper_kloosterman_with(ExactBackend(p.value()), u, p.value(), inv);
  return hyper_kloosterman_with(FloatingBackend(p.value()), u, p.value(), inv);
}

HyperKloostermanTable::HyperKloostermanTable(const Modulus& p) : p_(p.value()) {
  p.require_prime();
  if (p_ > kMaxTableModulus) throw Error(ErrorCode::ModulusTooLarge, "hyper-Kloosterman table is limited to p <= 1000");
  const auto inv = inverse_table(p_);
  const RootTable roots(p_);
  s_.assign(p_, 0.0);
  std::vector<double> s_err(p_, 0.0);
  for (u64 m = 0; m < p_; ++m) {
    CompensatedSum acc;
    for (u64 x = 1; x < p_; ++x) acc.add(roots[(x + mul_mod(m, inv[x], p_)) % p_]);
    s_[m] = acc.value().real();
    s_err[m] = static_cast<double>(p_ - 1) * kUnitTermErr + 2 * kEps * std::abs(acc.value());
  }
  values_.assign(p_, cplx(0, 0));
  double weight = 0;
  for (u64 c = 1; c < p_; ++c) weight += std::abs(s_[inv[c]]) * kUnitTermErr + s_err[inv[c]];
  double max_mag = 0;
  for (u64 u = 0; u < p_; ++u) {
    CompensatedSum acc;
    for (u64 c = 1; c < p_; ++c) acc.add(s_[inv[c]] * roots[mul_mod(u, c, p_)]);
    values_[u] = acc.value();
    max_mag = std::max(max_mag, std::abs(values_[u]));
  }
  err_ = weight + 2 * kEps * max_mag;
}

std::shared_ptr<const HyperKloostermanTable> hyper_kloosterman_table(u64 p) {
  static std::mutex mutex;
  static std::map<u64, std::shared_ptr<const HyperKloostermanTable>> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(p); it != cache.end()) return it->second;
  }
  auto table = std::make_shared<const HyperKloostermanTable>(Modulus(p));
  std::lock_guard lock(mutex);
  return cache.emplace(p, table).first->second;
}

SumValue cubed_gauss_sum(const Modulus& p, i64 r, i64 m, CharacterFilter filter) {
  p.require_prime();
  const auto group = CharacterGroup::create(p);
  SumAccumulator acc;
  for (const auto& chi : enumerate_characters(group, filter)) {
    const SumValue g = gauss_sum(chi);
    acc.add(g * g * g * chi.evaluate(r) * conj(chi.evaluate(m)));
  }
  return acc.value();
}

IdentityReport cubed_gauss_identity(const Modulus& p, i64 r, i64 m) {
  p.require_prime();
  const u64 q = p.value();
  if (reduce(r, q) == 0 || reduce(m, q) == 0) throw Error(ErrorCode::NotCoprime, "r and m must be units mod q");
  IdentityReport rep;
  rep.lhs = cubed_gauss_sum(p, r, m, CharacterFilter::Primitive);
  const i64 u = static_cast<i64>(mul_mod(reduce(m, q), mod_inverse(r, q), q));
  rep.rhs = scale(hyper_kloosterman(u, p), static_cast<double>(q - 1)) + SumValue::integer(1);
  rep.abs_err = std::abs(rep.lhs.value() - rep.rhs.value());
  const double q3 = std::pow(static_cast<double>(q), 3);
  rep.tolerance = 1e-6 * q3;
  rep.pass = rep.abs_err <= rep.tolerance && rep.lhs.err <= 1e-6 * q3;
  return rep;
}

CubedGaussSweep cubed_gauss_sweep(u64 p, u64 samples, u64 seed) {
  const Modulus mod(p);
  mod.require_prime();
  const auto group = CharacterGroup::create(mod);
  const auto chars = enumerate_characters(group, CharacterFilter::Primitive);
  std::vector<cplx> g3;
  for (const auto& chi : chars) {
    const cplx g = gauss_sum(chi).value();
    g3.push_back(g * g * g);
  }
  const auto table = hyper_kloosterman_table(p);
  const auto& comp = group->components()[0];
  const auto& roots = group->roots();
  const u64 n = p - 1;

  CubedGaussSweep out;
  out.p = p;
  out.tolerance = 1e-6 * std::pow(static_cast<double>(p), 3);
  auto check = [&](u64 r, u64 m) {
    // chi_e(r) conj chi_e(m) = e(e (ind r - ind m) / (p - 1))
    const u64 diff = (static_cast<u64>((*comp.dlog)[r]) + n - (*comp.dlog)[m]) % n;
    CompensatedSum acc;
    for (size_t j = 0; j < chars.size(); ++j) acc.add(g3[j] * roots[chars[j].exponents()[0] * diff % n]);
    const cplx rhs = static_cast<double>(n) * table->at(static_cast<i64>(mul_mod(m, mod_inverse(r, p), p))) + 1.0;
    const double err = std::abs(acc.value() - rhs);
    out.max_abs_err = std::max(out.max_abs_err, err);
    ++out.cases;
    if (!(err <= out.tolerance)) ++out.failures;
  };
  if (samples == 0) {
    for (u64 r = 1; r < p; ++r)
      for (u64 m = 1; m < p; ++m) check(r, m);
  } else {
    std::mt19937_64 rng(seed ^ (p * 0x9E3779B97F4A7C15ULL));
    for (u64 s = 0; s < samples; ++s) {
      const u64 r = 1 + rng() % (p - 1);
      const u64 m = 1 + rng() % (p - 1);
      check(r, m);
    }
  }
  return out;
}

DeligneReport deligne_measure(u64 pmax, u64 conj_pmax) {
  DeligneReport rep;
  for (u64 p : primes_in(3, std::max<u64>(pmax, 3))) {
    if (p > pmax) break;
    const auto table = hyper_kloosterman_table(p);
    DeligneRow row;
    row.p = p;
    row.table_err = table->err();
    for (u64 u = 1; u < p; ++u) {
      const double ratio = std::abs((*table)[u]) / static_cast<double>(p);
      if (ratio > row.max_ratio) {
        row.max_ratio = ratio;
        row.argmax_u = static_cast<i64>(u);
      }
    }
    for (u64 u = 0; u < p; ++u)
      row.conj_law_err = std::max(row.conj_law_err, std::abs(std::conj((*table)[u]) - table->at(-static_cast<i64>(u))));
    const auto& s = table->kloosterman_row();
    for (u64 b = 1; b < p; ++b)
      row.weil_ratio = std::max(row.weil_ratio, std::abs(s[b]) / (2 * std::sqrt(static_cast<double>(p))));
    if (p <= conj_pmax && row.conj_law_err > 2 * row.table_err) rep.conj_law_ok = false;
    if (row.max_ratio > rep.max_ratio) {
      rep.max_ratio = row.max_ratio;
      rep.argmax_p = p;
    }
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace charsumlab
