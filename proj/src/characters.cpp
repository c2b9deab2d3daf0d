#include "charsumlab/characters.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "charsumlab/error.hpp"

namespace charsumlab {

u64 primitive_root(u64 p) {
  if (!is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  if (p == 2) return 1;
  const auto order_primes = Modulus(p - 1).primes();
  for (u64 g = 2; g < p; ++g) {
    bool generator = true;
    for (u64 r : order_primes) {
      if (pow_mod(g, (p - 1) / r, p) == 1) {
        generator = false;
        break;
      }
    }
    if (generator) return g;
  }
  throw Error(ErrorCode::InvalidArgument, "no primitive root found");
}

CharacterComponent CharacterComponent::build(u64 p) {
  CharacterComponent c;
  c.prime = p;
  c.generator = primitive_root(p);
  auto dlog = std::make_shared<std::vector<u32>>(p, 0);
  auto power = std::make_shared<std::vector<u32>>(p - 1, 0);
  u64 x = 1;
  for (u64 k = 0; k + 1 < p; ++k) {
    (*power)[k] = static_cast<u32>(x);
    (*dlog)[x] = static_cast<u32>(k);
    x = mul_mod(x, c.generator, p);
  }
  c.dlog = std::move(dlog);
  c.power = std::move(power);
  return c;
}

CharacterGroup::CharacterGroup(std::vector<CharacterComponent> components)
    : components_(std::move(components)), roots_(1) {
  std::sort(components_.begin(), components_.end(),
            [](const CharacterComponent& a, const CharacterComponent& b) { return a.prime < b.prime; });
  for (size_t j = 0; j < components_.size(); ++j) {
    if (j > 0 && components_[j].prime == components_[j - 1].prime)
      throw Error(ErrorCode::UnsupportedModulus, "repeated prime factor");
    q_ *= components_[j].prime;
    denom_ = std::lcm(denom_, components_[j].prime - 1);
  }
  roots_ = RootTable(denom_);
}

std::shared_ptr<const CharacterGroup> CharacterGroup::create(const Modulus& q) {
  if (q.value() > kMaxCharacterModulus)
    throw Error(ErrorCode::UnsupportedModulus, "character modulus exceeds 1e4");
  if (q.value() % 2 == 0) throw Error(ErrorCode::UnsupportedModulus, "character modulus must be odd");
  q.require_squarefree();
  std::vector<CharacterComponent> comps;
  for (u64 p : q.primes()) comps.push_back(CharacterComponent::build(p));
  return std::shared_ptr<const CharacterGroup>(new CharacterGroup(std::move(comps)));
}

std::shared_ptr<const CharacterGroup> CharacterGroup::from_components(std::vector<CharacterComponent> components) {
  return std::shared_ptr<const CharacterGroup>(new CharacterGroup(std::move(components)));
}

u64 CharacterGroup::size() const {
  u64 n = 1;
  for (const auto& c : components_) n *= c.prime - 1;
  return n;
}

DirichletCharacter::DirichletCharacter(std::shared_ptr<const CharacterGroup> group, std::vector<u64> exponents)
    : group_(std::move(group)), exponents_(std::move(exponents)) {
  const auto& comps = group_->components();
  if (exponents_.size() != comps.size())
    throw Error(ErrorCode::InvalidArgument, "exponent vector length does not match the modulus");
  for (size_t j = 0; j < comps.size(); ++j) exponents_[j] %= comps[j].prime - 1;
}

std::optional<u64> DirichletCharacter::phase(i64 n) const {
  const auto& comps = group_->components();
  const u64 denom = group_->phase_denominator();
  u64 k = 0;
  for (size_t j = 0; j < comps.size(); ++j) {
    const u64 p = comps[j].prime;
    const u64 r = reduce(n, p);
    if (r == 0) return std::nullopt;
    const u64 ind = (*comps[j].dlog)[r];
    const u64 scale = denom / (p - 1);
    k = (k + mul_mod(exponents_[j] * ind % (p - 1), scale, denom)) % denom;
  }
  return k;
}

cplx DirichletCharacter::operator()(i64 n) const {
  const auto k = phase(n);
  return k ? group_->roots()[*k] : cplx(0.0, 0.0);
}

SumValue DirichletCharacter::evaluate(i64 n) const {
  const auto k = phase(n);
  if (!k) return SumValue::integer(0);
  return SumValue(group_->roots()[*k], kUnitTermErr);
}

bool DirichletCharacter::is_primitive() const {
  return std::all_of(exponents_.begin(), exponents_.end(), [](u64 e) { return e != 0; });
}

bool DirichletCharacter::is_trivial() const {
  return std::all_of(exponents_.begin(), exponents_.end(), [](u64 e) { return e == 0; });
}

int DirichletCharacter::parity() const {
  // ind(-1) = (p - 1) / 2, so the p-component contributes (-1)^{e}.
  u64 total = 0;
  for (u64 e : exponents_) total += e;
  return total % 2 == 0 ? 1 : -1;
}

DirichletCharacter DirichletCharacter::conjugate() const {
  const auto& comps = group_->components();
  std::vector<u64> neg(exponents_.size());
  for (size_t j = 0; j < comps.size(); ++j) {
    const u64 order = comps[j].prime - 1;
    neg[j] = (order - exponents_[j]) % order;
  }
  return DirichletCharacter(group_, std::move(neg));
}

DirichletCharacter DirichletCharacter::component(std::size_t j) const {
  const auto& comps = group_->components();
  if (j >= comps.size()) throw Error(ErrorCode::InvalidArgument, "component index out of range");
  return DirichletCharacter(CharacterGroup::from_components({comps[j]}), {exponents_[j]});
}

u64 DirichletCharacter::index() const {
  const auto& comps = group_->components();
  u64 idx = 0;
  for (size_t j = 0; j < comps.size(); ++j) idx = idx * (comps[j].prime - 1) + exponents_[j];
  return idx;
}

DirichletCharacter DirichletCharacter::product(const DirichletCharacter& a, const DirichletCharacter& b) {
  if (std::gcd(a.modulus(), b.modulus()) != 1)
    throw Error(ErrorCode::NotCoprime, "character moduli must be coprime");
  std::vector<std::pair<CharacterComponent, u64>> parts;
  for (size_t j = 0; j < a.exponents_.size(); ++j) parts.emplace_back(a.group_->components()[j], a.exponents_[j]);
  for (size_t j = 0; j < b.exponents_.size(); ++j) parts.emplace_back(b.group_->components()[j], b.exponents_[j]);
  std::sort(parts.begin(), parts.end(), [](const auto& x, const auto& y) { return x.first.prime < y.first.prime; });
  std::vector<CharacterComponent> comps;
  std::vector<u64> exps;
  for (auto& [c, e] : parts) {
    comps.push_back(c);
    exps.push_back(e);
  }
  return DirichletCharacter(CharacterGroup::from_components(std::move(comps)), std::move(exps));
}

std::vector<DirichletCharacter> enumerate_characters(std::shared_ptr<const CharacterGroup> group,
                                                     CharacterFilter filter) {
  const auto& comps = group->components();
  std::vector<DirichletCharacter> out;
  std::vector<u64> exps(comps.size(), 0);
  const u64 total = group->size();
  for (u64 idx = 0; idx < total; ++idx) {
    u64 rest = idx;
    for (size_t j = comps.size(); j-- > 0;) {
      exps[j] = rest % (comps[j].prime - 1);
      rest /= comps[j].prime - 1;
    }
    DirichletCharacter chi(group, exps);
    if (filter != CharacterFilter::All && !chi.is_primitive()) continue;
    if (filter == CharacterFilter::PrimitiveEven && !chi.is_even()) continue;
    out.push_back(std::move(chi));
  }
  return out;
}

std::vector<DirichletCharacter> enumerate_characters(const Modulus& q, CharacterFilter filter) {
  return enumerate_characters(CharacterGroup::create(q), filter);
}

std::vector<cplx> character_transform(const CharacterGroup& group, const std::vector<cplx>& f) {
  const u64 q = group.modulus();
  if (f.size() != q) throw Error(ErrorCode::InvalidArgument, "transform input must have length q");
  const auto& comps = group.components();
  const size_t k = comps.size();
  const u64 total = group.size();
  const u64 denom = group.phase_denominator();
  // Lay out f on the dlog grid, row-major with the last prime fastest (matches index()).
  std::vector<cplx> grid(total);
  std::vector<u64> idx(k, 0);
  for (u64 cell = 0; cell < total; ++cell) {
    u64 rest = cell;
    for (size_t j = k; j-- > 0;) {
      idx[j] = rest % (comps[j].prime - 1);
      rest /= comps[j].prime - 1;
    }
    u64 a = 0, m = 1;
    for (size_t j = 0; j < k; ++j) {
      const u64 p = comps[j].prime;
      const u64 r = (*comps[j].power)[idx[j]];
      // incremental CRT: a mod m, r mod p -> mod m p
      const u64 t = mul_mod(reduce(static_cast<i64>(r) - static_cast<i64>(a % p), p), mod_inverse(static_cast<i64>(m % p), p), p);
      a += m * t;
      m *= p;
    }
    grid[cell] = f[a];
  }
  // DFT along each axis: G[e] = sum_k e(e k / (p - 1)) g[k].
  u64 stride = 1;
  std::vector<cplx> line, out;
  for (size_t j = k; j-- > 0;) {
    const u64 n = comps[j].prime - 1;
    const u64 scale = denom / n;
    const auto& roots = group.roots();
    line.resize(n);
    out.resize(n);
    const u64 block = stride * n;
    for (u64 base = 0; base < total; base += block) {
      for (u64 off = 0; off < stride; ++off) {
        for (u64 t = 0; t < n; ++t) line[t] = grid[base + off + t * stride];
        for (u64 e = 0; e < n; ++e) {
          CompensatedSum acc;
          for (u64 t = 0; t < n; ++t) acc.add(roots[(e * t % n) * scale] * line[t]);
          out[e] = acc.value();
        }
        for (u64 e = 0; e < n; ++e) grid[base + off + e * stride] = out[e];
      }
    }
    stride *= n;
  }
  return grid;
}

i64 primitive_sum_identity(const Modulus& q, i64 n, i64 ell) {
  q.require_prime();
  const u64 p = q.value();
  if (reduce(n, p) == 0 || reduce(ell, p) == 0)
    throw Error(ErrorCode::NotCoprime, "n and ell must be coprime to q");
  const i64 phi = static_cast<i64>(p - 1);
  return (reduce(n - ell, p) == 0 ? phi : 0) - 1;
}

}  // namespace charsumlab
