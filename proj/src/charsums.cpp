#include "charsumlab/charsums.hpp"

#include <cmath>
#include <numeric>

#include "charsumlab/error.hpp"
#include "charsumlab/expsums.hpp"
#include "charsumlab/newton.hpp"

namespace charsumlab {

namespace {

const double kTwoPi = 2 * std::acos(-1.0);

cplx unit_root(u64 k, u64 q) {
  return std::polar(1.0, kTwoPi * static_cast<double>(k % q) / static_cast<double>(q));
}

u64 inv_cube(u64 x, u64 m) {
  const u64 i = mod_inverse(static_cast<i64>(x % m), m);
  return mul_mod(mul_mod(i, i, m), i, m);
}

// |x y| error for factors with individual errors.
double product_err(double mx, double ex, double my, double ey) { return mx * ey + my * ex + ex * ey + 2 * kEps * mx * my; }

void require(bool ok, ErrorCode code, const char* what) {
  if (!ok) throw Error(code, what);
}

// Units-only sum over x in [1, p) of e_p(g(x)) for the Laurent form chain.
struct UnitSum {
  CompensatedSum sum;
  u64 terms = 0;
  void add(u64 k, u64 p) {
    sum.add(unit_root(k, p));
    ++terms;
  }
  SumValue value(double factor) const {
    const cplx v = sum.value() * factor;
    return SumValue(v, std::abs(factor) * static_cast<double>(terms) * kUnitTermErr + 2 * kEps * std::abs(v));
  }
};

}  // namespace

void TripleModulus::validate() const {
  for (u64 p : {q1, q2, q2p}) {
    require(p > 2, ErrorCode::NotPrime, "moduli must be odd primes");
    require(is_prime(p), ErrorCode::NotPrime, "moduli must be odd primes");
  }
  require(q1 != q2 && q1 != q2p, ErrorCode::NotCoprime, "q1 must differ from q2 and q2'");
  require(ell >= 1 && static_cast<u64>(ell) < std::min(q2, q2p), ErrorCode::InvalidArgument,
          "ell must satisfy 1 <= ell < min(q2, q2')");
  require(std::gcd(static_cast<u64>(ell), q1 * q2 * q2p) == 1, ErrorCode::NotCoprime,
          "ell must be coprime to q1 q2 q2'");
}

SumValue a_sum(const TripleModulus& t) {
  t.validate();
  require(t.q1 <= kMaxASumModulus, ErrorCode::ModulusTooLarge, "A sum requires q1 <= 500");
  const u64 q1 = t.q1;
  const auto K = hyper_kloosterman_table(q1);
  const u64 l = reduce(t.ell, q1);
  const u64 u1 = mul_mod(l, inv_cube(t.q2, q1), q1);
  const u64 u2 = (q1 - mul_mod(l, inv_cube(t.q2p, q1), q1)) % q1;
  const u64 ph = mul_mod(mul_mod(mod_inverse(static_cast<i64>(t.q2 % q1), q1), mod_inverse(static_cast<i64>(t.q2p % q1), q1), q1),
                         reduce(t.n, q1), q1);
  CompensatedSum acc;
  double err = 0;
  for (u64 a = 0; a < q1; ++a) {
    const cplx k1 = (*K)[mul_mod(a, u1, q1)], k2 = (*K)[mul_mod(a, u2, q1)];
    const cplx term = k1 * k2 * unit_root(mul_mod(a, ph, q1), q1);
    acc.add(term);
    err += product_err(std::abs(k1), K->err(), std::abs(k2), K->err()) + kUnitTermErr * std::abs(k1 * k2);
  }
  const cplx v = acc.value();
  return SumValue(v, err + 2 * kEps * std::abs(v));
}

SumValue b_sum(const TripleModulus& t) {
  t.validate();
  const u64 m = t.q2 * t.q2p;
  require(m <= kMaxBSumModulus, ErrorCode::ModulusTooLarge, "B sum requires q2 q2' <= 1e5");
  const auto K2 = hyper_kloosterman_table(t.q2);
  const auto K2p = hyper_kloosterman_table(t.q2p);
  const u64 i1 = mod_inverse(static_cast<i64>(t.q1 % m), m);
  const u64 c = mul_mod(reduce(t.ell, m), mul_mod(mul_mod(i1, i1, m), i1, m), m);
  const u64 ph = mul_mod(i1, reduce(t.n, m), m);
  CompensatedSum acc;
  double err = 0;
  for (u64 a = 0; a < m; ++a) {
    const u64 u = mul_mod(a, c, m);
    const cplx k1 = (*K2)[u % t.q2], k2 = K2p->at(-static_cast<i64>(u % t.q2p));
    acc.add(k1 * k2 * unit_root(mul_mod(a, ph, m), m));
    err += product_err(std::abs(k1), K2->err(), std::abs(k2), K2p->err()) + kUnitTermErr * std::abs(k1 * k2);
  }
  const cplx v = acc.value();
  return SumValue(v, err + 2 * kEps * std::abs(v));
}

std::vector<SumValue> c_sum(const TripleModulus& t, const std::vector<i64>& ns) {
  t.validate();
  const u64 Q = t.q1 * t.q2 * t.q2p;
  require(Q <= kMaxCSumModulus, ErrorCode::ModulusTooLarge, "C sum requires q1 q2 q2' <= 1e6");
  const auto K1 = hyper_kloosterman_table(t.q1);
  const auto K2 = hyper_kloosterman_table(t.q2);
  const auto K2p = hyper_kloosterman_table(t.q2p);
  const u64 q1 = t.q1;
  const u64 l1 = reduce(t.ell, q1);
  const u64 v1 = mul_mod(l1, inv_cube(t.q2, q1), q1);
  const u64 v1p = (q1 - mul_mod(l1, inv_cube(t.q2p, q1), q1)) % q1;
  const u64 v2 = mul_mod(reduce(t.ell, t.q2), inv_cube(t.q1, t.q2), t.q2);
  const u64 v2p = (t.q2p - mul_mod(reduce(t.ell, t.q2p), inv_cube(t.q1, t.q2p), t.q2p)) % t.q2p;
  std::vector<cplx> F(Q);
  double weight = 0;  // sum of per-term errors
  for (u64 a = 0; a < Q; ++a) {
    const cplx x1 = (*K1)[mul_mod(a % q1, v1, q1)], x2 = (*K2)[mul_mod(a % t.q2, v2, t.q2)];
    const cplx x3 = (*K1)[mul_mod(a % q1, v1p, q1)], x4 = (*K2p)[mul_mod(a % t.q2p, v2p, t.q2p)];
    const double m12 = std::abs(x1 * x2), m34 = std::abs(x3 * x4);
    const double e12 = product_err(std::abs(x1), K1->err(), std::abs(x2), K2->err());
    const double e34 = product_err(std::abs(x3), K1->err(), std::abs(x4), K2p->err());
    F[a] = (x1 * x2) * (x3 * x4);
    weight += product_err(m12, e12, m34, e34) + kUnitTermErr * m12 * m34;
  }
  std::vector<SumValue> out;
  for (i64 n : ns) {
    const u64 nr = reduce(n, Q);
    CompensatedSum acc;
    for (u64 a = 0; a < Q; ++a) acc.add(F[a] * unit_root(mul_mod(a, nr, Q), Q));
    const cplx v = acc.value();
    out.emplace_back(v, weight + 2 * kEps * std::abs(v));
  }
  return out;
}

SumValue c_sum(const TripleModulus& t) { return c_sum(t, {t.n})[0]; }

SumValue a_sum_naive(const TripleModulus& t) {
  t.validate();
  require(t.q1 <= kMaxNaiveModulus, ErrorCode::ModulusTooLarge, "naive A sum requires q1 <= 30");
  const u64 q = t.q1;
  const auto inv = inverse_table(q);
  const u64 l = reduce(t.ell, q);
  const u64 c1 = mul_mod(l, inv_cube(t.q2, q), q);
  const u64 c2 = mul_mod(l, inv_cube(t.q2p, q), q);
  const u64 c3 = mul_mod(mul_mod(inv[t.q2 % q], inv[t.q2p % q], q), reduce(t.n, q), q);
  FloatingBackend backend(q);
  auto sum = backend.sum();
  for (u64 alpha = 0; alpha < q; ++alpha)
    for (u64 a = 1; a < q; ++a)
      for (u64 b = 1; b < q; ++b) {
        const u64 x = (a + b + mul_mod(mul_mod(alpha, c1, q), mul_mod(inv[a], inv[b], q), q)) % q;
        for (u64 c = 1; c < q; ++c)
          for (u64 d = 1; d < q; ++d) {
            const u64 y = (c + d + q - mul_mod(mul_mod(alpha, c2, q), mul_mod(inv[c], inv[d], q), q)) % q;
            sum.add((x + y + mul_mod(alpha, c3, q)) % q);
          }
      }
  return sum.finish();
}

SumValue a_laurent_sum(const TripleModulus& t) {
  t.validate();
  return complete_exp_sum(triple_polynomial(t.ell, t.n, t.q2, t.q2p, t.q1), t.q1);
}

SumValue a_closed_form(const TripleModulus& t) {
  t.validate();
  const u64 q1 = t.q1;
  const i64 q = static_cast<i64>(q1);
  if (reduce(t.n, q1) == 0) {
    const u64 r = mul_mod(mul_mod(t.q2 % q1, mul_mod(t.q2 % q1, t.q2 % q1, q1), q1), inv_cube(t.q2p, q1), q1);
    const i64 c = ramanujan_sum(Modulus(q1), 1 - static_cast<i64>(r));
    return SumValue::integer(q * q * c - q);
  }
  const SumValue s = a_laurent_sum(t);
  return scale(s, static_cast<double>(q1)) - SumValue::integer(q);
}

std::optional<SumValue> b_closed_form(const TripleModulus& t) {
  t.validate();
  if (t.diagonal()) return std::nullopt;
  if (reduce(t.n, t.q2) == 0 || reduce(t.n, t.q2p) == 0) return SumValue::integer(0);
  auto arg = [&](u64 p, u64 other, i64 sign) {
    const u64 i1 = mod_inverse(static_cast<i64>(t.q1 % p), p);
    const u64 v = mul_mod(mul_mod(reduce(t.ell, p), mul_mod(i1, i1, p), p), mul_mod(other % p, mod_inverse(t.n, p), p), p);
    return sign > 0 ? static_cast<i64>(v) : -static_cast<i64>(v);
  };
  const SumValue s1 = kloosterman(1, arg(t.q2, t.q2p, -1), Modulus(t.q2));
  const SumValue s2 = kloosterman(1, arg(t.q2p, t.q2, +1), Modulus(t.q2p));
  return scale(s1 * s2, static_cast<double>(t.q2 * t.q2p));
}

XiReport xi_substitution_check(const TripleModulus& t) {
  t.validate();
  const u64 q = t.q1;
  require(q <= kMaxXiModulus, ErrorCode::ModulusTooLarge, "substitution check requires q1 <= 60");
  require(reduce(t.n, q) != 0, ErrorCode::InvalidArgument, "substitution check requires q1 not dividing n");
  const auto inv = inverse_table(q);
  const u64 l = reduce(t.ell, q), n = reduce(t.n, q), q2 = t.q2 % q, q2p = t.q2p % q;
  const u64 q2b = inv[q2], q2pb = inv[q2p], nb = inv[n];
  const u64 lq2 = mul_mod(l, q2, q);
  const double fq = static_cast<double>(q);
  XiReport rep;
  rep.a_definition = a_sum(t);

  // Congruence l q2bar^3 abar bbar - l q2'bar^3 cbar dbar + q2bar q2'bar n = 0.
  {
    const u64 k1 = mul_mod(l, mul_mod(q2b, mul_mod(q2b, q2b, q), q), q);
    const u64 k2 = mul_mod(l, mul_mod(q2pb, mul_mod(q2pb, q2pb, q), q), q);
    const u64 k3 = mul_mod(mul_mod(q2b, q2pb, q), n, q);
    UnitSum s;
    for (u64 a = 1; a < q; ++a)
      for (u64 b = 1; b < q; ++b) {
        const u64 x = mul_mod(k1, mul_mod(inv[a], inv[b], q), q);
        for (u64 c = 1; c < q; ++c)
          for (u64 d = 1; d < q; ++d) {
            const u64 y = mul_mod(k2, mul_mod(inv[c], inv[d], q), q);
            if ((x + q - y + k3) % q != 0) continue;
            const u64 xi = (mul_mod(mul_mod(c, d, q), mul_mod(n, mul_mod(q2p, q2p, q), q), q) + q - lq2) % q;
            if (xi == 0) rep.coprimality_ok = false;
            s.add((a + b + c + d) % q, q);
          }
      }
    rep.midway = s.value(fq);
  }
  // b and (c, d) with xi = c d n q2'^2 - l q2 a unit.
  {
    const u64 k = mul_mod(l, mul_mod(mul_mod(q2b, q2b, q), mul_mod(q2p, mul_mod(q2p, q2p, q), q), q), q);
    UnitSum s;
    for (u64 c = 1; c < q; ++c)
      for (u64 d = 1; d < q; ++d) {
        const u64 cd = mul_mod(c, d, q);
        const u64 xi = (mul_mod(cd, mul_mod(n, mul_mod(q2p, q2p, q), q), q) + q - lq2) % q;
        if (xi == 0) continue;
        const u64 base = mul_mod(mul_mod(k, cd, q), inv[xi], q);
        for (u64 b = 1; b < q; ++b) s.add((q - mul_mod(base, inv[b], q) + b + c + d) % q, q);
      }
    rep.restricted = s.value(fq);
  }
  // b, xi, d: phase -l bbar (xi + l q2) q2bar^2 q2' nbar xibar + b + (xi + l q2) q2'bar^2 nbar dbar + d.
  {
    const u64 k1 = mul_mod(l, mul_mod(mul_mod(q2b, q2b, q), mul_mod(q2p, nb, q), q), q);
    const u64 k2 = mul_mod(mul_mod(q2pb, q2pb, q), nb, q);
    UnitSum partial, full, slice;
    for (u64 xi = 1; xi < q; ++xi) {
      const u64 shifted = (xi + lq2) % q;
      const u64 first = mul_mod(mul_mod(k1, shifted, q), inv[xi], q);
      const u64 second = mul_mod(k2, shifted, q);
      for (u64 b = 1; b < q; ++b)
        for (u64 d = 1; d < q; ++d) {
          const u64 phase = (q - mul_mod(first, inv[b], q) + b + mul_mod(second, inv[d], q) + d) % q;
          full.add(phase, q);
          if (shifted != 0)
            partial.add(phase, q);
          else
            slice.add(phase, q);
        }
    }
    rep.xi_partial = partial.value(fq);
    rep.xi_full = full.value(fq);
    rep.missing_slice = slice.value(1.0);
  }
  rep.laurent = a_closed_form(t);

  const SumValue* forms[] = {&rep.midway, &rep.restricted, &rep.xi_partial, &rep.laurent};
  bool ok = rep.coprimality_ok;
  for (const SumValue* f : forms) {
    const double diff = std::abs(f->value() - rep.a_definition.value());
    rep.max_abs_err = std::max(rep.max_abs_err, diff);
    ok = ok && diff <= f->err + rep.a_definition.err;
  }
  // completing the xi sum adds the slice: full = partial + q1 * slice
  const double completion = std::abs(rep.xi_full.value() - rep.xi_partial.value() - fq * rep.missing_slice.value());
  rep.max_abs_err = std::max(rep.max_abs_err, completion);
  ok = ok && completion <= rep.xi_full.err + rep.xi_partial.err + fq * rep.missing_slice.err;
  rep.pass = ok;
  return rep;
}

std::string regime_name(CorollaryRegime r) {
  switch (r) {
    case CorollaryRegime::ZeroOffDiagonal: return "n=0,q2!=q2p";
    case CorollaryRegime::ZeroDiagonal: return "n=0,q2=q2p";
    case CorollaryRegime::NonzeroOffDiagonal: return "n!=0,q2!=q2p";
    case CorollaryRegime::NonzeroDiagonal: return "n!=0,q2=q2p";
  }
  return "";
}

CorollaryRegime corollary_regime(const TripleModulus& t) {
  if (t.n == 0) return t.diagonal() ? CorollaryRegime::ZeroDiagonal : CorollaryRegime::ZeroOffDiagonal;
  return t.diagonal() ? CorollaryRegime::NonzeroDiagonal : CorollaryRegime::NonzeroOffDiagonal;
}

double corollary_envelope(const TripleModulus& t) {
  const double Q1 = static_cast<double>(t.q1);
  const double Q2 = static_cast<double>(std::max(t.q2, t.q2p));
  const double Q = Q1 * Q2;
  const double g = static_cast<double>(std::gcd(t.q1, reduce(t.n, t.q1) == 0 ? t.q1 : reduce(t.n, t.q1)));
  switch (corollary_regime(t)) {
    case CorollaryRegime::ZeroOffDiagonal: return 0.0;
    case CorollaryRegime::ZeroDiagonal: return Q * Q * Q * Q2;
    case CorollaryRegime::NonzeroOffDiagonal: return std::pow(Q, 2.5) * std::sqrt(Q2) * g;
    case CorollaryRegime::NonzeroDiagonal: return std::pow(Q, 2.5) * std::pow(Q2, 1.5) * g;
  }
  return 0.0;
}

}  // namespace charsumlab
