#include "charsumlab/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "charsumlab/archimedean.hpp"
#include "charsumlab/characters.hpp"
#include "charsumlab/charsums.hpp"
#include "charsumlab/error.hpp"
#include "charsumlab/expsums.hpp"
#include "charsumlab/lfunctions.hpp"
#include "charsumlab/moment.hpp"
#include "charsumlab/newton.hpp"

namespace charsumlab {

namespace {

using CheckFn = std::function<void(const RunConfig&, CheckResult&)>;

struct CheckSpec {
  std::string name;
  CheckFn run;
  bool by_default = true;
};

double scale1(cplx a, cplx b) { return std::max({std::abs(a), std::abs(b), 1.0}); }

Json complex_pair(cplx z) { return Json::array({z.real(), z.imag()}); }

// Row in the triple-sum case layout.
Json triple_row(const TripleModulus& t, cplx lhs, cplx rhs, bool pass) {
  Json row;
  row["q1"] = t.q1;
  row["q2"] = t.q2;
  row["q2p"] = t.q2p;
  row["ell"] = t.ell;
  row["n"] = t.n;
  row["lhs_re"] = lhs.real();
  row["lhs_im"] = lhs.imag();
  row["rhs_re"] = rhs.real();
  row["rhs_im"] = rhs.imag();
  row["abs_err"] = std::abs(lhs - rhs);
  row["pass"] = pass;
  return row;
}

// Odd primes up to qmax.
std::vector<u64> odd_primes(u64 qmax) { return qmax >= 3 ? primes_in(3, qmax) : std::vector<u64>{}; }

std::optional<TripleModulus> sample_triple(std::mt19937_64& rng, const std::vector<u64>& ps, bool off_diagonal) {
  if (ps.size() < 3) return std::nullopt;
  TripleModulus t;
  t.q1 = ps[rng() % ps.size()];
  do t.q2 = ps[rng() % ps.size()];
  while (t.q2 == t.q1);
  do t.q2p = ps[rng() % ps.size()];
  while (t.q2p == t.q1 || (off_diagonal && t.q2p == t.q2));
  const u64 bound = std::min(t.q2, t.q2p);
  const u64 q = t.q1 * t.q2 * t.q2p;
  std::vector<i64> ells;
  for (u64 l = 1; l < bound; ++l)
    if (std::gcd(l, q) == 1) ells.push_back(static_cast<i64>(l));
  t.ell = ells[rng() % ells.size()];
  t.n = static_cast<i64>(rng() % q);
  return t;
}

// characters

void check_character_counts(const RunConfig& cfg, CheckResult& out) {
  bool ok = true;
  u64 moduli = 0;
  for (u64 q = 3; q <= cfg.qmax; q += 2) {
    const Modulus m(q);
    if (!m.is_squarefree()) continue;
    ++moduli;
    const auto group = CharacterGroup::create(m);
    const auto all = enumerate_characters(group, CharacterFilter::All);
    u64 primitive = 0, even = 0, expected_primitive = 1;
    for (u64 p : m.primes()) expected_primitive *= p - 2;
    for (const auto& chi : all) {
      if (!chi.is_primitive()) continue;
      ++primitive;
      if (chi.is_even()) ++even;
    }
    const u64 listed_even = enumerate_characters(group, CharacterFilter::PrimitiveEven).size();
    // orthogonality: sum_chi chi(a) = phi(q) [a = 1]
    double orth = 0;
    for (u64 a = 1; a < q; ++a) {
      if (std::gcd(a, q) != 1) continue;
      cplx s = 0;
      for (const auto& chi : all) s += chi(static_cast<i64>(a));
      orth = std::max(orth, std::abs(s - cplx(a == 1 ? static_cast<double>(m.totient()) : 0.0, 0)));
    }
    const bool pass = all.size() == m.totient() && primitive == expected_primitive && listed_even == even && orth < 1e-9 * q;
    ok = ok && pass;
    out.cases.push_back(
        {{"q", q}, {"characters", all.size()}, {"primitive", primitive}, {"primitive_even", even}, {"orthogonality_err", orth}, {"pass", pass}});
  }
  out.summary = {{"moduli", moduli}};
  out.pass = ok;
}

void check_gauss_modulus(const RunConfig& cfg, CheckResult& out) {
  double worst = 0;
  bool ok = true;
  for (u64 q = 3; q <= cfg.qmax; q += 2) {
    const Modulus m(q);
    if (!m.is_squarefree()) continue;
    const auto group = CharacterGroup::create(m);
    const auto g = gauss_sums(*group);
    double err = 0;
    for (const auto& chi : enumerate_characters(group, CharacterFilter::Primitive))
      err = std::max(err, std::abs(std::norm(g[chi.index()].value()) - static_cast<double>(q)) / static_cast<double>(q));
    worst = std::max(worst, err);
    ok = ok && err <= 1e-10;
    out.cases.push_back({{"q", q}, {"max_rel_err", err}, {"pass", err <= 1e-10}});
  }
  out.summary = {{"max_rel_err", worst}};
  out.pass = ok;
}

// expsums

void check_identity2(const RunConfig& cfg, CheckResult& out) {
  u64 cases = 0, failures = 0;
  for (u64 p : odd_primes(cfg.qmax)) {
    const auto sw = cubed_gauss_sweep(p);
    cases += sw.cases;
    failures += sw.failures;
    out.cases.push_back({{"p", p},
                         {"cases", sw.cases},
                         {"failures", sw.failures},
                         {"max_abs_err", sw.max_abs_err},
                         {"tolerance", sw.tolerance},
                         {"pass", sw.failures == 0}});
  }
  out.summary = {{"cases", cases}, {"failures", failures}};
  out.pass = cases > 0 && failures == 0;
}

void check_gauss_splitting(const RunConfig& cfg, CheckResult& out) {
  u64 pairs = 0;
  double worst = 0;
  bool ok = true;
  for (u64 q1 : cfg.afe_moduli)
    for (u64 q2 : cfg.afe_moduli) {
      if (q1 == q2) continue;
      double err = 0;
      u64 count = 0;
      for (const auto& a : enumerate_characters(Modulus(q1), CharacterFilter::Primitive))
        for (const auto& b : enumerate_characters(Modulus(q2), CharacterFilter::Primitive)) {
          const auto rep = gauss_splitting_check(a, b);
          err = std::max(err, rep.abs_err / std::abs(rep.rhs.value()));
          ok = ok && rep.pass;
          ++count;
        }
      pairs += count;
      worst = std::max(worst, err);
      out.cases.push_back({{"q1", q1}, {"q2", q2}, {"pairs", count}, {"max_rel_err", err}, {"pass", err <= 1e-9}});
    }
  out.summary = {{"pairs", pairs}, {"max_rel_err", worst}, {"tolerance", 1e-9}};
  out.pass = ok && pairs > 0 && worst <= 1e-9;
}

void check_deligne(const RunConfig& cfg, CheckResult& out) {
  const auto rep = deligne_measure(cfg.pmax, cfg.conj_pmax);
  double weil = 0;
  for (const auto& row : rep.rows) {
    weil = std::max(weil, row.weil_ratio);
    out.cases.push_back({{"p", row.p},
                         {"max_ratio", row.max_ratio},
                         {"argmax_u", row.argmax_u},
                         {"conj_law_err", row.conj_law_err},
                         {"table_err", row.table_err},
                         {"weil_ratio", row.weil_ratio}});
  }
  out.summary = {{"max_ratio", rep.max_ratio}, {"argmax_p", rep.argmax_p}, {"conj_law_ok", rep.conj_law_ok}, {"max_weil_ratio", weil}};
  out.pass = rep.max_ratio <= 3.0 && rep.max_ratio >= 1.0 && rep.conj_law_ok;
}

void check_ramanujan(const RunConfig& cfg, CheckResult& out) {
  double worst = 0;
  for (u64 q = 1; q <= cfg.qmax; ++q)
    for (i64 n = -3; n <= static_cast<i64>(2 * q); ++n)
      worst = std::max(worst, std::abs(ramanujan_sum_direct(Modulus(q), n).value() - static_cast<double>(ramanujan_sum(Modulus(q), n))));
  out.summary = {{"max_abs_err", worst}};
  out.pass = worst <= 1e-8;
}

// charsums

void check_factorization(const RunConfig& cfg, CheckResult& out) {
  std::mt19937_64 rng(cfg.seed);
  const auto ps = odd_primes(cfg.qmax);
  u64 cases = 0, failures = 0;
  double worst = 0, raw = 0;
  for (u64 i = 0; i < cfg.samples; ++i) {
    const auto t = sample_triple(rng, ps, false);
    if (!t) break;
    const SumValue cs = c_sum(*t), as = a_sum(*t), bs = b_sum(*t);
    const cplx c = cs.value(), ab = as.value() * bs.value();
    // relative 1e-6 on top of the propagated rounding bounds (exact zeros sit inside them)
    const double bound = cs.err + as.magnitude() * bs.err + bs.magnitude() * as.err;
    const double rel = std::max(0.0, std::abs(c - ab) - bound) / scale1(c, ab);
    const bool pass = rel <= 1e-6;
    worst = std::max(worst, rel);
    raw = std::max(raw, std::abs(c - ab) / scale1(c, ab));
    ++cases;
    if (!pass) ++failures;
    out.cases.push_back(triple_row(*t, c, ab, pass));
  }
  out.summary = {{"cases", cases}, {"failures", failures}, {"max_rel_err_beyond_bound", worst}, {"max_rel_err", raw}};
  out.pass = cases >= std::min<u64>(cfg.samples, 200) && failures == 0;
}

void check_vanishing(const RunConfig& cfg, CheckResult& out) {
  std::mt19937_64 rng(cfg.seed + 1);
  const auto ps = odd_primes(cfg.qmax);
  u64 cases = 0, failures = 0;
  double worst = 0;
  for (u64 i = 0; i < cfg.samples; ++i) {
    auto t = sample_triple(rng, ps, true);
    if (!t) break;
    t->n = 0;
    const cplx b = b_sum(*t).value(), c = c_sum(*t).value();
    // zero against the size of a single product term
    const double tol = 1e-6 * static_cast<double>(t->q1 * t->q2 * t->q2p);
    const double err = std::max(std::abs(b), std::abs(c)) / static_cast<double>(t->q1 * t->q2 * t->q2p);
    const bool pass = std::abs(b) <= tol && std::abs(c) <= tol;
    worst = std::max(worst, err);
    ++cases;
    if (!pass) ++failures;
    out.cases.push_back(triple_row(*t, c, b, pass));
  }
  out.summary = {{"cases", cases}, {"failures", failures}, {"max_scaled_abs", worst}};
  out.pass = cases > 0 && failures == 0;
}

void check_closed_forms(const RunConfig& cfg, CheckResult& out) {
  std::mt19937_64 rng(cfg.seed + 2);
  const auto ps = odd_primes(std::max<u64>(cfg.qmax, 7));
  u64 cases = 0, failures = 0;
  double worst = 0;
  auto record = [&](const TripleModulus& t, cplx lhs, cplx rhs) {
    const double rel = std::abs(lhs - rhs) / scale1(lhs, rhs);
    const bool pass = rel <= 1e-6;
    worst = std::max(worst, rel);
    ++cases;
    if (!pass) ++failures;
    out.cases.push_back(triple_row(t, lhs, rhs, pass));
  };
  for (u64 q1 : odd_primes(cfg.qmax)) {
    for (int k = 0; k < 2; ++k) {
      TripleModulus t;
      t.q1 = q1;
      do t.q2 = ps[rng() % ps.size()];
      while (t.q2 == q1);
      do t.q2p = ps[rng() % ps.size()];
      while (t.q2p == q1 || t.q2p == t.q2);
      t.ell = 1;
      if (k == 1) {
        std::vector<i64> ells;
        for (u64 l = 1; l < std::min(t.q2, t.q2p); ++l)
          if (std::gcd(l, q1 * t.q2 * t.q2p) == 1) ells.push_back(static_cast<i64>(l));
        t.ell = ells[rng() % ells.size()];
      }
      // q1 | n, then q1 !| n through the Laurent sum
      const i64 m = static_cast<i64>(1 + rng() % (q1 - 1));
      for (i64 n : {static_cast<i64>(q1) * m, m}) {
        const auto tn = t.with_n(n);
        record(tn, a_sum(tn).value(), a_closed_form(tn).value());
      }
      const auto tb = t.with_n(m);
      record(tb, b_sum(tb).value(), b_closed_form(tb)->value());
    }
  }
  out.summary = {{"cases", cases}, {"failures", failures}, {"max_rel_err", worst}};
  out.pass = cases > 0 && failures == 0;
}

// table evaluation of A against the five-fold definition, q1 <= 30
void check_oracle(const RunConfig& cfg, CheckResult& out) {
  std::mt19937_64 rng(cfg.seed + 6);
  const auto small = odd_primes(std::min<u64>(cfg.qmax, kMaxNaiveModulus));
  const auto ps = odd_primes(cfg.qmax);
  u64 cases = 0, failures = 0;
  for (u64 i = 0; i < 40 && small.size() >= 2 && ps.size() >= 3; ++i) {
    auto t = sample_triple(rng, ps, false);
    t->q1 = small[rng() % small.size()];
    if (t->q1 == t->q2 || t->q1 == t->q2p || std::gcd(static_cast<u64>(t->ell), t->q1) != 1) continue;
    const cplx table = a_sum(*t).value(), naive = a_sum_naive(*t).value();
    const bool pass = std::abs(table - naive) / scale1(table, naive) <= 1e-6;
    ++cases;
    if (!pass) ++failures;
    out.cases.push_back(triple_row(*t, table, naive, pass));
  }
  out.summary = {{"cases", cases}, {"failures", failures}};
  out.pass = cases > 0 && failures == 0;
}

void check_bounds(const RunConfig& cfg, CheckResult& out) {
  std::mt19937_64 rng(cfg.seed + 3);
  const auto ps = odd_primes(cfg.qmax);
  std::map<std::string, double> worst;
  bool ok = true;
  for (u64 i = 0; i < cfg.samples; ++i) {
    auto t = sample_triple(rng, ps, false);
    if (!t) break;
    if (i % 4 == 1) t->n = static_cast<i64>(t->q1) * static_cast<i64>(1 + rng() % 5);  // q1 | n
    if (i % 4 == 2) t->n = 0;
    const cplx c = c_sum(*t).value();
    const double env = corollary_envelope(*t);
    const std::string regime = regime_name(corollary_regime(*t));
    const double ratio = env > 0 ? std::abs(c) / env : std::abs(c);
    const bool pass = env > 0 ? ratio <= 10.0 : std::abs(c) <= 1e-6 * static_cast<double>(t->q1 * t->q2 * t->q2p);
    ok = ok && pass;
    worst[regime] = std::max(worst[regime], ratio);
    out.cases.push_back(triple_row(*t, c, cplx(env, 0), pass));
  }
  Json per = Json::object();
  for (const auto& [k, v] : worst) per[k] = v;
  out.summary = {{"max_ratio_by_regime", per}, {"allowed", 10.0}};
  out.pass = ok && !worst.empty();
}

// newton

struct Tuple {
  i64 ell, n;
  u64 q2, q2p;
};

std::vector<Tuple> newton_tuples(const RunConfig& cfg) {
  std::mt19937_64 rng(cfg.seed + 4);
  const std::vector<u64> pool{5, 17, 29, 37, 41, 53, 61, 73};
  std::vector<Tuple> out;
  for (int guard = 0; out.size() < cfg.newton_tuples && guard < 100000; ++guard) {
    Tuple t{static_cast<i64>(1 + rng() % 3), static_cast<i64>(1 + rng() % 50), pool[rng() % pool.size()], pool[rng() % pool.size()]};
    if (t.q2 == t.q2p) continue;
    bool admissible = true;
    for (u64 p : cfg.newton_primes)
      admissible = admissible && static_cast<u64>(t.ell * t.n) % p != 0 && t.q2 % p != 0 && t.q2p % p != 0;
    if (admissible) out.push_back(t);
  }
  return out;
}

void check_hull(const RunConfig&, CheckResult& out) {
  const auto poly = newton_polyhedron(triple_polynomial(1, 1, 5, 17, 13));
  std::vector<Exponent> expect{{1, 0, 0}, {-1, 0, 0}, {0, 0, 1}, {0, 0, -1}, {-1, -1, 0}, {0, 1, -1}};
  std::sort(expect.begin(), expect.end());
  Json verts = Json::array();
  for (const auto& v : poly.vertices) verts.push_back(Json::array({v[0], v[1], v[2]}));
  out.summary = {{"vertices", verts}, {"dimension", poly.dimension}, {"faces", poly.faces.size()}};
  out.pass = poly.vertices == expect;
}

void check_nondegenerate(const RunConfig& cfg, CheckResult& out) {
  u64 total = 0, nondegenerate = 0;
  std::set<std::vector<i64>> normals;
  for (const auto& t : newton_tuples(cfg))
    for (u64 p : cfg.newton_primes) {
      const auto rep = is_nondegenerate(triple_polynomial(t.ell, t.n, t.q2, t.q2p, p), p);
      ++total;
      if (rep.nondegenerate) ++nondegenerate;
      Json row{{"ell", t.ell}, {"n", t.n}, {"q2", t.q2}, {"q2p", t.q2p}, {"p", p}, {"nondegenerate", rep.nondegenerate}};
      Json singular = Json::array();
      for (const auto& fr : rep.faces)
        if (fr.singular) {
          normals.insert({fr.face.normal[0], fr.face.normal[1], fr.face.normal[2]});
          singular.push_back({{"normal", Json::array({fr.face.normal[0], fr.face.normal[1], fr.face.normal[2]})},
                              {"dimension", fr.face.dimension},
                              {"witness", fr.witness}});
        }
      row["singular_faces"] = singular;
      out.cases.push_back(row);
    }
  out.summary = {{"checked", total},
                 {"nondegenerate", nondegenerate},
                 {"tuples", total / std::max<std::size_t>(cfg.newton_primes.size(), 1)},
                 {"singular_face_normals", normals}};
  out.pass = total >= 20 * cfg.newton_primes.size() && nondegenerate == total;
}

void check_planted(const RunConfig& cfg, CheckResult& out) {
  const LaurentPolynomial f(2, {{{2, 0, 0}, 1}, {{1, 1, 0}, 2}, {{0, 2, 0}, 1}});
  bool ok = true;
  for (u64 p : cfg.newton_primes) {
    const auto rep = is_nondegenerate(f, p);
    ok = ok && !rep.nondegenerate;
    out.cases.push_back({{"p", p}, {"nondegenerate", rep.nondegenerate}});
  }
  out.pass = ok;
}

void check_sqrt_cancellation(const RunConfig& cfg, CheckResult& out) {
  double worst = 0;
  u64 total = 0;
  for (const auto& t : newton_tuples(cfg))
    for (u64 p : cfg.newton_primes) {
      const double r = sqrt_cancellation_measure(triple_polynomial(t.ell, t.n, t.q2, t.q2p, p), p);
      worst = std::max(worst, r);
      ++total;
      out.cases.push_back({{"ell", t.ell}, {"n", t.n}, {"q2", t.q2}, {"q2p", t.q2p}, {"p", p}, {"ratio", r}});
    }
  out.summary = {{"samples", total}, {"max_ratio", worst}, {"allowed", 12.0}};
  out.pass = total > 0 && worst <= 12.0;
}

// archimedean

void check_contour(const RunConfig& cfg, CheckResult& out) {
  std::mt19937_64 rng(cfg.seed + 5);
  const std::vector<LanglandsParams> params = {
      LanglandsParams(), LanglandsParams({cplx(0.4, 0), cplx(-0.2, 0), cplx(-0.2, 0)}),
      LanglandsParams({cplx(0.1, 2.5), cplx(0.1, -2.5), cplx(-0.2, 0)}), LanglandsParams({cplx(0.35, 1), 0, cplx(-0.3, 4)})};
  double worst = 0;
  for (int i = 0; i < 20; ++i) {
    const auto& pa = params[static_cast<std::size_t>(i) % params.size()];
    const double u = static_cast<double>(rng() % 1000000) / 1e6;
    const double y = 0.2 * std::pow(25.0, u);
    double spread = 0;
    AFEConfig right;
    right.sigma = 3;
    const cplx ref = V(y, pa, right);
    for (double sigma : {1.0, 2.0}) {
      AFEConfig c;
      c.sigma = sigma;
      spread = std::max(spread, std::abs(V(y, pa, c) - ref));
    }
    spread = std::max(spread, std::abs(V(y, pa) - ref));  // left contour plus the residue
    worst = std::max(worst, spread);
    out.cases.push_back({{"alpha", pa.key()}, {"y", y}, {"v", complex_pair(ref)}, {"max_diff", spread}, {"pass", spread <= 1e-8}});
  }
  out.summary = {{"points", 20}, {"max_diff", worst}, {"tolerance", 1e-8}};
  out.pass = worst <= 1e-8;
}

void check_small_y(const RunConfig&, CheckResult& out) {
  const auto fit = fit_small_y(LanglandsParams(), {1e-5, 3e-5, 1e-4, 3e-4, 1e-3});
  for (std::size_t i = 0; i < fit.ys.size(); ++i) out.cases.push_back({{"y", fit.ys[i]}, {"deviation", fit.deviations[i]}});
  out.summary = {{"exponent", fit.exponent}, {"constant", fit.constant}, {"required", 0.09}};
  out.pass = fit.exponent >= 0.09;
}

void check_decay(const RunConfig&, CheckResult& out) {
  const double v = std::abs(V(1e3, LanglandsParams()));
  out.summary = {{"abs_v_1e3", v}, {"decay_point_1e-13", cutoff_decay_point(LanglandsParams(), 1e-13)}};
  out.pass = v <= 1e-6;
}

// lfun

void check_afe(const RunConfig& cfg, CheckResult& out) {
  const ToyGL3Form form;
  double worst = 0;
  bool ok = true;
  for (u64 q : cfg.afe_moduli)
    for (double X : cfg.afe_X)
      for (const auto& r : afe_check_all(form, q, X)) {
        worst = std::max(worst, r.rel_err);
        ok = ok && r.pass;
        out.cases.push_back({{"q", r.q},
                             {"chi_index", r.chi_index},
                             {"X", r.X},
                             {"lhs_re", r.lhs.real()},
                             {"lhs_im", r.lhs.imag()},
                             {"rhs_re", r.rhs.real()},
                             {"rhs_im", r.rhs.imag()},
                             {"abs_err", r.abs_err},
                             {"rel_err", r.rel_err},
                             {"pass", r.pass}});
      }
  out.summary = {{"cases", out.cases.size()}, {"max_rel_err", worst}, {"tolerance", 1e-4}};
  out.pass = ok && !out.cases.empty();
}

void check_x_independence(const RunConfig& cfg, CheckResult& out) {
  const ToyGL3Form form;
  double worst = 0;
  for (u64 q : cfg.afe_moduli) {
    std::vector<std::vector<AfeReport>> runs;
    for (double X : {0.5, 1.0, 2.0}) runs.push_back(afe_check_all(form, q, X));
    for (std::size_t i = 0; i < runs[0].size(); ++i) {
      const cplx b = runs[1][i].rhs;
      const double d = std::max(std::abs(runs[0][i].rhs - b), std::abs(runs[2][i].rhs - b)) / std::max(1.0, std::abs(b));
      worst = std::max(worst, d);
      out.cases.push_back({{"q", q}, {"chi_index", runs[1][i].chi_index}, {"max_diff", d}, {"pass", d <= 1e-6}});
    }
  }
  out.summary = {{"max_diff", worst}, {"tolerance", 1e-6}};
  out.pass = worst <= 1e-6;
}

void check_l_routes(const RunConfig& cfg, CheckResult& out) {
  double worst = 0;
  for (u64 q : cfg.afe_moduli)
    for (const auto& chi : enumerate_characters(Modulus(q), CharacterFilter::Primitive)) {
      const cplx h = dirichlet_L(0.5, chi), a = dirichlet_L(0.5, chi, LRoute::Afe);
      worst = std::max(worst, std::abs(h - a));
      out.cases.push_back({{"q", q}, {"chi_index", chi.index()}, {"hurwitz", complex_pair(h)}, {"afe", complex_pair(a)}});
    }
  out.summary = {{"max_abs_diff", worst}, {"tolerance", 1e-8}};
  out.pass = worst <= 1e-8;
}

// moment

u64 ordered_factorizations(u64 n) {
  u64 count = 0;
  for (u64 a = 1; a <= n; ++a)
    if (n % a == 0)
      for (u64 b = 1; b <= n / a; ++b)
        if ((n / a) % b == 0) ++count;
  return count;
}

void check_moment_identity(const RunConfig& cfg, CheckResult& out) {
  const ToyGL3Form form;
  const auto fam = build_family(cfg.Q1, cfg.Q2);
  bool ok = true, exact = true;
  double worst = 0;
  for (u64 ell : cfg.ells) {
    const auto rep = moment_pipeline(fam, form, ell, cfg.X);
    const cplx expected = static_cast<double>(ordered_factorizations(ell)) / std::sqrt(static_cast<double>(ell)) * static_cast<double>(fam.Y());
    const bool main_ok = rep.main_term == expected;
    ok = ok && rep.identity_pass && main_ok;
    exact = exact && main_ok;
    worst = std::max({worst, rep.identity_rel_err, rep.F_route_rel_err, rep.S_route_rel_err});
    out.cases.push_back({{"ell", ell},
                         {"members", fam.members.size()},
                         {"Y", rep.Y},
                         {"T_direct", complex_pair(rep.T_direct)},
                         {"T_decomposed", complex_pair(rep.T_decomposed)},
                         {"main_term", complex_pair(rep.main_term)},
                         {"main_term_exact", main_ok},
                         {"identity_rel_err", rep.identity_rel_err},
                         {"F_route_rel_err", rep.F_route_rel_err},
                         {"S_route_rel_err", rep.S_route_rel_err},
                         {"residual_over_Y", std::abs(rep.residual) / static_cast<double>(rep.Y)},
                         {"E_diagnostic", rep.E_diagnostic},
                         {"pass", rep.identity_pass && main_ok}});
  }
  out.summary = {{"Q1", cfg.Q1}, {"Q2", cfg.Q2},          {"X", cfg.X},
                 {"max_identity_rel_err", worst}, {"main_term_exact", exact}, {"tolerance", 1e-4}};
  out.pass = ok;
}

void check_moment_x_invariance(const RunConfig& cfg, CheckResult& out) {
  const ToyGL3Form form;
  const auto fam = build_family(cfg.Q1, cfg.Q2);
  const u64 ell = cfg.ells.empty() ? 1 : cfg.ells.back();
  const auto a = moment_pipeline(fam, form, ell, cfg.X), b = moment_pipeline(fam, form, ell, 2 * cfg.X);
  const double d = std::abs(a.T_decomposed - b.T_decomposed) / std::abs(a.T_decomposed);
  out.summary = {{"ell", ell}, {"X", cfg.X}, {"rel_diff", d}, {"tolerance", 1e-4}};
  out.pass = d <= 1e-4;
}

void check_moment_trend(const RunConfig& cfg, CheckResult& out) {
  const ToyGL3Form form;
  const auto trend = moment_trend(cfg.ladder, form, 1);
  Json ratios = Json::array();
  for (const auto& r : trend.rungs) ratios.push_back(r.residual_ratio);
  for (const auto& r : trend.rungs)
    out.cases.push_back({{"Q1", r.Q1},
                         {"Q2", r.Q2},
                         {"members", r.members},
                         {"Y", r.Y},
                         {"T_direct", complex_pair(r.T_direct)},
                         {"residual_over_Y", r.residual_ratio}});
  out.summary = {{"ell", 1}, {"residual_over_Y", ratios}, {"residual_decreasing", trend.residual_decreasing}};
  out.pass = trend.residual_decreasing;
}

void check_dual_dominance(const RunConfig&, CheckResult& out) {
  const ToyGL3Form form;
  const auto rungs = s_dominance(kDominanceBoxes, form, 1);
  bool below = true, decreasing = true;
  for (std::size_t i = 0; i < rungs.size(); ++i) {
    const auto& r = rungs[i];
    below = below && r.ratio < 1.0;
    if (i > 0) decreasing = decreasing && r.ratio < rungs[i - 1].ratio;
    out.cases.push_back({{"Q1", r.Q1}, {"Q2", r.Q2}, {"members", r.members}, {"X", r.X}, {"S_term", complex_pair(r.S_term)}, {"ratio", r.ratio}});
  }
  out.summary = {{"below_main_term", below}, {"decreasing", decreasing}};
  out.pass = below && decreasing;
}

const std::map<std::string, std::vector<CheckSpec>>& registry() {
  static const std::map<std::string, std::vector<CheckSpec>> r = {
      {"characters", {{"counts", check_character_counts}, {"gauss_modulus", check_gauss_modulus}}},
      {"expsums",
       {{"identity2", check_identity2}, {"gauss_splitting", check_gauss_splitting}, {"deligne", check_deligne}, {"ramanujan", check_ramanujan}}},
      {"charsums",
       {{"factorization", check_factorization}, {"vanishing", check_vanishing}, {"closedforms", check_closed_forms}, {"bounds", check_bounds}, {"oracle", check_oracle, false}}},
      {"newton",
       {{"hull", check_hull}, {"nondegenerate", check_nondegenerate}, {"planted", check_planted}, {"sqrt_cancellation", check_sqrt_cancellation}}},
      {"archimedean", {{"contour", check_contour}, {"small_y", check_small_y}, {"decay", check_decay}}},
      {"lfun", {{"routes", check_l_routes}, {"afe", check_afe}, {"x_independence", check_x_independence}}},
      {"moment",
       {{"identity", check_moment_identity},
        {"x_invariance", check_moment_x_invariance},
        {"trend", check_moment_trend},
        {"dual_dominance", check_dual_dominance}}},
  };
  return r;
}

const std::vector<CheckSpec>& checks_of(const std::string& suite) {
  const auto it = registry().find(suite);
  if (it == registry().end()) throw Error(ErrorCode::InvalidArgument, "unknown suite '" + suite + "'");
  return it->second;
}

void round_floats(Json& j) {
  if (j.is_number_float()) {
    j = round12(j.get<double>());
  } else if (j.is_structured()) {
    for (auto& v : j) round_floats(v);
  }
}

}  // namespace

Json config_json(const RunConfig& cfg) {
  return {{"qmax", cfg.qmax},   {"pmax", cfg.pmax},     {"conj_pmax", cfg.conj_pmax}, {"seed", cfg.seed},
          {"samples", cfg.samples}, {"Q1", cfg.Q1},     {"Q2", cfg.Q2},               {"ells", cfg.ells},
          {"X", cfg.X},         {"ladder", cfg.ladder}, {"afe_moduli", cfg.afe_moduli}, {"afe_X", cfg.afe_X},
          {"newton_primes", cfg.newton_primes}, {"newton_tuples", cfg.newton_tuples}};
}

bool SuiteReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

Json SuiteReport::to_json() const {
  Json j;
  j["suite"] = suite;
  j["pass"] = pass();
  j["checks"] = Json::array();
  for (const auto& c : checks) j["checks"].push_back({{"name", c.name}, {"pass", c.pass}, {"summary", c.summary}, {"cases", c.cases}});
  return j;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"characters", "expsums", "charsums", "newton", "archimedean", "lfun", "moment"};
  return names;
}

std::vector<std::string> check_names(const std::string& suite) {
  std::vector<std::string> out;
  for (const auto& s : checks_of(suite))
    if (s.by_default) out.push_back(s.name);
  return out;
}

bool has_check(const std::string& suite, const std::string& check) {
  const auto it = registry().find(suite);
  if (it == registry().end()) return false;
  return std::any_of(it->second.begin(), it->second.end(), [&](const CheckSpec& s) { return s.name == check; });
}

CheckResult run_check(const std::string& suite, const std::string& check, const RunConfig& cfg) {
  for (const auto& s : checks_of(suite)) {
    if (s.name != check) continue;
    CheckResult out;
    out.name = check;
    const auto start = std::chrono::steady_clock::now();
    try {
      s.run(cfg, out);
    } catch (const std::exception& e) {
      out.pass = false;
      out.summary["error"] = e.what();
    }
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown check '" + check + "' in suite '" + suite + "'");
}

SuiteReport run_suite(const std::string& suite, const RunConfig& cfg) { return run_suite(suite, check_names(suite), cfg); }

SuiteReport run_suite(const std::string& suite, const std::vector<std::string>& checks, const RunConfig& cfg) {
  SuiteReport rep;
  rep.suite = suite;
  for (const auto& c : checks) rep.checks.push_back(run_check(suite, c, cfg));
  return rep;
}

double round12(double x) {
  if (!std::isfinite(x) || x == 0.0) return x;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

std::string dump_report(Json body) {
  Json out;
  out["schema"] = 1;
  for (const auto& item : body.items())
    if (item.key() != "schema") out[item.key()] = item.value();
  round_floats(out);
  return out.dump(2) + "\n";
}

}  // namespace charsumlab
