#include "charsumlab/newton.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "charsumlab/error.hpp"
#include "json.hpp"

namespace charsumlab {

namespace {

i64 dot(const Exponent& a, const Exponent& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

Exponent sub(const Exponent& a, const Exponent& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }

Exponent cross(const Exponent& a, const Exponent& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

Exponent primitive_direction(Exponent v) {
  const i64 g = std::gcd(std::gcd(std::abs(v[0]), std::abs(v[1])), std::abs(v[2]));
  if (g > 1)
    for (auto& x : v) x /= g;
  return v;
}

// Rank of integer rows by fraction-free elimination.
int rank_of(std::vector<Exponent> rows, const std::vector<int>& cols) {
  int rank = 0;
  for (int c : cols) {
    size_t piv = rows.size();
    for (size_t r = rank; r < rows.size(); ++r)
      if (rows[r][c] != 0) {
        piv = r;
        break;
      }
    if (piv == rows.size()) continue;
    std::swap(rows[rank], rows[piv]);
    for (size_t r = 0; r < rows.size(); ++r) {
      if (r == static_cast<size_t>(rank) || rows[r][c] == 0) continue;
      const i64 a = rows[rank][c], b = rows[r][c];
      for (int k = 0; k < 3; ++k) rows[r][k] = rows[r][k] * a - rows[rank][k] * b;
      rows[r] = primitive_direction(rows[r]);
    }
    ++rank;
  }
  return rank;
}

std::vector<Exponent> differences(const std::vector<Exponent>& pts) {
  std::vector<Exponent> d;
  for (size_t i = 1; i < pts.size(); ++i) d.push_back(sub(pts[i], pts[0]));
  return d;
}

u64 power_mod_signed(u64 x, i64 e, u64 p, const std::vector<u32>& inv) {
  if (e >= 0) return pow_mod(x, static_cast<u64>(e), p);
  return pow_mod(inv[x], static_cast<u64>(-e), p);
}

}  // namespace

LaurentPolynomial::LaurentPolynomial(unsigned variables, std::vector<Monomial> terms) : vars_(variables) {
  if (vars_ < 1 || vars_ > 3) throw Error(ErrorCode::InvalidArgument, "1 to 3 variables supported");
  std::map<Exponent, i64> merged;
  for (const auto& t : terms) {
    for (unsigned i = vars_; i < 3; ++i)
      if (t.exponent[i] != 0) throw Error(ErrorCode::InvalidArgument, "exponent uses an absent variable");
    merged[t.exponent] += t.coeff;
  }
  for (const auto& [e, c] : merged)
    if (c != 0) terms_.push_back({e, c});
}

LaurentPolynomial LaurentPolynomial::from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("polynomial JSON: ") + e.what());
  }
  if (!doc.is_array() || doc.empty()) throw Error(ErrorCode::InvalidArgument, "polynomial JSON must be a nonempty list");
  unsigned vars = 0;
  std::vector<Monomial> terms;
  for (const auto& item : doc) {
    if (!item.contains("exponents") || !item.contains("coeff"))
      throw Error(ErrorCode::InvalidArgument, "each term needs exponents and coeff");
    const auto& ex = item.at("exponents");
    if (!ex.is_array() || ex.empty() || ex.size() > 3)
      throw Error(ErrorCode::InvalidArgument, "exponents must list 1 to 3 integers");
    if (vars == 0) vars = static_cast<unsigned>(ex.size());
    if (ex.size() != vars) throw Error(ErrorCode::InvalidArgument, "inconsistent exponent lengths");
    Monomial m;
    for (size_t i = 0; i < ex.size(); ++i) m.exponent[i] = ex[i].get<i64>();
    m.coeff = item.at("coeff").get<i64>();
    terms.push_back(m);
  }
  return LaurentPolynomial(vars, std::move(terms));
}

std::string LaurentPolynomial::to_json() const {
  nlohmann::json doc = nlohmann::json::array();
  for (const auto& t : terms_) {
    nlohmann::json ex = nlohmann::json::array();
    for (unsigned i = 0; i < vars_; ++i) ex.push_back(t.exponent[i]);
    doc.push_back({{"exponents", ex}, {"coeff", t.coeff}});
  }
  return doc.dump();
}

u64 LaurentPolynomial::evaluate(const std::vector<u64>& x, u64 p) const {
  if (x.size() != vars_) throw Error(ErrorCode::InvalidArgument, "point has the wrong number of coordinates");
  u64 total = 0;
  for (const auto& t : terms_) {
    u64 m = reduce(t.coeff, p);
    for (unsigned i = 0; i < vars_; ++i) {
      const u64 xi = x[i] % p;
      if (xi == 0) throw Error(ErrorCode::NonInvertible, "coordinates must be units");
      const u64 base = t.exponent[i] >= 0 ? xi : mod_inverse(static_cast<i64>(xi), p);
      m = mul_mod(m, pow_mod(base, static_cast<u64>(std::abs(t.exponent[i])), p), p);
    }
    total = (total + m) % p;
  }
  return total;
}

LaurentPolynomial LaurentPolynomial::reduced(u64 p) const {
  std::vector<Monomial> out;
  for (const auto& t : terms_)
    if (reduce(t.coeff, p) != 0) out.push_back({t.exponent, static_cast<i64>(reduce(t.coeff, p))});
  return LaurentPolynomial(vars_, std::move(out));
}

LaurentPolynomial LaurentPolynomial::restricted(const std::vector<Exponent>& support) const {
  std::vector<Monomial> out;
  for (const auto& t : terms_)
    if (std::find(support.begin(), support.end(), t.exponent) != support.end()) out.push_back(t);
  return LaurentPolynomial(vars_, std::move(out));
}

int affine_dimension(const std::vector<Exponent>& points) {
  if (points.empty()) return -1;
  return rank_of(differences(points), {0, 1, 2});
}

Polytope convex_hull(std::vector<Exponent> points) {
  if (points.empty()) throw Error(ErrorCode::InvalidArgument, "hull of an empty set");
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  Polytope poly;
  poly.points = points;
  const auto diffs = differences(points);
  const int d = rank_of(diffs, {0, 1, 2});
  poly.dimension = static_cast<unsigned>(d);

  // Coordinates on which the affine hull projects injectively.
  std::vector<int> coords;
  for (int c = 0; c < 3 && static_cast<int>(coords.size()) < d; ++c) {
    auto trial = coords;
    trial.push_back(c);
    if (rank_of(diffs, trial) == static_cast<int>(trial.size())) coords = trial;
  }
  auto project = [&](const Exponent& x) {
    Exponent y{0, 0, 0};
    for (size_t k = 0; k < coords.size(); ++k) y[k] = x[coords[k]];
    return y;
  };
  auto lift = [&](const Exponent& w) {
    Exponent v{0, 0, 0};
    for (size_t k = 0; k < coords.size(); ++k) v[coords[k]] = w[k];
    return v;
  };
  std::vector<Exponent> y;
  for (const auto& x : points) y.push_back(project(x));
  const size_t n = points.size();

  // Facets of the projected hull as outward primitive normals.
  std::set<Exponent> facet_normals;
  auto try_normal = [&](Exponent w) {
    if (w == Exponent{0, 0, 0}) return;
    w = primitive_direction(w);
    i64 lo = dot(w, y[0]), hi = lo;
    for (const auto& pt : y) {
      lo = std::min(lo, dot(w, pt));
      hi = std::max(hi, dot(w, pt));
    }
    // w is a facet normal when the points attaining the max span a (d-1)-flat
    for (int sign : {1, -1}) {
      Exponent u = sign == 1 ? w : Exponent{-w[0], -w[1], -w[2]};
      const i64 top = sign == 1 ? hi : -lo;
      std::vector<Exponent> on;
      for (size_t i = 0; i < n; ++i)
        if (dot(u, y[i]) == top) on.push_back(y[i]);
      if (affine_dimension(on) == d - 1) facet_normals.insert(u);
    }
  };
  if (d == 1) {
    try_normal({1, 0, 0});
  } else if (d == 2) {
    for (size_t i = 0; i < n; ++i)
      for (size_t j = i + 1; j < n; ++j) {
        const Exponent v = sub(y[j], y[i]);
        try_normal({-v[1], v[0], 0});
      }
  } else if (d == 3) {
    for (size_t i = 0; i < n; ++i)
      for (size_t j = i + 1; j < n; ++j)
        for (size_t k = j + 1; k < n; ++k) try_normal(cross(sub(y[j], y[i]), sub(y[k], y[i])));
  }

  // Faces are the nonempty intersections of facets.
  std::vector<std::pair<Exponent, std::vector<size_t>>> facets;
  for (const auto& w : facet_normals) {
    i64 top = dot(w, y[0]);
    for (const auto& pt : y) top = std::max(top, dot(w, pt));
    std::vector<size_t> on;
    for (size_t i = 0; i < n; ++i)
      if (dot(w, y[i]) == top) on.push_back(i);
    facets.emplace_back(w, on);
  }
  std::set<std::vector<size_t>> sets;
  for (const auto& f : facets) sets.insert(f.second);
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::vector<size_t>> current(sets.begin(), sets.end());
    for (size_t a = 0; a < current.size(); ++a)
      for (size_t b = a + 1; b < current.size(); ++b) {
        std::vector<size_t> meet;
        std::set_intersection(current[a].begin(), current[a].end(), current[b].begin(), current[b].end(),
                              std::back_inserter(meet));
        if (!meet.empty() && sets.insert(meet).second) grew = true;
      }
  }

  std::vector<size_t> vertex_points;
  if (d == 0) vertex_points.push_back(0);
  for (const auto& s : sets)
    if (s.size() == 1) vertex_points.push_back(s[0]);
  std::sort(vertex_points.begin(), vertex_points.end());
  vertex_points.erase(std::unique(vertex_points.begin(), vertex_points.end()), vertex_points.end());
  for (size_t i : vertex_points) poly.vertices.push_back(points[i]);
  poly.full_dimensional = d == 3;

  for (const auto& s : sets) {
    Face face;
    std::vector<Exponent> pts;
    for (size_t i : s) pts.push_back(points[i]);
    face.dimension = static_cast<unsigned>(affine_dimension(pts));
    face.points = s;
    Exponent w{0, 0, 0};
    for (const auto& [normal, on] : facets)
      if (std::includes(on.begin(), on.end(), s.begin(), s.end()))
        for (int k = 0; k < 3; ++k) w[k] += normal[k];
    face.normal = lift(w);
    for (size_t i : s) {
      auto it = std::find(poly.vertices.begin(), poly.vertices.end(), points[i]);
      if (it != poly.vertices.end()) face.vertices.push_back(static_cast<size_t>(it - poly.vertices.begin()));
    }
    poly.faces.push_back(face);
  }
  std::sort(poly.faces.begin(), poly.faces.end(), [](const Face& a, const Face& b) {
    if (a.dimension != b.dimension) return a.dimension < b.dimension;
    return a.vertices < b.vertices;
  });
  return poly;
}

Polytope newton_polyhedron(const LaurentPolynomial& f) {
  if (f.terms().empty()) throw Error(ErrorCode::InvalidArgument, "polynomial has no terms");
  std::vector<Exponent> pts{{0, 0, 0}};
  for (const auto& t : f.terms()) pts.push_back(t.exponent);
  Polytope poly = convex_hull(pts);
  poly.full_dimensional = poly.dimension == f.variables();
  return poly;
}

bool span_contains_origin(const Polytope& poly, const Face& face) {
  std::vector<Exponent> pts;
  for (size_t i : face.points) pts.push_back(poly.points[i]);
  const int d = affine_dimension(pts);
  pts.push_back({0, 0, 0});
  return affine_dimension(pts) == d;
}

std::vector<Face> faces_off_origin(const Polytope& poly) {
  std::vector<Face> out;
  for (const auto& face : poly.faces)
    if (!span_contains_origin(poly, face)) out.push_back(face);
  return out;
}

NondegeneracyReport is_nondegenerate(const LaurentPolynomial& f, u64 p) {
  if (!is_prime(p)) throw Error(ErrorCode::NotPrime, "field characteristic must be prime");
  if (p > kMaxNewtonPrime) throw Error(ErrorCode::ModulusTooLarge, "exhaustive search limited to p <= 200");
  for (const auto& t : f.terms())
    if (reduce(t.coeff, p) == 0) throw Error(ErrorCode::CoefficientVanishes, "a coefficient vanishes mod p");
  const unsigned k = f.variables();
  const auto inv = inverse_table(p);
  const Polytope poly = newton_polyhedron(f);

  NondegeneracyReport rep;
  rep.p = p;
  for (const auto& face : faces_off_origin(poly)) {
    std::vector<Exponent> support;
    for (size_t i : face.points) support.push_back(poly.points[i]);
    const auto ft = f.restricted(support);
    FaceReport fr;
    fr.face = face;
    fr.terms = ft.terms().size();
    // x_i d/dx_i of each monomial: e_i c x^e
    std::vector<u64> x(k, 1);
    bool done = false;
    while (!done) {
      bool zero = true;
      for (unsigned i = 0; i < k && zero; ++i) {
        u64 s = 0;
        for (const auto& t : ft.terms()) {
          u64 m = mul_mod(reduce(t.exponent[i], p), reduce(t.coeff, p), p);
          if (m == 0) continue;
          for (unsigned j = 0; j < k; ++j) m = mul_mod(m, power_mod_signed(x[j], t.exponent[j], p, inv), p);
          s = (s + m) % p;
        }
        zero = s == 0;
      }
      if (zero) {
        fr.singular = true;
        fr.witness = x;
        break;
      }
      // lexicographic successor over [1, p)^k, last coordinate fastest
      unsigned j = k;
      while (j > 0) {
        --j;
        if (++x[j] < p) break;
        x[j] = 1;
        if (j == 0) done = true;
      }
    }
    if (fr.singular) {
      rep.nondegenerate = false;
      rep.singular_dimensions.push_back(face.dimension);
    }
    rep.faces.push_back(fr);
  }
  return rep;
}

LaurentPolynomial triple_polynomial(i64 ell, i64 n, u64 q2, u64 q2p, u64 p) {
  for (i64 v : {ell, n, static_cast<i64>(q2), static_cast<i64>(q2p)})
    if (reduce(v, p) == 0) throw Error(ErrorCode::CoefficientVanishes, "p divides one of ell, n, q2, q2p");
  const u64 l = reduce(ell, p);
  const u64 nb = mod_inverse(n, p);
  const u64 q2b = mod_inverse(static_cast<i64>(q2), p);
  const u64 q2pb = mod_inverse(static_cast<i64>(q2p), p);
  const u64 q2r = q2 % p, q2pr = q2p % p;
  auto prod = [p](std::initializer_list<u64> xs) {
    u64 r = 1;
    for (u64 x : xs) r = mul_mod(r, x, p);
    return r;
  };
  auto neg = [p](u64 x) { return (p - x) % p; };
  std::vector<Monomial> terms{
      {{-1, 0, 0}, static_cast<i64>(neg(prod({l, q2b, q2b, q2pr, nb})))},
      {{-1, -1, 0}, static_cast<i64>(neg(prod({l, l, q2b, q2pr, nb})))},
      {{1, 0, 0}, 1},
      {{0, 1, -1}, static_cast<i64>(prod({q2pb, q2pb, nb}))},
      {{0, 0, -1}, static_cast<i64>(prod({l, q2r, q2pb, q2pb, nb}))},
      {{0, 0, 1}, 1},
  };
  return LaurentPolynomial(3, std::move(terms));
}

SumValue complete_exp_sum(const LaurentPolynomial& f, u64 p) {
  if (!is_prime(p)) throw Error(ErrorCode::NotPrime, "field characteristic must be prime");
  if (p > 10'000) throw Error(ErrorCode::ModulusTooLarge, "exponential sum limited to p <= 1e4");
  const unsigned k = f.variables();
  const auto inv = inverse_table(p);
  const auto& terms = f.terms();
  // table[t][i][x] = x^{e_{t,i}} mod p
  std::vector<std::array<std::vector<u64>, 3>> table(terms.size());
  for (size_t t = 0; t < terms.size(); ++t)
    for (unsigned i = 0; i < k; ++i) {
      table[t][i].assign(p, 0);
      for (u64 x = 1; x < p; ++x) table[t][i][x] = power_mod_signed(x, terms[t].exponent[i], p, inv);
    }
  // group terms by the exponent of the last variable
  std::map<i64, std::vector<size_t>> groups;
  for (size_t t = 0; t < terms.size(); ++t) groups[terms[t].exponent[k - 1]].push_back(t);
  std::vector<std::vector<u64>> last_pow;
  std::vector<std::vector<size_t>> members;
  for (const auto& [e, ts] : groups) {
    last_pow.push_back(table[ts[0]][k - 1]);
    members.push_back(ts);
  }
  const size_t ng = members.size();

  std::vector<i64> counts(p, 0);
  std::vector<u64> outer(k - 1, 1);
  std::vector<u64> a(ng);
  bool done = false;
  while (!done) {
    for (size_t g = 0; g < ng; ++g) {
      u64 s = 0;
      for (size_t t : members[g]) {
        u64 m = reduce(terms[t].coeff, p);
        for (unsigned i = 0; i + 1 < k; ++i) m = m * table[t][i][outer[i]] % p;
        s += m;
      }
      a[g] = s % p;
    }
    for (u64 x = 1; x < p; ++x) {
      u64 v = 0;
      for (size_t g = 0; g < ng; ++g) v += a[g] * last_pow[g][x];
      ++counts[v % p];
    }
    if (k == 1) break;
    unsigned j = k - 1;
    done = true;
    while (j > 0) {
      --j;
      if (++outer[j] < p) {
        done = false;
        break;
      }
      outer[j] = 1;
    }
  }
  Cyclotomic value(p);
  for (u64 v = 0; v < p; ++v)
    if (counts[v] != 0) value.add_root(static_cast<i64>(v), counts[v]);
  return SumValue::from_exact(value);
}

double sqrt_cancellation_measure(const LaurentPolynomial& f, u64 p) {
  const auto s = complete_exp_sum(f, p);
  return s.magnitude() / std::pow(static_cast<double>(p), f.variables() / 2.0);
}

}  // namespace charsumlab
