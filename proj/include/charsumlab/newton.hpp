#pragma once

// Laurent polynomials in up to three variables, their Newton polyhedron at
// infinity (hull of the support together with the origin), face enumeration
// and non-degeneracy over small prime fields.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "charsumlab/residue.hpp"
#include "charsumlab/sum_value.hpp"

namespace charsumlab {

using Exponent = std::array<i64, 3>;

struct Monomial {
  Exponent exponent{0, 0, 0};
  i64 coeff = 0;
};

class LaurentPolynomial {
 public:
  LaurentPolynomial(unsigned variables, std::vector<Monomial> terms);

  /// JSON list of {"exponents": [e1, ...], "coeff": c}; variable count is the
  /// exponent length (1 to 3).
  static LaurentPolynomial from_json(const std::string& text);
  std::string to_json() const;

  unsigned variables() const { return vars_; }
  /// Sorted by exponent, distinct, nonzero coefficients.
  const std::vector<Monomial>& terms() const { return terms_; }

  /// f(x) mod p; every coordinate must be a unit mod p.
  u64 evaluate(const std::vector<u64>& x, u64 p) const;
  /// The polynomial with coefficients reduced mod p, zero terms dropped.
  LaurentPolynomial reduced(u64 p) const;
  /// Terms whose exponent is in `support`.
  LaurentPolynomial restricted(const std::vector<Exponent>& support) const;

 private:
  unsigned vars_;
  std::vector<Monomial> terms_;
};

struct Face {
  unsigned dimension = 0;
  Exponent normal{0, 0, 0};  // the face is argmax of <normal, x> over the polytope
  std::vector<std::size_t> vertices;  // indices into Polytope::vertices
  std::vector<std::size_t> points;  // indices into Polytope::points lying on the face
};

struct Polytope {
  std::vector<Exponent> points;  // generating set, deduplicated, sorted
  std::vector<Exponent> vertices;  // extreme points, sorted
  unsigned dimension = 0;
  bool full_dimensional = false;
  std::vector<Face> faces;  // proper nonempty faces, by dimension then vertex set
};

/// Exact hull of `points` (dimension <= 3) with its face lattice.
Polytope convex_hull(std::vector<Exponent> points);

/// Hull of supp(f) together with the origin.
Polytope newton_polyhedron(const LaurentPolynomial& f);

/// Whether 0 lies in the affine span of the face's points.
bool span_contains_origin(const Polytope& poly, const Face& face);

std::vector<Face> faces_off_origin(const Polytope& poly);

/// Affine dimension of a point set (-1 for empty).
int affine_dimension(const std::vector<Exponent>& points);

struct FaceReport {
  Face face;
  std::size_t terms = 0;
  bool singular = false;  // gradient system has a solution on the torus
  std::vector<u64> witness;  // lexicographically smallest solution when singular
};

struct NondegeneracyReport {
  u64 p = 0;
  bool nondegenerate = true;
  std::vector<FaceReport> faces;
  std::vector<unsigned> singular_dimensions;
};

inline constexpr u64 kMaxNewtonPrime = 200;

/// For each face off the origin, searches (F_p^*)^k for a common zero of
/// x_i d/dx_i f_tau. Throws CoefficientVanishes if some coefficient is 0 mod p.
NondegeneracyReport is_nondegenerate(const LaurentPolynomial& f, u64 p);

/// Coefficients of the polynomial f(x; ell, n, q2, q2p) reduced mod p:
///   -ell q2bar^2 q2p nbar / x1 - ell^2 q2bar q2p nbar / (x1 x2) + x1
///   + q2pbar^2 nbar x2 / x3 + ell q2 q2pbar^2 nbar / x3 + x3.
/// Throws CoefficientVanishes when p divides ell n q2 q2p.
LaurentPolynomial triple_polynomial(i64 ell, i64 n, u64 q2, u64 q2p, u64 p);

/// sum over x in (F_p^*)^k of e_p(f(x)), exact via value counts.
SumValue complete_exp_sum(const LaurentPolynomial& f, u64 p);

/// |complete_exp_sum| / p^{k/2}.
double sqrt_cancellation_measure(const LaurentPolynomial& f, u64 p);

}  // namespace charsumlab
