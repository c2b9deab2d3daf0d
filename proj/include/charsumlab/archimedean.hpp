#pragma once

// Gamma factors gamma(s) = prod_i Gamma_R(s - alpha_i), Gamma_R(s) = pi^{-s/2} Gamma(s/2),
// and the cutoff
//
//   V(y) = 1/(2 pi i) int_{(sigma)} y^{-s} gamma(s + 1/2) / gamma(1/2) ds / s
//
// by trapezoid quadrature on a vertical line.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "charsumlab/sum_value.hpp"

namespace charsumlab {

/// log Gamma(z) up to a multiple of 2 pi i (exp of the result is Gamma(z)).
cplx log_gamma(cplx z);
cplx gamma_fn(cplx z);
cplx log_gamma_r(cplx s);
cplx gamma_r(cplx s);

inline constexpr double kMaxAlphaReal = 0.4;
inline constexpr double kPoleTolerance = 1e-6;

class LanglandsParams {
 public:
  /// alpha = (0, 0, 0).
  LanglandsParams();
  /// Re(alpha_i) <= 2/5; with require_sum_zero also sum alpha_i = 0.
  explicit LanglandsParams(std::vector<cplx> alpha, bool require_sum_zero = false);
  /// Degree-one factor Gamma_R(s + kappa) of a Dirichlet character of parity kappa.
  static LanglandsParams dirichlet(int kappa);
  /// Parses "a,b,c" with entries "x" or "x+yi" / "x-yi".
  static LanglandsParams parse(const std::string& text, bool require_sum_zero = false);

  const std::vector<cplx>& alpha() const { return alpha_; }
  std::size_t degree() const { return alpha_.size(); }
  double max_real() const;
  /// Distance from s to the nearest pole alpha_i - 2k.
  double pole_distance(cplx s) const;
  std::string key() const;

 private:
  std::vector<cplx> alpha_;
};

/// prod Gamma_R(s - alpha_i); throws PoleProximity within 1e-6 of a pole.
cplx gamma_factor(cplx s, const LanglandsParams& params);
cplx log_gamma_factor(cplx s, const LanglandsParams& params);

struct AFEConfig {
  double X = 1.0;
  std::optional<double> sigma;  // default: 3 for y >= 1, left of 0 (with the residue 1) for y < 1
  double T = 0.0;  // 0: adaptive
  double h = 0.0;  // 0: from the pole-free strip width
  double tol = 1e-8;  // refinement tolerance
  double tail = 1e-14;  // integrand size at which the line is truncated
};

struct VResult {
  cplx value;
  double err = 0.0;  // refinement change plus tail bound
  double sigma = 0.0;
  double h = 0.0;
  double T = 0.0;
  std::size_t nodes = 0;
};

/// V(y); throws QuadratureNotConverged when halving h and doubling T moves the
/// value by more than cfg.tol, InvalidArgument for y <= 0 or a contour on a pole.
VResult cutoff_v(double y, const LanglandsParams& params, const AFEConfig& cfg = {});
cplx V(double y, const LanglandsParams& params, const AFEConfig& cfg = {});

/// The default left abscissa: halfway between 0 and the first pole of gamma(s + 1/2).
double left_abscissa(const LanglandsParams& params);

/// Smallest y0 (to 1%) with |V(y)| < threshold on [y0, 64 y0].
double cutoff_decay_point(const LanglandsParams& params, double threshold = 1e-12);

/// Piecewise Chebyshev interpolant of V in log y on [y_lo, y_hi]; zero above y_hi.
class CutoffTable {
 public:
  CutoffTable(const LanglandsParams& params, double y_lo, double y_hi);
  cplx operator()(double y) const;
  double y_lo() const { return y_lo_; }
  double y_hi() const { return y_hi_; }
  /// Max deviation from direct quadrature at piece midpoints, plus quadrature error.
  double err() const { return err_; }

 private:
  double y_lo_, y_hi_, u_lo_, width_;
  std::vector<std::vector<cplx>> coeffs_;
  double err_ = 0.0;
};

/// Shared table covering [y_lo, decay point for 1e-13]; reuses a cached table when it already covers y_lo.
std::shared_ptr<const CutoffTable> cutoff_table(const LanglandsParams& params, double y_lo);

struct SmallYFit {
  std::vector<double> ys;
  std::vector<double> deviations;  // |V(y) - 1|
  double exponent = 0.0;  // least-squares slope of log |V - 1| against log y
  double constant = 0.0;  // max |V(y) - 1| / y^exponent
};
SmallYFit fit_small_y(const LanglandsParams& params, const std::vector<double>& ys);

}  // namespace charsumlab
