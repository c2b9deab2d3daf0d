#include "charsumlab/archimedean.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <mutex>

#include "charsumlab/error.hpp"

namespace charsumlab {

namespace {

const double kPi = std::acos(-1.0);
const double kHalfLogTwoPi = 0.5 * std::log(2 * kPi);

// B_{2k} / (2k (2k - 1)), k = 1..8
const double kStirling[] = {1.0 / 12,        -1.0 / 360,  1.0 / 1260, -1.0 / 1680,
                            1.0 / 1188,      -691.0 / 360360, 1.0 / 156, -3617.0 / 122400};

// log sin(pi z) without overflow for large |Im z|.
cplx log_sin_pi(cplx z) {
  const cplx iw = cplx(0, kPi) * z;
  if (z.imag() > 0) return -iw + std::log((std::exp(2.0 * iw) - 1.0) / cplx(0, 2));
  return iw + std::log((1.0 - std::exp(-2.0 * iw)) / cplx(0, 2));
}

std::string format_cplx(cplx z) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real(), z.imag());
  return buf;
}

// Trapezoid nodes on Re s = sigma with the y-independent weights gamma(s + 1/2) / (gamma(1/2) s).
struct Kernel {
  double sigma = 0, h = 0, T = 0;
  bool residue = false;
  std::vector<double> t;  // step h/2 on [-2T, 2T]
  std::vector<cplx> w;
  std::vector<bool> coarse;  // on the step-h grid with |t| <= T
  double tail = 0;  // bound for the integrand beyond 2T (without y^{-sigma})
};

double strip_width(double sigma, const LanglandsParams& params) {
  double d = std::abs(sigma);
  for (cplx a : params.alpha())
    for (int k = 0; a.real() - 0.5 - 2 * k > sigma - d; ++k) d = std::min(d, std::abs(sigma - (a.real() - 0.5 - 2 * k)));
  return d;
}

Kernel build_kernel(const LanglandsParams& params, double sigma, const AFEConfig& cfg) {
  Kernel k;
  k.sigma = sigma;
  const double first_pole = params.max_real() - 0.5;
  if (sigma <= first_pole) throw Error(ErrorCode::InvalidArgument, "contour must lie right of the gamma poles");
  const double d = strip_width(sigma, params);
  if (d < 1e-3) throw Error(ErrorCode::InvalidArgument, "contour too close to a singularity");
  k.residue = sigma < 0;
  k.h = cfg.h > 0 ? cfg.h : std::min(0.05, d / 6);
  const cplx g0 = log_gamma_factor(cplx(0.5, 0), params);
  auto weight = [&](double t) {
    const cplx s(sigma, t);
    return std::exp(log_gamma_factor(s + 0.5, params) - g0) / s;
  };
  double peak = 0;
  for (double t = -1; t <= 1; t += 0.25) peak = std::max(peak, std::abs(weight(t)));
  if (cfg.T > 0) {
    k.T = cfg.T;
  } else {
    double T = 5;
    while (std::max(std::abs(weight(T)), std::abs(weight(-T))) > cfg.tail * peak) {
      T *= 1.25;
      if (T > 2000) throw Error(ErrorCode::QuadratureNotConverged, "integrand does not decay");
    }
    k.T = std::ceil(T / k.h) * k.h;
  }
  const long half = std::lround(2 * k.T / (k.h / 2));
  for (long j = -half; j <= half; ++j) {
    const double t = j * (k.h / 2);
    k.t.push_back(t);
    k.w.push_back(weight(t));
    k.coarse.push_back(j % 2 == 0 && std::abs(t) <= k.T + 1e-12);
  }
  // the gamma product decays at least like e^{-pi |t| / 4}; bound the tail by the edge value over that rate
  k.tail = std::max(std::abs(k.w.front()), std::abs(k.w.back())) / (kPi / 4);
  return k;
}

std::shared_ptr<const Kernel> kernel(const LanglandsParams& params, double sigma, const AFEConfig& cfg) {
  static std::mutex mu;
  static std::map<std::string, std::shared_ptr<const Kernel>> cache;
  char buf[128];
  std::snprintf(buf, sizeof buf, "|%.17g|%.17g|%.17g|%.17g", sigma, cfg.h, cfg.T, cfg.tail);
  const std::string key = params.key() + buf;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  auto k = std::make_shared<const Kernel>(build_kernel(params, sigma, cfg));
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(key, k).first->second;
}

VResult evaluate(const Kernel& k, double y, double tol) {
  const double ly = std::log(y);
  CompensatedSum fine, coarse;
  for (std::size_t j = 0; j < k.t.size(); ++j) {
    const cplx term = k.w[j] * std::polar(1.0, -k.t[j] * ly);
    fine.add(term);
    if (k.coarse[j]) coarse.add(term);
  }
  const double scale = std::exp(-k.sigma * ly) / (2 * kPi);
  VResult r;
  r.value = fine.value() * (scale * k.h / 2);
  const cplx rough = coarse.value() * (scale * k.h);
  if (k.residue) {
    r.value += 1.0;
  }
  const double change = std::abs(r.value - rough - (k.residue ? 1.0 : 0.0));
  r.err = change + scale * k.tail + 64 * kEps * (1 + std::abs(r.value));
  r.sigma = k.sigma;
  r.h = k.h;
  r.T = k.T;
  r.nodes = k.t.size();
  if (change > tol) throw Error(ErrorCode::QuadratureNotConverged, "refining the quadrature changed V beyond tolerance");
  return r;
}

}  // namespace

cplx log_gamma(cplx z) {
  if (z.real() < 0.5) return std::log(kPi) - log_sin_pi(z) - log_gamma(1.0 - z);
  cplx shift = 1.0, acc = 0.0;
  while (std::abs(z) < 15) {
    shift *= z;
    z += 1.0;
  }
  acc = -std::log(shift);
  const cplx zi = 1.0 / z, zi2 = zi * zi;
  cplx series = 0.0, p = zi;
  for (double c : kStirling) {
    series += c * p;
    p *= zi2;
  }
  return acc + (z - 0.5) * std::log(z) - z + kHalfLogTwoPi + series;
}

cplx gamma_fn(cplx z) { return std::exp(log_gamma(z)); }

cplx log_gamma_r(cplx s) { return -0.5 * s * std::log(kPi) + log_gamma(0.5 * s); }

cplx gamma_r(cplx s) { return std::exp(log_gamma_r(s)); }

LanglandsParams::LanglandsParams() : alpha_(3, cplx(0, 0)) {}

LanglandsParams::LanglandsParams(std::vector<cplx> alpha, bool require_sum_zero) : alpha_(std::move(alpha)) {
  if (alpha_.empty()) throw Error(ErrorCode::InvalidArgument, "at least one Langlands parameter is required");
  cplx sum = 0;
  for (cplx a : alpha_) {
    if (!(a.real() <= kMaxAlphaReal)) throw Error(ErrorCode::InvalidArgument, "Re(alpha) must be at most 2/5");
    sum += a;
  }
  if (require_sum_zero && std::abs(sum) > 1e-12) throw Error(ErrorCode::InvalidArgument, "parameters must sum to zero");
}

LanglandsParams LanglandsParams::dirichlet(int kappa) { return LanglandsParams({cplx(-kappa, 0)}); }

LanglandsParams LanglandsParams::parse(const std::string& text, bool require_sum_zero) {
  std::vector<cplx> alpha;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = std::min(text.find(',', start), text.size());
    std::string item = text.substr(start, end - start);
    item.erase(std::remove(item.begin(), item.end(), ' '), item.end());
    if (item.empty()) throw Error(ErrorCode::InvalidArgument, "empty Langlands parameter");
    try {
      if (item.back() == 'i') {
        std::size_t split = std::string::npos;
        for (std::size_t i = item.size() - 1; i > 0; --i)
          if ((item[i] == '+' || item[i] == '-') && item[i - 1] != 'e' && item[i - 1] != 'E') {
            split = i;
            break;
          }
        const std::string im = item.substr(split == std::string::npos ? 0 : split, item.size() - 1 - (split == std::string::npos ? 0 : split));
        const double re = split == std::string::npos ? 0.0 : std::stod(item.substr(0, split));
        const double iv = (im.empty() || im == "+") ? 1.0 : im == "-" ? -1.0 : std::stod(im);
        alpha.emplace_back(re, iv);
      } else {
        std::size_t used = 0;
        const double re = std::stod(item, &used);
        if (used != item.size()) throw Error(ErrorCode::InvalidArgument, "bad Langlands parameter: " + item);
        alpha.emplace_back(re, 0.0);
      }
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::InvalidArgument, "bad Langlands parameter: " + item);
    }
    start = end + 1;
  }
  return LanglandsParams(std::move(alpha), require_sum_zero);
}

double LanglandsParams::max_real() const {
  double m = -1e300;
  for (cplx a : alpha_) m = std::max(m, a.real());
  return m;
}

double LanglandsParams::pole_distance(cplx s) const {
  double best = 1e300;
  for (cplx a : alpha_) {
    const double k = std::max(0.0, std::round((a.real() - s.real()) / 2));
    for (double kk : {k - 1, k, k + 1})
      if (kk >= 0) best = std::min(best, std::abs(s - (a - 2 * kk)));
  }
  return best;
}

std::string LanglandsParams::key() const {
  std::string k;
  for (cplx a : alpha_) k += format_cplx(a) + ";";
  return k;
}

cplx log_gamma_factor(cplx s, const LanglandsParams& params) {
  if (params.pole_distance(s) < kPoleTolerance) throw Error(ErrorCode::PoleProximity, "gamma factor evaluated at a pole");
  cplx acc = 0;
  for (cplx a : params.alpha()) acc += log_gamma_r(s - a);
  return acc;
}

cplx gamma_factor(cplx s, const LanglandsParams& params) { return std::exp(log_gamma_factor(s, params)); }

double left_abscissa(const LanglandsParams& params) { return 0.5 * (params.max_real() - 0.5); }

VResult cutoff_v(double y, const LanglandsParams& params, const AFEConfig& cfg) {
  if (!(y > 0)) throw Error(ErrorCode::InvalidArgument, "V requires y > 0");
  if (params.pole_distance(cplx(0.5, 0)) < kPoleTolerance)
    throw Error(ErrorCode::InvalidArgument, "gamma(1/2) is singular for these parameters");
  const double sigma = cfg.sigma ? *cfg.sigma : (y >= 1 ? 3.0 : left_abscissa(params));
  return evaluate(*kernel(params, sigma, cfg), y, cfg.tol);
}

cplx V(double y, const LanglandsParams& params, const AFEConfig& cfg) { return cutoff_v(y, params, cfg).value; }

double cutoff_decay_point(const LanglandsParams& params, double threshold) {
  auto small_from = [&](double y0) {
    for (int j = 0; j <= 24; ++j)
      if (std::abs(V(y0 * std::pow(64.0, j / 24.0), params)) >= threshold) return false;
    return true;
  };
  double lo = 1.0, hi = 2.0;
  while (!small_from(hi)) {
    lo = hi;
    hi *= 2;
    if (hi > 1e8) throw Error(ErrorCode::TruncationInsufficient, "V does not decay below the threshold");
  }
  while (hi / lo > 1.01) {
    const double mid = std::sqrt(lo * hi);
    (small_from(mid) ? hi : lo) = mid;
  }
  return hi;
}

namespace {

constexpr int kChebDegree = 16;
constexpr double kPieceWidth = 0.5;

cplx clenshaw(const std::vector<cplx>& c, double x) {
  cplx b1 = 0, b2 = 0;
  for (std::size_t j = c.size() - 1; j >= 1; --j) {
    const cplx b0 = 2 * x * b1 - b2 + c[j];
    b2 = b1;
    b1 = b0;
  }
  return x * b1 - b2 + c[0];
}

}  // namespace

CutoffTable::CutoffTable(const LanglandsParams& params, double y_lo, double y_hi) : y_lo_(y_lo), y_hi_(y_hi) {
  if (!(y_lo > 0) || !(y_hi > y_lo)) throw Error(ErrorCode::InvalidArgument, "cutoff table needs 0 < y_lo < y_hi");
  u_lo_ = std::log(y_lo);
  const double span = std::log(y_hi) - u_lo_;
  const std::size_t pieces = static_cast<std::size_t>(std::ceil(span / kPieceWidth));
  width_ = span / static_cast<double>(pieces);
  const int m = kChebDegree + 1;
  coeffs_.resize(pieces);
  double qerr = 0;
  for (std::size_t p = 0; p < pieces; ++p) {
    const double a = u_lo_ + width_ * static_cast<double>(p);
    std::vector<cplx> f(m);
    for (int j = 0; j < m; ++j) {
      const double x = std::cos(kPi * (j + 0.5) / m);
      const VResult r = cutoff_v(std::exp(a + width_ * (x + 1) / 2), params);
      f[j] = r.value;
      qerr = std::max(qerr, r.err);
    }
    auto& c = coeffs_[p];
    c.assign(m, 0.0);
    for (int k = 0; k < m; ++k) {
      for (int j = 0; j < m; ++j) c[k] += f[j] * std::cos(kPi * k * (j + 0.5) / m);
      c[k] *= 2.0 / m;
    }
    c[0] *= 0.5;
  }
  double dev = 0;
  for (std::size_t p = 0; p < pieces; ++p)
    for (double x : {-0.77, -0.31, 0.13, 0.59, 0.93}) {
      const double y = std::exp(u_lo_ + width_ * (static_cast<double>(p) + (x + 1) / 2));
      dev = std::max(dev, std::abs((*this)(y) - V(y, params)));
    }
  err_ = dev + qerr;
}

cplx CutoffTable::operator()(double y) const {
  if (y > y_hi_) return 0.0;
  const double u = std::log(y) - u_lo_;
  if (u < -1e-12) throw Error(ErrorCode::InvalidArgument, "cutoff table queried below its range");
  const std::size_t p = std::min(coeffs_.size() - 1, static_cast<std::size_t>(std::max(0.0, u) / width_));
  const double x = std::clamp(2 * (u - width_ * static_cast<double>(p)) / width_ - 1, -1.0, 1.0);
  return clenshaw(coeffs_[p], x);
}

std::shared_ptr<const CutoffTable> cutoff_table(const LanglandsParams& params, double y_lo) {
  static std::mutex mu;
  static std::map<std::string, std::shared_ptr<const CutoffTable>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(params.key());
  if (it != cache.end() && it->second->y_lo() <= y_lo) return it->second;
  // widen downwards generously so nearby requests reuse the table
  const double lo = std::min(y_lo, 1e-2) / 4;
  auto table = std::make_shared<const CutoffTable>(params, lo, cutoff_decay_point(params, 1e-13));
  cache[params.key()] = table;
  return table;
}

SmallYFit fit_small_y(const LanglandsParams& params, const std::vector<double>& ys) {
  SmallYFit fit;
  fit.ys = ys;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (double y : ys) {
    const double dev = std::abs(V(y, params) - 1.0);
    fit.deviations.push_back(dev);
    const double lx = std::log(y), ld = std::log(dev);
    sx += lx;
    sy += ld;
    sxx += lx * lx;
    sxy += lx * ld;
  }
  const double n = static_cast<double>(ys.size());
  fit.exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  for (std::size_t i = 0; i < ys.size(); ++i)
    fit.constant = std::max(fit.constant, fit.deviations[i] / std::pow(ys[i], fit.exponent));
  return fit;
}

}  // namespace charsumlab
