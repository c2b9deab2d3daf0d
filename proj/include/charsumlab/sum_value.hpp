#pragma once

// Value carrier for exponential and character sums.
//
// A SumValue is a floating complex number with an a priori error bound and,
// for small moduli, an optional exact element of Z[zeta_q]. The exact
// representation is the integer coefficient vector against zeta^0..zeta^{q-1};
// two vectors name the same element iff their difference reduces to zero
// modulo the q-th cyclotomic polynomial.

#include <complex>
#include <limits>
#include <optional>
#include <vector>

#include "charsumlab/residue.hpp"

namespace charsumlab {

using cplx = std::complex<double>;

inline constexpr double kEps = std::numeric_limits<double>::epsilon();
/// Error charged per unit-modulus term.
inline constexpr double kUnitTermErr = 4 * kEps;

std::vector<i64> cyclotomic_polynomial(u64 n);

class Cyclotomic {
 public:
  explicit Cyclotomic(u64 q);

  static Cyclotomic root(u64 q, i64 k);
  static Cyclotomic integer(u64 q, i64 value);

  u64 order() const { return q_; }
  const std::vector<i64>& coefficients() const { return coeffs_; }
  void add_root(i64 k, i64 multiplicity = 1);

  Cyclotomic& operator+=(const Cyclotomic& other);
  Cyclotomic& operator-=(const Cyclotomic& other);
  Cyclotomic scaled(i64 factor) const;
  friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
  friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
  friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b);

  /// Remainder modulo Phi_q; a canonical form of length phi(q).
  std::vector<i64> canonical() const;
  bool equals(const Cyclotomic& other) const;
  bool is_zero() const;
  std::optional<i64> as_integer() const;
  cplx to_complex() const;

 private:
  u64 q_;
  std::vector<i64> coeffs_;
};

struct SumValue {
  double re = 0.0;
  double im = 0.0;
  double err = 0.0;
  std::optional<Cyclotomic> exact;

  SumValue() = default;
  SumValue(cplx v, double error) : re(v.real()), im(v.imag()), err(error) {}
  static SumValue from_exact(const Cyclotomic& value);
  static SumValue integer(i64 value) { return SumValue(cplx(static_cast<double>(value), 0.0), 0.0); }

  cplx value() const { return {re, im}; }
  double magnitude() const { return std::abs(value()); }

  /// |value - other| within the combined error bound (plus `slack`).
  bool agrees_with(const SumValue& other, double slack = 0.0) const;
  /// Floating part consistent with the exact part, when present.
  bool consistent() const;
};

SumValue operator+(const SumValue& a, const SumValue& b);
SumValue operator-(const SumValue& a, const SumValue& b);
SumValue operator*(const SumValue& a, const SumValue& b);
SumValue scale(const SumValue& a, double factor);
SumValue conj(const SumValue& a);

/// Neumaier-compensated complex accumulator with additive error tracking.
class CompensatedSum {
 public:
  void add(cplx term) {
    add_component(sum_re_, comp_re_, term.real());
    add_component(sum_im_, comp_im_, term.imag());
  }
  cplx value() const { return {sum_re_ + comp_re_, sum_im_ + comp_im_}; }

 private:
  static void add_component(double& sum, double& comp, double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }
  double sum_re_ = 0, comp_re_ = 0, sum_im_ = 0, comp_im_ = 0;
};

class SumAccumulator {
 public:
  void add(const SumValue& term) {
    sum_.add(term.value());
    err_ += term.err;
  }
  void add(cplx term, double term_err) {
    sum_.add(term);
    err_ += term_err;
  }
  SumValue value() const;

 private:
  CompensatedSum sum_;
  double err_ = 0.0;
};

/// e(k/n) for k in [0, n), each entry correctly rounded from long double.
class RootTable {
 public:
  explicit RootTable(u64 n);
  u64 order() const { return roots_.size(); }
  const cplx& operator[](u64 k) const { return roots_[k]; }
  cplx at(i64 k) const { return roots_[reduce(k, roots_.size())]; }

 private:
  std::vector<cplx> roots_;
};

enum class ValueMode { Floating, Exact };

/// e_q(x) = exp(2 pi i x / q).
SumValue additive_character(i64 x, u64 q, ValueMode mode = ValueMode::Floating);

/// Additive-character backends for sums of unit terms e_q(x).
/// Both expose `sum()` returning an accumulator with add(x) and finish().
class FloatingBackend {
 public:
  explicit FloatingBackend(u64 q) : table_(q) {}
  u64 modulus() const { return table_.order(); }

  class Sum {
   public:
    explicit Sum(const RootTable& t) : table_(&t) {}
    void add(u64 x) {
      sum_.add((*table_)[x % table_->order()]);
      ++terms_;
    }
    void add(u64 x, i64 multiplicity) {
      sum_.add(static_cast<double>(multiplicity) * (*table_)[x % table_->order()]);
      terms_ += static_cast<u64>(multiplicity < 0 ? -multiplicity : multiplicity);
    }
    SumValue finish() const;

   private:
    const RootTable* table_;
    CompensatedSum sum_;
    u64 terms_ = 0;
  };

  Sum sum() const { return Sum(table_); }

 private:
  RootTable table_;
};

class ExactBackend {
 public:
  explicit ExactBackend(u64 q) : q_(q) {}
  u64 modulus() const { return q_; }

  class Sum {
   public:
    explicit Sum(u64 q) : value_(q) {}
    void add(u64 x) { value_.add_root(static_cast<i64>(x % value_.order())); }
    void add(u64 x, i64 multiplicity) { value_.add_root(static_cast<i64>(x % value_.order()), multiplicity); }
    SumValue finish() const { return SumValue::from_exact(value_); }

   private:
    Cyclotomic value_;
  };

  Sum sum() const { return Sum(q_); }

 private:
  u64 q_;
};

}  // namespace charsumlab
