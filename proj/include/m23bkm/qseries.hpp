#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "m23bkm/arith.hpp"

namespace m23bkm {

class ZeroLeadingCoefficient : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class InsufficientTruncation : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Truncated Laurent series in q^{1/N} with exact rational coefficients.
///
/// Coefficient i is attached to the exponent (lead + i)/N, and the stored
/// coefficients are exactly those with exponent < trunc/N. The representation
/// is kept normalized: the first stored coefficient is nonzero, or the series
/// is zero and then lead == trunc.
class FracPowerSeries {
 public:
  FracPowerSeries();  // zero, valid for exponents < 0

  static FracPowerSeries zero(std::int64_t denom, std::int64_t trunc);
  static FracPowerSeries monomial(const Rational& c, std::int64_t num, std::int64_t denom,
                                  std::int64_t trunc);
  // One at exponent 0, valid below trunc/denom.
  static FracPowerSeries one(std::int64_t denom, std::int64_t trunc);
  static FracPowerSeries from_coeffs(std::int64_t denom, std::int64_t lead,
                                     std::vector<Rational> coeffs, std::int64_t trunc);

  std::int64_t denom() const { return denom_; }
  std::int64_t lead() const { return lead_; }
  std::int64_t trunc() const { return trunc_; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }

  Rational lead_exponent() const;
  Rational trunc_exponent() const;

  // Coefficient of q^e; throws InsufficientTruncation if e >= trunc exponent.
  Rational coeff_at(const Rational& e) const;
  Rational coeff_at_num(std::int64_t num) const;

  // Same function over the finer denominator k*denom.
  FracPowerSeries rescaled(std::int64_t k) const;
  // Smallest denominator representing the same function.
  FracPowerSeries reduced() const;
  // Drops coefficients with exponent >= e (e must not exceed the current bound).
  FracPowerSeries truncated(const Rational& e) const;
  // Multiplies by q^e.
  FracPowerSeries shifted(const Rational& e) const;
  // q -> q^k.
  FracPowerSeries substitute_power(std::int64_t k) const;
  // tau -> tau/d, i.e. every exponent divided by d.
  FracPowerSeries substitute_root(std::int64_t d) const;

  FracPowerSeries operator-() const;
  FracPowerSeries& operator*=(const Rational& c);

  // Equality as functions on the common validity window; truncations must match.
  friend bool operator==(const FracPowerSeries& a, const FracPowerSeries& b);

  std::string to_string(std::size_t max_terms = 12) const;

 private:
  void normalize();

  std::int64_t denom_ = 1;
  std::int64_t lead_ = 0;
  std::int64_t trunc_ = 0;
  std::vector<Rational> coeffs_;
};

FracPowerSeries series_add(const FracPowerSeries& a, const FracPowerSeries& b);
FracPowerSeries series_sub(const FracPowerSeries& a, const FracPowerSeries& b);
FracPowerSeries series_mul(const FracPowerSeries& a, const FracPowerSeries& b);
FracPowerSeries series_inv(const FracPowerSeries& a);
FracPowerSeries series_pow(const FracPowerSeries& a, std::int64_t n);

inline FracPowerSeries operator+(const FracPowerSeries& a, const FracPowerSeries& b) {
  return series_add(a, b);
}
inline FracPowerSeries operator-(const FracPowerSeries& a, const FracPowerSeries& b) {
  return series_sub(a, b);
}
inline FracPowerSeries operator*(const FracPowerSeries& a, const FracPowerSeries& b) {
  return series_mul(a, b);
}

// Bring both series to a common denominator and truncation (the smaller one).
std::pair<FracPowerSeries, FracPowerSeries> align(const FracPowerSeries& a,
                                                  const FracPowerSeries& b);

// First exponent below `limit` where a and b differ, if any.
std::optional<Rational> first_difference(const FracPowerSeries& a, const FracPowerSeries& b,
                                         const Rational& limit);

/// Cycle shape (or frame shape) prod_t t^{b_t}.
struct CycleShape {
  std::int64_t order = 1;
  std::map<std::int64_t, std::int64_t> exponents;

  std::int64_t degree() const;  // sum t*b_t
  // Shape of the k-th power.
  CycleShape power(std::int64_t k) const;
  std::string to_string() const;
  friend bool operator==(const CycleShape&, const CycleShape&) = default;
};

// b_t = 24/sigma_1(m) for every t | m.
CycleShape class_shape(std::int64_t m);
const std::vector<std::int64_t>& class_orders();

// q^{t/24} prod (1 - q^{tn}), exact below trunc_bound.
FracPowerSeries eta(std::int64_t t, const Rational& trunc_bound);
// eta_nu^{sign} for the shape, exact below trunc_bound.
FracPowerSeries eta_quotient(const CycleShape& shape, int sign, const Rational& trunc_bound);

// Splits f(tau/d) by exponent residue: component j holds exponents = j/d mod 1.
std::vector<FracPowerSeries> t_eigencomponents(const FracPowerSeries& f, std::int64_t d);

}  // namespace m23bkm
