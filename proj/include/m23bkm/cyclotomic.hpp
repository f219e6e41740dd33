#pragma once

#include <optional>
#include <stdexcept>

#include "m23bkm/matrix.hpp"

namespace m23bkm {

class NonRationalCharacter : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Integer coefficients of the m-th cyclotomic polynomial, lowest degree first.
const IntVector& cyclotomic_polynomial(std::int64_t m);

/// Element sum a_i zeta_m^i of Z[zeta_m], stored modulo x^m - 1.
class CyclotomicInt {
 public:
  explicit CyclotomicInt(std::int64_t m);
  static CyclotomicInt root_power(std::int64_t m, std::int64_t k);  // zeta^k
  static CyclotomicInt constant(std::int64_t m, const Integer& c);

  std::int64_t m() const { return m_; }
  const IntVector& coeffs() const { return c_; }

  // Adds c * zeta^k.
  void add_term(const Integer& c, std::int64_t k);

  CyclotomicInt operator+(const CyclotomicInt& o) const;
  CyclotomicInt operator-(const CyclotomicInt& o) const;
  CyclotomicInt operator*(const CyclotomicInt& o) const;

  // Canonical representative modulo Phi_m, degree < phi(m).
  IntVector reduced() const;
  bool is_rational() const;
  // Value when rational, otherwise nullopt.
  std::optional<Integer> rational_value() const;
  bool equals(const CyclotomicInt& o) const;

 private:
  std::int64_t m_;
  IntVector c_;
};

}  // namespace m23bkm
