#pragma once

#include <complex>
#include <compare>
#include <functional>
#include <map>
#include <optional>

#include "m23bkm/lattice.hpp"

namespace m23bkm {

class TooLarge : public std::length_error {
 public:
  using std::length_error::length_error;
};

using GroupElement = std::vector<std::int64_t>;

// Invariant pair used to label elements of a finite quadratic space.
struct ClassKey {
  std::int64_t order = 1;
  Rational q;  // in [0, 1)

  std::string to_string() const;  // "o/num/den"
  static ClassKey parse(const std::string& s);
};

bool operator<(const ClassKey& a, const ClassKey& b);
bool operator==(const ClassKey& a, const ClassKey& b);

/// Finite quadratic space D = prod Z/d_i with Q given on generators.
///
/// q_gram(i,i) = 2 Q(e_i) and q_gram(i,j) = B(e_i, e_j), both modulo 1 (the
/// diagonal modulo 2). Values are stored as integers over `level`.
class FiniteQuadraticSpace {
 public:
  FiniteQuadraticSpace() = default;
  FiniteQuadraticSpace(std::vector<std::int64_t> orders, RatMatrix q_gram);

  const std::vector<std::int64_t>& orders() const { return orders_; }
  const RatMatrix& q_gram() const { return q_gram_; }
  std::int64_t level() const { return level_; }
  std::size_t ngens() const { return orders_.size(); }
  std::uint64_t size() const;

  // Generators as rational coordinate vectors in the source lattice, if known.
  const std::optional<RatMatrix>& generators() const { return generators_; }
  void set_generators(RatMatrix g) { generators_ = std::move(g); }
  std::optional<int> signature_mod8;

  Rational Q(const GroupElement& x) const;
  Rational B(const GroupElement& x, const GroupElement& y) const;
  // Q and B as numerators over 2*level and level respectively.
  std::int64_t Q_num(const GroupElement& x) const;
  std::int64_t order_of(const GroupElement& x) const;
  GroupElement add(const GroupElement& x, const GroupElement& y) const;
  GroupElement negate(const GroupElement& x) const;
  GroupElement scale(const GroupElement& x, std::int64_t k) const;
  // Rational lattice coordinates of a representative (requires generators).
  RatVector representative(const GroupElement& x) const;

  // Visits every element in odometer order.
  void for_each(const std::function<void(const GroupElement&)>& fn) const;
  std::vector<GroupElement> elements() const;

 private:
  std::vector<std::int64_t> orders_;
  RatMatrix q_gram_;
  std::int64_t level_ = 1;
  std::vector<std::int64_t> qn_;  // level * q_gram, reduced mod 2*level (diag) / level
  std::optional<RatMatrix> generators_;
};

FiniteQuadraticSpace discriminant_form(const Lattice& l);
FiniteQuadraticSpace negated(const FiniteQuadraticSpace& d);
FiniteQuadraticSpace direct_product(const FiniteQuadraticSpace& a, const FiniteQuadraticSpace& b);
// (Z/m x Z/m, Q(i,j) = ij/m)
FiniteQuadraticSpace hyperbolic_space(std::int64_t m);

std::map<ClassKey, std::int64_t> classify_elements(const FiniteQuadraticSpace& d,
                                                   std::uint64_t limit = 10000000);

std::complex<double> gauss_sum(const FiniteQuadraticSpace& d);
// |sum e(Q) - sqrt|D| e(sig/8)|
double milgram_defect(const FiniteQuadraticSpace& d, int sig);

std::int64_t char_chi_s(std::int64_t m);

}  // namespace m23bkm
