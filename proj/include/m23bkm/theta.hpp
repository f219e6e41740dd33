#pragma once

#include <string>

#include "m23bkm/lattice.hpp"
#include "m23bkm/qseries.hpp"

namespace m23bkm {

struct ThetaSeries {
  FracPowerSeries series;
  std::string source;
};

// Theta series of rep + L counting vectors with <v,v>/2 <= bound.
//
// When L is even and rep lies in the dual lattice, all exponents are congruent
// to <rep,rep>/2 mod 1, and the series is declared valid up to the next
// exponent in that class above `bound`.
ThetaSeries theta_coset(const Lattice& l, const RatVector& rep, const Rational& bound);

// Theta series of the nu^j-fixed vectors in rep + L.
class FixedCosetTheta {
 public:
  FixedCosetTheta(const Lattice& l, const IsometryAction& nu, std::int64_t j);

  ThetaSeries theta(const RatVector& rep, const Rational& bound) const;
  std::size_t fixed_rank() const { return reduced_.rank(); }

 private:
  Lattice lattice_;
  IntMatrix a_;            // nu^j - 1
  bool identity_ = false;
  IntMatrix basis_;        // fixed sublattice, rows in L coordinates (LLL-reduced)
  Lattice reduced_;        // Gram of the fixed sublattice
  RatMatrix projector_;    // p -> coordinates in basis_ for p in the fixed space
  std::int64_t j_ = 0;
};

ThetaSeries theta_fixed_coset(const Lattice& l, const RatVector& rep, const IsometryAction& nu,
                              std::int64_t j, const Rational& bound);

// Q(rep) = <rep,rep>/2 mod 1 if rep is in the dual of the even lattice l.
std::optional<Rational> dual_class(const Lattice& l, const RatVector& rep);

}  // namespace m23bkm
