#pragma once

#include "m23bkm/discriminant.hpp"
#include "m23bkm/leech.hpp"

namespace m23bkm {

/// Everything derived from one of the ten automorphisms of the Leech lattice.
///
/// Sublattice bases are LLL-reduced and given in Leech-basis coordinates.
struct ClassData {
  std::int64_t m = 1;
  CycleShape shape;
  PermutationIsometry element;
  Lattice leech;
  IsometryAction nu;
  Sublattice fixed;        // Lambda^nu
  Sublattice coinvariant;  // Lambda_nu
  IsometryAction nu_coinvariant;
  Lattice K;      // II_{1,1}(m)
  Lattice L;      // Lambda^nu + K
  Lattice Delta;  // Lambda^nu + II_{1,1}

  std::int64_t k() const { return static_cast<std::int64_t>(L.rank()); }
  std::int64_t weight() const { return 1 - k() / 2; }
  Rational conformal_weight() const;
};

// Assembles and checks all lattices for the given element.
ClassData class_data(const CycleShape& shape, const Lattice& leech, const PermutationIsometry& element);

// Frame shape of nu^j on a lattice, from traces of powers.
CycleShape frame_shape(const IsometryAction& nu, std::int64_t j);

// Throws ConstructionInvariantViolated if nu exhibits order doubling.
void check_no_order_doubling(const Lattice& l, const IsometryAction& nu);

// Number of vectors of norm 2 (i.e. roots) in a positive-definite lattice.
std::uint64_t count_roots(const Lattice& l);

}  // namespace m23bkm
