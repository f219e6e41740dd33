#pragma once

#include <optional>
#include <stdexcept>
#include <utility>

#include "m23bkm/matrix.hpp"

namespace m23bkm {

class DegenerateLattice : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class IndefiniteLattice : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class ConstructionInvariantViolated : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Integral lattice given by a basis Gram matrix.
///
/// When an embedding is present, its rows are the basis vectors in an ambient
/// rational space whose bilinear form is `ambient_form`.
struct Lattice {
  IntMatrix gram;
  std::optional<RatMatrix> embedding;
  std::optional<RatMatrix> ambient_form;

  Lattice() = default;
  explicit Lattice(IntMatrix g) : gram(std::move(g)) {}

  std::size_t rank() const { return gram.rows(); }
  Integer det() const;
  bool is_even() const;
  // Throws ConstructionInvariantViolated when the stored data is inconsistent.
  void validate() const;
  Integer norm(const IntVector& v) const { return bilinear(gram, v, v); }
};

struct IsometryAction {
  IntMatrix matrix;  // acts on coordinate column vectors
  std::int64_t order = 1;
};

// Checks nu^T G nu = G and that nu has exact order `order`.
void validate_action(const Lattice& l, const IsometryAction& nu);

// Basis rows of a sublattice in coordinates of the parent lattice.
struct Sublattice {
  Lattice lattice;
  IntMatrix basis;
};

RatMatrix dual_data(const Lattice& l);
Lattice rescale(const Lattice& l, std::int64_t m);
Lattice direct_sum(const Lattice& a, const Lattice& b);
// Gram [[0,-1],[-1,0]]: the norm of (a,b) is -2ab.
Lattice hyperbolic_plane();

Sublattice fixed_sublattice(const Lattice& l, const IsometryAction& nu);
Sublattice coinvariant_sublattice(const Lattice& l, const IsometryAction& nu);
// Matrix of nu on the sublattice basis; throws if the sublattice is not nu-stable.
IsometryAction restrict_action(const Sublattice& s, const IsometryAction& nu);

// Sublattice spanned by the given basis rows, with Gram and embedding derived from the parent.
Sublattice make_sublattice(const Lattice& parent, const IntMatrix& basis);

struct Reduction {
  IntMatrix transform;  // rows: new basis in old coordinates
  Lattice reduced;
};

// Exact LLL (delta = 99/100) on a positive-definite Gram matrix.
Reduction lll_reduce(const Lattice& l);
// Apply a change of basis: new basis rows t in old coordinates.
Lattice change_basis(const Lattice& l, const IntMatrix& t);

// (positive, negative) inertia of a nondegenerate symmetric matrix.
std::pair<int, int> signature(const IntMatrix& gram);
bool is_positive_definite(const IntMatrix& gram);

}  // namespace m23bkm
