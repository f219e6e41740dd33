#pragma once

#include <optional>

#include "m23bkm/matrix.hpp"

namespace m23bkm {

struct EchelonForm {
  IntMatrix transform;  // unimodular, transform * input = echelon
  IntMatrix echelon;    // Hermite normal form (positive pivots, reduced above)
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
};

EchelonForm hermite_form(const IntMatrix& a);

// Basis (as rows) of the lattice spanned by the rows of `generators`.
IntMatrix row_lattice_basis(const IntMatrix& generators);

// Rows form a basis of {x in Z^n : a x = 0}; the kernel is primitive (saturated).
IntMatrix integer_kernel(const IntMatrix& a);

// Integer solution of a x = b, if one exists.
std::optional<IntVector> solve_integer(const IntMatrix& a, const IntVector& b);

struct SmithForm {
  IntMatrix left, right;  // left * a * right = diag(diagonal)
  IntVector diagonal;     // d_1 | d_2 | ..., length min(rows, cols)
};

SmithForm smith_form(const IntMatrix& a);

Integer determinant(const IntMatrix& a);
Rational determinant(const RatMatrix& a);

// Throws std::domain_error if singular.
RatMatrix inverse(const RatMatrix& a);

// Rational solution of a x = b for square invertible a.
RatVector solve_rational(const RatMatrix& a, const RatVector& b);

}  // namespace m23bkm
