#include "m23bkm/leech.hpp"

#include "m23bkm/normal_form.hpp"

namespace m23bkm {

Lattice build_leech(const GolayCode& code) {
  validate_golay(code);
  std::vector<std::vector<Integer>> gens;
  for (auto w : code.generator) {
    std::vector<Integer> v(24);
    for (int i = 0; i < 24; ++i) v[static_cast<std::size_t>(i)] = (w >> i & 1u) ? 2 : 0;
    gens.push_back(v);
  }
  for (std::size_t i = 0; i < 24; ++i) {
    std::vector<Integer> v(24);
    v[i] = 8;
    gens.push_back(v);
    for (std::size_t j = i + 1; j < 24; ++j) {
      std::vector<Integer> u(24);
      u[i] = 4;
      u[j] = 4;
      gens.push_back(u);
    }
  }
  std::vector<Integer> odd(24, Integer(1));
  odd[0] = -3;
  gens.push_back(odd);
  IntMatrix basis = row_lattice_basis(IntMatrix::from_rows(gens));
  if (basis.rows() != 24) throw ConstructionInvariantViolated("Leech generators do not have full rank");

  RatMatrix ambient = RatMatrix::identity(24);
  for (std::size_t i = 0; i < 24; ++i) ambient(i, i) = Rational(1, 8);
  IntMatrix dots = basis * basis.transpose();
  IntMatrix gram(24, 24);
  for (std::size_t i = 0; i < 24; ++i)
    for (std::size_t j = 0; j < 24; ++j) {
      if (dots(i, j) % 8 != 0) throw ConstructionInvariantViolated("Leech Gram matrix is not integral");
      gram(i, j) = dots(i, j) / 8;
    }
  Lattice l(gram);
  l.embedding = to_rational(basis);
  l.ambient_form = ambient;
  Reduction r = lll_reduce(l);
  Lattice leech = r.reduced;
  leech.validate();
  if (leech.det() != 1) throw ConstructionInvariantViolated("Leech lattice is not unimodular");
  if (!leech.is_even()) throw ConstructionInvariantViolated("Leech lattice is not even");
  return leech;
}

IsometryAction induced_action(const Lattice& leech, const Permutation& p) {
  if (!leech.embedding) throw std::invalid_argument("Leech lattice needs its coordinate embedding");
  const RatMatrix& b = *leech.embedding;  // rows = basis vectors in Z^24
  RatMatrix binv = inverse(b);
  std::size_t n = b.rows();
  // permuted[i][p[k]] = b[i][k]
  RatMatrix permuted(n, 24);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < 24; ++k) permuted(i, p[k]) = b(i, k);
  RatMatrix coords = permuted * binv;  // row i: image of basis i in basis coordinates
  IntMatrix mat(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (coords(i, j).get_den() != 1) throw ConstructionInvariantViolated("permutation does not preserve the lattice");
      mat(j, i) = coords(i, j).get_num();
    }
  IsometryAction nu{mat, cycle_type(p).order};
  validate_action(leech, nu);
  return nu;
}

}  // namespace m23bkm
