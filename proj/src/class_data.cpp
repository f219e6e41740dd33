#include "m23bkm/class_data.hpp"

#include "m23bkm/normal_form.hpp"
#include "m23bkm/short_vectors.hpp"

namespace m23bkm {

Rational ClassData::conformal_weight() const {
  Rational s = 0;
  for (auto [t, b] : shape.exponents) {
    Rational tr(static_cast<long>(t));
    s += Rational(static_cast<long>(b)) * (tr - 1 / tr);
  }
  return s / 24;
}

std::uint64_t count_roots(const Lattice& l) {
  ShortVectorSetup setup(l.gram, RatVector(l.rank(), Rational(0)), Rational(2));
  auto h = norm_histogram(setup);
  return h.size() > 2 ? h[2] : 0;
}

CycleShape frame_shape(const IsometryAction& nu, std::int64_t j) {
  std::size_t n = nu.matrix.rows();
  IntMatrix a = matrix_power(nu.matrix, mod_floor(j, nu.order));
  std::int64_t order = nu.order / gcd64(nu.order, mod_floor(j, nu.order) == 0 ? nu.order : j);
  CycleShape s;
  s.order = order;
  if (n == 0) return s;
  std::map<std::int64_t, Integer> traces;
  for (auto d : divisors(order)) {
    IntMatrix p = matrix_power(a, d);
    Integer tr = 0;
    for (std::size_t i = 0; i < n; ++i) tr += p(i, i);
    traces[d] = tr;
  }
  // tr(A^s) = sum_{t | s} t c_t, inverted with the Moebius function
  std::int64_t degree = 0;
  for (auto t : divisors(order)) {
    Integer acc = 0;
    for (auto d : divisors(t)) acc += moebius(t / d) * traces[d];
    if (acc % t != 0) throw ConstructionInvariantViolated("isometry traces do not form a frame shape");
    std::int64_t c = to_int64(acc / t);
    if (c != 0) s.exponents[t] = c;
    degree += t * c;
  }
  if (degree != static_cast<std::int64_t>(n)) throw ConstructionInvariantViolated("frame shape has the wrong degree");
  return s;
}

void check_no_order_doubling(const Lattice& l, const IsometryAction& nu) {
  if (nu.order % 2 != 0) return;
  IntMatrix half = matrix_power(nu.matrix, nu.order / 2);
  IntMatrix prod = l.gram * half;
  for (std::size_t i = 0; i < l.rank(); ++i)
    if (prod(i, i) % 2 != 0) throw ConstructionInvariantViolated("isometry exhibits order doubling");
}

namespace {

Sublattice reduced_sublattice(const Lattice& parent, const Sublattice& s) {
  if (s.basis.rows() <= 1) return s;
  Reduction r = lll_reduce(s.lattice);
  return make_sublattice(parent, r.transform * s.basis);
}

}  // namespace

ClassData class_data(const CycleShape& shape, const Lattice& leech, const PermutationIsometry& element) {
  ClassData c;
  c.m = shape.order;
  c.shape = shape;
  c.element = element;
  c.leech = leech;
  if (cycle_type(element.perm).exponents != shape.exponents)
    throw ConstructionInvariantViolated("element has the wrong cycle shape");
  c.nu = induced_action(leech, element.perm);
  if (c.nu.order != c.m) throw ConstructionInvariantViolated("isometry has the wrong order");

  c.fixed = reduced_sublattice(leech, fixed_sublattice(leech, c.nu));
  c.coinvariant = reduced_sublattice(leech, coinvariant_sublattice(leech, c.nu));
  c.nu_coinvariant = c.m == 1 ? IsometryAction{IntMatrix(0, 0), 1} : restrict_action(c.coinvariant, c.nu);

  std::size_t rf = c.fixed.lattice.rank(), rc = c.coinvariant.lattice.rank();
  std::int64_t expected = 24 * sigma0(c.m) / sigma1(c.m);
  if (static_cast<std::int64_t>(rf) != expected) throw ConstructionInvariantViolated("fixed lattice has the wrong rank");
  if (rf + rc != 24) throw ConstructionInvariantViolated("fixed and coinvariant ranks do not add to 24");
  if (abs(c.fixed.lattice.det()) != abs(c.coinvariant.lattice.det()))
    throw ConstructionInvariantViolated("fixed and coinvariant discriminants differ");
  if (count_roots(c.fixed.lattice) != 0 || count_roots(c.coinvariant.lattice) != 0)
    throw ConstructionInvariantViolated("fixed or coinvariant lattice has roots");
  if (c.m > 1) {
    Sublattice fixed_in_coinv = fixed_sublattice(c.coinvariant.lattice, c.nu_coinvariant);
    if (fixed_in_coinv.basis.rows() != 0)
      throw ConstructionInvariantViolated("isometry has fixed vectors on the coinvariant lattice");
  }
  check_no_order_doubling(leech, c.nu);
  if (c.conformal_weight() != make_rational(Integer(static_cast<long>(c.m - 1)), Integer(static_cast<long>(c.m))))
    throw ConstructionInvariantViolated("conformal weight differs from (m-1)/m");

  Lattice fixed_plain(c.fixed.lattice.gram);
  c.K = rescale(hyperbolic_plane(), c.m);
  c.L = direct_sum(fixed_plain, c.K);
  c.Delta = direct_sum(fixed_plain, hyperbolic_plane());
  if (c.k() - 2 != expected) throw ConstructionInvariantViolated("rank of L is not k");
  return c;
}

}  // namespace m23bkm
