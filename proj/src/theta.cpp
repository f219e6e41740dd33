#include "m23bkm/theta.hpp"

#include <sstream>

#include "m23bkm/normal_form.hpp"
#include "m23bkm/short_vectors.hpp"

namespace m23bkm {

namespace {

std::string describe(const RatVector& rep, std::int64_t j) {
  std::ostringstream os;
  os << "coset(";
  for (std::size_t i = 0; i < rep.size(); ++i) os << (i ? "," : "") << rep[i];
  os << ")";
  if (j >= 0) os << " fixed by nu^" << j;
  return os.str();
}

// Builds the series from an exact norm histogram (index N = den^2 <v,v>).
FracPowerSeries series_from_histogram(const std::vector<std::uint64_t>& h, std::int64_t den,
                                      const Rational& bound, const std::optional<Rational>& congruence) {
  std::int64_t base = 2 * den * den;
  std::int64_t d = base;
  if (congruence) d = lcm64(d, to_int64(congruence->get_den()));
  std::int64_t stride = d / base;
  Rational dr(static_cast<long>(d));
  std::int64_t trunc;
  if (congruence) {
    Rational last = *congruence + Rational(floor_rational(bound - *congruence));
    trunc = to_int64(Rational((last + 1) * dr).get_num());
  } else {
    trunc = to_int64(floor_rational(bound * dr)) + 1;
  }
  std::vector<Rational> c(static_cast<std::size_t>(std::max<std::int64_t>(trunc, 0)));
  for (std::size_t n = 0; n < h.size(); ++n) {
    if (h[n] == 0) continue;
    auto pos = static_cast<std::size_t>(n) * static_cast<std::size_t>(stride);
    if (pos >= c.size()) throw std::logic_error("theta histogram exceeds its bound");
    c[pos] = Rational(static_cast<unsigned long>(h[n]));
  }
  return FracPowerSeries::from_coeffs(d, 0, std::move(c), std::max<std::int64_t>(trunc, 0)).reduced();
}

RatVector reduce_mod_one(const RatVector& v) {
  RatVector r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = frac(v[i]);
  return r;
}

}  // namespace

std::optional<Rational> dual_class(const Lattice& l, const RatVector& rep) {
  if (!l.is_even()) return std::nullopt;
  RatVector g = to_rational(l.gram) * rep;
  for (const auto& x : g)
    if (x.get_den() != 1) return std::nullopt;
  return frac(bilinear(l.gram, rep, rep) / 2);
}

ThetaSeries theta_coset(const Lattice& l, const RatVector& rep, const Rational& bound) {
  if (rep.size() != l.rank()) throw std::invalid_argument("coset representative has wrong dimension");
  if (!is_positive_definite(l.gram)) throw IndefiniteLattice("theta series needs a positive-definite lattice");
  RatVector shift = reduce_mod_one(rep);
  ShortVectorSetup setup(l.gram, shift, 2 * bound);
  auto h = norm_histogram(setup);
  return {series_from_histogram(h, setup.den, bound, dual_class(l, rep)), describe(rep, -1)};
}

FixedCosetTheta::FixedCosetTheta(const Lattice& l, const IsometryAction& nu, std::int64_t j)
    : lattice_(l), j_(j) {
  if (!is_positive_definite(l.gram)) throw IndefiniteLattice("theta series needs a positive-definite lattice");
  IntMatrix mj = matrix_power(nu.matrix, mod_floor(j, nu.order));
  IntMatrix id = IntMatrix::identity(l.rank());
  identity_ = (mj == id);
  a_ = mj - id;
  if (identity_) return;
  IntMatrix k = integer_kernel(a_);
  if (k.rows() > 1) k = lll_reduce(change_basis(Lattice(l.gram), k)).transform * k;
  basis_ = k;
  reduced_ = Lattice(k * l.gram * k.transpose());
  if (k.rows() > 0) {
    RatMatrix kr = to_rational(k);
    projector_ = inverse(to_rational(reduced_.gram)) * kr * to_rational(l.gram);
  }
}

ThetaSeries FixedCosetTheta::theta(const RatVector& rep, const Rational& bound) const {
  if (identity_) {
    ThetaSeries t = theta_coset(lattice_, rep, bound);
    t.source = describe(rep, j_);
    return t;
  }
  std::optional<Rational> congruence = dual_class(lattice_, rep);
  // solve (nu^j - 1) y = -(nu^j - 1) rep for integral y
  RatVector rhs = to_rational(a_) * rep;
  IntVector rhs_int(rhs.size());
  for (std::size_t i = 0; i < rhs.size(); ++i) {
    if (rhs[i].get_den() != 1) throw std::logic_error("isometry does not fix the coset");
    rhs_int[i] = -rhs[i].get_num();
  }
  auto y = solve_integer(a_, rhs_int);
  if (!y) return {series_from_histogram({}, 1, bound, congruence), describe(rep, j_)};
  RatVector p = rep;
  for (std::size_t i = 0; i < p.size(); ++i) p[i] += Rational((*y)[i]);
  if (basis_.rows() == 0) {
    // the coset meets the fixed space in the single point p
    Rational half = bilinear(lattice_.gram, p, p) / 2;
    std::vector<std::uint64_t> h;
    Integer den = 1;
    for (const auto& x : p) den = lcm(den, Integer(x.get_den()));
    Integer n = Rational(half * 2 * Rational(den * den)).get_num();
    if (half <= bound) {
      h.assign(to_int64(n) + 1, 0);
      h.back() = 1;
    }
    return {series_from_histogram(h, to_int64(den), bound, congruence), describe(rep, j_)};
  }
  RatVector c = projector_ * p;
  RatVector back = to_rational(basis_.transpose()) * c;
  if (back != p) throw std::logic_error("fixed point does not lie in the fixed sublattice span");
  RatVector shift = reduce_mod_one(c);
  ShortVectorSetup setup(reduced_.gram, shift, 2 * bound);
  auto h = norm_histogram(setup);
  return {series_from_histogram(h, setup.den, bound, congruence), describe(rep, j_)};
}

ThetaSeries theta_fixed_coset(const Lattice& l, const RatVector& rep, const IsometryAction& nu,
                              std::int64_t j, const Rational& bound) {
  return FixedCosetTheta(l, nu, j).theta(rep, bound);
}

}  // namespace m23bkm
