#include "m23bkm/lattice.hpp"

#include "m23bkm/normal_form.hpp"

namespace m23bkm {

Integer Lattice::det() const { return determinant(gram); }

bool Lattice::is_even() const {
  for (std::size_t i = 0; i < rank(); ++i)
    if (gram(i, i) % 2 != 0) return false;
  return true;
}

void Lattice::validate() const {
  if (!gram.is_symmetric()) throw ConstructionInvariantViolated("Gram matrix is not symmetric");
  if (embedding) {
    if (!ambient_form) throw ConstructionInvariantViolated("embedding without ambient form");
    if (embedding->rows() != rank()) throw ConstructionInvariantViolated("embedding row count");
    RatMatrix g = (*embedding) * (*ambient_form) * embedding->transpose();
    if (g != to_rational(gram)) throw ConstructionInvariantViolated("embedding does not reproduce Gram");
  }
}

void validate_action(const Lattice& l, const IsometryAction& nu) {
  const IntMatrix& a = nu.matrix;
  if (a.rows() != l.rank() || a.cols() != l.rank())
    throw ConstructionInvariantViolated("isometry has wrong dimension");
  if (a.transpose() * l.gram * a != l.gram)
    throw ConstructionInvariantViolated("matrix does not preserve the Gram matrix");
  IntMatrix id = IntMatrix::identity(l.rank());
  IntMatrix p = id;
  for (std::int64_t k = 1; k <= nu.order; ++k) {
    p = p * a;
    if (p == id && k < nu.order) throw ConstructionInvariantViolated("isometry order smaller than stated");
  }
  if (p != id) throw ConstructionInvariantViolated("isometry order larger than stated");
}

RatMatrix dual_data(const Lattice& l) {
  try {
    return inverse(to_rational(l.gram));
  } catch (const std::domain_error&) {
    throw DegenerateLattice("Gram matrix is singular");
  }
}

Lattice rescale(const Lattice& l, std::int64_t m) {
  if (m <= 0) throw std::invalid_argument("rescale factor must be positive");
  Lattice out = l;
  Integer f(static_cast<long>(m));
  for (std::size_t i = 0; i < l.rank(); ++i)
    for (std::size_t j = 0; j < l.rank(); ++j) out.gram(i, j) *= f;
  if (out.ambient_form) {
    for (std::size_t i = 0; i < out.ambient_form->rows(); ++i)
      for (std::size_t j = 0; j < out.ambient_form->cols(); ++j) (*out.ambient_form)(i, j) *= Rational(f);
  }
  return out;
}

Lattice direct_sum(const Lattice& a, const Lattice& b) {
  std::size_t n = a.rank(), k = b.rank();
  IntMatrix g(n + k, n + k);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g(i, j) = a.gram(i, j);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) g(n + i, n + j) = b.gram(i, j);
  return Lattice(g);
}

Lattice hyperbolic_plane() {
  return Lattice(IntMatrix::from_rows({{Integer(0), Integer(-1)}, {Integer(-1), Integer(0)}}));
}

Lattice change_basis(const Lattice& l, const IntMatrix& t) {
  Lattice out(t * l.gram * t.transpose());
  if (l.embedding) {
    out.embedding = to_rational(t) * (*l.embedding);
    out.ambient_form = l.ambient_form;
  }
  return out;
}

Sublattice make_sublattice(const Lattice& parent, const IntMatrix& basis) {
  Sublattice s;
  s.basis = basis;
  s.lattice = change_basis(parent, basis);
  return s;
}

Sublattice fixed_sublattice(const Lattice& l, const IsometryAction& nu) {
  IntMatrix a = nu.matrix - IntMatrix::identity(l.rank());
  return make_sublattice(l, integer_kernel(a));
}

Sublattice coinvariant_sublattice(const Lattice& l, const IsometryAction& nu) {
  Sublattice fixed = fixed_sublattice(l, nu);
  // x with <f, x> = 0 for every fixed basis vector f
  IntMatrix pairing = fixed.basis * l.gram;
  IntMatrix basis = pairing.rows() == 0 ? IntMatrix::identity(l.rank()) : integer_kernel(pairing);
  return make_sublattice(l, basis);
}

IsometryAction restrict_action(const Sublattice& s, const IsometryAction& nu) {
  // The image of basis row b is (nu b^T)^T; write it in the sublattice basis.
  std::size_t r = s.basis.rows();
  IntMatrix images = (nu.matrix * s.basis.transpose()).transpose();
  IntMatrix coords(r, r);
  for (std::size_t i = 0; i < r; ++i) {
    auto x = solve_integer(s.basis.transpose(), images.row(i));
    if (!x) throw ConstructionInvariantViolated("sublattice is not stable under the isometry");
    for (std::size_t j = 0; j < r; ++j) coords(j, i) = (*x)[j];
  }
  IsometryAction out{coords, 1};
  IntMatrix id = IntMatrix::identity(r);
  IntMatrix p = coords;
  while (p != id) {
    p = p * coords;
    ++out.order;
    if (out.order > nu.order) throw ConstructionInvariantViolated("restricted action has wrong order");
  }
  return out;
}

namespace {

Integer round_rational(const Rational& x) { return floor_rational(x + Rational(1, 2)); }

}  // namespace

Reduction lll_reduce(const Lattice& l) {
  std::size_t n = l.rank();
  RatMatrix b = to_rational(l.gram);
  IntMatrix h = IntMatrix::identity(n);
  if (n <= 1) return {h, l};
  if (!is_positive_definite(l.gram)) throw IndefiniteLattice("LLL needs a positive-definite lattice");
  const Rational delta(99, 100);
  RatMatrix mu(n, n);
  std::vector<Rational> bb(n);

  auto gso_row = [&](std::size_t k) {
    for (std::size_t j = 0; j < k; ++j) {
      Rational s = b(k, j);
      for (std::size_t i = 0; i < j; ++i) s -= mu(j, i) * mu(k, i) * bb[i];
      mu(k, j) = s / bb[j];
    }
    Rational s = b(k, k);
    for (std::size_t j = 0; j < k; ++j) s -= mu(k, j) * mu(k, j) * bb[j];
    bb[k] = s;
  };

  auto reduce = [&](std::size_t k, std::size_t l2) {
    if (abs(mu(k, l2)) * 2 <= 1) return;
    Integer q = round_rational(mu(k, l2));
    Rational qr(q);
    for (std::size_t j = 0; j < n; ++j) h(k, j) -= q * h(l2, j);
    // Gram update for b_k <- b_k - q b_l
    Rational bkl = b(k, l2), bll = b(l2, l2);
    b(k, k) += -2 * qr * bkl + qr * qr * bll;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == k) continue;
      b(k, j) -= qr * b(l2, j);
      b(j, k) = b(k, j);
    }
    mu(k, l2) -= qr;
    for (std::size_t i = 0; i < l2; ++i) mu(k, i) -= qr * mu(l2, i);
  };

  bb[0] = b(0, 0);
  std::size_t k = 1, kmax = 0;
  while (k < n) {
    if (k > kmax) {
      kmax = k;
      gso_row(k);
    }
    reduce(k, k - 1);
    if (bb[k] < (delta - mu(k, k - 1) * mu(k, k - 1)) * bb[k - 1]) {
      h.swap_rows(k, k - 1);
      b.swap_rows(k, k - 1);
      b.swap_cols(k, k - 1);
      for (std::size_t j = 0; j + 1 < k; ++j) std::swap(mu(k, j), mu(k - 1, j));
      Rational m = mu(k, k - 1);
      Rational big = bb[k] + m * m * bb[k - 1];
      mu(k, k - 1) = m * bb[k - 1] / big;
      bb[k] = bb[k - 1] * bb[k] / big;
      bb[k - 1] = big;
      for (std::size_t i = k + 1; i <= kmax; ++i) {
        Rational t = mu(i, k);
        mu(i, k) = mu(i, k - 1) - m * t;
        mu(i, k - 1) = t + mu(k, k - 1) * mu(i, k);
      }
      if (k > 1) --k;
    } else {
      for (std::size_t l2 = k - 1; l2-- > 0;) reduce(k, l2);
      ++k;
    }
  }
  Reduction out{h, change_basis(l, h)};
  return out;
}

std::pair<int, int> signature(const IntMatrix& gram) {
  if (!gram.is_symmetric()) throw std::invalid_argument("signature of non-symmetric matrix");
  RatMatrix a = to_rational(gram);
  std::size_t n = a.rows();
  int pos = 0, neg = 0;
  std::vector<bool> done(n, false);
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t p = n;
    for (std::size_t i = 0; i < n; ++i)
      if (!done[i] && a(i, i) != 0) {
        p = i;
        break;
      }
    if (p == n) {
      // all remaining diagonal entries vanish: combine e_i + e_j
      std::size_t pi = n, pj = n;
      for (std::size_t i = 0; i < n && pi == n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (!done[i] && !done[j] && i != j && a(i, j) != 0) {
            pi = i;
            pj = j;
            break;
          }
      if (pi == n) throw DegenerateLattice("symmetric matrix is singular");
      for (std::size_t k = 0; k < n; ++k) a(pi, k) += a(pj, k);
      for (std::size_t k = 0; k < n; ++k) a(k, pi) += a(k, pj);
      p = pi;
    }
    Rational piv = a(p, p);
    if (piv > 0) ++pos;
    else ++neg;
    done[p] = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i] || a(i, p) == 0) continue;
      Rational f = a(i, p) / piv;
      for (std::size_t j = 0; j < n; ++j) a(i, j) -= f * a(p, j);
      for (std::size_t j = 0; j < n; ++j) a(j, i) = (j == i) ? a(i, i) : a(i, j);
    }
  }
  return {pos, neg};
}

bool is_positive_definite(const IntMatrix& gram) {
  if (gram.rows() == 0) return true;
  try {
    auto [p, n] = signature(gram);
    return n == 0 && p == static_cast<int>(gram.rows());
  } catch (const DegenerateLattice&) {
    return false;
  }
}

}  // namespace m23bkm
