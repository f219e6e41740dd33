#include "m23bkm/normal_form.hpp"

#include <cstdlib>

namespace m23bkm {

namespace {

void add_row_multiple(IntMatrix& m, std::size_t dst, std::size_t src, const Integer& q) {
  if (q == 0) return;
  for (std::size_t j = 0; j < m.cols(); ++j) m(dst, j) += q * m(src, j);
}

void add_col_multiple(IntMatrix& m, std::size_t dst, std::size_t src, const Integer& q) {
  if (q == 0) return;
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, dst) += q * m(i, src);
}

void negate_row(IntMatrix& m, std::size_t r) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) = -m(r, j);
}

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

EchelonForm hermite_form(const IntMatrix& a) {
  EchelonForm out;
  out.echelon = a;
  out.transform = IntMatrix::identity(a.rows());
  IntMatrix& e = out.echelon;
  IntMatrix& u = out.transform;
  std::size_t row = 0;
  for (std::size_t col = 0; col < e.cols() && row < e.rows(); ++col) {
    while (true) {
      // smallest nonzero |entry| at or below `row`
      std::size_t best = e.rows();
      for (std::size_t i = row; i < e.rows(); ++i) {
        if (e(i, col) != 0 && (best == e.rows() || abs(e(i, col)) < abs(e(best, col)))) best = i;
      }
      if (best == e.rows()) break;
      e.swap_rows(row, best);
      u.swap_rows(row, best);
      bool done = true;
      for (std::size_t i = row + 1; i < e.rows(); ++i) {
        if (e(i, col) == 0) continue;
        Integer q = -floor_div(e(i, col), e(row, col));
        add_row_multiple(e, i, row, q);
        add_row_multiple(u, i, row, q);
        if (e(i, col) != 0) done = false;
      }
      if (done) break;
    }
    if (row < e.rows() && e(row, col) != 0) {
      if (e(row, col) < 0) {
        negate_row(e, row);
        negate_row(u, row);
      }
      for (std::size_t i = 0; i < row; ++i) {
        Integer q = -floor_div(e(i, col), e(row, col));
        add_row_multiple(e, i, row, q);
        add_row_multiple(u, i, row, q);
      }
      out.pivots.push_back(col);
      ++row;
    }
  }
  out.rank = row;
  return out;
}

IntMatrix row_lattice_basis(const IntMatrix& generators) {
  EchelonForm h = hermite_form(generators);
  IntMatrix b(h.rank, generators.cols());
  for (std::size_t i = 0; i < h.rank; ++i)
    for (std::size_t j = 0; j < generators.cols(); ++j) b(i, j) = h.echelon(i, j);
  return b;
}

IntMatrix integer_kernel(const IntMatrix& a) {
  EchelonForm h = hermite_form(a.transpose());
  std::size_t n = a.cols();
  IntMatrix k(n - h.rank, n);
  for (std::size_t i = h.rank; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) k(i - h.rank, j) = h.transform(i, j);
  return row_lattice_basis(k);
}

std::optional<IntVector> solve_integer(const IntMatrix& a, const IntVector& b) {
  if (b.size() != a.rows()) throw std::invalid_argument("solve_integer: dimension mismatch");
  // U a^T = E, so a U^T = E^T; solve E^T y = b, then x = U^T y.
  EchelonForm h = hermite_form(a.transpose());
  const IntMatrix& e = h.echelon;
  IntVector y(a.cols(), Integer(0));
  for (std::size_t i = 0; i < h.rank; ++i) {
    std::size_t p = h.pivots[i];
    Integer rhs = b[p];
    for (std::size_t k = 0; k < i; ++k) rhs -= e(k, p) * y[k];
    if (rhs % e(i, p) != 0) return std::nullopt;
    y[i] = rhs / e(i, p);
  }
  IntVector x = h.transform.transpose() * y;
  if (a * x != b) return std::nullopt;
  return x;
}

SmithForm smith_form(const IntMatrix& a) {
  SmithForm out;
  IntMatrix d = a;
  out.left = IntMatrix::identity(a.rows());
  out.right = IntMatrix::identity(a.cols());
  std::size_t n = std::min(a.rows(), a.cols());
  for (std::size_t t = 0; t < n; ++t) {
    while (true) {
      std::size_t bi = d.rows(), bj = d.cols();
      for (std::size_t i = t; i < d.rows(); ++i)
        for (std::size_t j = t; j < d.cols(); ++j)
          if (d(i, j) != 0 && (bi == d.rows() || abs(d(i, j)) < abs(d(bi, bj)))) {
            bi = i;
            bj = j;
          }
      if (bi == d.rows()) break;
      d.swap_rows(t, bi);
      out.left.swap_rows(t, bi);
      d.swap_cols(t, bj);
      out.right.swap_cols(t, bj);
      bool clean = true;
      for (std::size_t i = t + 1; i < d.rows(); ++i) {
        if (d(i, t) == 0) continue;
        Integer q = -floor_div(d(i, t), d(t, t));
        add_row_multiple(d, i, t, q);
        add_row_multiple(out.left, i, t, q);
        if (d(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < d.cols(); ++j) {
        if (d(t, j) == 0) continue;
        Integer q = -floor_div(d(t, j), d(t, t));
        add_col_multiple(d, j, t, q);
        add_col_multiple(out.right, j, t, q);
        if (d(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      // divisibility of the remaining block by the pivot
      std::size_t bad = d.rows();
      for (std::size_t i = t + 1; i < d.rows() && bad == d.rows(); ++i)
        for (std::size_t j = t + 1; j < d.cols(); ++j)
          if (d(i, j) % d(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad == d.rows()) break;
      add_row_multiple(d, t, bad, Integer(1));
      add_row_multiple(out.left, t, bad, Integer(1));
    }
    if (d(t, t) < 0) {
      negate_row(d, t);
      negate_row(out.left, t);
    }
  }
  out.diagonal.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.diagonal[i] = d(i, i);
  return out;
}

Integer determinant(const IntMatrix& a) {
  if (!a.is_square()) throw std::invalid_argument("determinant of non-square matrix");
  std::size_t n = a.rows();
  if (n == 0) return 1;
  IntMatrix m = a;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      m.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
      }
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

Rational determinant(const RatMatrix& a) {
  if (!a.is_square()) throw std::invalid_argument("determinant of non-square matrix");
  RatMatrix m = a;
  std::size_t n = m.rows();
  Rational det = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && m(p, k) == 0) ++p;
    if (p == n) return 0;
    if (p != k) {
      m.swap_rows(k, p);
      det = -det;
    }
    det *= m(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (m(i, k) == 0) continue;
      Rational f = m(i, k) / m(k, k);
      for (std::size_t j = k; j < n; ++j) m(i, j) -= f * m(k, j);
    }
  }
  return det;
}

RatMatrix inverse(const RatMatrix& a) {
  if (!a.is_square()) throw std::invalid_argument("inverse of non-square matrix");
  std::size_t n = a.rows();
  RatMatrix m = a;
  RatMatrix inv = RatMatrix::identity(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && m(p, k) == 0) ++p;
    if (p == n) throw std::domain_error("matrix is singular");
    m.swap_rows(k, p);
    inv.swap_rows(k, p);
    Rational piv = m(k, k);
    for (std::size_t j = 0; j < n; ++j) {
      m(k, j) /= piv;
      inv(k, j) /= piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || m(i, k) == 0) continue;
      Rational f = m(i, k);
      for (std::size_t j = 0; j < n; ++j) {
        m(i, j) -= f * m(k, j);
        inv(i, j) -= f * inv(k, j);
      }
    }
  }
  return inv;
}

RatVector solve_rational(const RatMatrix& a, const RatVector& b) { return inverse(a) * b; }

}  // namespace m23bkm
