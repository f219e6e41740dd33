#include "m23bkm/matrix.hpp"

namespace m23bkm {

RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rational(m(i, j));
  return r;
}

RatVector to_rational(const IntVector& v) {
  RatVector r;
  r.reserve(v.size());
  for (const auto& x : v) r.emplace_back(x);
  return r;
}

IntMatrix matrix_power(const IntMatrix& m, std::int64_t k) {
  if (!m.is_square()) throw std::invalid_argument("matrix power of non-square matrix");
  if (k < 0) throw std::invalid_argument("negative matrix power");
  IntMatrix result = IntMatrix::identity(m.rows());
  IntMatrix base = m;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return result;
}

Integer dot(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rational dot(const RatVector& a, const RatVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rational bilinear(const IntMatrix& g, const RatVector& x, const RatVector& y) {
  Rational s = 0;
  for (std::size_t i = 0; i < g.rows(); ++i) {
    if (x[i] == 0) continue;
    Rational row = 0;
    for (std::size_t j = 0; j < g.cols(); ++j) {
      if (g(i, j) != 0 && y[j] != 0) row += Rational(g(i, j)) * y[j];
    }
    s += x[i] * row;
  }
  return s;
}

Integer bilinear(const IntMatrix& g, const IntVector& x, const IntVector& y) {
  Integer s = 0;
  for (std::size_t i = 0; i < g.rows(); ++i) {
    if (x[i] == 0) continue;
    Integer row = 0;
    for (std::size_t j = 0; j < g.cols(); ++j) row += g(i, j) * y[j];
    s += x[i] * row;
  }
  return s;
}

}  // namespace m23bkm
