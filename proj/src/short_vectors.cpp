#include "m23bkm/short_vectors.hpp"

namespace m23bkm {

ShortVectorSetup::ShortVectorSetup(const IntMatrix& g, const RatVector& shift_vec,
                                   const Rational& max_norm)
    : n(g.rows()) {
  if (shift_vec.size() != n) throw std::invalid_argument("shift has wrong dimension");
  Integer d = 1;
  for (const auto& c : shift_vec) d = lcm(d, Integer(c.get_den()));
  den = to_int64(d);
  Integer scaled = floor_rational(max_norm * Rational(d * d));
  max_scaled_norm = to_int64(scaled);
  gram.resize(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) gram[i * n + j] = to_int64(g(i, j));
  shift_num.resize(n);
  shift.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    Rational v = shift_vec[i] * Rational(d);
    shift_num[i] = to_int64(v.get_num());
    shift[i] = shift_vec[i].get_d();
  }
  // Fincke-Pohst: <v,v> = sum_i qd_i (v_i + sum_{j>i} q_ij v_j)^2
  std::vector<double> a(n * n);
  for (std::size_t i = 0; i < n * n; ++i) a[i] = static_cast<double>(gram[i]);
  q.assign(n * n, 0.0);
  qd.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(a[i * n + i] > 1e-12)) throw IndefiniteLattice("Gram matrix is not positive definite");
    qd[i] = a[i * n + i];
    for (std::size_t j = i + 1; j < n; ++j) q[i * n + j] = a[i * n + j] / qd[i];
    for (std::size_t k = i + 1; k < n; ++k)
      for (std::size_t l2 = k; l2 < n; ++l2) {
        a[k * n + l2] -= q[i * n + k] * q[i * n + l2] * qd[i];
        a[l2 * n + k] = a[k * n + l2];
      }
  }
  budget = max_norm.get_d();
  slack = 1e-7 * (1.0 + std::abs(budget));
}

std::vector<std::uint64_t> norm_histogram(const ShortVectorSetup& s) {
  std::vector<std::uint64_t> h(static_cast<std::size_t>(std::max<std::int64_t>(s.max_scaled_norm, -1) + 1), 0);
  enumerate_short_vectors(s, [&](const std::int64_t*, std::int64_t nn) { ++h[static_cast<std::size_t>(nn)]; });
  return h;
}

}  // namespace m23bkm
