#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "m23bkm/lattice.hpp"

namespace m23bkm {

/// Enumeration data for vectors v = x + shift (x integral) of a positive-definite
/// lattice with <v,v> <= max_norm.
///
/// Pruning uses a floating-point Fincke-Pohst decomposition widened by a small
/// slack; every reported vector carries its exact scaled norm
/// N = den^2 <v,v>, where den is the common denominator of the shift.
struct ShortVectorSetup {
  std::size_t n = 0;
  std::int64_t den = 1;
  std::int64_t max_scaled_norm = 0;           // floor(den^2 * max_norm)
  std::vector<std::int64_t> gram;             // n*n
  std::vector<std::int64_t> shift_num;        // den * shift
  std::vector<double> shift;                  // shift as doubles
  std::vector<double> qd;                     // Fincke-Pohst diagonal
  std::vector<double> q;                      // n*n, upper part q[i*n+j], j>i
  double budget = 0;                          // max_norm as double, with slack
  double slack = 0;

  ShortVectorSetup(const IntMatrix& g, const RatVector& shift_vec, const Rational& max_norm);
};

template <class Visitor>
void enumerate_short_vectors(const ShortVectorSetup& s, Visitor&& visit) {
  const std::size_t n = s.n;
  if (s.max_scaled_norm < 0) return;
  if (n == 0) {
    visit(static_cast<const std::int64_t*>(nullptr), std::int64_t{0});
    return;
  }
  const std::int64_t den = s.den;
  const std::int64_t den2 = den * den;
  std::vector<std::int64_t> x(n, 0), hi(n, 0), w(n, 0);
  std::vector<double> sigma(n, 0.0), budget(n, 0.0);
  // exact state for x = 0: u = shift_num, w = G u, N = u^T G u
  std::int64_t norm = 0;
  for (std::size_t k = 0; k < n; ++k) {
    std::int64_t acc = 0;
    for (std::size_t l = 0; l < n; ++l) acc += s.gram[k * n + l] * s.shift_num[l];
    w[k] = acc;
    norm += s.shift_num[k] * acc;
  }
  for (std::size_t k = 0; k < n; ++k) {
    double acc = 0;
    for (std::size_t l = k + 1; l < n; ++l) acc += s.q[k * n + l] * s.shift[l];
    sigma[k] = acc;
  }

  auto set_x = [&](std::size_t l, std::int64_t value) {
    std::int64_t d = value - x[l];
    if (d == 0) return;
    norm += 2 * den * d * w[l] + den2 * d * d * s.gram[l * n + l];
    const std::int64_t dd = den * d;
    for (std::size_t k = 0; k <= l; ++k) w[k] += dd * s.gram[k * n + l];
    const double df = static_cast<double>(d);
    for (std::size_t k = 0; k < l; ++k) sigma[k] += s.q[k * n + l] * df;
    x[l] = value;
  };

  auto enter = [&](std::size_t l) -> bool {
    double c = -(s.shift[l] + sigma[l]);
    double t = budget[l] + s.slack;
    if (t < 0) return false;
    double r = std::sqrt(t / s.qd[l]);
    auto lo = static_cast<std::int64_t>(std::ceil(c - r));
    auto h = static_cast<std::int64_t>(std::floor(c + r));
    if (lo > h) return false;
    hi[l] = h;
    set_x(l, lo);
    return true;
  };

  std::size_t l = n - 1;
  budget[l] = s.budget;
  if (!enter(l)) return;
  const std::int64_t g00 = s.gram[0];
  const std::int64_t nmax = s.max_scaled_norm;
  while (true) {
    if (l > 0) {
      double y = static_cast<double>(x[l]) + s.shift[l] + sigma[l];
      budget[l - 1] = budget[l] - s.qd[l] * y * y;
      if (enter(l - 1)) {
        --l;
        continue;
      }
    } else {
      const std::int64_t lo = x[0];
      std::int64_t nn = norm, ww = w[0];
      for (std::int64_t v = lo; v <= hi[0]; ++v) {
        if (nn <= nmax) {
          x[0] = v;
          visit(static_cast<const std::int64_t*>(x.data()), nn);
        }
        nn += 2 * den * ww + den2 * g00;
        ww += den * g00;
      }
      x[0] = lo;
      set_x(0, 0);
      if (n == 1) return;
      l = 1;
    }
    while (true) {
      if (x[l] < hi[l]) {
        set_x(l, x[l] + 1);
        break;
      }
      set_x(l, 0);
      if (++l == n) return;
    }
  }
}

// Counts by exact scaled norm N = den^2 <v,v>, index 0..max_scaled_norm.
std::vector<std::uint64_t> norm_histogram(const ShortVectorSetup& s);

}  // namespace m23bkm
