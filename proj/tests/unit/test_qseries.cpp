#include <doctest.h>

#include <random>

#include "m23bkm/qseries.hpp"
#include "support.hpp"

using namespace m23bkm;
using m23bkm::testing::integer_coeffs;

namespace {

Rational R(std::int64_t a, std::int64_t b) { return make_rational(Integer(static_cast<long>(a)), Integer(static_cast<long>(b))); }

FracPowerSeries poly(std::vector<long> c, std::int64_t trunc) {
  std::vector<Rational> r;
  for (long x : c) r.emplace_back(x);
  return FracPowerSeries::from_coeffs(1, 0, r, trunc);
}

// prod_{n=1}^{N} (1 - q^n)^power as plain integers, through q^N
std::vector<Integer> product_oracle(int power, int n_max) {
  std::vector<Integer> c(static_cast<std::size_t>(n_max) + 1, 0);
  c[0] = 1;
  auto times_factor = [&](int n, bool inverse) {
    if (inverse) {
      for (int e = n; e <= n_max; ++e) c[static_cast<std::size_t>(e)] += c[static_cast<std::size_t>(e - n)];
    } else {
      for (int e = n_max; e >= n; --e) c[static_cast<std::size_t>(e)] -= c[static_cast<std::size_t>(e - n)];
    }
  };
  for (int n = 1; n <= n_max; ++n)
    for (int k = 0; k < std::abs(power); ++k) times_factor(n, power < 0);
  return c;
}

FracPowerSeries random_series(std::mt19937_64& rng, bool invertible) {
  static const std::int64_t dens[] = {1, 2, 3, 6};
  std::int64_t den = dens[rng() % 4];
  auto lead = static_cast<std::int64_t>(rng() % 7) - 3;
  auto len = static_cast<std::int64_t>(rng() % 6) + 2;
  std::vector<Rational> c;
  for (std::int64_t i = 0; i < len; ++i) {
    long num = static_cast<long>(rng() % 11) - 5;
    long dd = static_cast<long>(rng() % 3) + 1;
    c.push_back(make_rational(Integer(num), Integer(dd)));
  }
  if (invertible && c[0] == 0) c[0] = 1;
  return FracPowerSeries::from_coeffs(den, lead, c, lead + len);
}

bool agree(const FracPowerSeries& a, const FracPowerSeries& b) {
  Rational limit = std::min(a.trunc_exponent(), b.trunc_exponent());
  return !first_difference(a, b, limit).has_value();
}

}  // namespace

TEST_SUITE("qseries") {
  TEST_CASE("products of small polynomials") {
    CHECK(series_mul(poly({1, 1}, 5), poly({1, -1}, 5)) == poly({1, 0, -1}, 5));
    FracPowerSeries f = poly({3, 0, 7, -2}, 4);
    CHECK(series_mul(f, FracPowerSeries::one(1, 4)) == f);
    auto a = FracPowerSeries::monomial(1, -1, 2, 4);
    auto b = FracPowerSeries::monomial(1, 1, 2, 4);
    FracPowerSeries p = series_mul(a, b);
    CHECK(p.lead_exponent() == 0);
    CHECK(p.coeff_at(Rational(0)) == 1);
    CHECK(p.coeff_at(R(1, 2)) == 0);
  }

  TEST_CASE("truncation propagates through products") {
    FracPowerSeries a = poly({1, 1}, 3);                             // valid below q^3
    FracPowerSeries b = FracPowerSeries::monomial(1, 1, 1, 10);     // q, valid below q^10
    CHECK(series_mul(a, b).trunc_exponent() == 4);
    CHECK_THROWS_AS(series_mul(a, b).coeff_at(Rational(4)), InsufficientTruncation);
  }

  TEST_CASE("inverses") {
    FracPowerSeries g = series_inv(poly({1, -1}, 8));
    for (int e = 0; e < 8; ++e) CHECK(g.coeff_at(Rational(e)) == 1);
    FracPowerSeries q = FracPowerSeries::monomial(1, 1, 1, 6);
    FracPowerSeries qi = series_inv(q);
    CHECK(qi.lead_exponent() == -1);
    CHECK(qi.coeff_at(Rational(-1)) == 1);
    FracPowerSeries e = eta(1, Rational(6));
    CHECK(agree(series_mul(series_inv(e), e), FracPowerSeries::one(1, 100)));
    CHECK_THROWS_AS(series_inv(FracPowerSeries::zero(1, 4)), ZeroLeadingCoefficient);
  }

  TEST_CASE("eta(1) matches the finite product") {
    auto oracle = product_oracle(1, 30);
    FracPowerSeries e = eta(1, Rational(30));
    for (int n = 0; n < 30; ++n) CHECK(e.coeff_at(R(24 * n + 1, 24)) == oracle[static_cast<std::size_t>(n)]);
    CHECK(e.coeff_at(R(1, 24)) == 1);
    CHECK(e.coeff_at(R(25, 24)) == -1);
    CHECK(e.coeff_at(R(49, 24)) == -1);
    CHECK(e.coeff_at(R(121, 24)) == 1);
  }

  TEST_CASE("eta(t) is eta(1) with q -> q^t") {
    for (std::int64_t t : {2, 3, 7, 23}) {
      FracPowerSeries lhs = eta(t, Rational(12));
      FracPowerSeries rhs = eta(1, R(12, t) + 1).substitute_power(t);
      CHECK(agree(lhs, rhs));
    }
  }

  TEST_CASE("eta^24 and its inverse against integer convolution") {
    FracPowerSeries d = series_pow(eta(1, Rational(12)), 24);
    CHECK(d.lead_exponent() == 1);
    auto oracle = product_oracle(24, 10);
    for (int n = 0; n <= 10; ++n) CHECK(d.coeff_at(Rational(n + 1)) == oracle[static_cast<std::size_t>(n)]);
    FracPowerSeries inv = series_pow(eta(1, Rational(12)), -24);
    auto inv_oracle = product_oracle(-24, 10);
    CHECK(inv.coeff_at(Rational(-1)) == 1);
    CHECK(inv.coeff_at(Rational(0)) == 24);
    CHECK(inv.coeff_at(Rational(1)) == 324);
    for (int n = 0; n <= 10; ++n) CHECK(inv.coeff_at(Rational(n - 1)) == inv_oracle[static_cast<std::size_t>(n)]);
  }

  TEST_CASE("eta quotients of the ten shapes") {
    for (std::int64_t m : class_orders()) {
      CycleShape s = class_shape(m);
      CHECK(s.degree() == 24);
      for (auto [t, b] : s.exponents) CHECK(b * sigma1(m) == 24);
      FracPowerSeries f = eta_quotient(s, -1, Rational(6));
      CHECK(f.lead_exponent() == -1);
      CHECK(f.coeff_at(Rational(-1)) == 1);
      CHECK(f.coeff_at(Rational(0)) * sigma1(m) == 24);
      CHECK(f.denom() == 1);
    }
    CHECK(eta_quotient(class_shape(2), -1, Rational(3)).coeff_at(Rational(0)) == 8);
  }

  TEST_CASE("eta quotient of 1^8 2^8 against the product oracle") {
    // 1/(eta(tau)^8 eta(2 tau)^8) = q^{-1} prod (1-q^n)^{-8} (1-q^{2n})^{-8}
    auto a = product_oracle(-8, 12);
    std::vector<Integer> b(13, 0);
    auto b_half = product_oracle(-8, 6);
    for (int n = 0; n <= 6; ++n) b[static_cast<std::size_t>(2 * n)] = b_half[static_cast<std::size_t>(n)];
    FracPowerSeries f = eta_quotient(class_shape(2), -1, Rational(11));
    for (int n = 0; n <= 11; ++n) {
      Integer c = 0;
      for (int k = 0; k <= n; ++k) c += a[static_cast<std::size_t>(k)] * b[static_cast<std::size_t>(n - k)];
      CHECK(f.coeff_at(Rational(n - 1)) == c);
    }
  }

  TEST_CASE("T-eigencomponents") {
    FracPowerSeries f = eta_quotient(class_shape(3), -1, Rational(4));
    auto one = t_eigencomponents(f, 1);
    REQUIRE(one.size() == 1);
    CHECK(one[0] == f);

    std::vector<Rational> c(4, Rational(0));
    c[0] = 1;
    c[3] = 1;
    FracPowerSeries h = FracPowerSeries::from_coeffs(2, -1, c, 3);  // q^{-1/2} + q
    auto parts = t_eigencomponents(h, 2);
    CHECK(parts[1].lead_exponent() == R(-1, 2));
    CHECK(parts[1].coeff_at(R(-1, 2)) == 1);
    CHECK(parts[1].coeff_at(Rational(1)) == 0);
    CHECK(parts[0].lead_exponent() == 1);

    FracPowerSeries g = eta_quotient(class_shape(2), -1, Rational(6)).substitute_root(2);
    auto gs = t_eigencomponents(g, 2);
    CHECK(gs[1].lead_exponent() == R(-1, 2));
    CHECK(gs[1].coeff_at(R(-1, 2)) == 1);
    FracPowerSeries sum = gs[0] + gs[1];
    CHECK(sum == g);
    for (std::int64_t j = 0; j < 2; ++j) {
      const auto& s = gs[static_cast<std::size_t>(j)];
      for (std::size_t i = 0; i < s.coeffs().size(); ++i) {
        if (s.coeffs()[i] == 0) continue;
        Rational e = make_rational(Integer(s.lead() + static_cast<std::int64_t>(i)), Integer(s.denom()));
        CHECK(frac(e) == make_rational(Integer(j), Integer(2)));
      }
    }
  }

  TEST_CASE("representation is invariant under denominator rescaling") {
    FracPowerSeries f = eta(1, Rational(3));
    CHECK(f.rescaled(5) == f);
    CHECK(f.rescaled(5).reduced().denom() == f.denom());
  }

  TEST_CASE("ring axioms on random series") {
    std::mt19937_64 rng(20240611);
    for (int i = 0; i < 100; ++i) {
      FracPowerSeries a = random_series(rng, false);
      FracPowerSeries b = random_series(rng, false);
      FracPowerSeries c = random_series(rng, false);
      CHECK(agree(series_mul(a, b), series_mul(b, a)));
      CHECK(agree(series_mul(series_mul(a, b), c), series_mul(a, series_mul(b, c))));
      CHECK(agree(series_mul(a, b + c), series_mul(a, b) + series_mul(a, c)));
      CHECK(agree(a + b, b + a));
      CHECK(agree((a + b) - b, a));
    }
  }

  TEST_CASE("inverse round trips on random series") {
    std::mt19937_64 rng(77);
    for (int i = 0; i < 100; ++i) {
      FracPowerSeries a = random_series(rng, true);
      FracPowerSeries inv = series_inv(a);
      CHECK(agree(series_mul(a, inv), FracPowerSeries::one(1, 1000)));
      CHECK(agree(series_inv(inv), a));
    }
  }

  TEST_CASE("integer helpers") {
    CHECK(sigma0(6) == 4);
    CHECK(sigma1(6) == 12);
    CHECK(sigma1(23) == 24);
    CHECK(moebius(6) == 1);
    CHECK(moebius(4) == 0);
    const std::vector<std::int64_t> d15{1, 3, 5, 15};
    CHECK(divisors(15) == d15);
    CHECK(mod_floor(-7, 5) == 3);
    const std::vector<Integer> expect{1, 2, 3};
    CHECK(integer_coeffs(poly({1, 2, 3}, 3), 0, 2) == expect);
  }
}
