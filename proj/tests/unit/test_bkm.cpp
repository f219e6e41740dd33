#include <doctest.h>

#include <algorithm>
#include <random>

#include "m23bkm/bkm.hpp"
#include "support.hpp"

using namespace m23bkm;
using m23bkm::testing::cls;

namespace {

const RootDatum& datum(std::int64_t m) {
  static std::map<std::int64_t, RootDatum> cache;
  auto it = cache.find(m);
  if (it == cache.end()) it = cache.emplace(m, make_root_datum(cls(m))).first;
  return it->second;
}

// d-sum over d | m with alpha in d Delta', read from a fresh 1/eta_nu expansion.
Integer oracle_mult(const RootDatum& rd, const IntVector& alpha) {
  IntVector ga = rd.Delta.gram * alpha;
  Integer g = 0;
  for (const Integer& x : ga) g = gcd(g, x);
  Rational n = Rational(bilinear(rd.Delta.gram, alpha, alpha)) / 2;
  FracPowerSeries f = eta_quotient(class_shape(rd.m), -1, Rational(40));
  Integer total = 0;
  for (std::int64_t d : divisors(rd.m)) {
    if (g % d != 0) continue;
    Rational e = -n / d;
    if (e < -1) continue;
    Rational c = f.coeff_at(e);
    total += c.get_num();
  }
  return total;
}

}  // namespace

TEST_SUITE("bkm") {
  TEST_CASE("root datum") {
    for (std::int64_t m : class_orders()) {
      const RootDatum& rd = datum(m);
      CHECK(rd.Delta.gram == cls(m).Delta.gram);
      CHECK(bilinear(rd.Delta.gram, rd.rho, rd.rho) == 0);
      CHECK(rd.Delta.rank() == static_cast<std::size_t>(cls(m).k()));
    }
  }

  TEST_CASE("multiplicities from invariants") {
    const RootDatum& one = datum(1);
    CHECK(multiplicity_from_invariants(one, 1, 1) == 1);
    CHECK(multiplicity_from_invariants(one, 0, 1) == 24);
    CHECK(multiplicity_from_invariants(one, -1, 1) == 324);
    CHECK(multiplicity_from_invariants(one, 2, 1) == 0);
    const RootDatum& two = datum(2);
    for (std::int64_t n = 1; n <= 6; ++n) {
      IntVector a = two.rho;
      for (auto& x : a) x *= n;
      CHECK(root_multiplicity(two, a).mult == (n % 2 == 0 ? 16 : 8));
    }
    CHECK(multiplicity_from_invariants(two, 2, 2) == 1);
    CHECK(multiplicity_from_invariants(two, 2, 1) == 0);
  }

  TEST_CASE("zero-graded piece has dimension k") {
    CHECK(dim_zero(datum(1)) == 26);
    CHECK(dim_zero(datum(6)) == 10);
    CHECK(dim_zero(datum(23)) == 4);
    for (std::int64_t m : class_orders()) CHECK(dim_zero(datum(m)) == cls(m).k());
  }

  TEST_CASE("multiplicity agrees with an independent d-sum on random vectors") {
    std::mt19937_64 rng(3);
    for (std::int64_t m : {2, 6, 11, 23}) {
      const RootDatum& rd = datum(m);
      std::size_t r = rd.Delta.rank();
      for (int it = 0; it < 60; ++it) {
        IntVector a(r);
        for (auto& x : a) x = static_cast<long>(rng() % 5) - 2;
        if (bilinear(rd.Delta.gram, a, a) > 2 * m) continue;
        bool zero = std::all_of(a.begin(), a.end(), [](const Integer& x) { return x == 0; });
        if (zero) continue;
        CHECK(root_multiplicity(rd, a).mult == oracle_mult(rd, a));
      }
    }
  }

  TEST_CASE("real roots of the unimodular case") {
    RootBox box{1, 2};
    auto roots = real_roots(datum(1), 1, box);
    CHECK(roots.size() == 393122);
    for (const auto& r : roots) {
      CHECK(r.mult == 1);
      CHECK(bilinear(datum(1).Delta.gram, r.alpha, r.alpha) == 2);
    }
    CHECK_THROWS_AS(real_roots(datum(1), 1, RootBox{1, 2}, 1000), TooLarge);
  }

  TEST_CASE("simple real roots at small height") {
    auto s = simple_real_roots(datum(1), 1);
    CHECK(s.size() == 196561);
    const RootDatum& rd = datum(7);
    for (const auto& r : simple_real_roots(rd, 2)) {
      Integer n = bilinear(rd.Delta.gram, r.alpha, r.alpha) / 2;
      CHECK(bilinear(rd.Delta.gram, r.alpha, rd.rho) == -n);
      CHECK(7 % n.get_si() == 0);
      CHECK(r.mult == 1);
    }
  }

  TEST_CASE("imaginary simple multiplicities") {
    for (std::int64_t m : class_orders()) {
      for (std::int64_t n = 1; n <= 24; ++n) {
        std::int64_t expected = 24 * sigma0(gcd64(m, n)) / sigma1(m);
        CHECK(imaginary_simple_mult(datum(m), n) == expected);
      }
    }
    CHECK(imaginary_simple_mult(datum(1), 5) == 24);
    CHECK(imaginary_simple_mult(datum(23), 23) == 2);
    CHECK_THROWS_AS(imaginary_simple_mult(datum(2), 0), std::invalid_argument);
  }

  TEST_CASE("Weyl invariance") {
    WeylReport w = weyl_invariance_check(datum(2), 200, 11);
    CHECK(w.pairs == 200);
    CHECK(w.ok());
  }

  TEST_CASE("grouping shortcut on the Leech lattice") {
    auto fast = lambda_groups(cls(1).leech, 2, true);
    auto slow = lambda_groups(cls(1).leech, 2, false);
    CHECK(fast == slow);
    std::array<std::int64_t, 3> key{2, 1, 1};
    CHECK(fast[key] == 196560);
  }

  TEST_CASE("exhaustive box checks") {
    RootBoxReport r = verify_root_box(datum(23), RootBox{4, -1});
    CHECK(r.ok());
    CHECK(r.lattice_roots > 0);
    std::uint64_t real = 0;
    for (auto [n, c] : r.real_roots_by_norm) {
      CHECK((n == 1 || n == 23));
      real += c;
    }
    CHECK(real == r.lattice_roots);
    CHECK(verify_root_box(datum(6), RootBox{2, -1}).ok());
  }

  TEST_CASE("root suite") {
    RootSuiteReport r = run_root_suite(cls(3), 2, 5, 50);
    CHECK(r.ok());
  }
}
