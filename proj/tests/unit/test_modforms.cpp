#include <doctest.h>

#include <functional>

#include "m23bkm/characters.hpp"
#include "m23bkm/verify.hpp"
#include "m23bkm/vvmf.hpp"
#include "m23bkm/zhu.hpp"
#include "support.hpp"

using namespace m23bkm;
using m23bkm::testing::cls;
using m23bkm::testing::env;

namespace {

Rational R(long a, long b) { return make_rational(Integer(a), Integer(b)); }

IntMatrix imat(std::vector<std::vector<long>> rows) {
  std::vector<std::vector<Integer>> r;
  for (auto& row : rows) {
    r.emplace_back();
    for (long x : row) r.back().emplace_back(x);
  }
  return IntMatrix::from_rows(r);
}

// Counts of <v,v>/2 over rep + x, x in a box, optionally restricted to a predicate.
std::map<Rational, long> brute_theta(const Lattice& l, const RatVector& rep, long box, const Rational& bound,
                                     const std::function<bool(const IntVector&)>& keep = nullptr) {
  std::size_t n = l.rank();
  std::map<Rational, long> out;
  IntVector x(n, Integer(-box));
  while (true) {
    if (!keep || keep(x)) {
      RatVector v(n);
      for (std::size_t i = 0; i < n; ++i) v[i] = Rational(x[i]) + rep[i];
      Rational e = bilinear(l.gram, v, v) / 2;
      if (e <= bound) ++out[e];
    }
    std::size_t i = 0;
    while (i < n && x[i] == box) x[i++] = -box;
    if (i == n) break;
    x[i] += 1;
  }
  return out;
}

void check_against(const FracPowerSeries& s, const std::map<Rational, long>& oracle, const Rational& bound) {
  for (auto [e, c] : oracle) CHECK(s.coeff_at(e) == c);
  long total = 0;
  for (auto [e, c] : oracle) total += c;
  Integer series_total = 0;
  for (std::size_t i = 0; i < s.coeffs().size(); ++i) {
    Rational e = make_rational(Integer(static_cast<long>(s.lead() + static_cast<std::int64_t>(i))), Integer(static_cast<long>(s.denom())));
    if (e <= bound) series_total += s.coeffs()[i].get_num();
  }
  CHECK(series_total == total);
}

}  // namespace

TEST_SUITE("modforms") {
  TEST_CASE("theta series of small lattices against brute force") {
    Lattice a1(imat({{2}}));
    check_against(theta_coset(a1, {Rational(0)}, Rational(9)).series,
                  brute_theta(a1, {Rational(0)}, 4, Rational(9)), Rational(9));
    ThetaSeries half = theta_coset(a1, {R(1, 2)}, Rational(7));
    CHECK(half.series.coeff_at(R(1, 4)) == 2);
    CHECK(half.series.coeff_at(R(9, 4)) == 2);
    CHECK(half.series.coeff_at(R(5, 4)) == 0);

    Lattice a2(imat({{2, 1}, {1, 2}}));
    ThetaSeries t = theta_coset(a2, {Rational(0), Rational(0)}, Rational(7));
    CHECK(t.series.coeff_at(Rational(1)) == 6);
    CHECK(t.series.coeff_at(Rational(2)) == 0);
    CHECK(t.series.coeff_at(Rational(3)) == 6);
    CHECK(t.series.coeff_at(Rational(7)) == 12);
    check_against(t.series, brute_theta(a2, {Rational(0), Rational(0)}, 5, Rational(7)), Rational(7));
    RatVector glue{R(1, 3), R(1, 3)};
    check_against(theta_coset(a2, glue, Rational(6)).series, brute_theta(a2, glue, 5, Rational(6)), Rational(6));
  }

  TEST_CASE("theta of a coset equals theta of its negative") {
    const ClassData& c = cls(3);
    FiniteQuadraticSpace d = discriminant_form(c.coinvariant.lattice);
    int checked = 0;
    d.for_each([&](const GroupElement& x) {
      if (checked >= 6) return;
      ++checked;
      RatVector p = d.representative(x), n = d.representative(d.negate(x));
      Rational q = *dual_class(c.coinvariant.lattice, p);
      CHECK(theta_coset(c.coinvariant.lattice, p, q + 2).series ==
            theta_coset(c.coinvariant.lattice, n, q + 2).series);
    });
  }

  TEST_CASE("fixed-coset theta") {
    Lattice a2(imat({{2, 1}, {1, 2}}));
    IsometryAction swap{imat({{0, 1}, {1, 0}}), 2};
    ThetaSeries t = theta_fixed_coset(a2, {Rational(0), Rational(0)}, swap, 1, Rational(12));
    auto oracle = brute_theta(a2, {Rational(0), Rational(0)}, 4, Rational(12),
                              [](const IntVector& x) { return x[0] == x[1]; });
    check_against(t.series, oracle, Rational(12));
    CHECK(t.series.coeff_at(Rational(3)) == 2);
    ThetaSeries all = theta_fixed_coset(a2, {Rational(0), Rational(0)}, swap, 2, Rational(3));
    CHECK(all.series.coeff_at(Rational(1)) == 6);
  }

  TEST_CASE("twisted trace for 1^8 2^8 is eta(tau)^8 / eta(2 tau)^8") {
    CharacterContext ctx(cls(2));
    CycleShape expected;
    expected.order = 2;
    expected.exponents = {{1, -8}, {2, 8}};
    CHECK(ctx.restricted_shape(1).exponents == expected.exponents);
    RatVector zero(8, Rational(0));
    FracPowerSeries t1 = ctx.twisted_trace(zero, 1, Rational(6));
    FracPowerSeries oracle = eta_quotient(expected, -1, Rational(7)).truncated(Rational(6));
    CHECK(t1 == oracle);
    FracPowerSeries t0 = ctx.twisted_trace(zero, 0, Rational(3));
    CHECK(t0.lead_exponent() == R(-1, 3));
  }

  TEST_CASE("untwisted characters are the DFT of the traces") {
    for (std::int64_t m : {2, 3}) {
      CharacterContext ctx(cls(m));
      const FiniteQuadraticSpace& d = ctx.coinvariant_disc();
      int checked = 0;
      d.for_each([&](const GroupElement& x) {
        if (checked >= 4) return;
        ++checked;
        RatVector rep = d.representative(x);
        auto chars = ctx.characters(rep, Rational(3));
        REQUIRE(chars.size() == static_cast<std::size_t>(m));
        FracPowerSeries sum = chars[0];
        for (std::size_t j = 1; j < chars.size(); ++j) sum = sum + chars[j];
        CHECK(sum == ctx.twisted_trace(rep, 0, Rational(3)));
        for (const auto& ch : chars)
          for (const auto& c : ch.coeffs()) {
            CHECK(c.get_den() == 1);
            CHECK(c >= 0);
          }
        if (m == 2) {
          FracPowerSeries t1 = ctx.twisted_trace(rep, 1, Rational(3));
          FracPowerSeries diff = chars[0] - chars[1];
          CHECK(diff == t1);
        }
      });
    }
  }

  TEST_CASE("cyclotomic integers") {
    CyclotomicInt s(3);
    s.add_term(1, 0);
    s.add_term(1, 1);
    s.add_term(1, 2);
    CHECK(s.is_rational());
    CHECK(*s.rational_value() == 0);
    CyclotomicInt z = CyclotomicInt::root_power(5, 2) * CyclotomicInt::root_power(5, 3);
    CHECK(z.equals(CyclotomicInt::constant(5, 1)));
    CHECK_FALSE(CyclotomicInt::root_power(5, 1).is_rational());
    CHECK((CyclotomicInt::root_power(7, 3) - CyclotomicInt::root_power(7, 3)).equals(CyclotomicInt::constant(7, 0)));
    CHECK(cyclotomic_polynomial(6) == IntVector{Integer(1), Integer(-1), Integer(1)});
  }

  TEST_CASE("DFT rejects irrational and negative results") {
    auto c = [](long v) { return FracPowerSeries::monomial(Rational(v), 0, 1, 2); };
    auto out = dft_characters({c(3), c(0), c(0)});
    for (const auto& o : out) CHECK(o.coeff_at(Rational(0)) == 1);
    CHECK_THROWS_AS(dft_characters({c(0), c(3), c(0)}), NonRationalCharacter);
    CHECK_THROWS_AS(dft_characters({c(1), c(3)}), InvalidCharacter);
  }

  TEST_CASE("lift for m = 1 is 1/eta^24") {
    VvmfTable f = lift_F(cls(1), 5);
    REQUIRE(f.entries.size() == 1);
    const FracPowerSeries& s = f.entries.begin()->second;
    CHECK(s.coeff_at(Rational(-1)) == 1);
    CHECK(s.coeff_at(Rational(0)) == 24);
    CHECK(s.coeff_at(Rational(1)) == 324);
    CHECK(s.coeff_at(Rational(2)) == 3200);
    CHECK(f.weight == -12);
  }

  TEST_CASE("lifts are reflective with the predicted singular parts") {
    for (std::int64_t m : class_orders()) {
      const ClassData& c = cls(m);
      VvmfTable f = lift_F(c, 3);
      CHECK(f.weight == c.weight());
      ReflectivityReport r = check_reflectivity(f);
      CHECK(r.ok);
      CHECK_NOTHROW(require_reflective(f));
      std::int64_t total = 0;
      for (auto [k, n] : f.counts) total += n;
      CHECK(static_cast<std::uint64_t>(total) == discriminant_form(c.L).size());
      std::int64_t predicted = 0;
      for (auto [k, n] : f.counts)
        if (predicted_singular_d(m, k)) predicted += n;
      CHECK(r.singular_elements == predicted);
      CHECK(check_t_congruence(f).ok);
    }
  }

  TEST_CASE("a corrupted singular coefficient is reported") {
    VvmfTable f = lift_F(cls(2), 3);
    for (auto& [k, s] : f.entries) {
      if (s.lead_exponent() < 0) {
        s = s + FracPowerSeries::monomial(Rational(1), s.lead(), s.denom(), s.trunc());
        break;
      }
    }
    CHECK_FALSE(check_reflectivity(f).ok);
    CHECK_THROWS_AS(require_reflective(f), ReflectivityViolated);
  }

  TEST_CASE("characters agree with the lift for small orders") {
    for (std::int64_t m : {1, 2, 3}) {
      CharacterReport r = verify_F_equals_characters(cls(m), 4);
      CHECK(r.status == "PASS");
      CHECK(r.counts_match);
      CHECK(r.count("FAIL") == 0);
    }
  }

  TEST_CASE("fusion-group class counts") {
    for (std::int64_t m : class_orders()) CHECK(fusion_counts_match(cls(m)));
  }

  TEST_CASE("Zhu S and T") {
    ZhuMatrices one(cls(1));
    CHECK(one.size() == 1);
    CHECK(std::abs(one.s(0, 0) - std::complex<double>(1, 0)) < 1e-12);
    CHECK(std::abs(one.t(0) - std::complex<double>(1, 0)) < 1e-12);
    for (std::int64_t m : {1, 2}) {
      ZhuReport r = check_zhu(cls(m), 3);
      CHECK(r.symmetric);
      CHECK(r.ok());
    }
    ZhuReport probe = check_zhu(cls(2), 3, 16, 3);
    CHECK(probe.method == "probe");
    CHECK(probe.ok());
    CHECK_THROWS_AS(ZhuMatrices(cls(5)), TooLarge);
  }

  TEST_CASE("weight-one space of the coinvariant orbifold") {
    for (std::int64_t m : class_orders()) CHECK(vi_dim_check(cls(m)) == 24);
  }
}
