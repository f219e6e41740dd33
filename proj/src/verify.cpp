#include "m23bkm/verify.hpp"

#include <algorithm>
#include <chrono>
#include <set>
#include <sstream>

namespace m23bkm {

MismatchAt::MismatchAt(const ClassKey& k, const Rational& e)
    : std::runtime_error("F and characters differ in component " + k.to_string() + " at exponent " + e.get_str()),
      key(k),
      exponent(e) {}

std::int64_t CharacterReport::count(const std::string& s) const {
  std::int64_t n = 0;
  for (const auto& k : keys)
    if (k.status == s) ++n;
  return n;
}

bool fusion_counts_match(const ClassData& c) {
  auto lhs = classify_elements(discriminant_form(c.L));
  FiniteQuadraticSpace rhs =
      direct_product(negated(discriminant_form(c.coinvariant.lattice)), discriminant_form(c.K));
  return lhs == classify_elements(rhs);
}

void for_each_untwisted_character(const ClassData& c, const VvmfTable& f, const CharacterVisitor& visit) {
  CharacterContext ctx(c);
  const FiniteQuadraticSpace& disc = ctx.coinvariant_disc();
  const std::int64_t m = c.m;
  const std::int64_t bound = f.bound;
  const auto rk_fixed = static_cast<std::int64_t>(c.fixed.lattice.rank());

  auto key_of = [&](const GroupElement& a, std::int64_t j) {
    ClassKey k;
    k.order = lcm64(disc.order_of(a), m / gcd64(j, m));
    k.q = frac(-disc.Q(a));
    return k;
  };

  std::set<GroupElement> done;
  for (const GroupElement& a : disc.elements()) {
    if (done.count(a)) continue;
    GroupElement neg = disc.negate(a);
    done.insert(a);
    done.insert(neg);
    std::int64_t mult = (neg == a) ? 1 : 2;

    // highest exponent needed over all j
    Rational need = 0;
    bool first = true;
    for (std::int64_t j = 0; j < m; ++j) {
      ClassKey k = key_of(a, j);
      auto it = f.entries.find(k);
      if (it == f.entries.end()) throw std::logic_error("untwisted element has no F component: " + k.to_string());
      Rational top = it->second.lead_exponent() + Rational(static_cast<long>(bound));
      if (first || top > need) need = top;
      first = false;
    }
    RatVector r = disc.ngens() ? disc.representative(a) : RatVector{};
    Rational valid_g = need + 1;
    Rational valid_ch = valid_g + Rational(static_cast<long>(rk_fixed), 24);
    auto chars = ctx.characters(r, valid_ch);
    FracPowerSeries inv_eta = series_pow(eta(1, valid_g + 2), -rk_fixed);
    for (std::int64_t j = 0; j < m; ++j) {
      FracPowerSeries g = series_mul(chars[static_cast<std::size_t>(j)], inv_eta);
      visit(a, mult, j, key_of(a, j), g);
    }
  }
}

CharacterReport verify_F_equals_characters(const ClassData& c, std::int64_t bound, const ProgressFn& progress) {
  auto start = std::chrono::steady_clock::now();
  CharacterReport rep;
  rep.m = c.m;
  rep.bound = bound;
  rep.counts_match = fusion_counts_match(c);
  VvmfTable f = lift_F(c, bound);

  std::map<ClassKey, KeyResult> results;
  for (const auto& [key, s] : f.entries) results[key] = KeyResult{key, "UNCHECKED-EXACT", 0, std::nullopt};

  bool failed = false;
  for_each_untwisted_character(c, f, [&](const GroupElement& a, std::int64_t mult, std::int64_t j, const ClassKey& k,
                                          const FracPowerSeries& g) {
    if (j == 0) ++rep.cosets_enumerated;
    bool trivial = std::all_of(a.begin(), a.end(), [](std::int64_t x) { return x == 0; });
    KeyResult& kr = results[k];
    const FracPowerSeries& fk = f.entries.at(k);
    Rational limit = fk.lead_exponent() + Rational(static_cast<long>(bound)) + Rational(1, 2);
    auto diff = first_difference(g, fk, limit);
    kr.witnesses += mult;
    ++rep.comparisons;
    if (diff) {
      if (kr.status != "FAIL" && kr.status != "SIGN-AMBIGUITY") {
        kr.status = trivial ? "FAIL" : "SIGN-AMBIGUITY";
        kr.first_mismatch = *diff;
      }
      if (!failed) {
        std::ostringstream os;
        os << "component " << k.to_string() << " at exponent " << *diff << " (coset " << a.size() << "-tuple";
        for (auto x : a) os << " " << x;
        os << ", j=" << j << ")";
        rep.first_mismatch = os.str();
        failed = true;
      }
    } else if (kr.status == "UNCHECKED-EXACT") {
      kr.status = "PASS";
    }
    if (progress && j == c.m - 1 && rep.cosets_enumerated % 50 == 0) {
      progress("m=" + std::to_string(c.m) + ": " + std::to_string(rep.cosets_enumerated) + " cosets done");
    }
  });
  for (auto& [k, v] : results) rep.keys.push_back(v);
  rep.status = (!failed && rep.counts_match) ? "PASS" : "FAIL";
  if (!rep.counts_match && rep.first_mismatch.empty()) rep.first_mismatch = "class counts of L'/L and fusion group differ";
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

Integer vi_dim_check(const ClassData& c) {
  const Lattice& l = c.m == 1 ? c.leech : c.coinvariant.lattice;
  ThetaSeries th = theta_coset(l, RatVector(l.rank(), Rational(0)), Rational(1));
  FracPowerSeries inv = series_pow(eta(1, Rational(2)), -24);
  FracPowerSeries q = series_mul(th.series, inv);
  Rational v = q.coeff_at(Rational(0));
  if (v.get_den() != 1) throw std::logic_error("constant term is not integral");
  return v.get_num();
}

}  // namespace m23bkm
