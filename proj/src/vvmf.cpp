#include "m23bkm/vvmf.hpp"

#include <sstream>

namespace m23bkm {

namespace {

Rational exponent(std::int64_t num, std::int64_t den) {
  return make_rational(Integer(static_cast<long>(num)), Integer(static_cast<long>(den)));
}

}  // namespace

VvmfTable lift_F(std::int64_t m, const std::map<ClassKey, std::int64_t>& counts, std::int64_t weight,
                 std::int64_t bound) {
  if (bound < 0) throw std::invalid_argument("truncation bound must be non-negative");
  VvmfTable t;
  t.m = m;
  t.weight = weight;
  t.bound = bound;
  t.counts = counts;
  // f(tau/d) must be valid through exponent bound + 1 for every d | m
  FracPowerSeries f = eta_quotient(class_shape(m), -1, Rational(static_cast<long>(m * (bound + 2))));
  std::map<std::int64_t, std::vector<FracPowerSeries>> comps;
  for (auto d : divisors(m)) comps[d] = t_eigencomponents(f.substitute_root(d), d);
  for (const auto& [key, count] : counts) {
    std::optional<FracPowerSeries> sum;
    for (auto d : divisors(m)) {
      if (d % key.order != 0) continue;
      Rational jd = -key.q * Rational(static_cast<long>(d));
      if (jd.get_den() != 1) throw std::logic_error("Q value is not in (1/d)Z for an element of order dividing d");
      std::int64_t j = mod_floor(to_int64(jd.get_num()), d);
      const FracPowerSeries& g = comps[d][static_cast<std::size_t>(j)];
      sum = sum ? series_add(*sum, g) : g;
    }
    if (!sum || sum->is_zero()) throw std::logic_error("empty F component for " + key.to_string());
    Rational lead = sum->lead_exponent();
    t.entries[key] = sum->truncated(lead + Rational(static_cast<long>(bound + 1))).reduced();
  }
  return t;
}

VvmfTable lift_F(const ClassData& c, std::int64_t bound) {
  auto counts = classify_elements(discriminant_form(c.L));
  return lift_F(c.m, counts, c.weight(), bound);
}

std::optional<std::int64_t> predicted_singular_d(std::int64_t m, const ClassKey& key) {
  for (auto d : divisors(m)) {
    if (d % key.order != 0) continue;
    if (frac(Rational(1, static_cast<unsigned long>(d))) == key.q) return d;
  }
  return std::nullopt;
}

ReflectivityReport check_reflectivity(const VvmfTable& f) {
  ReflectivityReport r;
  for (const auto& [key, s] : f.entries) {
    ++r.components;
    std::vector<std::pair<Rational, Rational>> singular;
    for (std::size_t i = 0; i < s.coeffs().size(); ++i) {
      if (s.coeffs()[i] == 0) continue;
      Rational e = exponent(s.lead() + static_cast<std::int64_t>(i), s.denom());
      if (e < 0) singular.emplace_back(e, s.coeffs()[i]);
    }
    auto d = predicted_singular_d(f.m, key);
    std::ostringstream why;
    if (d) {
      Rational expect = -Rational(1, static_cast<unsigned long>(*d));
      if (singular.size() != 1 || singular[0].first != expect || singular[0].second != 1) {
        why << "component " << key.to_string() << " should have exactly 1*q^(" << expect << ") as singular part";
      } else {
        ++r.singular_components;
        auto it = f.counts.find(key);
        if (it != f.counts.end()) r.singular_elements += it->second;
      }
    } else if (!singular.empty()) {
      why << "component " << key.to_string() << " has unexpected singular term " << singular[0].second << "*q^("
          << singular[0].first << ")";
    }
    if (!why.str().empty()) {
      r.ok = false;
      r.violations.push_back(why.str());
    }
  }
  return r;
}

void require_reflective(const VvmfTable& f) {
  auto r = check_reflectivity(f);
  if (!r.ok) throw ReflectivityViolated(r.violations.front());
}

CongruenceReport check_t_congruence(const VvmfTable& f) {
  CongruenceReport r;
  for (const auto& [key, s] : f.entries) {
    for (std::size_t i = 0; i < s.coeffs().size(); ++i) {
      if (s.coeffs()[i] == 0) continue;
      Rational e = exponent(s.lead() + static_cast<std::int64_t>(i), s.denom());
      ++r.exponents_checked;
      if (frac(e + key.q) != 0) {
        r.ok = false;
        std::ostringstream os;
        os << "component " << key.to_string() << " has exponent " << e;
        r.violations.push_back(os.str());
      }
    }
  }
  return r;
}

}  // namespace m23bkm
