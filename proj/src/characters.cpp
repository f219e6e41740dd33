#include "m23bkm/characters.hpp"

#include <sstream>

namespace m23bkm {

CharacterContext::CharacterContext(const ClassData& c) : data_(&c) {
  disc_ = discriminant_form(c.coinvariant.lattice);
  std::size_t rank_fixed = c.fixed.lattice.rank();
  for (auto d : divisors(c.m)) {
    CycleShape s = frame_shape(c.nu_coinvariant, d);
    // cross-check against the permutation: cycle type of nu^d minus the fixed part
    CycleShape p = cycle_type(permutation_power(c.element.perm, d));
    p.exponents[1] -= static_cast<std::int64_t>(rank_fixed);
    if (p.exponents[1] == 0) p.exponents.erase(1);
    if (s.exponents != p.exponents) {
      throw ConstructionInvariantViolated("restricted frame shape disagrees with the permutation");
    }
    shapes_[d] = s;
    fixed_[d] = std::make_unique<FixedCosetTheta>(c.coinvariant.lattice, c.nu_coinvariant, d);
  }
}

std::int64_t CharacterContext::divisor_of(std::int64_t j) const {
  std::int64_t m = data_->m;
  return gcd64(mod_floor(j, m), m);
}

const CycleShape& CharacterContext::restricted_shape(std::int64_t j) const {
  return shapes_.at(divisor_of(j));
}

FracPowerSeries CharacterContext::twisted_trace(const RatVector& rep, std::int64_t j,
                                                const Rational& valid_below) const {
  std::int64_t d = divisor_of(j);
  std::int64_t c = static_cast<std::int64_t>(data_->coinvariant.lattice.rank());
  Rational shift = make_rational(Integer(static_cast<long>(c)), Integer(24));
  if (c == 0) {
    // rank-0 lattice: the trace is the constant 1
    return FracPowerSeries::one(1, to_int64(ceil_rational(valid_below)) + 1).truncated(valid_below);
  }
  // theta needs to be valid below valid_below + c/24
  Rational need = valid_below + shift;
  auto cls = dual_class(data_->coinvariant.lattice, rep);
  if (!cls) throw std::invalid_argument("representative is not in the dual lattice");
  Rational bound = *cls + Rational(ceil_rational(need - 1 - *cls));
  if (bound < 0) bound = *cls;
  ThetaSeries th = fixed_.at(d)->theta(rep, bound);
  FracPowerSeries inv_eta = eta_quotient(shapes_.at(d), -1, valid_below + 1);
  FracPowerSeries t = series_mul(th.series, inv_eta);
  if (t.trunc_exponent() < valid_below) throw std::logic_error("twisted trace lost precision");
  return t.truncated(valid_below);
}

std::vector<FracPowerSeries> dft_characters(const std::vector<FracPowerSeries>& traces) {
  auto m = static_cast<std::int64_t>(traces.size());
  if (m == 0) throw std::invalid_argument("no traces");
  // common denominator and truncation
  std::int64_t den = 1;
  Rational lim = traces[0].trunc_exponent();
  for (const auto& t : traces) {
    den = lcm64(den, t.denom());
    if (t.trunc_exponent() < lim) lim = t.trunc_exponent();
  }
  std::vector<FracPowerSeries> al;
  std::int64_t lo = 0;
  bool first = true;
  for (const auto& t : traces) {
    FracPowerSeries a = t.rescaled(den / t.denom()).truncated(lim);
    if (!a.is_zero() && (first || a.lead() < lo)) {
      lo = a.lead();
      first = false;
    }
    al.push_back(a);
  }
  std::int64_t hi = al[0].trunc();
  if (first) lo = hi;
  std::vector<std::vector<Rational>> out(static_cast<std::size_t>(m),
                                         std::vector<Rational>(static_cast<std::size_t>(hi - lo)));
  Integer mm(static_cast<long>(m));
  for (std::int64_t e = lo; e < hi; ++e) {
    std::vector<Integer> tk(static_cast<std::size_t>(m));
    bool any = false;
    for (std::int64_t k = 0; k < m; ++k) {
      Rational v = al[static_cast<std::size_t>(k)].coeff_at_num(e);
      if (v.get_den() != 1) throw InvalidCharacter("twisted trace has a non-integral coefficient");
      tk[static_cast<std::size_t>(k)] = v.get_num();
      if (v != 0) any = true;
    }
    if (!any) continue;
    for (std::int64_t j = 0; j < m; ++j) {
      CyclotomicInt z(m);
      for (std::int64_t k = 0; k < m; ++k) z.add_term(tk[static_cast<std::size_t>(k)], -j * k);
      auto val = z.rational_value();
      if (!val) {
        std::ostringstream msg;
        msg << "DFT of twisted traces is not rational at exponent " << e << "/" << den << ", j=" << j;
        throw NonRationalCharacter(msg.str());
      }
      if (*val % mm != 0 || *val < 0) {
        std::ostringstream msg;
        msg << "character coefficient " << Rational(*val, mm) << " at exponent " << e << "/" << den
            << " is not a non-negative integer";
        throw InvalidCharacter(msg.str());
      }
      out[static_cast<std::size_t>(j)][static_cast<std::size_t>(e - lo)] = Rational(*val / mm);
    }
  }
  std::vector<FracPowerSeries> res;
  for (auto& v : out) res.push_back(FracPowerSeries::from_coeffs(den, lo, std::move(v), hi).reduced());
  return res;
}

std::vector<FracPowerSeries> CharacterContext::characters(const RatVector& rep, const Rational& valid_below) const {
  std::int64_t m = data_->m;
  std::map<std::int64_t, FracPowerSeries> by_divisor;
  std::vector<FracPowerSeries> traces;
  for (std::int64_t k = 0; k < m; ++k) {
    std::int64_t d = divisor_of(k);
    auto it = by_divisor.find(d);
    if (it == by_divisor.end()) it = by_divisor.emplace(d, twisted_trace(rep, k, valid_below)).first;
    traces.push_back(it->second);
  }
  return dft_characters(traces);
}

FracPowerSeries twisted_trace(const CharacterContext& ctx, const RatVector& rep, std::int64_t j,
                              const Rational& valid_below) {
  return ctx.twisted_trace(rep, j, valid_below);
}

FracPowerSeries character_untwisted(const CharacterContext& ctx, const RatVector& rep, std::int64_t j_out,
                                    const Rational& valid_below) {
  auto all = ctx.characters(rep, valid_below);
  return all.at(static_cast<std::size_t>(mod_floor(j_out, ctx.data().m)));
}

}  // namespace m23bkm
