#include "m23bkm/qseries.hpp"

#include <algorithm>
#include <sstream>

namespace m23bkm {

namespace {

Rational exponent_of(std::int64_t num, std::int64_t denom) {
  return make_rational(Integer(static_cast<long>(num)), Integer(static_cast<long>(denom)));
}

std::int64_t ceil_times(const Rational& e, std::int64_t n) {
  return to_int64(ceil_rational(e * Rational(static_cast<long>(n))));
}

bool all_integral(const std::vector<Rational>& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x.get_den() == 1; });
}

}  // namespace

FracPowerSeries::FracPowerSeries() = default;

FracPowerSeries FracPowerSeries::zero(std::int64_t denom, std::int64_t trunc) {
  if (denom <= 0) throw std::invalid_argument("series denominator must be positive");
  FracPowerSeries s;
  s.denom_ = denom;
  s.lead_ = trunc;
  s.trunc_ = trunc;
  return s;
}

FracPowerSeries FracPowerSeries::monomial(const Rational& c, std::int64_t num, std::int64_t denom,
                                          std::int64_t trunc) {
  if (num >= trunc) return zero(denom, trunc);
  std::vector<Rational> coeffs(static_cast<std::size_t>(trunc - num));
  coeffs[0] = c;
  return from_coeffs(denom, num, std::move(coeffs), trunc);
}

FracPowerSeries FracPowerSeries::one(std::int64_t denom, std::int64_t trunc) {
  return monomial(Rational(1), 0, denom, trunc);
}

FracPowerSeries FracPowerSeries::from_coeffs(std::int64_t denom, std::int64_t lead,
                                             std::vector<Rational> coeffs, std::int64_t trunc) {
  if (denom <= 0) throw std::invalid_argument("series denominator must be positive");
  if (lead > trunc) throw std::invalid_argument("series lead beyond truncation");
  FracPowerSeries s;
  s.denom_ = denom;
  s.lead_ = lead;
  s.trunc_ = trunc;
  coeffs.resize(static_cast<std::size_t>(trunc - lead));
  s.coeffs_ = std::move(coeffs);
  s.normalize();
  return s;
}

void FracPowerSeries::normalize() {
  std::size_t first = 0;
  while (first < coeffs_.size() && coeffs_[first] == 0) ++first;
  if (first == coeffs_.size()) {
    coeffs_.clear();
    lead_ = trunc_;
    return;
  }
  if (first > 0) {
    coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(first));
    lead_ += static_cast<std::int64_t>(first);
  }
}

Rational FracPowerSeries::lead_exponent() const { return exponent_of(lead_, denom_); }
Rational FracPowerSeries::trunc_exponent() const { return exponent_of(trunc_, denom_); }

Rational FracPowerSeries::coeff_at(const Rational& e) const {
  if (e >= trunc_exponent()) {
    std::ostringstream msg;
    msg << "coefficient at exponent " << e << " requested, series valid below " << trunc_exponent();
    throw InsufficientTruncation(msg.str());
  }
  Rational scaled = e * Rational(static_cast<long>(denom_));
  if (scaled.get_den() != 1) return 0;
  return coeff_at_num(to_int64(scaled.get_num()));
}

Rational FracPowerSeries::coeff_at_num(std::int64_t num) const {
  if (num >= trunc_) {
    throw InsufficientTruncation("coefficient requested beyond truncation");
  }
  if (num < lead_) return 0;
  return coeffs_[static_cast<std::size_t>(num - lead_)];
}

FracPowerSeries FracPowerSeries::rescaled(std::int64_t k) const {
  if (k <= 0) throw std::invalid_argument("rescale factor must be positive");
  if (k == 1) return *this;
  FracPowerSeries s;
  s.denom_ = denom_ * k;
  s.lead_ = lead_ * k;
  s.trunc_ = trunc_ * k;
  s.coeffs_.assign(static_cast<std::size_t>(s.trunc_ - s.lead_), Rational(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) s.coeffs_[i * static_cast<std::size_t>(k)] = coeffs_[i];
  s.normalize();
  return s;
}

FracPowerSeries FracPowerSeries::reduced() const {
  std::int64_t g = gcd64(denom_, trunc_);
  for (std::size_t i = 0; i < coeffs_.size() && g > 1; ++i) {
    if (coeffs_[i] != 0) g = gcd64(g, lead_ + static_cast<std::int64_t>(i));
  }
  if (g <= 1) return *this;
  if (is_zero()) return zero(denom_ / g, trunc_ / g);
  std::vector<Rational> c;
  for (std::size_t i = 0; i < coeffs_.size(); i += static_cast<std::size_t>(g)) c.push_back(coeffs_[i]);
  return from_coeffs(denom_ / g, lead_ / g, std::move(c), trunc_ / g);
}

FracPowerSeries FracPowerSeries::truncated(const Rational& e) const {
  std::int64_t t = std::min(trunc_, ceil_times(e, denom_));
  if (t <= lead_) return zero(denom_, t);
  std::vector<Rational> c(coeffs_.begin(), coeffs_.begin() + (t - lead_));
  return from_coeffs(denom_, lead_, std::move(c), t);
}

FracPowerSeries FracPowerSeries::shifted(const Rational& e) const {
  std::int64_t eden = to_int64(e.get_den());
  std::int64_t n = lcm64(denom_, eden);
  FracPowerSeries s = rescaled(n / denom_);
  std::int64_t delta = to_int64(e.get_num()) * (n / eden);
  s.lead_ += delta;
  s.trunc_ += delta;
  return s;
}

FracPowerSeries FracPowerSeries::substitute_power(std::int64_t k) const {
  FracPowerSeries s = rescaled(k);
  s.denom_ = denom_;
  return s;
}

FracPowerSeries FracPowerSeries::substitute_root(std::int64_t d) const {
  if (d <= 0) throw std::invalid_argument("substitution root must be positive");
  FracPowerSeries s = *this;
  s.denom_ *= d;
  return s;
}

FracPowerSeries FracPowerSeries::operator-() const {
  FracPowerSeries s = *this;
  for (auto& c : s.coeffs_) c = -c;
  return s;
}

FracPowerSeries& FracPowerSeries::operator*=(const Rational& c) {
  for (auto& x : coeffs_) x *= c;
  normalize();
  return *this;
}

std::pair<FracPowerSeries, FracPowerSeries> align(const FracPowerSeries& a,
                                                  const FracPowerSeries& b) {
  std::int64_t n = lcm64(a.denom(), b.denom());
  FracPowerSeries x = a.rescaled(n / a.denom());
  FracPowerSeries y = b.rescaled(n / b.denom());
  std::int64_t t = std::min(x.trunc(), y.trunc());
  Rational te = make_rational(Integer(static_cast<long>(t)), Integer(static_cast<long>(n)));
  return {x.truncated(te), y.truncated(te)};
}

bool operator==(const FracPowerSeries& a, const FracPowerSeries& b) {
  if (a.trunc_exponent() != b.trunc_exponent()) return false;
  auto [x, y] = align(a, b);
  return x.lead() == y.lead() && x.coeffs() == y.coeffs();
}

std::optional<Rational> first_difference(const FracPowerSeries& a, const FracPowerSeries& b,
                                         const Rational& limit) {
  auto [x, y] = align(a, b);
  std::int64_t n = x.denom();
  std::int64_t stop = ceil_times(limit, n);
  if (stop > x.trunc()) {
    throw InsufficientTruncation("comparison window exceeds series truncation");
  }
  std::int64_t start = std::min(x.lead(), y.lead());
  for (std::int64_t e = start; e < stop; ++e) {
    if (x.coeff_at_num(e) != y.coeff_at_num(e)) return exponent_of(e, n);
  }
  return std::nullopt;
}

static FracPowerSeries add_impl(const FracPowerSeries& a, const FracPowerSeries& b, int sign) {
  auto [x, y] = align(a, b);
  std::int64_t lead = std::min(x.lead(), y.lead());
  std::int64_t trunc = x.trunc();
  std::vector<Rational> c(static_cast<std::size_t>(trunc - lead));
  for (std::int64_t e = lead; e < trunc; ++e) {
    Rational v = x.coeff_at_num(e);
    if (sign > 0) v += y.coeff_at_num(e);
    else v -= y.coeff_at_num(e);
    c[static_cast<std::size_t>(e - lead)] = v;
  }
  return FracPowerSeries::from_coeffs(x.denom(), lead, std::move(c), trunc);
}

FracPowerSeries series_add(const FracPowerSeries& a, const FracPowerSeries& b) {
  return add_impl(a, b, 1);
}

FracPowerSeries series_sub(const FracPowerSeries& a, const FracPowerSeries& b) {
  return add_impl(a, b, -1);
}

FracPowerSeries series_mul(const FracPowerSeries& a, const FracPowerSeries& b) {
  std::int64_t n = lcm64(a.denom(), b.denom());
  FracPowerSeries x = a.rescaled(n / a.denom());
  FracPowerSeries y = b.rescaled(n / b.denom());
  std::int64_t lead = x.lead() + y.lead();
  std::int64_t trunc = std::min(x.trunc() + y.lead(), y.trunc() + x.lead());
  if (x.is_zero() || y.is_zero() || trunc <= lead) return FracPowerSeries::zero(n, trunc);
  auto len = static_cast<std::size_t>(trunc - lead);
  const auto& xc = x.coeffs();
  const auto& yc = y.coeffs();
  std::vector<Rational> out(len);
  if (all_integral(xc) && all_integral(yc)) {
    std::vector<Integer> acc(len);
    for (std::size_t i = 0; i < xc.size() && i < len; ++i) {
      if (xc[i] == 0) continue;
      const Integer& xi = xc[i].get_num();
      std::size_t jmax = std::min(yc.size(), len - i);
      for (std::size_t j = 0; j < jmax; ++j) {
        if (yc[j] != 0) acc[i + j] += xi * yc[j].get_num();
      }
    }
    for (std::size_t k = 0; k < len; ++k) out[k] = Rational(acc[k]);
  } else {
    for (std::size_t i = 0; i < xc.size() && i < len; ++i) {
      if (xc[i] == 0) continue;
      std::size_t jmax = std::min(yc.size(), len - i);
      for (std::size_t j = 0; j < jmax; ++j) {
        if (yc[j] != 0) out[i + j] += xc[i] * yc[j];
      }
    }
  }
  return FracPowerSeries::from_coeffs(n, lead, std::move(out), trunc);
}

FracPowerSeries series_inv(const FracPowerSeries& a) {
  if (a.is_zero()) {
    throw ZeroLeadingCoefficient("series has no nonzero coefficient within its truncation window");
  }
  const auto& c = a.coeffs();
  std::size_t p = c.size();
  std::vector<Rational> b(p);
  Rational inv0 = 1 / c[0];
  b[0] = inv0;
  for (std::size_t k = 1; k < p; ++k) {
    Rational s = 0;
    for (std::size_t i = 1; i <= k; ++i) {
      if (c[i] != 0) s += c[i] * b[k - i];
    }
    b[k] = -s * inv0;
  }
  return FracPowerSeries::from_coeffs(a.denom(), -a.lead(), std::move(b),
                                      -a.lead() + static_cast<std::int64_t>(p));
}

FracPowerSeries series_pow(const FracPowerSeries& a, std::int64_t n) {
  if (n < 0) return series_pow(series_inv(a), -n);
  FracPowerSeries result =
      FracPowerSeries::one(a.denom(), a.is_zero() ? a.trunc() : a.trunc() - a.lead());
  FracPowerSeries base = a;
  bool first = true;
  while (n > 0) {
    if (n & 1) {
      result = first ? base : series_mul(result, base);
      first = false;
    }
    n >>= 1;
    if (n > 0) base = series_mul(base, base);
  }
  return result;
}

std::string FracPowerSeries::to_string(std::size_t max_terms) const {
  std::ostringstream os;
  std::size_t shown = 0;
  for (std::size_t i = 0; i < coeffs_.size() && shown < max_terms; ++i) {
    if (coeffs_[i] == 0) continue;
    if (shown > 0) os << " + ";
    Rational e = exponent_of(lead_ + static_cast<std::int64_t>(i), denom_);
    if (e == 0) {
      os << coeffs_[i];
    } else {
      if (coeffs_[i] != 1) os << coeffs_[i] << "*";
      os << "q^(" << e << ")";
    }
    ++shown;
  }
  if (shown > 0) os << " + ";
  os << "O(q^(" << trunc_exponent() << "))";
  return os.str();
}

std::int64_t CycleShape::degree() const {
  std::int64_t d = 0;
  for (auto [t, b] : exponents) d += t * b;
  return d;
}

CycleShape CycleShape::power(std::int64_t k) const {
  CycleShape out;
  out.order = order / gcd64(order, k == 0 ? order : k);
  for (auto [t, b] : exponents) {
    std::int64_t g = gcd64(t, k);
    out.exponents[t / g] += g * b;
  }
  for (auto it = out.exponents.begin(); it != out.exponents.end();) {
    if (it->second == 0) it = out.exponents.erase(it);
    else ++it;
  }
  return out;
}

std::string CycleShape::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (auto [t, b] : exponents) {
    if (!first) os << ".";
    first = false;
    os << t;
    if (b != 1) os << "^" << b;
  }
  return os.str();
}

const std::vector<std::int64_t>& class_orders() {
  static const std::vector<std::int64_t> orders{1, 2, 3, 5, 6, 7, 11, 14, 15, 23};
  return orders;
}

CycleShape class_shape(std::int64_t m) {
  if (std::find(class_orders().begin(), class_orders().end(), m) == class_orders().end()) {
    throw std::invalid_argument("order " + std::to_string(m) + " is not one of the ten classes");
  }
  CycleShape s;
  s.order = m;
  for (auto t : divisors(m)) s.exponents[t] = 24 / sigma1(m);
  return s;
}

namespace {

// prod_{n>=1} (1 - q^{tn}) with integer exponents, exact below `terms`.
FracPowerSeries euler_product(std::int64_t t, std::int64_t terms) {
  terms = std::max<std::int64_t>(terms, 0);
  std::vector<Rational> c(static_cast<std::size_t>(terms));
  if (terms > 0) c[0] = 1;
  // Pentagonal numbers k(3k-1)/2 and k(3k+1)/2 carry sign (-1)^k.
  for (std::int64_t k = 1; t * (k * (3 * k - 1) / 2) < terms; ++k) {
    int sign = (k % 2 == 0) ? 1 : -1;
    c[static_cast<std::size_t>(t * (k * (3 * k - 1) / 2))] = sign;
    std::int64_t p2 = t * (k * (3 * k + 1) / 2);
    if (p2 < terms) c[static_cast<std::size_t>(p2)] = sign;
  }
  return FracPowerSeries::from_coeffs(1, 0, std::move(c), terms);
}

}  // namespace

FracPowerSeries eta(std::int64_t t, const Rational& trunc_bound) {
  if (t <= 0) throw std::invalid_argument("eta scale must be positive");
  Rational lead = exponent_of(t, 24);
  if (trunc_bound <= lead) throw std::invalid_argument("eta truncation bound must exceed t/24");
  std::int64_t terms = to_int64(ceil_rational(trunc_bound - lead));
  FracPowerSeries e = euler_product(t, terms).shifted(lead);
  return e.truncated(trunc_bound);
}

FracPowerSeries eta_quotient(const CycleShape& shape, int sign, const Rational& trunc_bound) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("eta quotient sign must be +1 or -1");
  Rational lead = exponent_of(sign * shape.degree(), 24);
  Rational window = trunc_bound - lead;
  std::int64_t terms = std::max<std::int64_t>(1, to_int64(ceil_rational(window)));
  FracPowerSeries p = FracPowerSeries::one(1, terms);
  for (auto [t, b] : shape.exponents) {
    if (b == 0) continue;
    p = series_mul(p, series_pow(euler_product(t, terms), sign * b));
  }
  return p.shifted(lead).reduced();
}

std::vector<FracPowerSeries> t_eigencomponents(const FracPowerSeries& f, std::int64_t d) {
  if (d <= 0) throw std::invalid_argument("component count must be positive");
  std::int64_t n = f.denom();
  std::vector<std::vector<Rational>> parts(static_cast<std::size_t>(d));
  for (auto& p : parts) p.assign(f.coeffs().size(), Rational(0));
  for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
    if (f.coeffs()[i] == 0) continue;
    std::int64_t num = f.lead() + static_cast<std::int64_t>(i);
    // frac(num/n) * d must be an integer j
    std::int64_t r = mod_floor(num, n) * d;
    if (r % n != 0) {
      throw std::invalid_argument("series exponents are not in (1/d)Z");
    }
    parts[static_cast<std::size_t>(r / n)][i] = f.coeffs()[i];
  }
  std::vector<FracPowerSeries> out;
  out.reserve(parts.size());
  for (auto& p : parts) {
    out.push_back(FracPowerSeries::from_coeffs(n, f.lead(), std::move(p), f.trunc()).reduced());
  }
  return out;
}

}  // namespace m23bkm
