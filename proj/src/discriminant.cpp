#include "m23bkm/discriminant.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "m23bkm/normal_form.hpp"
#include "m23bkm/qseries.hpp"

namespace m23bkm {

std::string ClassKey::to_string() const {
  std::ostringstream os;
  os << order << "/" << q.get_num() << "/" << q.get_den();
  return os.str();
}

ClassKey ClassKey::parse(const std::string& s) {
  auto p1 = s.find('/');
  auto p2 = s.find('/', p1 == std::string::npos ? p1 : p1 + 1);
  if (p1 == std::string::npos || p2 == std::string::npos) {
    throw std::invalid_argument("class key must look like o/num/den: " + s);
  }
  ClassKey k;
  k.order = std::stoll(s.substr(0, p1));
  k.q = make_rational(Integer(s.substr(p1 + 1, p2 - p1 - 1)), Integer(s.substr(p2 + 1)));
  if (k.order <= 0 || k.q < 0 || k.q >= 1) throw std::invalid_argument("class key out of range: " + s);
  return k;
}

bool operator<(const ClassKey& a, const ClassKey& b) {
  if (a.order != b.order) return a.order < b.order;
  return a.q < b.q;
}

bool operator==(const ClassKey& a, const ClassKey& b) { return a.order == b.order && a.q == b.q; }

namespace {

Rational mod_rational(const Rational& x, std::int64_t m) {
  Rational mr(static_cast<long>(m));
  return x - mr * Rational(floor_rational(x / mr));
}

}  // namespace

FiniteQuadraticSpace::FiniteQuadraticSpace(std::vector<std::int64_t> orders, RatMatrix q_gram)
    : orders_(std::move(orders)), q_gram_(std::move(q_gram)) {
  std::size_t n = orders_.size();
  if (q_gram_.rows() != n || q_gram_.cols() != n || !q_gram_.is_symmetric()) {
    throw std::invalid_argument("q_gram must be a symmetric matrix matching the orders");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (orders_[i] <= 1) throw std::invalid_argument("trivial or invalid generator order");
    for (std::size_t j = 0; j < n; ++j) q_gram_(i, j) = mod_rational(q_gram_(i, j), i == j ? 2 : 1);
  }
  level_ = 1;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      Rational v = (i == j) ? q_gram_(i, i) / 2 : q_gram_(i, j);
      level_ = lcm64(level_, to_int64(v.get_den()));
    }
  qn_.assign(n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Rational v = (i == j ? q_gram_(i, i) / 2 : q_gram_(i, j)) * Rational(static_cast<long>(level_));
      if (v.get_den() != 1) throw std::logic_error("level computation failed");
      qn_[i * n + j] = mod_floor(to_int64(v.get_num()), level_);
    }
  // consistency: order_i * B(e_i, .) and order_i * Q(e_i) vanish
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && (orders_[i] * qn_[i * n + j]) % level_ != 0)
        throw std::invalid_argument("bilinear form not well defined on the group");
    }
    Rational di(static_cast<long>(orders_[i]));
    Rational t1 = di * q_gram_(i, i), t2 = di * di * q_gram_(i, i) / 2;
    if (t1.get_den() != 1 || t2.get_den() != 1)
      throw std::invalid_argument("quadratic form not well defined on the group");
  }
}

std::uint64_t FiniteQuadraticSpace::size() const {
  std::uint64_t s = 1;
  for (auto d : orders_) s *= static_cast<std::uint64_t>(d);
  return s;
}

std::int64_t FiniteQuadraticSpace::Q_num(const GroupElement& x) const {
  std::size_t n = orders_.size();
  std::int64_t s = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] == 0) continue;
    s = (s + qn_[i * n + i] * ((x[i] * x[i]) % level_)) % level_;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (x[j] == 0) continue;
      s = (s + qn_[i * n + j] * ((x[i] * x[j]) % level_)) % level_;
    }
  }
  return mod_floor(s, level_);
}

Rational FiniteQuadraticSpace::Q(const GroupElement& x) const {
  return make_rational(Integer(static_cast<long>(Q_num(x))), Integer(static_cast<long>(level_)));
}

Rational FiniteQuadraticSpace::B(const GroupElement& x, const GroupElement& y) const {
  return frac(Q(add(x, y)) - Q(x) - Q(y));
}

std::int64_t FiniteQuadraticSpace::order_of(const GroupElement& x) const {
  std::int64_t o = 1;
  for (std::size_t i = 0; i < orders_.size(); ++i) o = lcm64(o, orders_[i] / gcd64(orders_[i], x[i]));
  return o;
}

GroupElement FiniteQuadraticSpace::add(const GroupElement& x, const GroupElement& y) const {
  GroupElement z(orders_.size());
  for (std::size_t i = 0; i < z.size(); ++i) z[i] = mod_floor(x[i] + y[i], orders_[i]);
  return z;
}

GroupElement FiniteQuadraticSpace::negate(const GroupElement& x) const {
  GroupElement z(orders_.size());
  for (std::size_t i = 0; i < z.size(); ++i) z[i] = mod_floor(-x[i], orders_[i]);
  return z;
}

GroupElement FiniteQuadraticSpace::scale(const GroupElement& x, std::int64_t k) const {
  GroupElement z(orders_.size());
  for (std::size_t i = 0; i < z.size(); ++i) z[i] = mod_floor((x[i] % orders_[i]) * (k % orders_[i]), orders_[i]);
  return z;
}

RatVector FiniteQuadraticSpace::representative(const GroupElement& x) const {
  if (!generators_) throw std::logic_error("finite quadratic space has no lattice generators");
  RatVector v(generators_->cols(), Rational(0));
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < v.size(); ++j) v[j] += Rational(static_cast<long>(x[i])) * (*generators_)(i, j);
  }
  return v;
}

void FiniteQuadraticSpace::for_each(const std::function<void(const GroupElement&)>& fn) const {
  GroupElement x(orders_.size(), 0);
  while (true) {
    fn(x);
    std::size_t i = 0;
    while (i < x.size()) {
      if (++x[i] < orders_[i]) break;
      x[i] = 0;
      ++i;
    }
    if (i == x.size()) return;
  }
}

std::vector<GroupElement> FiniteQuadraticSpace::elements() const {
  std::vector<GroupElement> out;
  out.reserve(size());
  for_each([&](const GroupElement& x) { out.push_back(x); });
  return out;
}

FiniteQuadraticSpace discriminant_form(const Lattice& l) {
  if (!l.is_even()) throw std::invalid_argument("discriminant form needs an even lattice");
  SmithForm s = smith_form(l.gram);
  for (const auto& d : s.diagonal)
    if (d == 0) throw DegenerateLattice("Gram matrix is singular");
  std::vector<std::int64_t> orders;
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < s.diagonal.size(); ++i) {
    if (s.diagonal[i] != 1) {
      orders.push_back(to_int64(s.diagonal[i]));
      idx.push_back(i);
    }
  }
  std::size_t n = l.rank(), k = idx.size();
  RatMatrix gens(k, n);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t j = 0; j < n; ++j) gens(a, j) = Rational(s.right(j, idx[a])) / Rational(s.diagonal[idx[a]]);
  RatMatrix q(k, k);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) q(a, b) = bilinear(l.gram, gens.row(a), gens.row(b));
  FiniteQuadraticSpace d(orders, q);
  d.set_generators(gens);
  if (n > 0) {
    auto [p, ng] = signature(l.gram);
    d.signature_mod8 = static_cast<int>(mod_floor(p - ng, 8));
  } else {
    d.signature_mod8 = 0;
  }
  return d;
}

FiniteQuadraticSpace negated(const FiniteQuadraticSpace& d) {
  RatMatrix q = d.q_gram();
  for (std::size_t i = 0; i < q.rows(); ++i)
    for (std::size_t j = 0; j < q.cols(); ++j) q(i, j) = -q(i, j);
  FiniteQuadraticSpace out(d.orders(), q);
  if (d.generators()) out.set_generators(*d.generators());
  if (d.signature_mod8) out.signature_mod8 = static_cast<int>(mod_floor(-*d.signature_mod8, 8));
  return out;
}

FiniteQuadraticSpace direct_product(const FiniteQuadraticSpace& a, const FiniteQuadraticSpace& b) {
  std::vector<std::int64_t> orders = a.orders();
  orders.insert(orders.end(), b.orders().begin(), b.orders().end());
  std::size_t n = a.ngens(), k = b.ngens();
  RatMatrix q(n + k, n + k);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) q(i, j) = a.q_gram()(i, j);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) q(n + i, n + j) = b.q_gram()(i, j);
  FiniteQuadraticSpace out(orders, q);
  if (a.generators() && b.generators()) {
    std::size_t ra = a.generators()->cols(), rb = b.generators()->cols();
    RatMatrix g(n + k, ra + rb);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < ra; ++j) g(i, j) = (*a.generators())(i, j);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < rb; ++j) g(n + i, ra + j) = (*b.generators())(i, j);
    out.set_generators(g);
  }
  if (a.signature_mod8 && b.signature_mod8) out.signature_mod8 = (*a.signature_mod8 + *b.signature_mod8) % 8;
  return out;
}

FiniteQuadraticSpace hyperbolic_space(std::int64_t m) {
  if (m == 1) {
    FiniteQuadraticSpace t({}, RatMatrix(0, 0));
    t.signature_mod8 = 0;
    return t;
  }
  RatMatrix q(2, 2);
  q(0, 1) = q(1, 0) = Rational(1, static_cast<unsigned long>(m));
  FiniteQuadraticSpace d({m, m}, q);
  d.signature_mod8 = 0;
  return d;
}

std::map<ClassKey, std::int64_t> classify_elements(const FiniteQuadraticSpace& d, std::uint64_t limit) {
  if (d.size() > limit) throw TooLarge("finite quadratic space too large to enumerate");
  std::map<std::pair<std::int64_t, std::int64_t>, std::int64_t> raw;
  d.for_each([&](const GroupElement& x) { ++raw[{d.order_of(x), d.Q_num(x)}]; });
  std::map<ClassKey, std::int64_t> out;
  for (auto& [k, c] : raw) {
    ClassKey key{k.first, make_rational(Integer(static_cast<long>(k.second)), Integer(static_cast<long>(d.level())))};
    out[key] += c;
  }
  return out;
}

std::complex<double> gauss_sum(const FiniteQuadraticSpace& d) {
  std::int64_t level = d.level();
  std::vector<std::int64_t> counts(static_cast<std::size_t>(level), 0);
  d.for_each([&](const GroupElement& x) { ++counts[static_cast<std::size_t>(d.Q_num(x))]; });
  std::complex<double> s = 0;
  for (std::int64_t r = 0; r < level; ++r) {
    double a = 2 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(level);
    s += static_cast<double>(counts[static_cast<std::size_t>(r)]) * std::complex<double>(std::cos(a), std::sin(a));
  }
  return s;
}

double milgram_defect(const FiniteQuadraticSpace& d, int sig) {
  double a = 2 * std::numbers::pi * static_cast<double>(sig) / 8.0;
  std::complex<double> expected = std::sqrt(static_cast<double>(d.size())) * std::complex<double>(std::cos(a), std::sin(a));
  return std::abs(gauss_sum(d) - expected);
}

std::int64_t char_chi_s(std::int64_t m) {
  CycleShape shape = class_shape(m);
  std::map<std::int64_t, std::int64_t> prime_exp;
  for (auto [t, b] : shape.exponents) {
    std::int64_t x = t;
    for (std::int64_t p = 2; p * p <= x; ++p)
      while (x % p == 0) {
        prime_exp[p] += b;
        x /= p;
      }
    if (x > 1) prime_exp[x] += b;
  }
  std::int64_t s = 1;
  for (auto [p, e] : prime_exp)
    if (e % 2 != 0) s *= p;
  return s;
}

}  // namespace m23bkm
