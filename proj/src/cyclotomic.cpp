#include "m23bkm/cyclotomic.hpp"

#include <map>
#include <mutex>

namespace m23bkm {

namespace {

// Exact division of integer polynomials (b monic).
IntVector poly_divide_exact(const IntVector& a, const IntVector& b) {
  IntVector r = a;
  std::size_t db = b.size() - 1;
  if (a.size() < b.size()) throw std::logic_error("polynomial division degree");
  IntVector q(a.size() - db, Integer(0));
  for (std::size_t i = a.size(); i-- > db;) {
    Integer coef = r[i];
    q[i - db] = coef;
    if (coef == 0) continue;
    for (std::size_t j = 0; j <= db; ++j) r[i - db + j] -= coef * b[j];
  }
  for (const auto& x : r)
    if (x != 0) throw std::logic_error("polynomial division is not exact");
  return q;
}

}  // namespace

namespace {

IntVector compute_phi(std::int64_t m, std::map<std::int64_t, IntVector>& memo) {
  auto it = memo.find(m);
  if (it != memo.end()) return it->second;
  // x^m - 1 = prod_{d | m} Phi_d
  IntVector p(static_cast<std::size_t>(m) + 1, Integer(0));
  p[0] = -1;
  p[static_cast<std::size_t>(m)] = 1;
  for (auto d : divisors(m))
    if (d < m) p = poly_divide_exact(p, compute_phi(d, memo));
  memo[m] = p;
  return p;
}

}  // namespace

const IntVector& cyclotomic_polynomial(std::int64_t m) {
  static std::map<std::int64_t, IntVector> memo;
  static std::mutex mu;
  if (m <= 0) throw std::invalid_argument("cyclotomic index must be positive");
  std::lock_guard<std::mutex> lock(mu);
  compute_phi(m, memo);
  return memo.at(m);
}

CyclotomicInt::CyclotomicInt(std::int64_t m) : m_(m), c_(static_cast<std::size_t>(m), Integer(0)) {
  if (m <= 0) throw std::invalid_argument("cyclotomic order must be positive");
}

CyclotomicInt CyclotomicInt::root_power(std::int64_t m, std::int64_t k) {
  CyclotomicInt z(m);
  z.add_term(Integer(1), k);
  return z;
}

CyclotomicInt CyclotomicInt::constant(std::int64_t m, const Integer& c) {
  CyclotomicInt z(m);
  z.add_term(c, 0);
  return z;
}

void CyclotomicInt::add_term(const Integer& c, std::int64_t k) {
  c_[static_cast<std::size_t>(mod_floor(k, m_))] += c;
}

CyclotomicInt CyclotomicInt::operator+(const CyclotomicInt& o) const {
  if (o.m_ != m_) throw std::invalid_argument("cyclotomic orders differ");
  CyclotomicInt r = *this;
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] += o.c_[i];
  return r;
}

CyclotomicInt CyclotomicInt::operator-(const CyclotomicInt& o) const {
  if (o.m_ != m_) throw std::invalid_argument("cyclotomic orders differ");
  CyclotomicInt r = *this;
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] -= o.c_[i];
  return r;
}

CyclotomicInt CyclotomicInt::operator*(const CyclotomicInt& o) const {
  if (o.m_ != m_) throw std::invalid_argument("cyclotomic orders differ");
  CyclotomicInt r(m_);
  auto m = static_cast<std::size_t>(m_);
  for (std::size_t i = 0; i < m; ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < m; ++j) {
      if (o.c_[j] != 0) r.c_[(i + j) % m] += c_[i] * o.c_[j];
    }
  }
  return r;
}

IntVector CyclotomicInt::reduced() const {
  const IntVector& phi = cyclotomic_polynomial(m_);
  std::size_t deg = phi.size() - 1;
  IntVector r = c_;
  for (std::size_t i = r.size(); i-- > deg;) {
    Integer coef = r[i];
    if (coef == 0) continue;
    for (std::size_t j = 0; j <= deg; ++j) r[i - deg + j] -= coef * phi[j];
  }
  r.resize(deg);
  return r;
}

bool CyclotomicInt::is_rational() const { return rational_value().has_value(); }

std::optional<Integer> CyclotomicInt::rational_value() const {
  IntVector r = reduced();
  for (std::size_t i = 1; i < r.size(); ++i)
    if (r[i] != 0) return std::nullopt;
  return r.empty() ? Integer(0) : r[0];
}

bool CyclotomicInt::equals(const CyclotomicInt& o) const {
  return m_ == o.m_ && (*this - o).reduced() == IntVector(reduced().size(), Integer(0));
}

}  // namespace m23bkm
