#include "m23bkm/zhu.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <random>

namespace m23bkm {

using cplx = std::complex<double>;
using cvec = std::vector<cplx>;

ZhuMatrices::ZhuMatrices(const ClassData& c, std::uint64_t limit) : m_(c.m) {
  FiniteQuadraticSpace d = discriminant_form(c.coinvariant.lattice);
  std::vector<GroupElement> els = d.elements();
  nd_ = els.size();
  n_ = nd_ * static_cast<std::size_t>(m_ * m_);
  if (n_ > limit) throw TooLarge("fusion group too large for Zhu matrices");
  level_ = lcm64(d.level(), m_);
  std::map<GroupElement, std::size_t> index;
  for (std::size_t i = 0; i < nd_; ++i) index[els[i]] = i;
  disc_neg_.resize(nd_);
  for (std::size_t i = 0; i < nd_; ++i) disc_neg_[i] = index.at(d.negate(els[i]));
  std::vector<std::int64_t> qn(nd_);
  for (std::size_t i = 0; i < nd_; ++i) qn[i] = d.Q_num(els[i]) * (level_ / d.level());
  bil_.assign(nd_ * nd_, 0);
  for (std::size_t a = 0; a < nd_; ++a)
    for (std::size_t b = 0; b <= a; ++b) {
      std::int64_t s = d.Q_num(d.add(els[a], els[b])) * (level_ / d.level());
      auto v = static_cast<int>(mod_floor(s - qn[a] - qn[b], level_));
      bil_[a * nd_ + b] = bil_[b * nd_ + a] = v;
    }
  roots_.resize(static_cast<std::size_t>(level_));
  for (std::int64_t k = 0; k < level_; ++k) {
    double ang = 2 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(level_);
    roots_[static_cast<std::size_t>(k)] = cplx(std::cos(ang), std::sin(ang));
  }
  scale_ = 1.0 / (static_cast<double>(m_) * std::sqrt(static_cast<double>(nd_)));
  // T = e(Q(alpha) + ij/m - c/24)
  double c24 = static_cast<double>(c.coinvariant.lattice.rank()) / 24.0;
  t_.resize(n_);
  auto mm = static_cast<std::size_t>(m_);
  for (std::size_t a = 0; a < nd_; ++a)
    for (std::size_t i = 0; i < mm; ++i)
      for (std::size_t j = 0; j < mm; ++j) {
        double q = static_cast<double>(qn[a]) / static_cast<double>(level_) +
                   static_cast<double>(i * j) / static_cast<double>(m_) - c24;
        double ang = 2 * std::numbers::pi * q;
        t_[(a * mm + i) * mm + j] = cplx(std::cos(ang), std::sin(ang));
      }
}

int ZhuMatrices::phase(std::size_t x, std::size_t y) const {
  auto mm = static_cast<std::size_t>(m_);
  std::size_t a = x / (mm * mm), i = (x / mm) % mm, j = x % mm;
  std::size_t b = y / (mm * mm), k = (y / mm) % mm, l = y % mm;
  std::int64_t p = bil_[a * nd_ + b] + static_cast<std::int64_t>(i * l + j * k) * (level_ / m_);
  return static_cast<int>(mod_floor(-p, level_));
}

cplx ZhuMatrices::s(std::size_t x, std::size_t y) const { return scale_ * roots_[static_cast<std::size_t>(phase(x, y))]; }

std::size_t ZhuMatrices::negate(std::size_t x) const {
  auto mm = static_cast<std::size_t>(m_);
  std::size_t a = x / (mm * mm), i = (x / mm) % mm, j = x % mm;
  return (disc_neg_[a] * mm + (mm - i) % mm) * mm + (mm - j) % mm;
}

cvec ZhuMatrices::apply_s(const cvec& v) const {
  cvec out(n_);
  for (std::size_t x = 0; x < n_; ++x) {
    cplx acc = 0;
    for (std::size_t y = 0; y < n_; ++y) acc += roots_[static_cast<std::size_t>(phase(x, y))] * v[y];
    out[x] = scale_ * acc;
  }
  return out;
}

cvec ZhuMatrices::apply_t(const cvec& v) const {
  cvec out(n_);
  for (std::size_t x = 0; x < n_; ++x) out[x] = t_[x] * v[x];
  return out;
}

bool ZhuMatrices::phases_symmetric() const {
  for (std::size_t x = 0; x < n_; ++x)
    for (std::size_t y = 0; y < x; ++y)
      if (phase(x, y) != phase(y, x)) return false;
  return true;
}

namespace {

double max_abs_diff(const cvec& a, const cvec& b) {
  double d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

double norm2(const cvec& v) {
  double s = 0;
  for (const auto& x : v) s += std::norm(x);
  return std::sqrt(s);
}

cvec conj_vec(const cvec& v) {
  cvec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = std::conj(v[i]);
  return r;
}

}  // namespace

ZhuReport check_zhu(const ClassData& c, std::uint64_t seed, std::size_t dense_limit, int probes) {
  ZhuMatrices z(c);
  ZhuReport r;
  r.size = z.size();
  r.symmetric = z.phases_symmetric();
  std::size_t n = z.size();
  std::vector<cvec> inputs;
  if (n <= dense_limit) {
    r.method = "dense";
    for (std::size_t k = 0; k < n; ++k) {
      cvec e(n, 0.0);
      e[k] = 1.0;
      inputs.push_back(e);
    }
  } else {
    r.method = "probe";
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int p = 0; p < probes; ++p) {
      cvec v(n);
      for (auto& x : v) x = cplx(gauss(rng), gauss(rng));
      double nv = norm2(v);
      for (auto& x : v) x /= nv;
      inputs.push_back(v);
    }
  }
  for (const cvec& v : inputs) {
    cvec sv = z.apply_s(v);
    // S is symmetric, so S^dagger v = conj(S conj(v))
    cvec shv = conj_vec(z.apply_s(conj_vec(v)));
    r.unitarity_defect = std::max(r.unitarity_defect, max_abs_diff(z.apply_s(shv), v));
    cvec s2v = z.apply_s(sv);
    cvec cv(n);
    for (std::size_t x = 0; x < n; ++x) cv[x] = v[z.negate(x)];
    r.s2_defect = std::max(r.s2_defect, max_abs_diff(s2v, cv));
    cvec w = v;
    for (int k = 0; k < 3; ++k) w = z.apply_s(z.apply_t(w));
    r.st3_defect = std::max(r.st3_defect, max_abs_diff(w, s2v));
  }
  return r;
}

}  // namespace m23bkm
