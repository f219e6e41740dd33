#pragma once

#include <complex>
#include <vector>

#include "m23bkm/class_data.hpp"

namespace m23bkm {

/// S and T of the fusion group R = disc(Lambda_nu) x (Z_m x Z_m, ij/m).
///
/// Elements are indexed as (alpha, i, j) -> (alpha_index * m + i) * m + j.
class ZhuMatrices {
 public:
  explicit ZhuMatrices(const ClassData& c, std::uint64_t limit = 10000);

  std::size_t size() const { return n_; }
  std::complex<double> s(std::size_t x, std::size_t y) const;
  std::complex<double> t(std::size_t x) const { return t_[x]; }
  // Index of -x.
  std::size_t negate(std::size_t x) const;

  std::vector<std::complex<double>> apply_s(const std::vector<std::complex<double>>& v) const;
  std::vector<std::complex<double>> apply_t(const std::vector<std::complex<double>>& v) const;
  bool phases_symmetric() const;

 private:
  int phase(std::size_t x, std::size_t y) const;

  std::int64_t m_ = 1;
  std::size_t nd_ = 1, n_ = 1;
  std::int64_t level_ = 1;  // common denominator of all phases
  std::vector<int> bil_;    // disc bilinear form, in units of 1/level_
  std::vector<std::size_t> disc_neg_;
  std::vector<std::complex<double>> roots_;
  std::vector<std::complex<double>> t_;
  double scale_ = 1;
};

struct ZhuReport {
  std::size_t size = 0;
  std::string method;  // dense or probe
  bool symmetric = false;
  double unitarity_defect = 0;
  double s2_defect = 0;   // S^2 against charge conjugation
  double st3_defect = 0;  // (ST)^3 against S^2
  bool ok(double tol = 1e-9) const {
    return symmetric && unitarity_defect <= tol && s2_defect <= tol && st3_defect <= tol;
  }
};

// Dense products up to |R| <= dense_limit, otherwise random probe vectors.
ZhuReport check_zhu(const ClassData& c, std::uint64_t seed, std::size_t dense_limit = 256, int probes = 4);

}  // namespace m23bkm
