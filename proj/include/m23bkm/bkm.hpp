#pragma once

#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "m23bkm/class_data.hpp"
#include "m23bkm/qseries.hpp"

namespace m23bkm {

class FormulaMismatch : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Root lattice Delta = Lambda^nu + II_{1,1} with coordinates (lambda, a, b),
/// <(lambda,a,b),(lambda,a,b)>/2 = <lambda,lambda>/2 - ab, and rho = (0, 0, 1).
struct RootDatum {
  std::int64_t m = 1;
  Lattice definite;  // Lambda^nu
  Lattice Delta;
  IntVector rho;
  FracPowerSeries inv_eta;  // 1/eta_nu

  std::size_t definite_rank() const { return definite.rank(); }
};

// inv_eta is expanded for exponents below series_bound.
RootDatum make_root_datum(const ClassData& c, std::int64_t series_bound = 20);

struct GradedDim {
  IntVector alpha;
  Integer mult;
};

// Multiplicity from N = <alpha,alpha>/2 and g = gcd of the entries of Gram*alpha
// (g = 0 for alpha = 0).
Integer multiplicity_from_invariants(const RootDatum& rd, std::int64_t n, std::int64_t g);
GradedDim root_multiplicity(const RootDatum& rd, const IntVector& alpha);
std::int64_t dim_zero(const RootDatum& rd);

// |a|, |b| <= height and <lambda,lambda>/2 <= lambda_cap (default m * height).
struct RootBox {
  std::int64_t height = 4;
  std::int64_t lambda_cap = -1;
  std::int64_t effective_lambda_cap(std::int64_t m) const { return lambda_cap >= 0 ? lambda_cap : m * height; }
};

// Explicit list of real roots with 0 < N <= norm_cap in the box. Throws TooLarge
// if the box holds more than max_lambdas definite vectors.
std::vector<GradedDim> real_roots(const RootDatum& rd, std::int64_t norm_cap, const RootBox& box,
                                  std::uint64_t max_lambdas = 2000000);

// Real roots with <rho,alpha> = -<alpha,alpha>/2 and height b <= height_cap,
// where b = <alpha, rho'> for rho' = (0, -1, 0).
std::vector<GradedDim> simple_real_roots(const RootDatum& rd, std::int64_t height_cap,
                                         std::uint64_t max_lambdas = 2000000);

// Closed formula, cross-checked against the multiplicity of n*rho.
Integer imaginary_simple_mult(const RootDatum& rd, std::int64_t n);

struct WeylReport {
  std::size_t pairs = 0;
  std::size_t mismatches = 0;
  bool gram_preserved = true;
  std::optional<std::string> first_problem;
  bool ok() const { return mismatches == 0 && gram_preserved && !first_problem; }
};

WeylReport weyl_invariance_check(const RootDatum& rd, std::size_t sample_size, std::uint64_t seed);

/// Exhaustive comparison over a box of the multiplicity formula, the real-root
/// criterion and the lattice roots of Delta.
struct RootBoxReport {
  std::int64_t height = 0;
  std::int64_t lambda_cap = 0;
  std::uint64_t lambdas = 0;
  std::uint64_t vectors = 0;  // nonzero alpha examined
  std::map<std::int64_t, std::uint64_t> real_roots_by_norm;
  std::uint64_t lattice_roots = 0;
  std::uint64_t mismatches = 0;
  std::optional<std::string> first_problem;
  bool ok() const { return mismatches == 0; }
};

RootBoxReport verify_root_box(const RootDatum& rd, const RootBox& box);

// Definite vectors grouped by (<l,l>/2, content, gcd(Gram*l)) with multiplicities.
std::map<std::array<std::int64_t, 3>, std::uint64_t> lambda_groups(const Lattice& l, std::int64_t cap,
                                                                     bool use_unimodular_shortcut = true);

struct RootSuiteReport {
  RootBoxReport box;
  WeylReport weyl;
  bool imaginary_ok = true;
  bool dim_zero_ok = true;
  std::optional<std::string> first_problem;
  bool ok() const { return box.ok() && weyl.ok() && imaginary_ok && dim_zero_ok; }
};

RootSuiteReport run_root_suite(const ClassData& c, std::int64_t height, std::uint64_t seed,
                               std::size_t weyl_pairs = 200);

}  // namespace m23bkm
