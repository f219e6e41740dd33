#pragma once

#include <map>
#include <memory>

#include "m23bkm/class_data.hpp"
#include "m23bkm/cyclotomic.hpp"
#include "m23bkm/theta.hpp"

namespace m23bkm {

class InvalidCharacter : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Untwisted-sector traces and characters of the orbifold built from one class.
///
/// Fixed sublattices of nu^j on the coinvariant lattice depend only on
/// gcd(j, m) and are prepared once.
class CharacterContext {
 public:
  explicit CharacterContext(const ClassData& c);

  const ClassData& data() const { return *data_; }
  const FiniteQuadraticSpace& coinvariant_disc() const { return disc_; }

  // Frame shape of nu^j on the coinvariant lattice.
  const CycleShape& restricted_shape(std::int64_t j) const;

  // theta of the nu^j-fixed part of rep + Lambda_nu over eta_{nu^j | Lambda_nu},
  // valid for exponents below `valid_below`.
  FracPowerSeries twisted_trace(const RatVector& rep, std::int64_t j, const Rational& valid_below) const;

  // All m characters (1/m) sum_k e(-jk/m) T_k, for j = 0..m-1.
  std::vector<FracPowerSeries> characters(const RatVector& rep, const Rational& valid_below) const;

 private:
  std::int64_t divisor_of(std::int64_t j) const;

  const ClassData* data_;
  FiniteQuadraticSpace disc_;
  std::map<std::int64_t, CycleShape> shapes_;
  std::map<std::int64_t, std::unique_ptr<FixedCosetTheta>> fixed_;
};

FracPowerSeries twisted_trace(const CharacterContext& ctx, const RatVector& rep, std::int64_t j,
                              const Rational& valid_below);
FracPowerSeries character_untwisted(const CharacterContext& ctx, const RatVector& rep, std::int64_t j_out,
                                    const Rational& valid_below);

// Exact DFT over Z_m: out[j] = (1/m) sum_k e(-jk/m) traces[k].
// Throws NonRationalCharacter or InvalidCharacter (negative / non-integral).
std::vector<FracPowerSeries> dft_characters(const std::vector<FracPowerSeries>& traces);

}  // namespace m23bkm
