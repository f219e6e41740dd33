#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "m23bkm/lattice.hpp"
#include "m23bkm/qseries.hpp"

namespace m23bkm {

class SearchExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IntegrityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Codewords are 24-bit masks; bit i is coordinate i. Coordinates 0..22 are
// the points of F_23 and coordinate 23 is the point at infinity.
struct GolayCode {
  std::array<std::uint32_t, 12> generator{};

  bool contains(std::uint32_t word) const;
  // Index = weight, value = number of codewords.
  std::array<std::uint64_t, 25> weight_distribution() const;
};

constexpr int kInfinity = 23;

// Extended quadratic-residue code of length 24.
GolayCode build_golay();
// Throws ConstructionInvariantViolated unless dimension 12, self-dual, minimum weight 8.
void validate_golay(const GolayCode& code);

// Leech lattice in coordinates scaled by sqrt(8); the ambient form is dot/8.
Lattice build_leech(const GolayCode& code);

using Permutation = std::array<std::uint8_t, 24>;  // i -> perm[i]

struct PermutationIsometry {
  Permutation perm{};
  CycleShape cycle_shape;
  int fixed_point = 0;
  std::uint64_t seed = 0;
};

Permutation identity_permutation();
// First apply a, then b.
Permutation compose(const Permutation& a, const Permutation& b);
Permutation permutation_power(const Permutation& p, std::int64_t k);
CycleShape cycle_type(const Permutation& p);
bool preserves_code(const GolayCode& code, const Permutation& p);
std::uint32_t apply_permutation(const Permutation& p, std::uint32_t word);

// x -> x+1, x -> 2x, x -> -1/x and the cubing map; they generate M_24.
std::array<Permutation, 4> m24_generators();

PermutationIsometry find_class_element(const GolayCode& code, const CycleShape& shape,
                                       std::uint64_t seed, std::uint64_t budget = 200000);

// Re-checks code preservation, cycle type and the fixed point.
void validate_class_element(const GolayCode& code, const PermutationIsometry& element);

// Matrix of the coordinate permutation on the Leech basis.
IsometryAction induced_action(const Lattice& leech, const Permutation& p);

// FNV-1a 64-bit, used for data-file integrity stamps.
std::uint64_t fnv1a64(const std::string& data);
std::string hex64(std::uint64_t v);
std::uint64_t golay_hash(const GolayCode& code);
std::uint64_t permutation_hash(std::int64_t m, const Permutation& p);

}  // namespace m23bkm
