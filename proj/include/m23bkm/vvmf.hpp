#pragma once

#include <map>
#include <string>
#include <vector>

#include "m23bkm/class_data.hpp"

namespace m23bkm {

class ReflectivityViolated : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Components of F indexed by (order, Q mod 1) classes of L'/L.
struct VvmfTable {
  std::int64_t m = 1;
  std::int64_t weight = 0;
  std::int64_t bound = 5;  // coefficients through lead + bound
  std::map<ClassKey, FracPowerSeries> entries;
  std::map<ClassKey, std::int64_t> counts;
};

// F_{gamma} = sum over d | m with ord(gamma) | d of g_{d,j}, -j/d = Q(gamma) mod 1.
VvmfTable lift_F(const ClassData& c, std::int64_t bound);
// Same construction from the class invariants only.
VvmfTable lift_F(std::int64_t m, const std::map<ClassKey, std::int64_t>& counts, std::int64_t weight,
                 std::int64_t bound);

// The d with Q = 1/d mod 1 and ord | d, if any: the component should then have
// exactly the singular term q^{-1/d}.
std::optional<std::int64_t> predicted_singular_d(std::int64_t m, const ClassKey& key);

struct ReflectivityReport {
  bool ok = true;
  std::int64_t components = 0;
  std::int64_t singular_components = 0;
  std::int64_t singular_elements = 0;  // sum of counts over singular components
  std::vector<std::string> violations;
};

ReflectivityReport check_reflectivity(const VvmfTable& f);
// Throws ReflectivityViolated naming the first offending component.
void require_reflective(const VvmfTable& f);

struct CongruenceReport {
  bool ok = true;
  std::int64_t exponents_checked = 0;
  std::vector<std::string> violations;
};

CongruenceReport check_t_congruence(const VvmfTable& f);

}  // namespace m23bkm
