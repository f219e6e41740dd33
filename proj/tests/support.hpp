#pragma once

#include <map>
#include <mutex>

#include "m23bkm/class_data.hpp"

namespace m23bkm::testing {

struct Env {
  GolayCode code;
  Lattice leech;
};

inline const Env& env() {
  static const Env e = [] {
    Env x;
    x.code = build_golay();
    x.leech = build_leech(x.code);
    return x;
  }();
  return e;
}

inline const ClassData& cls(std::int64_t m) {
  static std::map<std::int64_t, ClassData> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(m);
  if (it == cache.end()) {
    const Env& e = env();
    PermutationIsometry p = find_class_element(e.code, class_shape(m), 1);
    it = cache.emplace(m, class_data(class_shape(m), e.leech, p)).first;
  }
  return it->second;
}

// Coefficient list of an integral-exponent series from exponent `from` through `to`.
inline std::vector<Integer> integer_coeffs(const FracPowerSeries& s, std::int64_t from, std::int64_t to) {
  std::vector<Integer> out;
  for (std::int64_t e = from; e <= to; ++e) out.push_back(s.coeff_at(Rational(e)).get_num());
  return out;
}

}  // namespace m23bkm::testing
