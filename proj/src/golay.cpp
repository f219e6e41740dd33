#include <bit>
#include <random>
#include <set>
#include <sstream>

#include "m23bkm/leech.hpp"

namespace m23bkm {

namespace {

constexpr int kPrime = 23;

std::int64_t inverse_mod(std::int64_t x) {
  std::int64_t r = 1;
  for (int i = 0; i < kPrime - 2; ++i) r = r * x % kPrime;
  return r;
}

bool is_residue(std::int64_t x) {
  for (std::int64_t y = 1; y < kPrime; ++y)
    if (y * y % kPrime == x) return true;
  return false;
}

// Row-reduced basis over GF(2), keyed by leading bit.
struct Gf2Basis {
  std::array<std::uint32_t, 24> rows{};

  bool insert(std::uint32_t v) {
    while (v) {
      int h = 31 - std::countl_zero(v);
      if (!rows[h]) {
        rows[h] = v;
        return true;
      }
      v ^= rows[h];
    }
    return false;
  }
  bool contains(std::uint32_t v) const {
    while (v) {
      int h = 31 - std::countl_zero(v);
      if (!rows[h]) return false;
      v ^= rows[h];
    }
    return true;
  }
};

Gf2Basis basis_of(const GolayCode& code) {
  Gf2Basis b;
  for (auto g : code.generator) b.insert(g);
  return b;
}

}  // namespace

bool GolayCode::contains(std::uint32_t word) const { return basis_of(*this).contains(word); }

std::array<std::uint64_t, 25> GolayCode::weight_distribution() const {
  std::array<std::uint64_t, 25> dist{};
  for (std::uint32_t mask = 0; mask < 4096; ++mask) {
    std::uint32_t w = 0;
    for (int i = 0; i < 12; ++i)
      if (mask >> i & 1u) w ^= generator[static_cast<std::size_t>(i)];
    ++dist[static_cast<std::size_t>(std::popcount(w))];
  }
  return dist;
}

GolayCode build_golay() {
  // Translates of {inf} u (non-residues) together with the all-ones word.
  std::vector<std::uint32_t> gens;
  for (std::int64_t a = 0; a < kPrime; ++a) {
    std::uint32_t w = 1u << kInfinity;
    for (std::int64_t x = 1; x < kPrime; ++x)
      if (!is_residue(x)) w |= 1u << ((x + a) % kPrime);
    gens.push_back(w);
  }
  gens.push_back((1u << 24) - 1);
  Gf2Basis b;
  GolayCode code;
  std::size_t k = 0;
  for (auto g : gens) {
    if (b.insert(g)) {
      if (k == 12) throw ConstructionInvariantViolated("Golay generators span more than 12 dimensions");
      code.generator[k++] = g;
    }
  }
  if (k != 12) throw ConstructionInvariantViolated("Golay generators span fewer than 12 dimensions");
  validate_golay(code);
  return code;
}

void validate_golay(const GolayCode& code) {
  Gf2Basis b;
  for (auto g : code.generator)
    if (!b.insert(g)) throw ConstructionInvariantViolated("Golay generator rows are dependent");
  for (auto x : code.generator)
    for (auto y : code.generator)
      if (std::popcount(x & y) % 2 != 0) throw ConstructionInvariantViolated("Golay code is not self-orthogonal");
  auto dist = code.weight_distribution();
  for (int w = 1; w < 8; ++w)
    if (dist[static_cast<std::size_t>(w)] != 0) throw ConstructionInvariantViolated("Golay code has words of weight < 8");
}

Permutation identity_permutation() {
  Permutation p{};
  for (int i = 0; i < 24; ++i) p[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(i);
  return p;
}

Permutation compose(const Permutation& a, const Permutation& b) {
  Permutation c{};
  for (std::size_t i = 0; i < 24; ++i) c[i] = b[a[i]];
  return c;
}

Permutation permutation_power(const Permutation& p, std::int64_t k) {
  Permutation base = p;
  if (k < 0) {
    for (std::size_t i = 0; i < 24; ++i) base[p[i]] = static_cast<std::uint8_t>(i);
    k = -k;
  }
  Permutation r = identity_permutation();
  for (std::int64_t i = 0; i < k; ++i) r = compose(r, base);
  return r;
}

CycleShape cycle_type(const Permutation& p) {
  CycleShape s;
  std::array<bool, 24> seen{};
  for (std::size_t i = 0; i < 24; ++i) {
    if (seen[i]) continue;
    std::int64_t len = 0;
    for (std::size_t j = i; !seen[j]; j = p[j]) {
      seen[j] = true;
      ++len;
    }
    ++s.exponents[len];
    s.order = lcm64(s.order, len);
  }
  return s;
}

std::uint32_t apply_permutation(const Permutation& p, std::uint32_t word) {
  std::uint32_t r = 0;
  for (std::size_t i = 0; i < 24; ++i)
    if (word >> i & 1u) r |= 1u << p[i];
  return r;
}

bool preserves_code(const GolayCode& code, const Permutation& p) {
  std::set<std::uint8_t> image(p.begin(), p.end());
  if (image.size() != 24 || *image.rbegin() != 23) return false;
  Gf2Basis b = basis_of(code);
  for (auto g : code.generator)
    if (!b.contains(apply_permutation(p, g))) return false;
  return true;
}

std::array<Permutation, 4> m24_generators() {
  auto make = [](auto f) {
    Permutation p{};
    for (std::int64_t x = 0; x < 24; ++x) p[static_cast<std::size_t>(x)] = static_cast<std::uint8_t>(f(x));
    return p;
  };
  auto shift = make([](std::int64_t x) { return x == kInfinity ? x : (x + 1) % kPrime; });
  auto twice = make([](std::int64_t x) { return x == kInfinity ? x : (2 * x) % kPrime; });
  auto invert = make([](std::int64_t x) -> std::int64_t {
    if (x == kInfinity) return 0;
    if (x == 0) return kInfinity;
    return (kPrime - inverse_mod(x)) % kPrime;
  });
  auto cube = make([](std::int64_t x) -> std::int64_t {
    if (x == kInfinity || x == 0) return x;
    std::int64_t c = x * x % kPrime * x % kPrime;
    return is_residue(x) ? c * inverse_mod(9) % kPrime : 9 * c % kPrime;
  });
  return {shift, twice, invert, cube};
}

PermutationIsometry find_class_element(const GolayCode& code, const CycleShape& shape,
                                       std::uint64_t seed, std::uint64_t budget) {
  auto gens = m24_generators();
  for (const auto& g : gens)
    if (!preserves_code(code, g)) throw ConstructionInvariantViolated("generator does not preserve the code");
  std::mt19937_64 rng(seed);
  Permutation g = identity_permutation();
  for (std::uint64_t it = 0; it < budget; ++it) {
    g = compose(g, gens[rng() % gens.size()]);
    CycleShape ct = cycle_type(g);
    if (ct.order % shape.order != 0) continue;
    Permutation h = permutation_power(g, ct.order / shape.order);
    CycleShape hs = cycle_type(h);
    if (hs.exponents != shape.exponents) continue;
    PermutationIsometry out;
    out.perm = h;
    out.cycle_shape = hs;
    out.seed = seed;
    for (std::size_t i = 0; i < 24; ++i)
      if (h[i] == i) {
        out.fixed_point = static_cast<int>(i);
        break;
      }
    validate_class_element(code, out);
    return out;
  }
  throw SearchExhausted("no element with cycle shape " + shape.to_string() + " within budget");
}

void validate_class_element(const GolayCode& code, const PermutationIsometry& e) {
  if (!preserves_code(code, e.perm)) throw IntegrityError("permutation does not preserve the Golay code");
  CycleShape ct = cycle_type(e.perm);
  if (ct.exponents != e.cycle_shape.exponents) throw IntegrityError("permutation has the wrong cycle type");
  if (e.fixed_point < 0 || e.fixed_point >= 24 || e.perm[static_cast<std::size_t>(e.fixed_point)] != e.fixed_point)
    throw IntegrityError("recorded fixed point is not fixed");
}

std::uint64_t fnv1a64(const std::string& data) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << v;
  return os.str();
}

std::uint64_t golay_hash(const GolayCode& code) {
  std::ostringstream os;
  for (auto g : code.generator) os << g << ",";
  return fnv1a64(os.str());
}

std::uint64_t permutation_hash(std::int64_t m, const Permutation& p) {
  std::ostringstream os;
  os << m << ":";
  for (auto x : p) os << static_cast<int>(x) << ",";
  return fnv1a64(os.str());
}

}  // namespace m23bkm
