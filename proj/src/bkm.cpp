#include "m23bkm/bkm.hpp"

#include <numeric>
#include <random>
#include <sstream>
#include <unordered_map>

#include "m23bkm/short_vectors.hpp"

namespace m23bkm {

namespace {

std::int64_t gcd3(std::int64_t g, std::int64_t a, std::int64_t b) { return gcd64(gcd64(g, a), b); }

std::string describe(const IntVector& v) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i].get_str();
  os << ")";
  return os.str();
}

std::int64_t half_norm(const RootDatum& rd, const IntVector& alpha) {
  Integer n = rd.Delta.norm(alpha);
  return to_int64(Integer(n / 2));
}

std::int64_t gram_gcd(const IntMatrix& g, const IntVector& v) {
  Integer acc = 0;
  for (std::size_t i = 0; i < g.rows(); ++i) {
    Integer s = 0;
    for (std::size_t j = 0; j < g.cols(); ++j) s += g(i, j) * v[j];
    mpz_gcd(acc.get_mpz_t(), acc.get_mpz_t(), s.get_mpz_t());
  }
  return to_int64(acc);
}

IntVector reflect(const RootDatum& rd, const IntVector& r, const IntVector& v) {
  Integer nr = rd.Delta.norm(r);
  Integer pair = bilinear(rd.Delta.gram, v, r);
  Integer num = 2 * pair;
  if (num % nr != 0) throw FormulaMismatch("reflection does not preserve Delta");
  Integer k = num / nr;
  IntVector out = v;
  for (std::size_t i = 0; i < v.size(); ++i) out[i] -= k * r[i];
  return out;
}

// Visits each definite vector with norm/2 <= cap as (coordinates, norm/2).
template <class F>
void for_each_lambda(const Lattice& l, std::int64_t cap, F&& f) {
  ShortVectorSetup s(l.gram, RatVector(l.rank(), Rational(0)), Rational(2 * cap));
  enumerate_short_vectors(s, [&](const std::int64_t* x, std::int64_t n2) { f(x, n2 / 2); });
}

}  // namespace

RootDatum make_root_datum(const ClassData& c, std::int64_t series_bound) {
  RootDatum rd;
  rd.m = c.m;
  rd.definite = c.fixed.lattice;
  rd.Delta = direct_sum(rd.definite, hyperbolic_plane());
  if (!(rd.Delta.gram == c.Delta.gram)) throw ConstructionInvariantViolated("Delta coordinates differ from class data");
  std::size_t n = rd.Delta.rank();
  rd.rho = IntVector(n, Integer(0));
  rd.rho[n - 1] = 1;
  if (rd.Delta.norm(rd.rho) != 0) throw ConstructionInvariantViolated("rho is not isotropic");
  rd.inv_eta = eta_quotient(c.shape, -1, Rational(series_bound));
  return rd;
}

Integer multiplicity_from_invariants(const RootDatum& rd, std::int64_t n, std::int64_t g) {
  Integer total = 0;
  for (std::int64_t d : divisors(rd.m)) {
    if (g % d != 0 || n % d != 0) continue;
    total += Integer(rd.inv_eta.coeff_at(make_rational(Integer(-n / d), Integer(1))).get_num());
  }
  return total;
}

GradedDim root_multiplicity(const RootDatum& rd, const IntVector& alpha) {
  if (alpha.size() != rd.Delta.rank()) throw std::invalid_argument("vector has wrong dimension");
  std::int64_t n = half_norm(rd, alpha);
  std::int64_t g = gram_gcd(rd.Delta.gram, alpha);
  // membership alpha in d Delta' is d | <alpha, beta> for every basis vector beta
  return {alpha, multiplicity_from_invariants(rd, n, g)};
}

std::int64_t dim_zero(const RootDatum& rd) { return static_cast<std::int64_t>(rd.Delta.rank()); }

std::map<std::array<std::int64_t, 3>, std::uint64_t> lambda_groups(const Lattice& l, std::int64_t cap,
                                                                     bool use_unimodular_shortcut) {
  std::map<std::array<std::int64_t, 3>, std::uint64_t> out;
  const std::size_t r = l.rank();
  if (use_unimodular_shortcut && (r == 0 || l.det() == 1 || l.det() == -1)) {
    // Gram*l has the same content as l; count primitive vectors by norm.
    ShortVectorSetup s(l.gram, RatVector(r, Rational(0)), Rational(2 * cap));
    std::vector<std::uint64_t> h = norm_histogram(s);
    std::vector<std::uint64_t> prim(static_cast<std::size_t>(cap) + 1, 0);
    for (std::int64_t n = 1; n <= cap; ++n) {
      std::uint64_t v = h[static_cast<std::size_t>(2 * n)];
      for (std::int64_t c = 2; c * c <= n; ++c)
        if (n % (c * c) == 0) v -= prim[static_cast<std::size_t>(n / (c * c))];
      prim[static_cast<std::size_t>(n)] = v;
    }
    out[{0, 0, 0}] = 1;
    for (std::int64_t n = 1; n <= cap; ++n)
      for (std::int64_t c = 1; c * c * n <= cap; ++c)
        if (prim[static_cast<std::size_t>(n)]) out[{c * c * n, c, c}] += prim[static_cast<std::size_t>(n)];
    return out;
  }
  std::vector<std::int64_t> g(r * r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) g[i * r + j] = to_int64(l.gram(i, j));
  std::unordered_map<std::uint64_t, std::uint64_t> counts;
  const auto p = static_cast<std::uint64_t>(4 * cap + 8);
  for_each_lambda(l, cap, [&](const std::int64_t* x, std::int64_t n) {
    std::int64_t content = 0;
    for (std::size_t i = 0; i < r && content != 1; ++i) content = gcd64(content, x[i]);
    std::int64_t gg = 0;
    for (std::size_t i = 0; i < r && gg != content; ++i) {
      std::int64_t s = 0;
      for (std::size_t j = 0; j < r; ++j) s += g[i * r + j] * x[j];
      gg = gcd64(gg, s);
    }
    // gcd(Gram*l) is a multiple of the content, so stopping at equality is exact
    auto key = (static_cast<std::uint64_t>(n) * p + static_cast<std::uint64_t>(content)) * p +
               static_cast<std::uint64_t>(gg);
    ++counts[key];
  });
  for (auto [key, cnt] : counts) {
    auto gg = static_cast<std::int64_t>(key % p);
    auto content = static_cast<std::int64_t>((key / p) % p);
    auto n = static_cast<std::int64_t>(key / (p * p));
    out[{n, content, gg}] += cnt;
  }
  return out;
}

RootBoxReport verify_root_box(const RootDatum& rd, const RootBox& box) {
  RootBoxReport rep;
  rep.height = box.height;
  rep.lambda_cap = box.effective_lambda_cap(rd.m);
  auto groups = lambda_groups(rd.definite, rep.lambda_cap);
  const std::int64_t h = box.height;
  auto fail = [&](const std::string& what) {
    ++rep.mismatches;
    if (!rep.first_problem) rep.first_problem = what;
  };
  for (const auto& [key, cnt] : groups) {
    auto [nl, content_l, g_l] = key;
    rep.lambdas += cnt;
    for (std::int64_t a = -h; a <= h; ++a)
      for (std::int64_t b = -h; b <= h; ++b) {
        if (content_l == 0 && a == 0 && b == 0) continue;
        rep.vectors += cnt;
        std::int64_t n = nl - a * b;
        std::int64_t g = gcd3(g_l, a, b);
        std::int64_t content = gcd3(content_l, a, b);
        Integer mult = multiplicity_from_invariants(rd, n, g);
        bool criterion = n > 0 && rd.m % n == 0 && g % n == 0;
        bool lattice_root = n > 0 && content == 1 && g % n == 0;
        std::ostringstream where;
        where << "N_lambda=" << nl << " content=" << content_l << " gcd=" << g_l << " a=" << a << " b=" << b;
        if (mult < 0) fail("negative multiplicity at " + where.str());
        if (n > rd.m && mult != 0) fail("nonzero multiplicity above norm m at " + where.str());
        if (n > 0 && (mult > 0) != criterion) fail("multiplicity disagrees with root criterion at " + where.str());
        if (criterion != lattice_root) fail("root criterion disagrees with lattice roots at " + where.str());
        if (criterion && mult != 1) fail("real root multiplicity is not 1 at " + where.str());
        if (lattice_root) rep.lattice_roots += cnt;
        if (criterion) rep.real_roots_by_norm[n] += cnt;
      }
  }
  return rep;
}

std::vector<GradedDim> real_roots(const RootDatum& rd, std::int64_t norm_cap, const RootBox& box,
                                  std::uint64_t max_lambdas) {
  const std::size_t r = rd.definite_rank();
  const std::int64_t cap = box.effective_lambda_cap(rd.m);
  std::vector<std::int64_t> g(r * r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) g[i * r + j] = to_int64(rd.definite.gram(i, j));
  struct Entry {
    std::vector<std::int64_t> x;
    std::int64_t n, gg;
  };
  std::vector<Entry> lambdas;
  for_each_lambda(rd.definite, cap, [&](const std::int64_t* x, std::int64_t n) {
    if (lambdas.size() >= max_lambdas) throw TooLarge("root box holds too many definite vectors");
    std::int64_t gg = 0;
    for (std::size_t i = 0; i < r; ++i) {
      std::int64_t s = 0;
      for (std::size_t j = 0; j < r; ++j) s += g[i * r + j] * x[j];
      gg = gcd64(gg, s);
    }
    lambdas.push_back({std::vector<std::int64_t>(x, x + r), n, gg});
  });
  std::map<std::pair<std::int64_t, std::int64_t>, Integer> memo;
  auto mult_of = [&](std::int64_t n, std::int64_t gg) {
    auto key = std::make_pair(n, gcd64(gg, rd.m));
    auto it = memo.find(key);
    if (it == memo.end()) it = memo.emplace(key, multiplicity_from_invariants(rd, n, key.second)).first;
    return it->second;
  };
  std::vector<GradedDim> out;
  const std::int64_t h = box.height;
  for (const auto& e : lambdas)
    for (std::int64_t a = -h; a <= h; ++a)
      for (std::int64_t b = -h; b <= h; ++b) {
        std::int64_t n = e.n - a * b;
        if (n <= 0 || n > norm_cap) continue;
        std::int64_t gg = gcd3(e.gg, a, b);
        Integer mult = mult_of(n, gg);
        if (mult == 0) continue;
        IntVector alpha(r + 2);
        for (std::size_t i = 0; i < r; ++i) alpha[i] = e.x[i];
        alpha[r] = a;
        alpha[r + 1] = b;
        if (mult != 1 || rd.m % n != 0 || gg % n != 0)
          throw FormulaMismatch("real root outside the criterion: " + describe(alpha));
        out.push_back({std::move(alpha), mult});
      }
  return out;
}

std::vector<GradedDim> simple_real_roots(const RootDatum& rd, std::int64_t height_cap, std::uint64_t max_lambdas) {
  const std::size_t r = rd.definite_rank();
  std::vector<GradedDim> out;
  std::uint64_t seen = 0;
  // <rho,alpha> = -a, so a = N; then <lambda,lambda>/2 = N (1 + b) with b <= height_cap
  for_each_lambda(rd.definite, rd.m * (1 + height_cap), [&](const std::int64_t* x, std::int64_t nl) {
    if (++seen > max_lambdas) throw TooLarge("simple root search holds too many definite vectors");
    for (std::int64_t n = 1; n <= rd.m; ++n) {
      if (nl % n != 0) continue;
      std::int64_t b = nl / n - 1;
      if (b > height_cap) continue;
      IntVector alpha(r + 2);
      for (std::size_t i = 0; i < r; ++i) alpha[i] = x[i];
      alpha[r] = n;
      alpha[r + 1] = b;
      GradedDim gd = root_multiplicity(rd, alpha);
      if (gd.mult == 0) continue;
      if (half_norm(rd, alpha) != n || bilinear(rd.Delta.gram, rd.rho, alpha) != -n)
        throw FormulaMismatch("simple root fails the Weyl vector condition: " + describe(alpha));
      if (gd.mult != 1 || rd.m % n != 0) throw FormulaMismatch("simple root is not real: " + describe(alpha));
      IntVector image = reflect(rd, alpha, rd.rho);
      if (rd.Delta.norm(image) != 0) throw FormulaMismatch("reflected Weyl vector is not isotropic");
      out.push_back(std::move(gd));
    }
  });
  return out;
}

Integer imaginary_simple_mult(const RootDatum& rd, std::int64_t n) {
  if (n < 1) throw std::invalid_argument("imaginary simple roots are positive multiples of rho");
  Integer closed = Integer(24 * sigma0(gcd64(rd.m, n))) / sigma1(rd.m);
  if (Integer(24 * sigma0(gcd64(rd.m, n))) % sigma1(rd.m) != 0) throw FormulaMismatch("non-integral closed formula");
  IntVector alpha = rd.rho;
  for (auto& x : alpha) x *= n;
  Integer via_sum = root_multiplicity(rd, alpha).mult;
  if (closed != via_sum) {
    std::ostringstream os;
    os << "imaginary multiplicity at n=" << n << ": closed " << closed.get_str() << ", d-sum " << via_sum.get_str();
    throw FormulaMismatch(os.str());
  }
  return closed;
}

WeylReport weyl_invariance_check(const RootDatum& rd, std::size_t sample_size, std::uint64_t seed) {
  WeylReport rep;
  const std::size_t r = rd.definite_rank();
  std::mt19937_64 rng(seed);
  // reservoir sample of short definite vectors
  const std::size_t pool_size = 4096;
  std::vector<std::vector<std::int64_t>> pool;
  std::uint64_t seen = 0;
  for_each_lambda(rd.definite, 2 * rd.m, [&](const std::int64_t* x, std::int64_t) {
    ++seen;
    if (pool.size() < pool_size) {
      pool.emplace_back(x, x + r);
    } else {
      std::uint64_t j = rng() % seen;
      if (j < pool_size) pool[j].assign(x, x + r);
    }
  });
  const std::int64_t h = 3;
  auto random_vector = [&]() {
    const auto& l = pool[rng() % pool.size()];
    IntVector v(r + 2);
    for (std::size_t i = 0; i < r; ++i) v[i] = l[i];
    v[r] = static_cast<std::int64_t>(rng() % (2 * h + 1)) - h;
    v[r + 1] = static_cast<std::int64_t>(rng() % (2 * h + 1)) - h;
    return v;
  };
  auto is_zero = [](const IntVector& v) {
    for (const auto& x : v)
      if (x != 0) return false;
    return true;
  };
  auto draw = [&](bool real) {
    for (int attempt = 0; attempt < 100000; ++attempt) {
      IntVector v = random_vector();
      if (is_zero(v)) continue;
      GradedDim gd = root_multiplicity(rd, v);
      if (gd.mult == 0) continue;
      if (real && half_norm(rd, v) <= 0) continue;
      return gd;
    }
    throw FormulaMismatch("no roots found in the sampling box");
  };
  const std::size_t n = rd.Delta.rank();
  for (std::size_t s = 0; s < sample_size; ++s) {
    GradedDim root = draw(true);
    GradedDim alpha = draw(false);
    ++rep.pairs;
    // reflection matrix, columns are images of basis vectors
    IntMatrix refl(n, n);
    for (std::size_t j = 0; j < n; ++j) {
      IntVector e(n, Integer(0));
      e[j] = 1;
      IntVector img = reflect(rd, root.alpha, e);
      for (std::size_t i = 0; i < n; ++i) refl(i, j) = img[i];
    }
    if (!(refl.transpose() * rd.Delta.gram * refl == rd.Delta.gram)) {
      rep.gram_preserved = false;
      if (!rep.first_problem) rep.first_problem = "reflection in " + describe(root.alpha) + " is not an isometry";
    }
    IntVector image = reflect(rd, root.alpha, alpha.alpha);
    Integer m_image = root_multiplicity(rd, image).mult;
    IntVector neg = alpha.alpha;
    for (auto& x : neg) x = -x;
    Integer m_neg = root_multiplicity(rd, neg).mult;
    if (m_image != alpha.mult || m_neg != alpha.mult) {
      ++rep.mismatches;
      if (!rep.first_problem)
        rep.first_problem = "multiplicity of " + describe(alpha.alpha) + " changes under reflection in " +
                            describe(root.alpha);
    }
  }
  return rep;
}

RootSuiteReport run_root_suite(const ClassData& c, std::int64_t height, std::uint64_t seed, std::size_t weyl_pairs) {
  RootSuiteReport rep;
  // the Weyl sample reaches <alpha,alpha>/2 = -9
  RootDatum rd = make_root_datum(c, std::max<std::int64_t>(height * height, 9) + 2);
  rep.box = verify_root_box(rd, RootBox{height, -1});
  if (!rep.box.ok()) rep.first_problem = rep.box.first_problem;
  try {
    for (std::int64_t n = 1; n <= 24; ++n) imaginary_simple_mult(rd, n);
  } catch (const FormulaMismatch& e) {
    rep.imaginary_ok = false;
    if (!rep.first_problem) rep.first_problem = e.what();
  }
  rep.dim_zero_ok = dim_zero(rd) == c.k();
  if (!rep.dim_zero_ok && !rep.first_problem) rep.first_problem = "dim g(0) differs from k";
  rep.weyl = weyl_invariance_check(rd, weyl_pairs, seed);
  if (!rep.weyl.ok() && !rep.first_problem) rep.first_problem = rep.weyl.first_problem;
  return rep;
}

}  // namespace m23bkm
