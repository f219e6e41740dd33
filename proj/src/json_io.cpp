#include "m23bkm/json_io.hpp"

#include <fstream>
#include <sstream>

namespace m23bkm {

json to_json(const Integer& x) { return x.get_str(); }

json to_json(const Rational& x) { return x.get_str(); }

Integer integer_from_json(const json& j) {
  if (j.is_number_integer()) return Integer(std::to_string(j.get<std::int64_t>()));
  return Integer(j.get<std::string>());
}

Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(Integer(std::to_string(j.get<std::int64_t>())));
  Rational r(j.get<std::string>());
  r.canonicalize();
  if (r.get_den() == 0) throw std::invalid_argument("zero denominator in rational");
  return r;
}

namespace {

// Integers that fit in 64 bits are plain JSON numbers, larger ones are strings.
json exact_integer(const Integer& x) {
  if (fits_int64(x)) return to_int64(x);
  return x.get_str();
}

}  // namespace

json to_json(const FracPowerSeries& s) {
  json c = json::array();
  for (const auto& x : s.coeffs()) c.push_back(json::array({exact_integer(x.get_num()), exact_integer(x.get_den())}));
  return json{{"denom", s.denom()}, {"lead", s.lead()}, {"trunc", s.trunc()}, {"coeffs", c}};
}

FracPowerSeries series_from_json(const json& j) {
  std::vector<Rational> c;
  for (const auto& x : j.at("coeffs")) {
    if (!x.is_array() || x.size() != 2) throw std::invalid_argument("series coefficient must be [num, den]");
    Integer den = integer_from_json(x[1]);
    if (den == 0) throw std::invalid_argument("zero denominator in series coefficient");
    Rational r(integer_from_json(x[0]), den);
    r.canonicalize();
    c.push_back(r);
  }
  return FracPowerSeries::from_coeffs(j.at("denom").get<std::int64_t>(), j.at("lead").get<std::int64_t>(),
                                      std::move(c), j.at("trunc").get<std::int64_t>());
}

namespace {

template <class T, class F>
json matrix_json(const Matrix<T>& m, F&& conv) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json r = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(conv(m(i, j)));
    rows.push_back(r);
  }
  return rows;
}

template <class T, class F>
Matrix<T> matrix_from(const json& j, F&& conv) {
  std::vector<std::vector<T>> rows;
  for (const auto& r : j) {
    std::vector<T> row;
    for (const auto& x : r) row.push_back(conv(x));
    rows.push_back(std::move(row));
  }
  return Matrix<T>::from_rows(rows);
}

}  // namespace

json to_json(const IntMatrix& m) {
  return matrix_json(m, [](const Integer& x) { return exact_integer(x); });
}
IntMatrix int_matrix_from_json(const json& j) { return matrix_from<Integer>(j, integer_from_json); }
json to_json(const RatMatrix& m) {
  return matrix_json(m, [](const Rational& x) { return to_json(x); });
}
RatMatrix rat_matrix_from_json(const json& j) { return matrix_from<Rational>(j, rational_from_json); }

json to_json(const Lattice& l) {
  json j{{"rank", l.rank()}, {"det", to_json(l.det())}, {"gram", to_json(l.gram)}};
  if (l.embedding) j["embedding"] = to_json(*l.embedding);
  if (l.ambient_form) j["ambient_form"] = to_json(*l.ambient_form);
  return j;
}

Lattice lattice_from_json(const json& j) {
  Lattice l(int_matrix_from_json(j.at("gram")));
  if (j.contains("embedding")) l.embedding = rat_matrix_from_json(j.at("embedding"));
  if (j.contains("ambient_form")) l.ambient_form = rat_matrix_from_json(j.at("ambient_form"));
  l.validate();
  if (j.contains("det") && integer_from_json(j.at("det")) != l.det())
    throw IntegrityError("stored lattice determinant does not match its Gram matrix");
  return l;
}

json to_json(const FiniteQuadraticSpace& d) {
  json j{{"orders", d.orders()}, {"q_gram", to_json(d.q_gram())}, {"level", d.level()}};
  if (d.signature_mod8) j["signature_mod8"] = *d.signature_mod8;
  return j;
}

FiniteQuadraticSpace fqs_from_json(const json& j) {
  FiniteQuadraticSpace d(j.at("orders").get<std::vector<std::int64_t>>(), rat_matrix_from_json(j.at("q_gram")));
  if (j.contains("signature_mod8")) d.signature_mod8 = j.at("signature_mod8").get<int>();
  if (j.contains("level") && j.at("level").get<std::int64_t>() != d.level())
    throw IntegrityError("stored level does not match the quadratic form");
  return d;
}

json to_json(const VvmfTable& f) {
  json comps = json::object();
  for (const auto& [key, s] : f.entries) {
    auto it = f.counts.find(key);
    comps[key.to_string()] = json{{"count", it == f.counts.end() ? 0 : it->second}, {"series", to_json(s)}};
  }
  return json{{"m", f.m}, {"weight", f.weight}, {"bound", f.bound}, {"components", comps}};
}

VvmfTable vvmf_from_json(const json& j) {
  VvmfTable f;
  f.m = j.at("m").get<std::int64_t>();
  f.weight = j.at("weight").get<std::int64_t>();
  f.bound = j.at("bound").get<std::int64_t>();
  for (const auto& [k, v] : j.at("components").items()) {
    ClassKey key = ClassKey::parse(k);
    f.entries[key] = series_from_json(v.at("series"));
    f.counts[key] = v.at("count").get<std::int64_t>();
  }
  return f;
}

json to_json(const GolayCode& code) {
  json rows = json::array();
  for (auto g : code.generator) {
    std::string bits;
    for (int i = 0; i < 24; ++i) bits += ((g >> i) & 1U) ? '1' : '0';
    rows.push_back(bits);
  }
  return json{{"length", 24},
              {"dimension", 12},
              {"coordinates", "0..22 are F_23, 23 is infinity; bit string position i is coordinate i"},
              {"generator", rows},
              {"hash", hex64(golay_hash(code))}};
}

GolayCode golay_from_json(const json& j) {
  GolayCode code;
  const auto& rows = j.at("generator");
  if (rows.size() != 12) throw IntegrityError("Golay generator must have 12 rows");
  for (std::size_t r = 0; r < 12; ++r) {
    auto bits = rows[r].get<std::string>();
    if (bits.size() != 24) throw IntegrityError("Golay generator rows must have 24 bits");
    std::uint32_t w = 0;
    for (int i = 0; i < 24; ++i) {
      if (bits[static_cast<std::size_t>(i)] == '1') w |= 1U << i;
      else if (bits[static_cast<std::size_t>(i)] != '0') throw IntegrityError("bad bit in Golay generator");
    }
    code.generator[r] = w;
  }
  if (j.contains("hash") && j.at("hash").get<std::string>() != hex64(golay_hash(code)))
    throw IntegrityError("Golay generator hash mismatch");
  validate_golay(code);
  return code;
}

json to_json(const CycleShape& s) {
  json e = json::object();
  for (auto [t, b] : s.exponents) e[std::to_string(t)] = b;
  return json{{"order", s.order}, {"exponents", e}, {"text", s.to_string()}};
}

json to_json(std::int64_t m, const PermutationIsometry& p, const GolayCode& code) {
  std::vector<int> perm(p.perm.begin(), p.perm.end());
  return json{{"m", m},
              {"cycle_shape", p.cycle_shape.to_string()},
              {"fixed_point", p.fixed_point},
              {"seed", p.seed},
              {"perm", perm},
              {"golay_hash", hex64(golay_hash(code))},
              {"perm_hash", hex64(permutation_hash(m, p.perm))}};
}

PermutationIsometry permutation_from_json(const json& j, const GolayCode& code) {
  auto m = j.at("m").get<std::int64_t>();
  auto perm = j.at("perm").get<std::vector<int>>();
  if (perm.size() != 24) throw IntegrityError("permutation must have 24 entries");
  PermutationIsometry p;
  for (std::size_t i = 0; i < 24; ++i) {
    if (perm[i] < 0 || perm[i] > 23) throw IntegrityError("permutation entry out of range");
    p.perm[i] = static_cast<std::uint8_t>(perm[i]);
  }
  p.cycle_shape = class_shape(m);
  p.fixed_point = j.at("fixed_point").get<int>();
  p.seed = j.at("seed").get<std::uint64_t>();
  if (j.at("golay_hash").get<std::string>() != hex64(golay_hash(code)))
    throw IntegrityError("permutation was recorded against a different Golay code");
  if (j.at("perm_hash").get<std::string>() != hex64(permutation_hash(m, p.perm)))
    throw IntegrityError("permutation hash mismatch for class " + std::to_string(m));
  try {
    validate_class_element(code, p);
  } catch (const std::exception& e) {
    throw IntegrityError(std::string("stored permutation fails validation: ") + e.what());
  }
  return p;
}

json to_json(const CharacterReport& r) {
  json keys = json::array();
  for (const auto& k : r.keys) {
    json e{{"key", k.key.to_string()}, {"status", k.status}, {"witnesses", k.witnesses}};
    if (k.first_mismatch) e["first_mismatch"] = to_json(*k.first_mismatch);
    keys.push_back(e);
  }
  return json{{"m", r.m},
              {"bound", r.bound},
              {"counts_match", r.counts_match},
              {"cosets_enumerated", r.cosets_enumerated},
              {"comparisons", r.comparisons},
              {"status", r.status},
              {"unchecked_exact", r.count("UNCHECKED-EXACT")},
              {"keys", keys}};
}

json to_json(const ReflectivityReport& r) {
  return json{{"ok", r.ok},
              {"components", r.components},
              {"singular_components", r.singular_components},
              {"singular_elements", r.singular_elements},
              {"violations", r.violations}};
}

json to_json(const CongruenceReport& r) {
  return json{{"ok", r.ok}, {"exponents_checked", r.exponents_checked}, {"violations", r.violations}};
}

json to_json(const RootBoxReport& r) {
  json by_norm = json::object();
  for (auto [n, c] : r.real_roots_by_norm) by_norm[std::to_string(n)] = c;
  json j{{"height", r.height},       {"lambda_cap", r.lambda_cap},       {"lambdas", r.lambdas},
         {"vectors", r.vectors},     {"real_roots_by_norm", by_norm},    {"lattice_roots", r.lattice_roots},
         {"mismatches", r.mismatches}};
  if (r.first_problem) j["first_problem"] = *r.first_problem;
  return j;
}

json to_json(const RootSuiteReport& r) {
  json weyl{{"pairs", r.weyl.pairs}, {"mismatches", r.weyl.mismatches}, {"gram_preserved", r.weyl.gram_preserved}};
  json j{{"ok", r.ok()},
         {"box", to_json(r.box)},
         {"weyl", weyl},
         {"imaginary_ok", r.imaginary_ok},
         {"dim_zero_ok", r.dim_zero_ok}};
  if (r.first_problem) j["first_problem"] = *r.first_problem;
  return j;
}

json to_json(const ZhuReport& r) {
  return json{{"size", r.size},
              {"method", r.method},
              {"symmetric", r.symmetric},
              {"unitarity_defect", r.unitarity_defect},
              {"s2_defect", r.s2_defect},
              {"st3_defect", r.st3_defect},
              {"ok", r.ok()}};
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const std::filesystem::path& p, const std::string& content) {
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::filesystem::path tmp = p;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    if (!out.flush()) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, p);
}

}  // namespace m23bkm
