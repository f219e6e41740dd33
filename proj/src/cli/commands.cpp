#include <CLI11.hpp>

#include <algorithm>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "m23bkm/cli.hpp"
#include "m23bkm/json_io.hpp"

namespace m23bkm::cli {

namespace {

std::string format_ext(const std::string& format) { return format == "text" ? "txt" : format; }

std::filesystem::path class_dir(const RunConfig& cfg, std::int64_t m) {
  return cfg.out_dir / ("class-" + std::to_string(m));
}

json gram_of(const Lattice& l) { return to_json(l.gram); }

std::int64_t abs_det(const Lattice& l) {
  Integer d = l.det();
  return to_int64(Integer(abs(d)));
}

std::string vector_text(const IntVector& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + v[i].get_str();
  return s;
}

std::vector<std::int64_t> dual_memberships(const RootDatum& rd, const IntVector& alpha) {
  std::vector<std::int64_t> out;
  IntVector w = rd.Delta.gram * alpha;
  for (std::int64_t d : divisors(rd.m)) {
    bool in = std::all_of(w.begin(), w.end(), [&](const Integer& x) { return x % d == 0; });
    if (in) out.push_back(d);
  }
  return out;
}

json lattices_json(const ClassData& c) {
  json j;
  j["m"] = c.m;
  j["cycle_shape"] = c.shape.to_string();
  j["leech_gram"] = gram_of(c.leech);
  j["fixed"] = json{{"basis", to_json(c.fixed.basis)}, {"gram", gram_of(c.fixed.lattice)}};
  j["coinvariant"] = json{{"basis", to_json(c.coinvariant.basis)}, {"gram", gram_of(c.coinvariant.lattice)}};
  j["K"] = gram_of(c.K);
  j["L"] = gram_of(c.L);
  j["Delta"] = gram_of(c.Delta);
  j["disc_fixed"] = to_json(discriminant_form(c.fixed.lattice));
  j["disc_coinvariant"] = to_json(discriminant_form(c.coinvariant.lattice));
  return j;
}

std::string classes_output(const std::vector<ClassData>& rows, const std::string& format) {
  std::ostringstream os;
  if (format == "json") {
    json arr = json::array();
    for (const auto& c : rows) {
      arr.push_back(json{{"m", c.m},
                         {"cycle_shape", frame_shape(c.nu, 1).to_string()},
                         {"conformal_weight", to_json(c.conformal_weight())},
                         {"k", c.k()},
                         {"w", c.weight()},
                         {"rank_fixed", c.fixed.lattice.rank()},
                         {"disc_fixed", abs_det(c.fixed.lattice)},
                         {"disc_K", abs_det(c.K)}});
    }
    os << arr.dump(2) << "\n";
  } else if (format == "csv") {
    os << "m,cycle_shape,conformal_weight,k,w,rank_fixed,disc_fixed,disc_K\n";
    for (const auto& c : rows)
      os << c.m << "," << frame_shape(c.nu, 1).to_string() << "," << c.conformal_weight().get_str() << "," << c.k()
         << "," << c.weight() << "," << c.fixed.lattice.rank() << "," << abs_det(c.fixed.lattice) << ","
         << abs_det(c.K) << "\n";
  } else {
    os << std::left << std::setw(4) << "m" << std::setw(18) << "cycle shape" << std::setw(8) << "h" << std::setw(5)
       << "k" << std::setw(5) << "w" << std::setw(8) << "rk" << std::setw(10) << "|D(fix)|"
       << "|D(K)|\n";
    for (const auto& c : rows)
      os << std::left << std::setw(4) << c.m << std::setw(18) << frame_shape(c.nu, 1).to_string() << std::setw(8)
         << c.conformal_weight().get_str() << std::setw(5) << c.k() << std::setw(5) << c.weight() << std::setw(8)
         << c.fixed.lattice.rank() << std::setw(10) << abs_det(c.fixed.lattice) << abs_det(c.K) << "\n";
  }
  return os.str();
}

struct Verdict {
  std::string suite;
  std::int64_t m;
  std::string status;  // PASS, FAIL or SKIPPED
  std::optional<std::string> first_mismatch;
  json details = json::object();

  json to_json() const {
    json j{{"suite", suite}, {"class", m}, {"status", status}};
    if (first_mismatch) j["first_mismatch"] = *first_mismatch;
    j["details"] = details;
    return j;
  }
};

Verdict suite_lattice(const ClassData& c, const GolayCode& code) {
  Verdict v{"lattice", c.m, "PASS", std::nullopt};
  auto fail = [&](const std::string& why) {
    v.status = "FAIL";
    if (!v.first_mismatch) v.first_mismatch = why;
  };
  auto wd = code.weight_distribution();
  if (wd[8] != 759 || wd[12] != 2576) fail("Golay weight distribution");
  if (c.leech.det() != 1) fail("Leech determinant");
  if (!(frame_shape(c.nu, 1) == class_shape(c.m))) fail("frame shape of nu");
  std::int64_t s0 = sigma0(c.m), s1 = sigma1(c.m);
  if (c.conformal_weight() != make_rational(Integer(c.m - 1), Integer(c.m))) fail("conformal weight");
  if (c.k() * s1 != 24 * s0 + 2 * s1) fail("rank k");
  if (c.weight() * s1 != -12 * s0) fail("weight w");
  if (abs_det(c.fixed.lattice) != abs_det(c.coinvariant.lattice)) fail("fixed and coinvariant discriminants");
  if (abs_det(c.K) != c.m * c.m) fail("discriminant of K");
  if (!fusion_counts_match(c)) fail("class counts of L'/L against the fusion group");
  double worst = 0;
  for (const Lattice* l : {&c.fixed.lattice, &c.coinvariant.lattice, &c.L, &c.Delta}) {
    auto [p, q] = signature(l->gram);
    worst = std::max(worst, milgram_defect(discriminant_form(*l), mod_floor(p - q, 8)));
  }
  if (worst > 1e-9) fail("Milgram formula");
  v.details = json{{"rank_fixed", c.fixed.lattice.rank()},
                   {"disc_fixed", abs_det(c.fixed.lattice)},
                   {"k", c.k()},
                   {"w", c.weight()},
                   {"milgram_max_defect", worst}};
  return v;
}

}  // namespace

Pipeline::Pipeline(const RunConfig& cfg) : cfg_(cfg) {
  code_ = build_golay();
  validate_golay(code_);
  if (!cfg_.data_dir.empty() && std::filesystem::exists(cfg_.data_dir / "golay.json")) {
    GolayCode stored;
    try {
      stored = golay_from_json(json::parse(read_file(cfg_.data_dir / "golay.json")));
    } catch (const json::exception& e) {
      throw IntegrityError(std::string("unreadable golay.json: ") + e.what());
    }
    if (golay_hash(stored) != golay_hash(code_)) throw IntegrityError("golay.json differs from the built code");
  }
  leech_ = build_leech(code_);
}

PermutationIsometry Pipeline::element(std::int64_t m) {
  std::filesystem::path p = cfg_.data_dir / "m23" / (std::to_string(m) + ".json");
  if (!cfg_.data_dir.empty() && std::filesystem::exists(p)) {
    try {
      return permutation_from_json(json::parse(read_file(p)), code_);
    } catch (const json::exception& e) {
      throw IntegrityError("unreadable " + p.string() + ": " + e.what());
    }
  }
  return find_class_element(code_, class_shape(m), cfg_.seed);
}

ClassData Pipeline::class_data(std::int64_t m) {
  PermutationIsometry e = element(m);
  std::string key_text = hex64(golay_hash(code_)) + "/" + std::to_string(m) + "/" + hex64(permutation_hash(m, e.perm));
  std::filesystem::path cache = cfg_.out_dir / "cache" / ("class-" + std::to_string(m) + "-" + hex64(fnv1a64(key_text)) + ".json");
  if (std::filesystem::exists(cache)) {
    json j;
    try {
      j = json::parse(read_file(cache));
    } catch (const json::exception& ex) {
      throw IntegrityError("corrupted cache file " + cache.string() + ": " + ex.what());
    }
    try {
      PermutationIsometry cached = permutation_from_json(j.at("element"), code_);
      ClassData c = m23bkm::class_data(class_shape(m), leech_, cached);
      if (!(int_matrix_from_json(j.at("fixed_gram")) == c.fixed.lattice.gram) ||
          !(int_matrix_from_json(j.at("coinvariant_gram")) == c.coinvariant.lattice.gram) ||
          !(int_matrix_from_json(j.at("L_gram")) == c.L.gram))
        throw IntegrityError("cached lattices do not match the recomputed ones");
      return c;
    } catch (const IntegrityError& ex) {
      throw IntegrityError("cache file " + cache.string() + " failed validation: " + ex.what());
    } catch (const std::exception& ex) {
      throw IntegrityError("cache file " + cache.string() + " failed validation: " + ex.what());
    }
  }
  ClassData c = m23bkm::class_data(class_shape(m), leech_, e);
  json j{{"key", key_text},
         {"element", to_json(m, e, code_)},
         {"fixed_gram", gram_of(c.fixed.lattice)},
         {"coinvariant_gram", gram_of(c.coinvariant.lattice)},
         {"L_gram", gram_of(c.L)}};
  write_file_atomic(cache, j.dump(1) + "\n");
  return c;
}

int cmd_classes(const RunConfig& cfg, std::ostream& out) {
  Pipeline p(cfg);
  std::vector<ClassData> rows;
  for (std::int64_t m : selected_classes(cfg)) rows.push_back(p.class_data(m));
  out << classes_output(rows, cfg.format);
  return kOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  Pipeline p(cfg);
  auto suites = expand_suites(cfg.suites);
  bool all_ok = true;
  for (std::int64_t m : selected_classes(cfg)) {
    ClassData c = p.class_data(m);
    std::vector<Verdict> verdicts;
    for (const auto& s : suites) {
      Verdict v{s, m, "PASS", std::nullopt};
      if (s == "lattice") {
        v = suite_lattice(c, p.code());
      } else if (s == "reflectivity") {
        VvmfTable f = lift_F(c, cfg.trunc_B);
        ReflectivityReport r = check_reflectivity(f);
        CongruenceReport t = check_t_congruence(f);
        if (!r.ok || !t.ok) {
          v.status = "FAIL";
          v.first_mismatch = !r.ok ? r.violations.front() : t.violations.front();
        }
        v.details = json{{"trunc", cfg.trunc_B}, {"reflectivity", to_json(r)}, {"t_congruence", to_json(t)}};
      } else if (s == "characters") {
        CharacterReport r = verify_F_equals_characters(c, cfg.trunc_B, [&](const std::string& msg) { err << msg << "\n"; });
        if (r.status != "PASS") {
          v.status = "FAIL";
          v.first_mismatch = r.first_mismatch;
        }
        v.details = to_json(r);
      } else if (s == "roots") {
        RootSuiteReport r = run_root_suite(c, cfg.height_cap, cfg.seed);
        if (!r.ok()) {
          v.status = "FAIL";
          v.first_mismatch = r.first_problem.value_or("root suite failed");
        }
        v.details = to_json(r);
      } else if (s == "vi24") {
        Integer d = vi_dim_check(c);
        if (d != 24) {
          v.status = "FAIL";
          v.first_mismatch = "constant term is " + d.get_str();
        }
        v.details = json{{"constant_term", to_json(d)}};
      } else if (s == "zhu") {
        std::uint64_t size = static_cast<std::uint64_t>(abs_det(c.coinvariant.lattice)) *
                             static_cast<std::uint64_t>(c.m * c.m);
        if (size > 10000) {
          v.status = "SKIPPED";
          v.details = json{{"size", size}, {"reason", "fusion group larger than 10^4"}};
        } else {
          ZhuReport r = check_zhu(c, cfg.seed);
          if (!r.ok()) {
            v.status = "FAIL";
            v.first_mismatch = "Zhu relations violated";
          }
          v.details = to_json(r);
        }
      }
      if (v.status == "FAIL") all_ok = false;
      out << "class " << m << " " << std::left << std::setw(13) << v.suite << v.status;
      if (v.first_mismatch) out << "  " << *v.first_mismatch;
      out << "\n";
      verdicts.push_back(std::move(v));
    }
    json arr = json::array();
    for (const auto& v : verdicts) arr.push_back(v.to_json());
    write_file_atomic(class_dir(cfg, m) / "verify.json", arr.dump(2) + "\n");
  }
  return all_ok ? kOk : kVerificationFailed;
}

namespace {

std::string emit_F(const ClassData& c, const RunConfig& cfg) {
  VvmfTable f = lift_F(c, cfg.trunc_B);
  std::ostringstream os;
  if (cfg.format == "json") {
    os << to_json(f).dump(2) << "\n";
  } else if (cfg.format == "csv") {
    os << "component,count,exponent,coefficient\n";
    for (const auto& [k, s] : f.entries)
      for (std::size_t i = 0; i < s.coeffs().size(); ++i) {
        if (s.coeffs()[i] == 0) continue;
        Rational e = make_rational(Integer(s.lead() + static_cast<std::int64_t>(i)), Integer(s.denom()));
        os << k.to_string() << "," << f.counts.at(k) << "," << e.get_str() << "," << s.coeffs()[i].get_str() << "\n";
      }
  } else {
    for (const auto& [k, s] : f.entries) os << k.to_string() << " x" << f.counts.at(k) << ": " << s.to_string() << "\n";
  }
  return os.str();
}

std::string emit_characters(const ClassData& c, const RunConfig& cfg) {
  VvmfTable f = lift_F(c, cfg.trunc_B);
  std::ostringstream os;
  json arr = json::array();
  if (cfg.format == "csv") os << "element,j,component,exponent,coefficient\n";
  for_each_untwisted_character(c, f, [&](const GroupElement& a, std::int64_t, std::int64_t j, const ClassKey& k,
                                         const FracPowerSeries& g) {
    Rational limit = f.entries.at(k).lead_exponent() + Rational(static_cast<long>(cfg.trunc_B)) + Rational(1, 2);
    FracPowerSeries t = g.truncated(limit);
    std::string el;
    for (std::size_t i = 0; i < a.size(); ++i) el += (i ? " " : "") + std::to_string(a[i]);
    if (cfg.format == "json") {
      arr.push_back(json{{"element", a}, {"j", j}, {"component", k.to_string()}, {"series", to_json(t)}});
    } else if (cfg.format == "csv") {
      for (std::size_t i = 0; i < t.coeffs().size(); ++i) {
        if (t.coeffs()[i] == 0) continue;
        Rational e = make_rational(Integer(t.lead() + static_cast<std::int64_t>(i)), Integer(t.denom()));
        os << el << "," << j << "," << k.to_string() << "," << e.get_str() << "," << t.coeffs()[i].get_str() << "\n";
      }
    } else {
      os << "(" << el << ") j=" << j << " -> " << k.to_string() << ": " << t.to_string() << "\n";
    }
  });
  if (cfg.format == "json") os << arr.dump(2) << "\n";
  return os.str();
}

std::string emit_roots(const ClassData& c, const RunConfig& cfg) {
  RootDatum rd = make_root_datum(c, cfg.height_cap * cfg.height_cap + 2);
  std::int64_t norm_cap = cfg.norm_cap >= 0 ? cfg.norm_cap : c.m;
  RootBox box{cfg.height_cap, -1};
  std::vector<GradedDim> real = real_roots(rd, norm_cap, box);
  const std::int64_t simple_height = std::min<std::int64_t>(cfg.height_cap, 1);
  std::vector<GradedDim> simple = simple_real_roots(rd, simple_height);
  auto norm_of = [&](const GradedDim& g) { return to_int64(Integer(rd.Delta.norm(g.alpha) / 2)); };
  std::ostringstream os;
  if (cfg.format == "json") {
    auto rows = [&](const std::vector<GradedDim>& v) {
      json arr = json::array();
      for (const auto& g : v)
        arr.push_back(json{{"alpha", to_json(IntMatrix::from_rows({g.alpha}))[0]},
                           {"norm", norm_of(g)},
                           {"d", dual_memberships(rd, g.alpha)},
                           {"mult", to_json(g.mult)}});
      return arr;
    };
    std::map<std::int64_t, std::uint64_t> by_norm;
    for (const auto& g : real) ++by_norm[norm_of(g)];
    json summary = json::object();
    for (auto [n, k] : by_norm) summary[std::to_string(n)] = k;
    json j{{"m", c.m},
           {"coordinates", "(lambda in the fixed-lattice basis, a, b); <alpha,alpha>/2 = <lambda,lambda>/2 - ab"},
           {"rho", to_json(IntMatrix::from_rows({rd.rho}))[0]},
           {"box", json{{"height", box.height}, {"lambda_cap", box.effective_lambda_cap(c.m)}}},
           {"norm_cap", norm_cap},
           {"real_roots_by_norm", summary},
           {"real_roots", rows(real)},
           {"simple_root_height_cap", simple_height},
           {"simple_real_roots", rows(simple)}};
    os << j.dump(1) << "\n";
  } else {
    bool csv = cfg.format == "csv";
    if (csv) os << "kind,alpha,norm,d_memberships,mult\n";
    auto put = [&](const char* kind, const GradedDim& g) {
      std::string ds;
      for (auto d : dual_memberships(rd, g.alpha)) ds += (ds.empty() ? "" : ";") + std::to_string(d);
      if (csv)
        os << kind << "," << vector_text(g.alpha) << "," << norm_of(g) << "," << ds << "," << g.mult.get_str() << "\n";
      else
        os << kind << " (" << vector_text(g.alpha) << ") norm/2=" << norm_of(g) << " d=" << ds
           << " mult=" << g.mult.get_str() << "\n";
    };
    for (const auto& g : real) put("real", g);
    for (const auto& g : simple) put("simple", g);
  }
  return os.str();
}

}  // namespace

int cmd_emit(const RunConfig& cfg, const std::string& what, std::ostream& out, std::ostream& err) {
  static const std::vector<std::string> kinds{"F", "characters", "roots", "lattices"};
  if (std::find(kinds.begin(), kinds.end(), what) == kinds.end())
    throw UsageError("emit expects one of F, characters, roots, lattices");
  Pipeline p(cfg);
  for (std::int64_t m : selected_classes(cfg)) {
    ClassData c = p.class_data(m);
    std::string body;
    std::string ext = format_ext(cfg.format);
    if (what == "F") {
      body = emit_F(c, cfg);
    } else if (what == "characters") {
      body = emit_characters(c, cfg);
    } else if (what == "roots") {
      try {
        body = emit_roots(c, cfg);
      } catch (const TooLarge& e) {
        throw UsageError(std::string(e.what()) + "; lower --height-cap");
      }
    } else {
      body = lattices_json(c).dump(1) + "\n";
      ext = "json";
    }
    std::filesystem::path file = class_dir(cfg, m) / (what + "." + ext);
    write_file_atomic(file, body);
    out << file.string() << "\n";
  }
  (void)err;
  return kOk;
}

int cmd_make_data(const RunConfig& cfg, const std::filesystem::path& dir, std::ostream& out) {
  RunConfig search = cfg;
  search.data_dir.clear();
  search.out_dir = dir / ".cache";
  Pipeline p(search);
  write_file_atomic(dir / "golay.json", to_json(p.code()).dump(2) + "\n");
  out << (dir / "golay.json").string() << "\n";
  for (std::int64_t m : class_orders()) {
    PermutationIsometry e = find_class_element(p.code(), class_shape(m), cfg.seed);
    std::filesystem::path pf = dir / "m23" / (std::to_string(m) + ".json");
    write_file_atomic(pf, to_json(m, e, p.code()).dump(2) + "\n");
    ClassData c = m23bkm::class_data(class_shape(m), p.leech(), e);
    std::filesystem::path lf = dir / "lattices" / (std::to_string(m) + ".json");
    write_file_atomic(lf, lattices_json(c).dump(1) + "\n");
    out << pf.string() << "\n" << lf.string() << "\n";
  }
  std::filesystem::remove_all(dir / ".cache");
  return kOk;
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lattices, vector-valued modular forms and root data for the ten square-free classes of M23"};
  app.require_subcommand(1);
  std::string config_path, class_opt, suites_opt, out_opt, format_opt, data_opt;
  std::int64_t trunc = 0, height = 0, norm_cap = 0;
  std::uint64_t seed = 0;
  app.add_option("--config", config_path, "key=value configuration file");
  auto* o_class = app.add_option("--class", class_opt, "class order m, or 'all'");
  auto* o_trunc = app.add_option("--trunc", trunc, "coefficients through lead + B");
  auto* o_height = app.add_option("--height-cap", height, "root box height");
  auto* o_norm = app.add_option("--norm-cap", norm_cap, "largest <alpha,alpha>/2 for emitted real roots");
  auto* o_seed = app.add_option("--seed", seed, "random seed");
  auto* o_out = app.add_option("--out", out_opt, "output directory");
  auto* o_format = app.add_option("--format", format_opt, "json, csv or text");
  auto* o_suites = app.add_option("--suites", suites_opt, "comma-separated suites or 'all'");
  auto* o_data = app.add_option("--data", data_opt, "directory with shipped data files");
  app.fallthrough();

  auto* classes = app.add_subcommand("classes", "print the table of the ten classes");
  auto* verify = app.add_subcommand("verify", "run verification suites");
  auto* emit = app.add_subcommand("emit", "write F, characters, roots or lattices");
  std::string what;
  emit->add_option("what", what, "F, characters, roots or lattices")->required();
  auto* make_data = app.add_subcommand("make-data", "regenerate the shipped data files");
  std::string data_target;
  make_data->add_option("dir", data_target, "target directory")->required();
  for (auto* sub : {classes, verify, emit, make_data}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    RunConfig cfg;
#ifdef M23BKM_DATA_DIR
    cfg.data_dir = M23BKM_DATA_DIR;
#endif
    if (!config_path.empty()) {
      std::string text;
      try {
        text = read_file(config_path);
      } catch (const std::exception& e) {
        throw UsageError(e.what());
      }
      for (const auto& [k, v] : parse_config_text(text)) apply_setting(cfg, k, v);
    }
    if (*o_class) apply_setting(cfg, "class", class_opt);
    if (*o_trunc) cfg.trunc_B = trunc;
    if (*o_height) cfg.height_cap = height;
    if (*o_norm) cfg.norm_cap = norm_cap;
    if (*o_seed) cfg.seed = seed;
    if (*o_out) cfg.out_dir = out_opt;
    if (*o_format) apply_setting(cfg, "format", format_opt);
    if (*o_suites) apply_setting(cfg, "suites", suites_opt);
    if (*o_data) cfg.data_dir = data_opt;
    validate(cfg);

    if (*classes) return cmd_classes(cfg, out);
    if (*verify) return cmd_verify(cfg, out, err);
    if (*emit) return cmd_emit(cfg, what, out, err);
    return cmd_make_data(cfg, data_target, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const IntegrityError& e) {
    err << "integrity error: " << e.what() << "\n";
    return kInternal;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  }
}

}  // namespace m23bkm::cli
