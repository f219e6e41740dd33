#include <doctest.h>

#include "m23bkm/json_io.hpp"
#include "support.hpp"

using namespace m23bkm;
using m23bkm::testing::cls;
using m23bkm::testing::env;

TEST_SUITE("json") {
  TEST_CASE("exact numbers") {
    Integer big("123456789012345678901234567890");
    CHECK(integer_from_json(to_json(big)) == big);
    CHECK(integer_from_json(to_json(Integer(-7))) == -7);
    Rational r = make_rational(Integer(-22), Integer(7));
    CHECK(rational_from_json(to_json(r)) == r);
  }

  TEST_CASE("series") {
    FracPowerSeries f = eta_quotient(class_shape(15), -1, Rational(6));
    json j = to_json(f);
    CHECK(j["coeffs"][0] == json::array({1, 1}));
    CHECK(series_from_json(j) == f);
    FracPowerSeries g = series_pow(eta(1, Rational(40)), -24);
    CHECK(series_from_json(json::parse(to_json(g).dump())) == g);
    FracPowerSeries h = eta(1, Rational(3)).substitute_root(5);
    CHECK(series_from_json(to_json(h)) == h);
  }

  TEST_CASE("lattices and discriminant forms") {
    const ClassData& c = cls(6);
    Lattice l = c.fixed.lattice;
    Lattice back = lattice_from_json(to_json(l));
    CHECK(back.gram == l.gram);
    json bad = to_json(l);
    bad["det"] = "7";
    CHECK_THROWS_AS(lattice_from_json(bad), IntegrityError);

    FiniteQuadraticSpace d = discriminant_form(c.L);
    FiniteQuadraticSpace e = fqs_from_json(to_json(d));
    CHECK(e.orders() == d.orders());
    CHECK(e.level() == d.level());
    CHECK(classify_elements(e) == classify_elements(d));
    json wrong = to_json(d);
    wrong["level"] = 5;
    CHECK_THROWS_AS(fqs_from_json(wrong), IntegrityError);
  }

  TEST_CASE("vector-valued forms") {
    VvmfTable f = lift_F(cls(7), 3);
    VvmfTable g = vvmf_from_json(json::parse(to_json(f).dump()));
    CHECK(g.m == f.m);
    CHECK(g.weight == f.weight);
    CHECK(g.counts == f.counts);
    REQUIRE(g.entries.size() == f.entries.size());
    for (const auto& [k, s] : f.entries) CHECK(g.entries.at(k) == s);
  }

  TEST_CASE("Golay code") {
    json j = to_json(env().code);
    GolayCode c = golay_from_json(j);
    CHECK(golay_hash(c) == golay_hash(env().code));
    json tampered = j;
    tampered["hash"] = "0123456789abcdef";
    CHECK_THROWS_AS(golay_from_json(tampered), IntegrityError);
  }

  TEST_CASE("atomic writes") {
    auto p = std::filesystem::temp_directory_path() / "m23bkm-json-test" / "nested" / "x.json";
    std::filesystem::remove_all(p.parent_path().parent_path());
    write_file_atomic(p, "{\"a\": 1}\n");
    CHECK(json::parse(read_file(p))["a"] == 1);
    CHECK_FALSE(std::filesystem::exists(p.string() + ".tmp"));
  }
}
