#include "doctest.h"
#include "oracles.hpp"
#include "rootdatum/catalog.hpp"
#include "rootdatum/errors.hpp"

using namespace rootdatum;

TEST_CASE("key grammar") {
  CatalogKey k = CatalogKey::parse("B3.ad.Z2");
  CHECK(k.family == Family::B);
  CHECK(k.rank == 3);
  CHECK(k.form == Form::Adjoint);
  CHECK(k.ring == Ring::padic(2));
  CHECK(k.str() == "B3.ad.Z2");
  CHECK(k.type_name() == "B3.ad");
  CHECK(CatalogKey::parse("A2.sc").str() == "A2.sc.Z");
  CHECK(CatalogKey::parse("F4.sc.Z3@32").str() == "F4.sc.Z3@32");
  CHECK(CatalogKey::parse("T2.Z2").type_name() == "T2");
  CHECK(CatalogKey::parse("DI4").str() == "DI4");
  CHECK(CatalogKey::parse("DI4").ring == Ring::padic(2));
  CHECK(CatalogKey::parse("DI4.Z2@32").ring.precision() == 32);
  CHECK(CatalogKey::parse("A2.sc.Z2", 40).str() == "A2.sc.Z2@40");
  for (const char* bad : {"", "Q2.sc.Z", "A0.sc.Z", "B1.sc.Z", "D3.sc.Z", "E9.sc.Z", "G3.sc.Z", "A2.xx.Z",
                          "A2.sc.Z4", "DI4.Z3", "A2.sc.Z2@0"})
    CHECK_THROWS_AS(CatalogKey::parse(bad), BadKey);
}

TEST_CASE("Cartan matrices") {
  for (char f : {'A', 'B', 'C', 'D'}) {
    Family fam = f == 'A' ? Family::A : f == 'B' ? Family::B : f == 'C' ? Family::C : Family::D;
    for (unsigned n = f == 'D' ? 4 : 2; n <= 6; ++n) {
      Matrix a = cartan_matrix(fam, n);
      oracle::Mat o = oracle::cartan(f, n);
      for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j) CHECK(a(i, j) == o[i][j]);
    }
  }
  // determinants = order of the weight lattice modulo the root lattice
  CHECK(determinant(cartan_matrix(Family::E, 6)) == 3);
  CHECK(determinant(cartan_matrix(Family::E, 7)) == 2);
  CHECK(determinant(cartan_matrix(Family::E, 8)) == 1);
  CHECK(determinant(cartan_matrix(Family::F, 4)) == 1);
  CHECK(determinant(cartan_matrix(Family::G, 2)) == 1);
  CHECK(cartan_matrix(Family::G, 2)(0, 1) == -3);
}

TEST_CASE("sc forms have trivial pi1, ad forms trivial center") {
  for (const auto& k : catalog_keys()) {
    if (k == "DI4") continue;
    RootDatum d = catalog_datum(k);
    CAPTURE(k);
    if (k.find(".sc.") != std::string::npos)
      CHECK(fundamental_group(d).is_trivial());
    else
      CHECK(center(d).is_trivial());
  }
}

TEST_CASE("E7 and E8 are reflection-local") {
  for (const char* k : {"E7.sc.Z", "E7.ad.Z2", "E8.sc.Z", "E8.ad.Z2"}) {
    RootDatum d = catalog_datum(k);
    CHECK(d.reflection_local());
    ValidationReport rep = validate(d);
    CHECK(rep.passed());
    CHECK(rep.clause('b').verdict == Verdict::Flagged);
  }
  CHECK(catalog_datum("E7.sc.Z").reflections().size() == 63);
  CHECK(catalog_datum("E8.sc.Z").reflections().size() == 120);
}

TEST_CASE("base change and tori") {
  RootDatum a1 = catalog_datum("A1.ad.Z");
  RootDatum a1_3 = base_change(a1, 3);
  CHECK(a1_3.ring() == Ring::padic(3));
  // scale 2 is a unit over Z3, so the adjoint form becomes simply connected
  CHECK(identify(a1_3) == std::optional<std::string>("A1.sc"));
  RootDatum t = torus_datum(3, Ring::padic(5));
  CHECK(t.generators().empty());
  CHECK(validate(t).passed());
  CHECK(catalog_datum("T2.Z2").rank() == 2);
  CHECK(torus_datum(0).rank() == 0);
}

TEST_CASE("DI4 generators") {
  auto gens = di4_generators(64, 3);
  REQUIRE(gens.size() == 3);
  for (const auto& g : gens) {
    auto r = is_reflection(g);
    REQUIRE(r);
    CHECK(r->order == 2);
  }
  CHECK_THROWS_AS(di4_generators(8, 3), PrecisionLoss);
  RootDatum d = di4(32);
  CHECK(validate(d).passed());
  CHECK(d.weyl_group().order() == 336);
}

TEST_CASE("identify") {
  CHECK(identify(catalog_datum("B2.sc.Z")) == std::optional<std::string>("B2.sc"));
  // Spin(5) = Sp(2): C2.sc is found under the B2 name first
  CHECK(identify(catalog_datum("C2.sc.Z")) == std::optional<std::string>("B2.sc"));
  CHECK(identify(catalog_datum("G2.ad.Z2")) == std::optional<std::string>("G2.sc"));
  CHECK(identify(catalog_datum("DI4")) == std::optional<std::string>("DI4"));
  CHECK(identify(torus_datum(2)) == std::optional<std::string>("T2"));
  CHECK(!identify(product(catalog_datum("A1.sc.Z"), catalog_datum("A1.sc.Z"))).has_value());
}
