#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "rootdatum/catalog.hpp"
#include "rootdatum/decompose.hpp"
#include "rootdatum/isomorphism.hpp"
#include "rootdatum_cli/commands.hpp"
#include "rootdatum_cli/datum_file.hpp"

using namespace rootdatum;
using namespace rootdatum::cli;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run_cli(std::vector<std::string> args, Environment env = {}) {
  std::ostringstream out, err;
  int code = run(args, env, out, err);
  return {code, out.str(), err.str()};
}

struct TempFile {
  std::filesystem::path path;
  explicit TempFile(const std::string& name, const std::string& text)
      : path(std::filesystem::temp_directory_path() / ("rootdatum_test_" + name)) {
    std::ofstream(path) << text;
  }
  ~TempFile() { std::filesystem::remove(path); }
  std::string str() const { return path.string(); }
};

const char* kSu2 =
    "rootdatum 1\n"
    "ring Z\n"
    "rank 1\n"
    "gen\n"
    "-1\n"
    "coroot 0 1 scale 1\n";

}  // namespace

TEST_CASE("parse the documented layout") {
  RootDatum d = parse_datum(kSu2);
  CHECK(d.ring() == Ring::integers());
  CHECK(d.rank() == 1);
  CHECK(d.generators().size() == 1);
  CHECK(d.coroots().at(0).scale == 1);
  RootDatum p = parse_datum(
      "# comment\n"
      "rootdatum 1\n"
      "ring Z2 32\n"
      "rank 2\n"
      "gen\n"
      "-1 0\n"
      "0 1\n"
      "coroot 0 1 0 scale 2^1\n");
  CHECK(p.ring() == Ring::padic(2, 32));
  CHECK(p.coroots().at(0).scale == 2);
  CHECK(parse_datum("rootdatum 1\nring Z3\nrank 1\n", 20).ring() == Ring::padic(3, 20));
}

TEST_CASE("parse errors name the line") {
  const std::pair<const char*, const char*> bad[] = {
      {"", "end of input"},
      {"rootdatum 2\n", "line 1"},
      {"rootdatum 1\nring Q\nrank 1\n", "line 2"},
      {"rootdatum 1\nring Z\nrank 2\ngen\n1 0\n", "line 4"},
      {"rootdatum 1\nring Z\nrank 2\ngen\n1 0\n0 x\n", "line 6"},
      {"rootdatum 1\nring Z\nrank 1\ngen\n-1\ncoroot 1 1 scale 1\n", "line 6"},
      {"rootdatum 1\nring Z\nrank 1\ngen\n-1\ncoroot 0 0 scale 1\n", "zero coroot"},
      {"rootdatum 1\nring Z2 16\nrank 1\ngen\n-1\ncoroot 0 1 scale 3\n", "power of 2"},
      {"rootdatum 1\nring Z\nrank 1\ngen\n-1\nfoo\n", "unknown keyword"},
  };
  for (const auto& [text, needle] : bad) {
    CAPTURE(text);
    try {
      parse_datum(text);
      FAIL("accepted");
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
  }
}

TEST_CASE("serialize then parse is the identity on the canonical form") {
  for (const auto& key : catalog_keys()) {
    RootDatum d = catalog_datum(key);
    std::string text = serialize_datum(d);
    RootDatum back = parse_datum(text);
    CAPTURE(key);
    CHECK(serialize_datum(back) == text);
    CHECK(back.reflection_local() == d.reflection_local());
  }
  CHECK(serialize_datum(catalog_datum("A2.sc.Z")) ==
        "rootdatum 1\nring Z\nrank 2\ngen\n-1 1\n0 1\ngen\n1 0\n1 -1\ncoroot 0 1 0 scale 1\ncoroot 1 0 1 scale 1\n");
}

TEST_CASE("validate command") {
  TempFile good("su2.rd", kSu2);
  Run r = run_cli({"validate", good.str()});
  CHECK(r.code == 0);
  CHECK(r.out.find("(c) im(1-s) in Rb_s: PASS") != std::string::npos);

  std::string text = kSu2;
  text.replace(text.find("scale 1"), 7, "scale 4");
  TempFile bad("su2_scale4.rd", text);
  r = run_cli({"validate", bad.str()});
  CHECK(r.code == 1);
  CHECK(r.out.find("(c) im(1-s) in Rb_s: FAIL") != std::string::npos);

  TempFile truncated("trunc.rd", "rootdatum 1\nring Z\nrank 2\ngen\n-1 0\n");
  r = run_cli({"validate", truncated.str()});
  CHECK(r.code == 2);
  CHECK(r.err.find("line 4") != std::string::npos);

  r = run_cli({"validate", "A2.sc.Z"});
  CHECK(r.code == 0);
  std::size_t passes = 0;
  for (std::size_t pos = 0; (pos = r.out.find(": PASS", pos)) != std::string::npos; ++pos) ++passes;
  CHECK(passes == 5);
}

TEST_CASE("info command") {
  Run r = run_cli({"info", "DI4"});
  CHECK(r.code == 0);
  CHECK(r.out ==
        "name        DI4\n"
        "ring        Z2@64\n"
        "rank        3\n"
        "order       336\n"
        "reflections 21\n"
        "degrees     4 6 14\n"
        "pi1         trivial\n"
        "center      trivial\n");
  r = run_cli({"info", "A3.sc.Z2", "--json"});
  CHECK(r.code == 0);
  CHECK(r.out.find("\"order\": 24") != std::string::npos);
  CHECK(r.out.find("\"center\": \"Z/4\"") != std::string::npos);
  // field order mirrors the text mode
  CHECK(r.out.find("\"name\"") < r.out.find("\"ring\""));
  CHECK(r.out.find("\"pi1\"") < r.out.find("\"center\""));
  r = run_cli({"info", "T1.Z2"});
  CHECK(r.out.find("center      T^1\n") != std::string::npos);
  r = run_cli({"info", "E8.sc.Z"});
  CHECK(r.code == 0);
  CHECK(r.out.find("order       reflection-local") != std::string::npos);
  CHECK(run_cli({"info", "no-such-thing"}).code == 2);
  Environment small;
  small.cap = 10;
  CHECK(run_cli({"info", "A3.sc.Z"}, small).code == 3);
}

TEST_CASE("iso command") {
  Run r = run_cli({"iso", "B3.sc.Z3", "C3.sc.Z3"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("isomorphic\nwitness over Z3", 0) == 0);
  r = run_cli({"iso", "B3.sc.Z2", "C3.sc.Z2"});
  CHECK(r.code == 1);
  CHECK(r.out.find("exhausted") != std::string::npos);
  r = run_cli({"iso", "A1.sc.Z", "A1.ad.Z"});
  CHECK(r.code == 1);
  CHECK(r.out.find("certificate:") != std::string::npos);
  CHECK(run_cli({"iso", "A1.sc.Z", "nope"}).code == 2);
}

TEST_CASE("decompose command") {
  Run r = run_cli({"decompose", "A1.sc.Z"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("A1.sc\n", 0) == 0);
  TempFile prod("f4_di4.rd", serialize_datum(product(catalog_datum("F4.sc.Z2"), catalog_datum("DI4"))));
  r = run_cli({"decompose", prod.str()});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("F4.sc × DI4\n", 0) == 0);
  TempFile rt("refl_torus.rd", "rootdatum 1\nring Z\nrank 2\ngen\n-1 0\n0 1\ncoroot 0 1 0 scale 1\n");
  r = run_cli({"decompose", rt.str()});
  CHECK(r.out.rfind("A1.sc × T1\n", 0) == 0);
  TempFile glued("glued.rd", "rootdatum 1\nring Z\nrank 2\ngen\n0 1\n1 0\ncoroot 0 1 -1 scale 1\n");
  r = run_cli({"decompose", glued.str()});
  CHECK(r.code == 0);
  CHECK(r.out == "does not split\nrational ranks 1 1\n");
}

TEST_CASE("catalog and export commands") {
  Run r = run_cli({"catalog", "list"});
  CHECK(r.code == 0);
  CHECK(r.out.find("DI4\n") != std::string::npos);
  CHECK(r.out.find("E8.ad.Z2\n") != std::string::npos);
  TempFile out("export.rd", "");
  CHECK(run_cli({"export", "G2.sc.Z", out.str()}).code == 0);
  // exported file re-validates and re-identifies
  CHECK(run_cli({"validate", out.str()}).code == 0);
  CHECK(run_cli({"iso", out.str(), "G2.sc.Z"}).code == 0);
  r = run_cli({"export", "A1.sc.Z", "-"});
  CHECK(r.out == "rootdatum 1\nring Z\nrank 1\ngen\n-1\ncoroot 0 1 scale 1\n");
  CHECK(run_cli({"export", "A1.sc.Z", "/nonexistent-dir/x.rd"}).code == 2);
}

TEST_CASE("usage errors and environment") {
  CHECK(run_cli({}).code == 2);
  CHECK(run_cli({"frobnicate"}).code == 2);
  CHECK(run_cli({"validate"}).code == 2);
  CHECK(run_cli({"--help"}).code == 0);
  Environment env = environment_from("32", "500");
  CHECK(env.precision == 32);
  CHECK(env.cap == 500);
  CHECK_THROWS_AS(environment_from("abc", nullptr), ParseError);
  CHECK_THROWS_AS(environment_from(nullptr, "0"), ParseError);
  Run r = run_cli({"info", "A1.sc.Z2"}, env);
  CHECK(r.out.find("ring        Z2@32") != std::string::npos);
}

TEST_CASE("reports are deterministic") {
  Run a = run_cli({"info", "F4.sc.Z2", "--json"});
  Run b = run_cli({"info", "F4.sc.Z2", "--json"});
  CHECK(a.out == b.out);
  Run c = run_cli({"iso", "B3.sc.Z3", "C3.sc.Z3"});
  Run d = run_cli({"iso", "B3.sc.Z3", "C3.sc.Z3"});
  CHECK(c.out == d.out);
}
