// Acceptance run: one PASS/FAIL line per criterion.
//   acceptance            all criteria
//   acceptance 4 6        selected criteria

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "property_suites.hpp"
#include "rootdatum/catalog.hpp"
#include "rootdatum/decompose.hpp"
#include "rootdatum/errors.hpp"
#include "rootdatum/isomorphism.hpp"
#include "rootdatum/molien.hpp"
#include "rootdatum/padic.hpp"
#include "rootdatum_cli/commands.hpp"
#include "rootdatum_cli/datum_file.hpp"

using namespace rootdatum;

namespace {

// Time budgets in seconds.
constexpr double kAxiomSuiteBudget = 60.0;
constexpr double kDi4Budget = 10.0;
constexpr double kIsoBudget = 60.0;
constexpr double kPropertyBudget = 120.0;
constexpr std::uint64_t kPropertySeed = 20240601;

struct Outcome {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (ok) return;
    if (pass) detail.clear();
    pass = false;
    detail += (detail.empty() ? "" : "; ") + what;
  }
};

double since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt_seconds(double s) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(2);
  os << s << " s";
  return os.str();
}

template <class T>
std::string list(const std::vector<T>& v) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << '}';
  return os.str();
}

oracle::Mat to_oracle(const Matrix& m) {
  oracle::Mat a(m.rows(), oracle::Row(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] = m(i, j);
  return a;
}

std::vector<oracle::Mat> to_oracle(const std::vector<Matrix>& ms) {
  std::vector<oracle::Mat> out;
  for (const auto& m : ms) out.push_back(to_oracle(m));
  return out;
}

mpz_class pow_ui(unsigned p, unsigned k) {
  mpz_class x;
  mpz_ui_pow_ui(x.get_mpz_t(), p, k);
  return x;
}

// φ g ≡ h φ (mod p^k) for some h in `target` and every generator g:
// φ conjugates W into W' without inverting φ.
bool conjugates_into(const Matrix& phi, const std::vector<Matrix>& gens, const std::vector<oracle::Mat>& target,
                     const mpz_class& mod) {
  oracle::Mat f = to_oracle(phi);
  for (auto& row : f)
    for (auto& x : row) x = oracle::reduce(x, mod);
  for (const auto& g : gens) {
    oracle::Mat lhs = oracle::multiply(f, to_oracle(g), mod);
    bool hit = false;
    for (const auto& h : target) {
      oracle::Mat hr = h;
      for (auto& row : hr)
        for (auto& x : row) x = oracle::reduce(x, mod);
      if (oracle::multiply(hr, f, mod) == lhs) {
        hit = true;
        break;
      }
    }
    if (!hit) return false;
  }
  return true;
}

std::vector<unsigned> doubled(std::vector<unsigned> d) {
  for (auto& x : d) x *= 2;
  return d;
}

// FiniteAbelianGroup text for the 2-parts of a list of invariant factors.
std::string two_parts(const std::vector<mpz_class>& factors) {
  FiniteAbelianGroup g;
  for (const auto& d : factors) {
    unsigned v = oracle::valuation(d, 2);
    if (v) g.invariant_factors.push_back(pow_ui(2, v));
  }
  return g.str();
}

// ---------------------------------------------------------------------------

Outcome axiom_suite() {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  std::set<std::string> required;
  std::vector<std::string> types;
  for (int n = 1; n <= 8; ++n) types.push_back("A" + std::to_string(n));
  for (int n = 2; n <= 4; ++n) types.push_back("B" + std::to_string(n)), types.push_back("C" + std::to_string(n));
  for (const char* t : {"D4", "G2", "F4", "E6", "E7", "E8"}) types.push_back(t);
  for (const auto& t : types)
    for (const char* form : {".sc", ".ad"})
      for (const char* ring : {".Z", ".Z2"}) required.insert(t + form + ring);
  required.insert("DI4");
  const auto keys = catalog_keys();
  for (const auto& k : required)
    o.require(std::find(keys.begin(), keys.end(), k) != keys.end(), "catalog lacks " + k);
  std::size_t flagged = 0;
  for (const auto& k : keys) {
    RootDatum d = catalog_datum(k);
    ValidationReport rep = validate(d);
    o.require(rep.passed(), k + " does not validate");
    bool local = k.rfind("E7", 0) == 0 || k.rfind("E8", 0) == 0;
    o.require(d.reflection_local() == local, k + ": reflection-local flag is wrong");
    if (rep.clause('b').verdict == Verdict::Flagged) ++flagged;
  }
  double s = since(t0);
  o.require(s < kAxiomSuiteBudget, "runtime " + fmt_seconds(s) + " over budget");
  if (o.pass)
    o.detail = std::to_string(keys.size()) + " entries valid (" + std::to_string(flagged) +
               " reflection-local), " + fmt_seconds(s);
  return o;
}

Outcome steenrod_table() {
  Outcome o;
  // Rows of the table as printed: F2[x4, x6, ..., x2n] (SU(n)) and
  // F2[x4, x8, ..., x4n] (Sp(n)).
  for (unsigned n = 2; n <= 8; ++n) {
    std::vector<unsigned> row;
    for (unsigned d = 4; d <= 2 * n; d += 2) row.push_back(d);
    auto got = doubled(molien_degrees(catalog_datum("A" + std::to_string(n - 1) + ".sc.Z2").weyl_group()));
    o.require(got == row, "SU(" + std::to_string(n) + "): " + list(got) + " vs " + list(row));
  }
  for (unsigned n = 2; n <= 4; ++n) {
    std::vector<unsigned> row;
    for (unsigned d = 4; d <= 4 * n; d += 4) row.push_back(d);
    auto got = doubled(molien_degrees(catalog_datum("C" + std::to_string(n) + ".sc.Z2").weyl_group()));
    o.require(got == row, "Sp(" + std::to_string(n) + "): " + list(got) + " vs " + list(row));
  }
  if (o.pass) o.detail = "SU(2..8) and Sp(2..4) rows match";
  return o;
}

Outcome shephard_todd() {
  Outcome o;
  std::size_t checked = 0;
  std::map<std::string, std::pair<std::size_t, std::size_t>> seen;
  for (const auto& k : catalog_keys()) {
    RootDatum d = catalog_datum(k);
    if (d.reflection_local()) continue;
    const MatrixGroup& w = d.weyl_group();
    auto deg = molien_degrees(w);
    mpz_class prod = 1;
    std::size_t sum = 0;
    for (unsigned x : deg) prod *= x, sum += x - 1;
    o.require(prod == w.order(), k + ": product of degrees " + prod.get_str() + " vs |W| " + std::to_string(w.order()));
    o.require(sum == d.reflections().size(), k + ": sum(d-1) " + std::to_string(sum) + " vs " +
                                                 std::to_string(d.reflections().size()) + " reflections");
    seen[k] = {w.order(), d.reflections().size()};
    ++checked;
  }
  // F4 pinned against an independent closure over Z
  auto f4 = oracle::closure(to_oracle(catalog_datum("F4.sc.Z").generators()), 4, 0);
  o.require(f4 && f4->size() == 1152 && oracle::count_reflections(*f4) == 24, "F4 oracle is not 1152/24");
  o.require(seen["F4.sc.Z"] == std::make_pair<std::size_t, std::size_t>(1152, 24), "F4.sc.Z is not 1152/24");
  o.require(seen["DI4"] == std::make_pair<std::size_t, std::size_t>(336, 21), "DI4 is not 336/21");
  if (o.pass) o.detail = std::to_string(checked) + " enumerable entries, F4 1152/24, DI4 336/21";
  return o;
}

Outcome di4_pins() {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  const unsigned k = 64;
  const mpz_class mod = pow_ui(2, k);
  RootDatum d = di4(k, 3);
  const MatrixGroup& w = d.weyl_group();

  auto elems = oracle::closure(to_oracle(di4_generators(k, 3)), 3, mod);
  o.require(elems.has_value(), "oracle closure did not terminate");
  if (!elems) return o;
  o.require(elems->size() == 336, "oracle |W| = " + std::to_string(elems->size()));
  o.require(w.order() == elems->size(), "|W| = " + std::to_string(w.order()));
  const std::size_t orefl = oracle::count_reflections(*elems, 2, k);
  o.require(orefl == 21, "oracle reflection count " + std::to_string(orefl));
  o.require(d.reflections().size() == orefl, "reflections = " + std::to_string(d.reflections().size()));
  auto odeg = oracle::degrees_from_fixed_spaces(*elems, 3, 2, k);
  const std::vector<unsigned> pin{4, 6, 14};
  o.require(odeg && *odeg == pin, "oracle degrees " + (odeg ? list(*odeg) : std::string("none")));
  auto deg = molien_degrees(w);
  o.require(deg == pin, "Molien degrees " + list(deg));

  // reduction mod 2: image of order 168, kernel {1, -1}
  std::set<oracle::Mat> image;
  std::vector<oracle::Mat> kernel;
  for (const auto& e : *elems) {
    oracle::Mat r = e;
    for (auto& row : r)
      for (auto& x : row) x = oracle::reduce(x, 2);
    if (r == oracle::identity(3)) kernel.push_back(e);
    image.insert(std::move(r));
  }
  oracle::Mat minus = oracle::identity(3);
  for (std::size_t i = 0; i < 3; ++i) minus[i][i] = mod - 1;
  std::sort(kernel.begin(), kernel.end());
  std::vector<oracle::Mat> expect_kernel{oracle::identity(3), minus};
  std::sort(expect_kernel.begin(), expect_kernel.end());
  o.require(image.size() == 168, "mod-2 image of order " + std::to_string(image.size()));
  o.require(kernel == expect_kernel, "kernel of reduction has " + std::to_string(kernel.size()) + " elements");

  // Hensel witnesses for both branches
  PAdicInt u3 = hensel_sqrt(PAdicInt(2, -7, k), 3), u13 = hensel_sqrt(PAdicInt(2, -7, k), 13);
  for (const auto* u : {&u3, &u13}) {
    mpz_class r = oracle::reduce(u->residue() * u->residue() + 7, mod);
    o.require(r == 0, "u^2 + 7 != 0 mod 2^64 for u = " + u->residue().get_str());
  }
  o.require(oracle::reduce(u3.residue() + u13.residue(), mod) == 0, "seeds 3 and 13 do not give opposite roots");

  RootDatum d13 = di4(k, 13);
  IsoResult iso = find_isomorphism(d, d13);
  o.require(iso.status == IsoStatus::Found, "seed branches not isomorphic: " + iso.reason);
  if (iso.witness) {
    o.require(is_isomorphism(d, d13, *iso.witness), "witness fails the definition check");
    auto e13 = oracle::closure(to_oracle(di4_generators(k, 13)), 3, mod);
    mpz_class wmod = iso.witness->ring().modulus();
    o.require(e13 && conjugates_into(*iso.witness, d.generators(), *e13, wmod),
              "witness does not conjugate W into W' (oracle)");
  }
  double s = since(t0);
  o.require(s < kDi4Budget, "runtime " + fmt_seconds(s) + " over budget");
  if (o.pass)
    o.detail = "|W| 336, 21 reflections, degrees {4,6,14}, mod-2 image 168 with kernel {1,-1}, " + fmt_seconds(s);
  return o;
}

Outcome coroot_enumeration() {
  Outcome o;
  const Ring z = Ring::integers();
  auto data = coroot_collections(z, 1, {Matrix::from_rows(z, {{-1}})});
  // oracle: 2Z ⊆ cZ ⊆ Z leaves c | 2
  std::size_t expect = 0;
  for (long c = 1; c <= 2; ++c)
    if (2 % c == 0) ++expect;
  o.require(data.size() == expect, "got " + std::to_string(data.size()) + " data");
  std::vector<std::string> names;
  for (const auto& d : data) {
    o.require(validate(d).passed(), "an enumerated datum does not validate");
    names.push_back(identify(d).value_or("?"));
  }
  std::sort(names.begin(), names.end());
  o.require(names == std::vector<std::string>{"A1.ad", "A1.sc"}, "identified as " + list(names));
  if (o.pass) o.detail = "2 data: A1.sc and A1.ad";
  return o;
}

Outcome iso_discrimination() {
  Outcome o;
  std::vector<std::string> times;
  auto timed = [&](const char* a, const char* b) {
    auto t0 = std::chrono::steady_clock::now();
    IsoResult r = find_isomorphism(catalog_datum(a), catalog_datum(b));
    double s = since(t0);
    o.require(s < kIsoBudget, std::string(a) + " vs " + b + " took " + fmt_seconds(s));
    times.push_back(fmt_seconds(s));
    return r;
  };
  IsoResult z2 = timed("B3.sc.Z2", "C3.sc.Z2");
  o.require(!z2 && z2.status == IsoStatus::Exhausted, "B3/C3 over Z2: " + z2.reason);

  IsoResult z3 = timed("B3.sc.Z3", "C3.sc.Z3");
  o.require(bool(z3), "B3/C3 over Z3: " + z3.reason);
  if (z3.witness) {
    const Matrix& phi = *z3.witness;
    o.require(is_isomorphism(catalog_datum("B3.sc.Z3"), catalog_datum("C3.sc.Z3"), phi), "Z3 witness fails the check");
    mpz_class det = oracle::determinant(to_oracle(phi));
    o.require(det % 3 != 0, "Z3 witness is not invertible");
    auto w = oracle::closure(to_oracle(catalog_datum("C3.sc.Z3").generators()), 3, phi.ring().modulus());
    o.require(w && conjugates_into(phi, catalog_datum("B3.sc.Z3").generators(), *w, phi.ring().modulus()),
              "Z3 witness does not conjugate W into W' (oracle)");
  }

  IsoResult a1 = timed("A1.sc.Z", "A1.ad.Z");
  o.require(a1.status == IsoStatus::Invariant && !a1.reason.empty(), "A1.sc/A1.ad: no invariant certificate");
  if (o.pass)
    o.detail = "Z2 exhausted, Z3 witness verified, A1 certificate '" + a1.reason + "' (" + times[0] + ", " +
               times[1] + ", " + times[2] + ")";
  return o;
}

Outcome center_regression() {
  Outcome o;
  for (unsigned n = 2; n <= 8; ++n) {
    const std::string expect = two_parts(oracle::smith_by_minors(oracle::cartan('A', n - 1)));
    const std::string a = "A" + std::to_string(n - 1);
    std::string pi1 = fundamental_group(catalog_datum(a + ".ad.Z2")).str();
    o.require(pi1 == expect, "pi1(PU(" + std::to_string(n) + ")) = " + pi1 + ", oracle " + expect);
    CenterDescriptor z = center(catalog_datum(a + ".sc.Z2"));
    o.require(z.torus_rank == 0 && z.finite_part.str() == expect,
              "Z(SU(" + std::to_string(n) + ")) = " + z.str() + ", oracle " + expect);
  }
  for (unsigned n = 2; n <= 4; ++n) {
    const std::string expect = two_parts(oracle::smith_by_minors(oracle::cartan('C', n)));
    o.require(expect == "Z/2", "oracle for Sp(" + std::to_string(n) + ") gives " + expect);
    CenterDescriptor z = center(catalog_datum("C" + std::to_string(n) + ".sc.Z2"));
    o.require(z.torus_rank == 0 && z.finite_part.str() == expect, "Z(Sp(" + std::to_string(n) + ")) = " + z.str());
  }
  std::size_t adjoint = 0;
  for (const auto& k : catalog_keys()) {
    if (k.find(".ad.") == std::string::npos) continue;
    o.require(center(catalog_datum(k)).is_trivial(), k + " has nontrivial center");
    ++adjoint;
  }
  if (o.pass) o.detail = "PU(n), SU(n), Sp(n) agree with the Smith oracle; " + std::to_string(adjoint) + " adjoint centers trivial";
  return o;
}

Outcome structural() {
  Outcome o;
  // σ = 1 + b_σ β_σ on every catalog reflection
  std::size_t count = 0;
  for (const auto& k : catalog_keys()) {
    RootDatum d = catalog_datum(k);
    const auto& refl = d.reflections();
    const auto& lines = d.coroot_lines();
    const Matrix id = Matrix::identity(d.ring(), d.rank());
    for (std::size_t i = 0; i < refl.size(); ++i) {
      Root r = root_of(d, i);
      // β is known mod p^(k-m) when the scale is p^m; b β mod p^k does not
      // depend on the lift, so rebuild σ at full precision
      std::vector<mpz_class> lift;
      for (std::size_t j = 0; j < d.rank(); ++j) lift.push_back(r.beta(0, j));
      Matrix rebuilt = id + lines[i].generator() * Matrix::row_vector(d.ring(), lift);
      o.require(rebuilt == refl[i].sigma && rebuilt.ring() == refl[i].sigma.ring(),
                k + ": reflection " + std::to_string(i) + " not reconstructed");
      ++count;
    }
  }

  // product / decompose round trip
  RootDatum f4 = catalog_datum("F4.sc.Z2"), d4 = catalog_datum("DI4");
  RootDatum p = product(f4, d4);
  Decomposition dec = decompose(p);
  o.require(dec.splits && dec.factors.size() == 2, "F4 x DI4 does not split into 2 factors");
  if (dec.factors.size() == 2) {
    std::vector<std::string> names;
    for (const auto& f : dec.factors) names.push_back(identify(f.datum).value_or("?"));
    o.require(names == std::vector<std::string>{"F4.sc", "DI4"}, "factors identified as " + list(names));
    RootDatum back = product(dec.factors[0].datum, dec.factors[1].datum);
    o.require(bool(find_isomorphism(back, p)), "product of the factors is not isomorphic to the input");
  }
  {
    // the same product through a datum file and the decompose command
    const std::string path = "acceptance_f4_di4.rd";
    std::ofstream(path) << cli::serialize_datum(p);
    std::ostringstream out, err;
    int code = cli::cmd_decompose(path, cli::Environment{}, out, err);
    std::string first = out.str().substr(0, out.str().find('\n'));
    o.require(code == 0 && first == "F4.sc × DI4", "decompose command printed '" + first + "'");
    std::remove(path.c_str());
  }

  // one mutation per clause
  const Ring z = Ring::integers();
  auto M = [&](std::initializer_list<std::initializer_list<long>> rows) { return Matrix::from_rows(z, rows); };
  auto col = [&](std::initializer_list<long> v) {
    std::vector<mpz_class> e(v.begin(), v.end());
    return Matrix::column_vector(z, e);
  };
  std::vector<std::pair<char, RootDatum>> mutations;
  {
    RootDatum a2 = catalog_datum("A2.sc.Z");
    auto g = a2.generators();
    g[0] = g[0] * g[1];  // a rotation, not a reflection
    mutations.emplace_back('a', RootDatum(z, 2, g, a2.coroots()));
  }
  mutations.emplace_back('b', RootDatum(z, 2, {M({{-1, 0}, {0, 1}}), M({{-1, 2}, {0, 1}})}, {}));
  mutations.emplace_back('c', RootDatum(z, 1, {M({{-1}})}, {{0, CorootLine::make(col({1}), 4)}}));
  mutations.emplace_back('d', RootDatum(z, 2, {M({{-1, 0}, {0, 1}})}, {{0, CorootLine::make(col({1, 1}), 1)}}));
  // W(B2) with the two conjugate short reflections given different scales
  mutations.emplace_back('e', RootDatum(z, 2, {M({{-1, 0}, {0, 1}}), M({{1, 0}, {0, -1}}), M({{0, 1}, {1, 0}})},
                                        {{0, CorootLine::make(col({1, 0}), 1)},
                                         {1, CorootLine::make(col({0, 1}), 2)},
                                         {2, CorootLine::make(col({1, -1}), 1)}}));
  for (const auto& [clause, datum] : mutations) {
    ValidationReport rep = validate(datum);
    o.require(!rep.passed() && rep.clause(clause).verdict == Verdict::Fail,
              std::string("mutation (") + clause + ") not rejected by its clause");
  }
  if (o.pass)
    o.detail = std::to_string(count) + " reflections rebuilt, F4.sc x DI4 recovered, 5 mutations rejected";
  return o;
}

Outcome property_suites() {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  std::string summary;
  for (const auto& r : property::run_all(kPropertySeed)) {
    o.require(r.ok(), r.name + ": " + std::to_string(r.failures) + " failures, first " + r.first_failure);
    summary += (summary.empty() ? "" : ", ") + r.name + " " + std::to_string(r.trials);
  }
  double s = since(t0);
  o.require(s < kPropertyBudget, "runtime " + fmt_seconds(s) + " over budget");
  if (o.pass) o.detail = summary + " trials, " + fmt_seconds(s);
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"axiom suite", axiom_suite},
      {"Steenrod table", steenrod_table},
      {"Shephard-Todd identities", shephard_todd},
      {"DI4 pins", di4_pins},
      {"coroot enumeration", coroot_enumeration},
      {"isomorphism discrimination", iso_discrimination},
      {"center and pi1", center_regression},
      {"structural properties", structural},
      {"property suites", property_suites},
  };
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int n = static_cast<int>(i + 1);
    if (!selected.empty() && !selected.count(n)) continue;
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << n << " (" << criteria[i].first << "): " << o.detail
              << std::endl;
    if (!o.pass) ++failures;
  }
  return failures ? 1 : 0;
}
