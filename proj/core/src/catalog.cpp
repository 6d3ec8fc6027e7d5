#include "rootdatum/catalog.hpp"

#include <charconv>
#include <map>
#include <mutex>
#include <shared_mutex>

#include "rootdatum/errors.hpp"
#include "rootdatum/isomorphism.hpp"
#include "rootdatum/padic.hpp"

namespace rootdatum {

namespace {

unsigned parse_unsigned(std::string_view s, std::string_view whole) {
  unsigned v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw BadKey("bad number in catalog key '" + std::string(whole) + "'");
  return v;
}

Ring parse_ring(std::string_view s, unsigned default_precision, std::string_view whole) {
  if (s.empty() || s[0] != 'Z') throw BadKey("bad ring in catalog key '" + std::string(whole) + "'");
  if (s == "Z") return Ring::integers();
  std::string_view rest = s.substr(1);
  unsigned k = default_precision;
  if (auto at = rest.find('@'); at != std::string_view::npos) {
    k = parse_unsigned(rest.substr(at + 1), whole);
    rest = rest.substr(0, at);
  }
  unsigned p = parse_unsigned(rest, whole);
  if (!is_probable_prime(p)) throw BadKey("ring prime is not prime in '" + std::string(whole) + "'");
  if (k < 1) throw BadKey("precision must be positive in '" + std::string(whole) + "'");
  return Ring::padic(p, k);
}

std::string ring_token(const Ring& ring) {
  if (ring.is_integers()) return "Z";
  std::string s = "Z" + std::to_string(ring.prime());
  if (ring.precision() != kDefaultPrecision) s += "@" + std::to_string(ring.precision());
  return s;
}

char family_letter(Family f) {
  switch (f) {
    case Family::A: return 'A';
    case Family::B: return 'B';
    case Family::C: return 'C';
    case Family::D: return 'D';
    case Family::E: return 'E';
    case Family::F: return 'F';
    case Family::G: return 'G';
    case Family::Torus: return 'T';
    case Family::DI4: return '?';
  }
  return '?';
}

void check_rank(Family f, unsigned n) {
  bool ok = false;
  switch (f) {
    case Family::A: ok = n >= 1; break;
    case Family::B: case Family::C: ok = n >= 2; break;
    case Family::D: ok = n >= 4; break;
    case Family::E: ok = n >= 6 && n <= 8; break;
    case Family::F: ok = n == 4; break;
    case Family::G: ok = n == 2; break;
    case Family::Torus: ok = true; break;
    case Family::DI4: ok = n == 3; break;
  }
  if (!ok) throw BadKey(std::string("no type ") + family_letter(f) + std::to_string(n));
}

}  // namespace

CatalogKey CatalogKey::parse(std::string_view text, unsigned default_precision) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    auto dot = text.find('.', start);
    parts.push_back(text.substr(start, dot == std::string_view::npos ? std::string_view::npos : dot - start));
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }
  CatalogKey key;
  std::string_view head = parts[0];
  if (head.empty()) throw BadKey("empty catalog key");
  if (head == "DI4") {
    key.family = Family::DI4;
    key.rank = 3;
    if (parts.size() > 2) throw BadKey("DI4 takes only a ring suffix");
    key.ring = parts.size() == 2 ? parse_ring(parts[1], default_precision, text) : Ring::padic(2, default_precision);
    if (!key.ring.is_padic() || key.ring.prime() != 2) throw BadKey("DI4 exists only over Z2");
    return key;
  }
  static const std::map<char, Family> families = {{'A', Family::A}, {'B', Family::B}, {'C', Family::C},
                                                  {'D', Family::D}, {'E', Family::E}, {'F', Family::F},
                                                  {'G', Family::G}, {'T', Family::Torus}};
  auto fam = families.find(head[0]);
  if (fam == families.end()) throw BadKey("unknown family in '" + std::string(text) + "'");
  key.family = fam->second;
  key.rank = parse_unsigned(head.substr(1), text);
  check_rank(key.family, key.rank);
  std::size_t next = 1;
  if (key.family != Family::Torus) {
    if (parts.size() < 2) throw BadKey("missing form (sc|ad) in '" + std::string(text) + "'");
    if (parts[1] == "sc") key.form = Form::SimplyConnected;
    else if (parts[1] == "ad") key.form = Form::Adjoint;
    else throw BadKey("form must be sc or ad in '" + std::string(text) + "'");
    next = 2;
  }
  if (parts.size() > next + 1) throw BadKey("trailing parts in '" + std::string(text) + "'");
  if (parts.size() == next + 1) key.ring = parse_ring(parts[next], default_precision, text);
  return key;
}

std::string CatalogKey::type_name() const {
  if (family == Family::DI4) return "DI4";
  std::string s = family_letter(family) + std::to_string(rank);
  if (family != Family::Torus) s += form == Form::SimplyConnected ? ".sc" : ".ad";
  return s;
}

std::string CatalogKey::str() const {
  if (family == Family::DI4) {
    return ring.precision() == kDefaultPrecision ? "DI4" : "DI4." + ring_token(ring);
  }
  return type_name() + "." + ring_token(ring);
}

Matrix cartan_matrix(Family family, unsigned n) {
  check_rank(family, n);
  if (family == Family::Torus || family == Family::DI4) throw BadKey("no Cartan matrix for this family");
  Matrix a = Matrix::identity(Ring::integers(), n);
  a = mpz_class(2) * a;
  auto link = [&](unsigned i, unsigned j) {  // 1-based
    a.set(i - 1, j - 1, -1);
    a.set(j - 1, i - 1, -1);
  };
  switch (family) {
    case Family::A:
    case Family::B:
    case Family::C:
    case Family::F:
      for (unsigned i = 1; i < n; ++i) link(i, i + 1);
      break;
    case Family::D:
      for (unsigned i = 1; i + 1 < n; ++i) link(i, i + 1);
      link(n - 2, n);
      break;
    case Family::E:
      link(1, 3);
      link(2, 4);
      for (unsigned i = 3; i < n; ++i) link(i, i + 1);
      break;
    case Family::G:
      link(1, 2);
      break;
    default:
      break;
  }
  if (family == Family::B) a.set(n - 1, n - 2, -2);
  if (family == Family::C) a.set(n - 2, n - 1, -2);
  if (family == Family::F) a.set(2, 1, -2);
  if (family == Family::G) a.set(0, 1, -3);
  return a;
}

RootDatum lie_datum(const CatalogKey& key) {
  if (key.family == Family::DI4) throw BadKey("DI4 is not a Lie type");
  if (key.family == Family::Torus) return torus_datum(key.rank, key.ring).with_label(key.str());
  const unsigned n = key.rank;
  const Matrix a = cartan_matrix(key.family, n);
  const Ring z = Ring::integers();
  std::vector<Matrix> gens;
  std::map<std::size_t, CorootLine> coroots;
  for (unsigned i = 0; i < n; ++i) {
    Matrix s = Matrix::identity(z, n);
    Matrix b(z, n, 1);
    if (key.form == Form::SimplyConnected) {
      // s_i(e_j) = e_j - a_ji e_i
      for (unsigned j = 0; j < n; ++j) s.set(i, j, s(i, j) - a(j, i));
      b.set(i, 0, 1);
    } else {
      // s_i(e_i) = e_i - b_i, b_i = Σ_k a_ik e_k
      for (unsigned k = 0; k < n; ++k) {
        s.set(k, i, s(k, i) - a(i, k));
        b.set(k, 0, a(i, k));
      }
    }
    gens.push_back(std::move(s));
    coroots.emplace(i, CorootLine::from_generator(b));
  }
  bool local = key.family == Family::E && n >= 7;
  RootDatum d(z, n, std::move(gens), std::move(coroots), local);
  if (key.ring.is_padic()) d = base_change(d, key.ring.prime(), key.ring.precision());
  return d.with_label(key.str());
}

RootDatum base_change(const RootDatum& d, unsigned prime, unsigned precision) {
  if (!d.ring().is_integers()) throw WrongRing("base_change expects a datum over Z");
  const Ring ring = Ring::padic(prime, precision);
  std::vector<Matrix> gens;
  for (const auto& g : d.generators()) gens.push_back(g.to_ring(ring));
  std::map<std::size_t, CorootLine> coroots;
  for (const auto& [g, line] : d.coroots()) {
    mpz_class pv;
    mpz_ui_pow_ui(pv.get_mpz_t(), prime, padic_valuation(line.scale, prime));
    coroots.emplace(g, CorootLine::make(line.vector.to_ring(ring), pv));
  }
  RootDatum out(ring, d.rank(), std::move(gens), std::move(coroots), d.reflection_local());
  return out.with_closure_cap(d.closure_cap());
}

RootDatum torus_datum(std::size_t rank, const Ring& ring) { return RootDatum(ring, rank, {}, {}); }

std::vector<Matrix> di4_generators(unsigned precision, long seed) {
  if (precision < 16) throw PrecisionLoss("DI4 needs precision at least 16");
  // ω² - ω + 2 = (u² + 7)/4, so u is needed modulo 2^(k+2)
  PAdicInt u = hensel_sqrt(PAdicInt(2, -7, precision + 2), seed);
  mpz_class w = (u.residue() + 1) / 2;  // exact: u is odd
  const Ring ring = Ring::padic(2, precision);
  const mpz_class one_minus = 1 - w;
  std::vector<std::vector<std::vector<mpz_class>>> rows = {
      {{-1, one_minus, 1}, {0, 1, 0}, {0, 0, 1}},
      {{1, 0, 0}, {w, -1, one_minus}, {0, 0, 1}},
      {{1, 0, 0}, {0, 1, 0}, {1, w, -1}},
  };
  std::vector<Matrix> gens;
  for (const auto& r : rows) gens.push_back(Matrix::from_rows(ring, r));
  return gens;
}

RootDatum di4(unsigned precision, long seed) {
  auto gens = di4_generators(precision, seed);
  auto data = coroot_collections(Ring::padic(2, precision), 3, gens);
  if (data.empty()) throw Inconsistent("DI4 generators admit no coroot collection");
  // enumeration starts from the smallest scale in every class
  std::string label = precision == kDefaultPrecision ? "DI4" : "DI4.Z2@" + std::to_string(precision);
  return data.front().with_label(label);
}

RootDatum catalog_datum(const CatalogKey& key) {
  static std::shared_mutex mutex;
  static std::map<std::string, RootDatum> cache;
  const std::string name = key.str();
  {
    std::shared_lock lock(mutex);
    if (auto it = cache.find(name); it != cache.end()) return it->second;
  }
  RootDatum d = key.family == Family::DI4 ? di4(key.ring.precision()) : lie_datum(key);
  std::unique_lock lock(mutex);
  return cache.emplace(name, std::move(d)).first->second;
}

RootDatum catalog_datum(std::string_view key, unsigned default_precision) {
  return catalog_datum(CatalogKey::parse(key, default_precision));
}

std::optional<std::string> identify(const RootDatum& d) {
  const unsigned n = static_cast<unsigned>(d.rank());
  std::vector<CatalogKey> candidates;
  if (d.generators().empty()) {
    candidates.push_back(CatalogKey{Family::Torus, n, Form::SimplyConnected, d.ring()});
  } else {
    for (Family f : {Family::A, Family::B, Family::C, Family::D, Family::E, Family::F, Family::G})
      for (Form form : {Form::SimplyConnected, Form::Adjoint}) {
        try {
          check_rank(f, n);
        } catch (const BadKey&) {
          continue;
        }
        if ((f == Family::B || f == Family::C) && n < 2) continue;
        candidates.push_back(CatalogKey{f, n, form, d.ring()});
      }
    if (n == 3 && d.ring().is_padic() && d.ring().prime() == 2)
      candidates.push_back(CatalogKey{Family::DI4, 3, Form::SimplyConnected, d.ring()});
  }
  for (const auto& key : candidates)
    if (find_isomorphism(d, catalog_datum(key))) return key.type_name();
  return std::nullopt;
}

std::vector<std::string> catalog_keys() {
  std::vector<std::string> types;
  for (unsigned n = 1; n <= 8; ++n) types.push_back("A" + std::to_string(n));
  for (unsigned n = 2; n <= 4; ++n) types.push_back("B" + std::to_string(n));
  for (unsigned n = 2; n <= 4; ++n) types.push_back("C" + std::to_string(n));
  for (const char* t : {"D4", "G2", "F4", "E6", "E7", "E8"}) types.push_back(t);
  std::vector<std::string> out;
  for (const char* ring : {"Z", "Z2"})
    for (const auto& t : types)
      for (const char* form : {"sc", "ad"}) out.push_back(t + "." + form + "." + ring);
  out.push_back("DI4");
  return out;
}

}  // namespace rootdatum
