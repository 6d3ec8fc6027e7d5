#include "rootdatum_cli/datum_file.hpp"

#include <optional>
#include <sstream>
#include <vector>

#include "rootdatum/errors.hpp"

namespace rootdatum::cli {
namespace {

struct Line {
  std::size_t number;
  std::vector<std::string> tokens;
};

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw ParseError("line " + std::to_string(line) + ": " + what);
}

mpz_class integer(const Line& l, const std::string& tok) {
  mpz_class x;
  std::string s = tok;
  if (!s.empty() && s[0] == '+') s.erase(0, 1);
  if (s.empty() || x.set_str(s, 10) != 0) fail(l.number, "expected an integer, got '" + tok + "'");
  return x;
}

unsigned small(const Line& l, const std::string& tok, const char* what) {
  mpz_class x = integer(l, tok);
  if (x < 0 || !x.fits_uint_p()) fail(l.number, std::string("bad ") + what + " '" + tok + "'");
  return static_cast<unsigned>(x.get_ui());
}

Ring parse_ring(const Line& l, unsigned default_precision) {
  if (l.tokens.size() < 2 || l.tokens.size() > 3) fail(l.number, "expected 'ring Z' or 'ring Zp k'");
  const std::string& name = l.tokens[1];
  if (name == "Z") {
    if (l.tokens.size() == 3) fail(l.number, "ring Z takes no precision");
    return Ring::integers();
  }
  if (name.size() < 2 || name[0] != 'Z') fail(l.number, "unknown ring '" + name + "'");
  unsigned p = small(l, name.substr(1), "prime");
  unsigned k = l.tokens.size() == 3 ? small(l, l.tokens[2], "precision") : default_precision;
  try {
    return Ring::padic(p, k);
  } catch (const BadKey& e) {
    fail(l.number, e.what());
  }
}

mpz_class parse_scale(const Line& l, const std::string& tok) {
  auto caret = tok.find('^');
  if (caret == std::string::npos) return integer(l, tok);
  mpz_class base = integer(l, tok.substr(0, caret));
  unsigned e = small(l, tok.substr(caret + 1), "exponent");
  if (base < 1 || !base.fits_ulong_p()) fail(l.number, "bad scale '" + tok + "'");
  mpz_class s;
  mpz_ui_pow_ui(s.get_mpz_t(), base.get_ui(), e);
  return s;
}

}  // namespace

RootDatum parse_datum(std::string_view text, unsigned default_precision) {
  std::vector<Line> lines;
  {
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t n = 0;
    while (std::getline(in, raw)) {
      ++n;
      if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
      std::istringstream ls(raw);
      Line l{n, {}};
      for (std::string t; ls >> t;) l.tokens.push_back(t);
      if (!l.tokens.empty()) lines.push_back(std::move(l));
    }
  }
  std::size_t pos = 0;
  auto expect = [&](const char* keyword) -> const Line& {
    if (pos >= lines.size()) throw ParseError(std::string("unexpected end of input, expected '") + keyword + "'");
    const Line& l = lines[pos++];
    if (l.tokens[0] != keyword) fail(l.number, std::string("expected '") + keyword + "', got '" + l.tokens[0] + "'");
    return l;
  };

  const Line& head = expect("rootdatum");
  if (head.tokens.size() != 2 || head.tokens[1] != "1") fail(head.number, "unsupported format version");
  const Ring ring = parse_ring(expect("ring"), default_precision);
  const Line& rank_line = expect("rank");
  if (rank_line.tokens.size() != 2) fail(rank_line.number, "expected 'rank r'");
  const std::size_t r = small(rank_line, rank_line.tokens[1], "rank");

  bool local = false;
  std::vector<Matrix> gens;
  std::map<std::size_t, CorootLine> coroots;
  while (pos < lines.size()) {
    const Line& l = lines[pos++];
    const std::string& kw = l.tokens[0];
    if (kw == "mode") {
      if (l.tokens.size() != 2 || l.tokens[1] != "reflection-local") fail(l.number, "unknown mode");
      local = true;
    } else if (kw == "gen") {
      if (l.tokens.size() != 1) fail(l.number, "'gen' stands on its own line");
      if (!coroots.empty()) fail(l.number, "generators must precede coroots");
      std::vector<std::vector<mpz_class>> rows;
      for (std::size_t i = 0; i < r; ++i) {
        if (pos >= lines.size())
          fail(l.number, "gen block ends after " + std::to_string(i) + " of " + std::to_string(r) + " rows");
        const Line& row = lines[pos++];
        if (row.tokens.size() != r)
          fail(row.number, "matrix row has " + std::to_string(row.tokens.size()) + " entries, expected " +
                               std::to_string(r));
        std::vector<mpz_class> entries;
        for (const auto& t : row.tokens) entries.push_back(integer(row, t));
        rows.push_back(std::move(entries));
      }
      gens.push_back(r ? Matrix::from_rows(ring, rows) : Matrix(ring, 0, 0));
    } else if (kw == "coroot") {
      // coroot g v_1 .. v_r scale s
      if (l.tokens.size() != r + 4 || l.tokens[r + 2] != "scale")
        fail(l.number, "expected 'coroot <gen> <" + std::to_string(r) + " integers> scale <s>'");
      std::size_t g = small(l, l.tokens[1], "generator index");
      if (g >= gens.size()) fail(l.number, "coroot on missing generator " + std::to_string(g));
      if (coroots.count(g)) fail(l.number, "second coroot on generator " + std::to_string(g));
      std::vector<mpz_class> v;
      for (std::size_t i = 0; i < r; ++i) v.push_back(integer(l, l.tokens[2 + i]));
      mpz_class s = parse_scale(l, l.tokens[r + 3]);
      if (s < 1) fail(l.number, "scale must be positive");
      if (ring.is_padic() && s != 1) {
        mpz_class q = s;
        while (q % ring.prime() == 0) q /= ring.prime();
        if (q != 1) fail(l.number, "scale over " + ring.name() + " must be a power of " + std::to_string(ring.prime()));
      }
      Matrix vec = Matrix::column_vector(ring, v);
      if (vec.is_zero()) fail(l.number, "zero coroot vector");
      try {
        coroots.emplace(g, CorootLine::make(vec, s));
      } catch (const Error& e) {
        fail(l.number, e.what());
      }
    } else {
      fail(l.number, "unknown keyword '" + kw + "'");
    }
  }
  return RootDatum(ring, r, std::move(gens), std::move(coroots), local);
}

std::string serialize_datum(const RootDatum& d) {
  std::ostringstream out;
  const Ring& ring = d.ring();
  const std::size_t r = d.rank();
  out << "rootdatum 1\n";
  if (ring.is_padic())
    out << "ring Z" << ring.prime() << ' ' << ring.precision() << '\n';
  else
    out << "ring Z\n";
  out << "rank " << r << '\n';
  if (d.reflection_local()) out << "mode reflection-local\n";
  for (const auto& g : d.generators()) {
    out << "gen\n";
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < r; ++j) out << (j ? " " : "") << g(i, j).get_str();
      out << '\n';
    }
  }
  for (const auto& [g, line] : d.coroots()) {
    out << "coroot " << g;
    for (std::size_t i = 0; i < r; ++i) out << ' ' << line.vector(i, 0).get_str();
    out << " scale ";
    if (ring.is_padic() && line.scale != 1)
      out << ring.prime() << '^' << padic_valuation(line.scale, ring.prime());
    else
      out << line.scale.get_str();
    out << '\n';
  }
  return out.str();
}

}  // namespace rootdatum::cli
