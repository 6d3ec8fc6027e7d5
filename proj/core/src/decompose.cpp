#include "rootdatum/decompose.hpp"

#include <numeric>

#include "rootdatum/catalog.hpp"
#include "rootdatum/errors.hpp"

namespace rootdatum {

Decomposition decompose(const RootDatum& d) {
  const Ring& ring = d.ring();
  const std::size_t r = d.rank();
  const ReflectionSet& refl = d.reflections();
  const std::size_t n = refl.size();

  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto root = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const Matrix& a = refl[i].sigma;
      const Matrix& b = refl[j].sigma;
      if (!(a * b == b * a)) {
        std::size_t x = root(i), y = root(j);
        if (x != y) parent[std::max(x, y)] = std::min(x, y);
      }
    }
  std::vector<std::vector<std::size_t>> comps;
  std::vector<std::size_t> comp_of(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t x = root(i);
    if (comp_of[x] == n) {
      comp_of[x] = comps.size();
      comps.emplace_back();
    }
    comp_of[i] = comp_of[x];
    comps[comp_of[i]].push_back(i);
  }

  Decomposition out;
  std::vector<Sublattice> parts;
  for (const auto& comp : comps) {
    std::vector<Matrix> vecs;
    for (std::size_t i : comp) vecs.push_back(refl[i].line.basis());
    parts.push_back(saturation(span(ring, r, vecs)));
  }
  Sublattice fixed(ring, r);
  if (d.generators().empty()) {
    fixed = Sublattice::from_generators(Matrix::identity(ring, r));
  } else {
    std::vector<Matrix> rows;
    for (const auto& g : d.generators()) rows.push_back(Matrix::identity(ring, r) - g);
    fixed = kernel(Matrix::vstack(rows, ring, r));
  }
  for (const auto& p : parts) out.rational_ranks.push_back(p.rank());
  out.rational_ranks.push_back(fixed.rank());
  if (fixed.rank()) parts.push_back(fixed);

  out.splits = is_direct_sum(parts, Lattice{ring, r});
  if (!out.splits) return out;

  std::vector<Matrix> bases;
  for (const auto& p : parts) bases.push_back(p.basis());
  Matrix change = r ? Matrix::hstack(bases, ring, r) : Matrix(ring, 0, 0);
  Matrix change_inv = inverse_unimodular(change);

  const auto& gens = d.generators();
  std::size_t offset = 0;
  for (std::size_t c = 0; c < comps.size(); ++c) {
    const std::size_t rc = parts[c].rank();
    std::vector<Matrix> fgens;
    std::map<std::size_t, CorootLine> fcoroots;
    for (std::size_t g = 0; g < gens.size(); ++g) {
      if (comp_of[refl.generator_reflection(g)] != c) continue;
      Matrix local = (change_inv * gens[g] * change).block(offset, offset, rc, rc);
      auto it = d.coroots().find(g);
      if (it != d.coroots().end()) {
        Matrix coords = (change_inv * it->second.generator()).block(offset, 0, rc, 1);
        fcoroots.emplace(fgens.size(), CorootLine::from_generator(coords));
      }
      fgens.push_back(std::move(local));
    }
    // classes whose coroot was given on a generator outside this list are
    // reached again from the restricted generators
    RootDatum factor(ring, rc, std::move(fgens), std::move(fcoroots), d.reflection_local());
    factor = factor.with_closure_cap(d.closure_cap());
    if (auto rep = validate(factor); !rep.passed())
      throw Inconsistent("induced factor " + std::to_string(c) + " does not validate: " + rep.str());
    out.factors.push_back(Factor{parts[c], std::move(factor), false});
    offset += rc;
  }
  if (fixed.rank()) out.factors.push_back(Factor{fixed, torus_datum(fixed.rank(), ring), true});
  return out;
}

}  // namespace rootdatum
