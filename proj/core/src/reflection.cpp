#include "rootdatum/reflection.hpp"

#include <algorithm>
#include <numeric>

#include "rootdatum/errors.hpp"
#include "rootdatum/smith.hpp"

namespace rootdatum {

std::optional<Reflection> is_reflection(const Matrix& sigma) {
  if (!sigma.is_square()) throw DimensionMismatch("is_reflection: matrix is not square");
  if (!is_unimodular(sigma)) throw NonInvertibleGenerator("is_reflection: matrix is not invertible");
  const std::size_t r = sigma.rows();
  Matrix one_minus = Matrix::identity(sigma.ring(), r) - sigma;
  if (rank_over_fractions(one_minus) != 1) return std::nullopt;
  auto order = multiplicative_order(sigma);
  if (!order) throw OrderCapExceeded("reflection has no order <= 1000");
  return Reflection{sigma, *order, Sublattice::from_generators(one_minus), scalar::reduce(sigma.ring(), determinant(sigma))};
}

std::optional<std::size_t> ReflectionSet::find(const Matrix& sigma) const {
  if (sigma.rows() != rank_ || sigma.cols() != rank_) return std::nullopt;
  auto id = index_->find(compact_->encode(sigma));
  if (!id) return std::nullopt;
  return *id;
}

ReflectionSet reflections_of(const MatrixGroup& w, std::size_t cap) {
  ReflectionSet out;
  const std::size_t r = w.rank();
  out.rank_ = r;
  out.compact_ = std::make_shared<const CompactRing>(w.ring());
  out.index_ = std::make_shared<ElementStore>(*out.compact_, r);
  const auto& gens = w.generators();
  std::vector<Matrix> inverses;
  for (const auto& g : gens) inverses.push_back(inverse_unimodular(g));

  auto add = [&](const Matrix& m) -> std::pair<std::size_t, bool> {
    auto [id, fresh] = out.index_->insert(out.compact_->encode(m));
    if (fresh) {
      auto refl = is_reflection(m);
      if (!refl) throw Inconsistent("conjugate of a reflection is not a reflection");
      out.reflections_.push_back(std::move(*refl));
      if (out.reflections_.size() > cap) throw CapExceeded("reflection orbit exceeds cap");
    }
    return {id, fresh};
  };

  for (std::size_t g = 0; g < gens.size(); ++g) {
    if (!is_reflection(gens[g])) throw Inconsistent("generator " + std::to_string(g) + " is not a reflection");
    out.gen_index_.push_back(add(gens[g]).first);
  }
  for (std::size_t g = 0; g < gens.size(); ++g) {
    const Reflection& base = out.reflections_[out.gen_index_[g]];
    Matrix p = base.sigma;
    for (unsigned j = 2; j < base.order; ++j) {
      p = p * gens[g];
      out.powers_.emplace_back(out.gen_index_[g], add(p).first);
    }
  }

  out.conj_.assign(gens.size(), {});
  for (std::size_t i = 0; i < out.reflections_.size(); ++i) {
    for (std::size_t g = 0; g < gens.size(); ++g) {
      Matrix c = gens[g] * out.reflections_[i].sigma * inverses[g];
      out.conj_[g].push_back(add(c).first);
    }
  }

  // classes: union-find over conjugation edges
  const std::size_t n = out.reflections_.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto root = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t g = 0; g < gens.size(); ++g)
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t a = root(i), b = root(out.conj_[g][i]);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  out.class_of_.assign(n, 0);
  std::vector<std::size_t> class_id(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t a = root(i);
    if (class_id[a] == n) {
      class_id[a] = out.classes_.size();
      out.classes_.emplace_back();
    }
    out.class_of_[i] = class_id[a];
    out.classes_[class_id[a]].push_back(i);
  }
  return out;
}

std::vector<std::vector<Reflection>> reflection_classes(const MatrixGroup& w) {
  ReflectionSet set = reflections_of(w);
  std::vector<std::vector<Reflection>> out;
  for (const auto& cls : set.classes()) {
    out.emplace_back();
    for (std::size_t i : cls) out.back().push_back(set[i]);
  }
  return out;
}

}  // namespace rootdatum
