#include "rootdatum/matrix_group.hpp"

#include <unordered_set>

#include "rootdatum/errors.hpp"

namespace rootdatum {

struct MatrixGroup::Closure {
  ElementStore store;
  bool finite_certified = false;

  Closure(const CompactRing& ring, std::size_t n) : store(ring, n) {}
};

MatrixGroup::MatrixGroup(Ring ring, std::size_t rank, std::vector<Matrix> generators)
    : ring_(std::move(ring)), rank_(rank), generators_(std::move(generators)) {
  for (const auto& g : generators_) {
    if (g.rows() != rank_ || g.cols() != rank_) throw DimensionMismatch("generator has the wrong shape");
    if (!g.ring().same_family(ring_)) throw RingMismatch("generator ring differs from group ring");
  }
  if (!ring_.is_rationals()) compact_ = std::make_shared<const CompactRing>(ring_);
}

bool MatrixGroup::finite_certified() const { return closure_ && closure_->finite_certified; }

std::size_t MatrixGroup::order() const {
  if (!closure_) throw CapExceeded("group is not enumerated (closure cap exceeded or not attempted)");
  return closure_->store.size();
}

bool MatrixGroup::contains(const Matrix& g) const {
  if (!closure_) throw CapExceeded("membership needs an enumerated group");
  if (g.rows() != rank_ || g.cols() != rank_) return false;
  return closure_->store.find(compact_->encode(g)).has_value();
}

std::vector<Matrix> MatrixGroup::elements() const {
  std::vector<Matrix> out;
  for_each_compact([&](std::span<const std::uint64_t> e) { out.push_back(compact_->decode(e, rank_)); });
  return out;
}

void MatrixGroup::for_each_compact(const std::function<void(std::span<const std::uint64_t>)>& visit) const {
  if (!closure_) throw CapExceeded("group is not enumerated");
  std::vector<std::uint64_t> buf;
  for (std::uint32_t i = 0; i < closure_->store.size(); ++i) {
    closure_->store.decode(i, buf);
    visit(buf);
  }
}

MatrixGroup generate_group(Ring ring, std::size_t rank, std::vector<Matrix> generators, std::size_t cap) {
  if (cap < 1) throw CapExceeded("closure cap must be at least 1");
  MatrixGroup group(ring, rank, std::move(generators));
  for (const auto& g : group.generators_) {
    if (!is_unimodular(g)) throw NonInvertibleGenerator("generator is not invertible over " + ring.name() + ":\n" + g.str());
  }
  const CompactRing& cr = *group.compact_;
  auto closure = std::make_shared<MatrixGroup::Closure>(cr, rank);
  std::vector<std::vector<std::uint64_t>> gens;
  for (const auto& g : group.generators_) gens.push_back(cr.encode(g));

  closure->store.insert(cr.encode(Matrix::identity(ring, rank)));
  std::vector<std::uint64_t> x, y(rank * rank);
  std::uint32_t frontier_begin = 0;
  while (frontier_begin < closure->store.size()) {
    auto frontier_end = static_cast<std::uint32_t>(closure->store.size());
    for (std::uint32_t i = frontier_begin; i < frontier_end; ++i) {
      closure->store.decode(i, x);
      for (const auto& g : gens) {
        cr.multiply(g.data(), x.data(), y.data(), rank);
        if (closure->store.insert(y).second && closure->store.size() > cap) {
          group.cap_exceeded_ = true;
          return group;
        }
      }
    }
    frontier_begin = frontier_end;
  }

  // Reduction mod q with q = 4 (p = 2) or p is injective on finite groups.
  const std::uint64_t q = cr.prime() == 2 ? 4 : cr.prime();
  std::unordered_set<std::string> reductions;
  std::string key;
  for (std::uint32_t i = 0; i < closure->store.size(); ++i) {
    closure->store.decode(i, x);
    key.clear();
    for (std::uint64_t e : x) key.push_back(static_cast<char>(e % q));
    reductions.insert(key);
  }
  closure->finite_certified = reductions.size() == closure->store.size();
  group.closure_ = std::move(closure);
  return group;
}

}  // namespace rootdatum
