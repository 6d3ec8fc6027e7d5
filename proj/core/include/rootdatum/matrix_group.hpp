#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "rootdatum/compact.hpp"
#include "rootdatum/matrix.hpp"

namespace rootdatum {

inline constexpr std::size_t kDefaultClosureCap = 1'000'000;

/// Finite subgroup of GL_r(R) given by generators, optionally enumerated.
///
/// Enumeration happens in compact form (see CompactRing); elements decode to
/// matrices over the compact ring. A group whose closure exceeded the cap is
/// still usable wherever only its generators are needed.
class MatrixGroup {
 public:
  /// Generators only; nothing is enumerated.
  MatrixGroup(Ring ring, std::size_t rank, std::vector<Matrix> generators);

  const Ring& ring() const { return ring_; }
  std::size_t rank() const { return rank_; }
  const std::vector<Matrix>& generators() const { return generators_; }

  bool enumerated() const { return closure_ != nullptr; }
  /// Closure was attempted and stopped at the cap.
  bool cap_exceeded() const { return cap_exceeded_; }
  /// The closure passed the reduction-injectivity check (see generate_group).
  bool finite_certified() const;

  /// Throws CapExceeded unless enumerated.
  std::size_t order() const;
  bool contains(const Matrix& g) const;
  std::vector<Matrix> elements() const;
  /// Visit every element in compact form (row-major, rank x rank).
  void for_each_compact(const std::function<void(std::span<const std::uint64_t>)>& visit) const;
  const CompactRing& compact_ring() const { return *compact_; }

 private:
  friend MatrixGroup generate_group(Ring, std::size_t, std::vector<Matrix>, std::size_t);
  struct Closure;

  Ring ring_;
  std::size_t rank_;
  std::vector<Matrix> generators_;
  std::shared_ptr<const CompactRing> compact_;
  std::shared_ptr<const Closure> closure_;
  bool cap_exceeded_ = false;
};

/// Breadth-first closure under left multiplication by the generators.
///
/// Throws NonInvertibleGenerator for a generator without unit determinant.
/// When the closure grows past `cap` the generators-only group is returned
/// with cap_exceeded() set. After a successful closure, the element count is
/// compared with the number of distinct reductions mod 4 (p = 2, and Z) or
/// mod p; equality certifies that no infinite-order part hides above the
/// working precision.
MatrixGroup generate_group(Ring ring, std::size_t rank, std::vector<Matrix> generators,
                           std::size_t cap = kDefaultClosureCap);

}  // namespace rootdatum
