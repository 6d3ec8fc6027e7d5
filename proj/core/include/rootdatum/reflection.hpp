#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "rootdatum/lattice.hpp"
#include "rootdatum/matrix_group.hpp"

namespace rootdatum {

inline constexpr std::size_t kReflectionOrbitCap = 100'000;

/// σ with 1 - σ of rank one. ζ = det σ is the eigenvalue on im(1 - σ).
struct Reflection {
  Matrix sigma;
  unsigned order = 0;
  Sublattice line;  // im(1 - σ)
  mpz_class zeta;   // ring residue, -1 over Z and Z_2
};

/// Reflection record, or nullopt when rank(1 - σ) != 1.
/// Throws OrderCapExceeded if σ has no order <= 1000.
std::optional<Reflection> is_reflection(const Matrix& sigma);

/// The reflections of a reflection group together with the action of the
/// generators on them by conjugation.
class ReflectionSet {
 public:
  const std::vector<Reflection>& reflections() const { return reflections_; }
  std::size_t size() const { return reflections_.size(); }
  const Reflection& operator[](std::size_t i) const { return reflections_[i]; }

  /// Index of g σ_i g^-1 for generator g.
  std::size_t conjugate(std::size_t gen, std::size_t i) const { return conj_[gen][i]; }
  std::size_t generator_count() const { return conj_.size(); }
  /// Index of the reflection equal to generator g.
  std::size_t generator_reflection(std::size_t gen) const { return gen_index_[gen]; }
  /// Reflections σ^j (1 < j < order) for each generator σ, in generator order.
  const std::vector<std::pair<std::size_t, std::size_t>>& powers() const { return powers_; }

  std::optional<std::size_t> find(const Matrix& sigma) const;

  /// Conjugacy classes as sorted index lists, ordered by smallest member.
  const std::vector<std::vector<std::size_t>>& classes() const { return classes_; }
  std::size_t class_of(std::size_t i) const { return class_of_[i]; }

 private:
  friend ReflectionSet reflections_of(const MatrixGroup&, std::size_t);

  std::shared_ptr<const CompactRing> compact_;
  std::shared_ptr<ElementStore> index_;
  std::size_t rank_ = 0;
  std::vector<Reflection> reflections_;
  std::vector<std::vector<std::size_t>> conj_;
  std::vector<std::size_t> gen_index_;
  std::vector<std::pair<std::size_t, std::size_t>> powers_;  // (base, power)
  std::vector<std::vector<std::size_t>> classes_;
  std::vector<std::size_t> class_of_;
};

/// Closure of the generators and their nontrivial powers under conjugation
/// by the generators. Needs no enumeration of W. Throws Inconsistent if a
/// generator is not a reflection, CapExceeded past `cap` reflections.
ReflectionSet reflections_of(const MatrixGroup& w, std::size_t cap = kReflectionOrbitCap);

/// Conjugacy classes of reflections, as matrices.
std::vector<std::vector<Reflection>> reflection_classes(const MatrixGroup& w);

}  // namespace rootdatum
