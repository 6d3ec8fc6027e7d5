#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rootdatum/lattice.hpp"
#include "rootdatum/matrix_group.hpp"
#include "rootdatum/reflection.hpp"

namespace rootdatum {

/// The rank-one module R·(c·v) with v primitive and c the scale index
/// (>= 1 over Z, p^m over Z_p). v is kept in canonical form: over Z the
/// first nonzero entry is positive, over Z_p the first unit entry is 1.
struct CorootLine {
  Matrix vector;
  mpz_class scale;

  /// Split a nonzero vector b into scale and canonical primitive part.
  static CorootLine from_generator(const Matrix& b);
  /// Same as from_generator(scale * v); v need not be canonical.
  static CorootLine make(const Matrix& v, const mpz_class& scale);

  /// The chosen coroot b = c·v.
  Matrix generator() const { return scale * vector; }
  Sublattice line() const { return Sublattice::from_generators(generator()); }
  CorootLine image(const Matrix& g) const { return from_generator(g * generator()); }

  friend bool operator==(const CorootLine& a, const CorootLine& b) { return a.line() == b.line(); }
};

/// β_σ with σ(x) = x + β_σ(x) b_σ.
struct Root {
  Matrix beta;  // 1 x r
  std::size_t reflection = 0;
};

struct CenterDescriptor {
  std::size_t torus_rank = 0;
  FiniteAbelianGroup finite_part;

  bool is_trivial() const { return torus_rank == 0 && finite_part.is_trivial(); }
  /// "trivial", "Z/4", "T^2", "T^1 + Z/2".
  std::string str() const;
  friend bool operator==(const CenterDescriptor&, const CenterDescriptor&) = default;
};

/// D = (W, L, {R b_σ}) with L = R^r, W given by reflection generators and
/// coroots supplied on some generators. Lines of the remaining reflections
/// follow by w(R b_σ) = R b_{wσw^-1}.
///
/// Values are immutable. Derived data (closure, reflections, extended
/// lines) is computed on first use and shared between copies.
class RootDatum {
 public:
  RootDatum(Ring ring, std::size_t rank, std::vector<Matrix> generators, std::map<std::size_t, CorootLine> coroots,
            bool reflection_local = false);

  const Ring& ring() const { return ring_; }
  std::size_t rank() const { return rank_; }
  const std::vector<Matrix>& generators() const { return generators_; }
  /// Coroots keyed by generator index.
  const std::map<std::size_t, CorootLine>& coroots() const { return coroots_; }
  /// W is never enumerated; everything works from the reflections.
  bool reflection_local() const { return reflection_local_; }
  std::size_t closure_cap() const { return closure_cap_; }
  RootDatum with_closure_cap(std::size_t cap) const;

  const std::string& label() const { return label_; }
  RootDatum with_label(std::string label) const;

  /// Enumerated W when possible; generators only in reflection-local mode
  /// or past the cap. Throws NonInvertibleGenerator.
  const MatrixGroup& weyl_group() const;
  /// Reflection set; throws Inconsistent if a generator is not a reflection.
  const ReflectionSet& reflections() const;
  /// Line of every reflection after equivariant extension. Throws
  /// Inconsistent when the extension is missing or not well defined.
  const std::vector<CorootLine>& coroot_lines() const;

  /// Raw extension result; entries are nullopt for uncovered reflections.
  struct Extension {
    std::vector<std::optional<CorootLine>> lines;
    std::vector<std::string> conflicts;
  };
  const Extension& extension() const;

 private:
  struct Cache;

  Ring ring_;
  std::size_t rank_;
  std::vector<Matrix> generators_;
  std::map<std::size_t, CorootLine> coroots_;
  bool reflection_local_;
  std::size_t closure_cap_ = kDefaultClosureCap;
  std::string label_;
  std::shared_ptr<Cache> cache_;
};

enum class Verdict { Pass, Fail, Flagged, Skipped };

struct AxiomCheck {
  char clause;  // 'a' .. 'e'
  std::string name;
  Verdict verdict;
  std::string detail;
};

struct ValidationReport {
  std::vector<AxiomCheck> checks;

  /// No clause failed or was skipped; a flagged finiteness check counts.
  bool passed() const;
  const AxiomCheck& clause(char c) const;
  std::string str() const;
};

std::string to_string(Verdict v);

/// (a) generators are reflections, (b) W is finite, (c) im(1 - σ) ⊆ R b_σ,
/// (d) R b_σ ⊆ ker Σ σ^i, (e) the equivariant extension is well defined and
/// covers every reflection.
ValidationReport validate(const RootDatum& d);

Root root_of(const RootDatum& d, std::size_t reflection);
/// Throws Inconsistent if sigma is not a reflection of d.
Root root_of(const RootDatum& d, const Matrix& sigma);
std::vector<Root> roots(const RootDatum& d);

Sublattice coroot_lattice(const RootDatum& d);
FiniteAbelianGroup fundamental_group(const RootDatum& d);
/// Kernel of all roots on L ⊗ Q/Z (Q_p/Z_p over Z_p).
CenterDescriptor center(const RootDatum& d);

/// D1 x D2 on L1 ⊕ L2. Throws RingMismatch.
RootDatum product(const RootDatum& a, const RootDatum& b);

/// Given W by reflection generators, every equivariant coroot choice
/// between im(1 - σ) and its saturation, one scale per class.
std::vector<RootDatum> coroot_collections(const Ring& ring, std::size_t rank, const std::vector<Matrix>& generators);

/// φ normalises W (generators conjugate into the reflection set), is
/// unimodular, and carries each coroot line to the line of the conjugate.
bool is_automorphism(const RootDatum& d, const Matrix& phi);

/// (L, L*, {±b_σ}, {±β_σ}) for a datum over Z. Coroots and roots are paired
/// by index: roots[i](coroots[i]) = ζ - 1 (= -2 for order two).
struct ClassicalRootDatum {
  std::size_t rank = 0;
  std::vector<Matrix> coroots;  // r x 1
  std::vector<Matrix> roots;    // 1 x r
};
ClassicalRootDatum to_classical(const RootDatum& d);

}  // namespace rootdatum
