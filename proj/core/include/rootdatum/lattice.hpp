#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rootdatum/matrix.hpp"

namespace rootdatum {

/// The free module R^r with its standard basis.
struct Lattice {
  Ring ring;
  std::size_t rank = 0;
};

/// Submodule of R^r, kept as a column Hermite basis so that equal
/// sublattices have equal basis matrices.
class Sublattice {
 public:
  Sublattice(Ring ring, std::size_t ambient_rank);

  /// Span of the columns of `generators` (r x n, dependencies allowed).
  static Sublattice from_generators(const Matrix& generators);

  const Ring& ring() const { return basis_.ring(); }
  std::size_t ambient_rank() const { return basis_.rows(); }
  std::size_t rank() const { return basis_.cols(); }
  /// r x s, columns are the Hermite basis.
  const Matrix& basis() const { return basis_; }
  bool is_zero() const { return rank() == 0; }

  /// Coefficients of v in the basis, if v lies in the sublattice. Over Z_p
  /// the result carries the precision left after dividing by pivots.
  std::optional<Matrix> coordinates(const Matrix& v) const;
  bool contains(const Matrix& v) const { return coordinates(v).has_value(); }
  bool contains(const Sublattice& other) const;

  /// g(S) for a square matrix g acting on column vectors.
  Sublattice image(const Matrix& g) const;

  friend bool operator==(const Sublattice& a, const Sublattice& b) {
    return a.basis_.rows() == b.basis_.rows() && a.basis_ == b.basis_;
  }

 private:
  explicit Sublattice(Matrix basis) : basis_(std::move(basis)) {}
  Matrix basis_;
};

/// Invariant factors d1 | d2 | ... (each > 1) plus a free rank.
struct FiniteAbelianGroup {
  std::vector<mpz_class> invariant_factors;
  std::size_t free_rank = 0;

  bool is_trivial() const { return invariant_factors.empty() && free_rank == 0; }
  bool is_finite() const { return free_rank == 0; }
  mpz_class order() const;
  /// "trivial", "Z/2 + Z/4", "Z^2 + Z/3".
  std::string str() const;
  friend bool operator==(const FiniteAbelianGroup&, const FiniteAbelianGroup&) = default;
};

FiniteAbelianGroup direct_sum(const FiniteAbelianGroup& a, const FiniteAbelianGroup& b);

Sublattice span(const Ring& ring, std::size_t ambient_rank, const std::vector<Matrix>& vectors);
Sublattice sum(const Sublattice& a, const Sublattice& b);
/// Smallest S' ⊇ S with R^r / S' torsion-free.
Sublattice saturation(const Sublattice& s);
/// {x : m x = 0}, always saturated.
Sublattice kernel(const Matrix& m);
FiniteAbelianGroup quotient(const Lattice& lattice, const Sublattice& s);
/// Generator of the index ideal [S' : S] (positive over Z, p^v over Z_p).
/// Throws NotContained unless S ⊆ S' with equal rank.
mpz_class lattice_index(const Sublattice& s, const Sublattice& s_prime);
/// The parts have independent spans and together generate the lattice.
bool is_direct_sum(const std::vector<Sublattice>& parts, const Lattice& lattice);

/// Content of a vector: gcd over Z, p^(min valuation) over Z_p (0 for v = 0).
mpz_class content(const Matrix& v);

}  // namespace rootdatum
