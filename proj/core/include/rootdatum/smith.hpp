#pragma once

#include <vector>

#include "rootdatum/matrix.hpp"

namespace rootdatum {

/// U * M * V = D with U, V unimodular and d1 | d2 | ... on the diagonal.
///
/// Diagonal entries are nonnegative over Z and pure powers p^v over Z_p.
struct SmithDecomposition {
  Matrix U;
  Matrix D;
  Matrix V;

  std::vector<mpz_class> diagonal() const;
  /// Number of nonzero diagonal entries.
  std::size_t rank() const;
};

/// Smith form over Z (full integer arithmetic, least-absolute-value pivots)
/// or Z_p (least-valuation pivots). Throws PrecisionLoss when a Z_p pivot
/// falls inside the guard band, WrongRing over Q.
SmithDecomposition smith_normal_form(const Matrix& m);

/// Diagonal only; skips the transforms.
std::vector<mpz_class> smith_diagonal(const Matrix& m);

/// Rank over the fraction field. Q matrices are handled via their numerators.
std::size_t rank_over_fractions(const Matrix& m);

/// Row-style Hermite normal form: nonzero rows only, pivots strictly moving
/// right, pivot positive over Z (p^v over Z_p), entries above each pivot
/// reduced into [0, pivot).
Matrix hermite_row_form(const Matrix& m);

}  // namespace rootdatum
