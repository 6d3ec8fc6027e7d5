#pragma once

#include <vector>

#include "rootdatum/root_datum.hpp"

namespace rootdatum {

struct Factor {
  Sublattice sublattice;  // the factor's lattice inside L
  RootDatum datum;        // induced datum in the basis of `sublattice`
  bool torus = false;     // the fixed-lattice factor
};

struct Decomposition {
  bool splits = false;
  /// Filled when the datum splits: one factor per component, then the torus.
  std::vector<Factor> factors;
  /// Ranks of the rational parts (components, then fixed space), always set.
  std::vector<std::size_t> rational_ranks;
};

/// Components of the graph on reflections with σ ~ τ iff στ != τσ. Each
/// component contributes the saturated span of its lines im(1 - σ); the
/// fixed lattice L^W contributes the torus part. When these lattices
/// form a direct sum of L, the induced factors are built and validated
/// (Inconsistent if one fails).
Decomposition decompose(const RootDatum& d);

}  // namespace rootdatum
