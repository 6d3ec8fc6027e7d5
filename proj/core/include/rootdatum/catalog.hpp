#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rootdatum/root_datum.hpp"

namespace rootdatum {

enum class Family { A, B, C, D, E, F, G, Torus, DI4 };
enum class Form { SimplyConnected, Adjoint };

/// Catalog address. Text form: "A2.sc.Z", "B3.ad.Z2", "F4.sc.Z3@32",
/// "T2.Z2", "DI4" (ring Z2@64), "DI4.Z2@32". The ring part defaults to Z
/// (Z2 for DI4), and a missing "@k" means the default precision.
struct CatalogKey {
  Family family = Family::A;
  unsigned rank = 1;
  Form form = Form::SimplyConnected;
  Ring ring = Ring::integers();

  /// Throws BadKey.
  static CatalogKey parse(std::string_view text, unsigned default_precision = kDefaultPrecision);
  std::string str() const;
  /// Without the ring: "A2.sc", "T1", "DI4".
  std::string type_name() const;
};

/// a_ij = <α_i^∨, α_j> in Bourbaki numbering. Throws BadKey.
Matrix cartan_matrix(Family family, unsigned rank);

/// Simply connected form: L spanned by the simple coroots. Adjoint form: L
/// the coweight lattice, with coroot b_i = row i of the Cartan matrix.
/// E7 and E8 are built in reflection-local mode.
RootDatum lie_datum(const CatalogKey& key);

/// Same matrices over Z_p at precision k; scales replaced by their p-parts.
RootDatum base_change(const RootDatum& d, unsigned prime, unsigned precision = kDefaultPrecision);

RootDatum torus_datum(std::size_t rank, const Ring& ring = Ring::integers());

/// Rank-3 datum over Z_2 with Weyl group of order 336, from the reflection
/// group over Z[ω], ω = (1 + √-7)/2, under ω ↦ (1 + u)/2 with u the square
/// root of -7 selected by `seed` (seeds 3 and 13 give the two branches).
/// Coroots are the minimal equivariant collection. PrecisionLoss for k < 16.
RootDatum di4(unsigned precision = kDefaultPrecision, long seed = 3);

/// DI4 reflection generators r1, r2, r3 over Z_2 at the given precision.
std::vector<Matrix> di4_generators(unsigned precision, long seed);

/// Memoised lookup by key text; labelled with the canonical key.
RootDatum catalog_datum(std::string_view key, unsigned default_precision = kDefaultPrecision);
RootDatum catalog_datum(const CatalogKey& key);

/// Type name ("F4.sc", "DI4", "T1") of the first catalog entry over d's
/// ring that is isomorphic to d, trying types of d's rank in listing order.
std::optional<std::string> identify(const RootDatum& d);

/// Catalog entries in listing order: Lie types sc/ad over Z and Z2, DI4.
std::vector<std::string> catalog_keys();

}  // namespace rootdatum
