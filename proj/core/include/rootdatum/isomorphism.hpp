#pragma once

#include <optional>
#include <string>

#include "rootdatum/root_datum.hpp"

namespace rootdatum {

enum class IsoStatus { Found, Invariant, Exhausted };

struct IsoResult {
  IsoStatus status = IsoStatus::Exhausted;
  std::optional<Matrix> witness;  // set iff Found
  std::string reason;             // distinguishing invariant, or search summary

  explicit operator bool() const { return status == IsoStatus::Found; }
};

/// Checks the definition directly: φ unimodular, φ R φ^-1 = R' as sets of
/// reflections, and φ(R b_σ) = R b'_{φσφ^-1} for every σ. Works at the
/// precision of φ, which may be lower than that of the data.
bool is_isomorphism(const RootDatum& a, const RootDatum& b, const Matrix& phi);

/// Invariant prefilter, then backtracking over images of the generators of
/// `a` among the reflections of `b`. The search fixes the first image to a
/// class representative, matches orders of pairwise products and the zero
/// pattern of pairings β_j(b_i), propagates the unit relating each coroot
/// to its image, and solves φ linearly from the coroots together with the
/// fixed lattices of W and W'. Every candidate goes through the full check
/// before it is returned. Deterministic: candidates are tried in index order.
IsoResult find_isomorphism(const RootDatum& a, const RootDatum& b);

}  // namespace rootdatum
