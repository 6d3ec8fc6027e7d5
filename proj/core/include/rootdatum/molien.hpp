#pragma once

#include <vector>

#include "rootdatum/matrix_group.hpp"

namespace rootdatum {

/// Invariant degrees d_1 <= ... <= d_r read off the Molien series
/// (1/|W|) Σ_w 1/det(1 - t w) = Π 1/(1 - t^{d_i}).
///
/// Needs an enumerated group (CapExceeded otherwise). The coefficient sums
/// are formed in compact arithmetic and divided by |W| exactly; every
/// coefficient is checked to be an integer within the trivial dimension
/// bound, and the product form is checked to the working series length.
/// Throws Inconsistent if the series is not of product form.
std::vector<unsigned> molien_degrees(const MatrixGroup& w);

/// det(1 - t w) coefficients for a compact element.
std::vector<std::uint64_t> compact_det_one_minus(const CompactRing& ring, std::span<const std::uint64_t> w,
                                                 std::size_t n);

}  // namespace rootdatum
