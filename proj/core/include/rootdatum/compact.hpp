#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "rootdatum/matrix.hpp"

namespace rootdatum {

/// Word-sized arithmetic in Z / p^e used for group enumeration.
///
/// Z is handled modulo 2^64 and Z_p modulo the largest p^e <= 2^64 not
/// exceeding the working precision. Reduction modulo 4 (p = 2) or p (p odd)
/// is injective on every finite subgroup of GL_r(Z_p), so enumerating the
/// image is exact for finite matrix groups.
class CompactRing {
 public:
  explicit CompactRing(const Ring& ring);

  const Ring& source() const { return source_; }
  /// Ring in which decoded elements live (Z, or Z_p at exponent e).
  Ring decoded_ring() const;
  unsigned prime() const { return prime_; }
  unsigned exponent() const { return exponent_; }

  std::uint64_t from(const mpz_class& x) const;
  mpz_class to(std::uint64_t x) const;

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    if (kind_ == Kind::General) {
      unsigned __int128 s = static_cast<unsigned __int128>(a) + b;
      return static_cast<std::uint64_t>(s % modulus_);
    }
    return (a + b) & mask_;
  }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const {
    if (kind_ == Kind::General) return a >= b ? a - b : static_cast<std::uint64_t>(modulus_ - b + a);
    return (a - b) & mask_;
  }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    if (kind_ == Kind::General) {
      unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
      return static_cast<std::uint64_t>(p % modulus_);
    }
    return (a * b) & mask_;
  }
  std::uint64_t neg(std::uint64_t a) const { return sub(0, a); }

  /// out = a * b for n x n row-major blocks.
  void multiply(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* out, std::size_t n) const;

  std::vector<std::uint64_t> encode(const Matrix& m) const;
  Matrix decode(std::span<const std::uint64_t> entries, std::size_t n) const;

  /// Symmetric representative, as a signed value, used for byte encoding.
  std::int64_t centered(std::uint64_t x) const;
  std::uint64_t from_signed(std::int64_t s) const;

  /// Valuation in the prime and exact division by a unit (for Molien sums).
  unsigned valuation(std::uint64_t x) const;
  std::uint64_t inverse_unit(std::uint64_t x) const;

 private:
  enum class Kind { PowerOfTwo, General };

  Ring source_;
  Kind kind_;
  unsigned prime_;
  unsigned exponent_;
  std::uint64_t mask_ = ~0ULL;
  unsigned __int128 modulus_ = 0;  // General only
};

/// Set of n x n compact matrices stored as varint-encoded byte strings in a
/// single arena, indexed by an open-addressing hash table. Lookups do not
/// touch shared state, so concurrent find() calls are safe.
class ElementStore {
 public:
  ElementStore(const CompactRing& ring, std::size_t n);

  /// Index of the element and whether it was newly inserted.
  std::pair<std::uint32_t, bool> insert(std::span<const std::uint64_t> element);
  std::optional<std::uint32_t> find(std::span<const std::uint64_t> element) const;
  std::size_t size() const { return offsets_.size() - 1; }
  void decode(std::uint32_t index, std::vector<std::uint64_t>& out) const;

 private:
  static constexpr std::uint32_t kEmpty = 0xffffffffu;

  std::string_view bytes_of(std::uint32_t i) const;
  void encode_into(std::span<const std::uint64_t> element, std::string& out) const;
  std::size_t probe(std::string_view key, std::size_t hash) const;
  void grow();

  const CompactRing* ring_;
  std::size_t n_;
  std::vector<std::uint8_t> bytes_;
  std::vector<std::uint64_t> offsets_;
  std::vector<std::uint32_t> slots_;
  std::vector<std::size_t> hashes_;
};

}  // namespace rootdatum
