#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace rootdatum {

inline constexpr unsigned kDefaultPrecision = 64;
inline constexpr unsigned kDefaultGuardBand = 16;

enum class RingKind { Integers, Rationals, PAdic };

/// Coefficient ring tag: Z, Q, or Z_p known modulo p^k.
///
/// Over Z_p the guard band g is min(16, k/4); a nonzero residue whose
/// valuation reaches k - g cannot be told apart from zero and raises
/// PrecisionLoss wherever the distinction matters.
class Ring {
 public:
  static Ring integers() { return Ring(RingKind::Integers, 0, 0); }
  static Ring rationals() { return Ring(RingKind::Rationals, 0, 0); }
  static Ring padic(unsigned prime, unsigned precision = kDefaultPrecision);

  RingKind kind() const { return kind_; }
  bool is_integers() const { return kind_ == RingKind::Integers; }
  bool is_rationals() const { return kind_ == RingKind::Rationals; }
  bool is_padic() const { return kind_ == RingKind::PAdic; }

  unsigned prime() const { return prime_; }
  unsigned precision() const { return precision_; }
  unsigned guard_band() const;
  /// p^k for Z_p; zero otherwise.
  const mpz_class& modulus() const { return modulus_; }

  Ring with_precision(unsigned precision) const;
  /// Same ring family (kind and prime); precision may differ.
  bool same_family(const Ring& other) const {
    return kind_ == other.kind_ && prime_ == other.prime_;
  }

  /// "Z", "Q", or "Z2@64".
  std::string name() const;

  friend bool operator==(const Ring& a, const Ring& b) {
    return a.kind_ == b.kind_ && a.prime_ == b.prime_ && a.precision_ == b.precision_;
  }

 private:
  Ring(RingKind kind, unsigned prime, unsigned precision);

  RingKind kind_;
  unsigned prime_;
  unsigned precision_;
  mpz_class modulus_;
};

/// Ring with the smaller precision; throws RingMismatch across families.
Ring common_ring(const Ring& a, const Ring& b);

// Scalar helpers on integer representatives. Over Z_p values are residues
// in [0, p^k); over Z they are plain integers.

/// Largest v with p^v | x, for x != 0.
unsigned padic_valuation(const mpz_class& x, unsigned prime);
bool is_probable_prime(unsigned p);

}  // namespace rootdatum
