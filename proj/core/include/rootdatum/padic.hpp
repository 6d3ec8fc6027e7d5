#pragma once

#include <optional>
#include <string>

#include <gmpxx.h>

#include "rootdatum/ring.hpp"

namespace rootdatum {

/// p-adic valuation, or the marker "zero to precision k".
struct Valuation {
  unsigned value = 0;
  bool at_least = false;  // residue is 0: the true valuation is >= value (= k)

  bool is_finite() const { return !at_least; }
  std::string str() const;
  friend bool operator==(const Valuation&, const Valuation&) = default;
};

/// Element of Z_p known modulo p^k.
class PAdicInt {
 public:
  PAdicInt(unsigned prime, const mpz_class& value, unsigned precision = kDefaultPrecision);

  unsigned prime() const { return prime_; }
  unsigned precision() const { return precision_; }
  /// Representative in [0, p^k).
  const mpz_class& residue() const { return residue_; }
  Ring ring() const { return Ring::padic(prime_, precision_); }

  Valuation valuation() const;
  bool is_unit() const;
  bool is_zero() const { return residue_ == 0; }

  /// Multiplicative inverse at the same precision; NonUnit if p | residue.
  PAdicInt inverse() const;
  PAdicInt with_precision(unsigned precision) const;

  PAdicInt operator-() const;
  friend PAdicInt operator+(const PAdicInt& a, const PAdicInt& b);
  friend PAdicInt operator-(const PAdicInt& a, const PAdicInt& b);
  friend PAdicInt operator*(const PAdicInt& a, const PAdicInt& b);
  /// Equality modulo p^min(k_a, k_b).
  friend bool operator==(const PAdicInt& a, const PAdicInt& b);

  std::string str() const;

 private:
  unsigned prime_;
  unsigned precision_;
  mpz_class residue_;
};

Valuation valuation(const PAdicInt& x);
PAdicInt invert(const PAdicInt& x);

/// Square root by Newton iteration.
///
/// p = 2: needs a ≡ 1 mod 8 and seed odd with seed² ≡ a mod 16; the root
/// returned is the one congruent to seed mod 4 (the two roots ±u are
/// distinguished there). p odd: needs a a unit square mod p and
/// seed² ≡ a mod p; the root returned is congruent to seed mod p.
/// Throws NotASquare when the congruence conditions fail.
PAdicInt hensel_sqrt(const PAdicInt& a, const mpz_class& seed);

/// Residue of x modulo m in [0, m).
mpz_class mod_floor(const mpz_class& x, const mpz_class& m);

}  // namespace rootdatum
