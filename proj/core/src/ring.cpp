#include "rootdatum/ring.hpp"

#include <algorithm>

#include "rootdatum/errors.hpp"

namespace rootdatum {

Ring::Ring(RingKind kind, unsigned prime, unsigned precision)
    : kind_(kind), prime_(prime), precision_(precision) {
  if (kind_ == RingKind::PAdic) {
    mpz_ui_pow_ui(modulus_.get_mpz_t(), prime_, precision_);
  }
}

Ring Ring::padic(unsigned prime, unsigned precision) {
  if (prime < 2 || !is_probable_prime(prime)) {
    throw BadKey("p-adic ring needs a prime, got " + std::to_string(prime));
  }
  if (precision < 1) throw BadKey("p-adic precision must be at least 1");
  return Ring(RingKind::PAdic, prime, precision);
}

unsigned Ring::guard_band() const {
  if (kind_ != RingKind::PAdic) return 0;
  return std::min(kDefaultGuardBand, precision_ / 4);
}

Ring Ring::with_precision(unsigned precision) const {
  if (kind_ != RingKind::PAdic) return *this;
  return Ring::padic(prime_, precision);
}

std::string Ring::name() const {
  switch (kind_) {
    case RingKind::Integers:
      return "Z";
    case RingKind::Rationals:
      return "Q";
    case RingKind::PAdic:
      return "Z" + std::to_string(prime_) + "@" + std::to_string(precision_);
  }
  return "?";
}

Ring common_ring(const Ring& a, const Ring& b) {
  if (!a.same_family(b)) {
    throw RingMismatch("ring mismatch: " + a.name() + " vs " + b.name());
  }
  return a.precision() <= b.precision() ? a : b;
}

unsigned padic_valuation(const mpz_class& x, unsigned prime) {
  if (x == 0) return 0;
  if (prime == 2) return static_cast<unsigned>(mpz_scan1(x.get_mpz_t(), 0));
  mpz_class p = prime;
  mpz_class rest;
  return static_cast<unsigned>(mpz_remove(rest.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t()));
}

bool is_probable_prime(unsigned p) {
  mpz_class v = p;
  return mpz_probab_prime_p(v.get_mpz_t(), 30) > 0;
}

}  // namespace rootdatum
