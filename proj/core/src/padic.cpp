#include "rootdatum/padic.hpp"

#include <algorithm>

#include "rootdatum/errors.hpp"

namespace rootdatum {

namespace {

mpz_class pow_ui(unsigned p, unsigned k) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), p, k);
  return r;
}

}  // namespace

std::string Valuation::str() const {
  return at_least ? ">= " + std::to_string(value) : std::to_string(value);
}

mpz_class mod_floor(const mpz_class& x, const mpz_class& m) {
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
  return r;
}

PAdicInt::PAdicInt(unsigned prime, const mpz_class& value, unsigned precision)
    : prime_(prime), precision_(precision) {
  if (prime < 2 || !is_probable_prime(prime)) throw BadKey("PAdicInt needs a prime");
  if (precision < 1) throw BadKey("PAdicInt precision must be >= 1");
  residue_ = mod_floor(value, pow_ui(prime, precision));
}

Valuation PAdicInt::valuation() const {
  if (residue_ == 0) return Valuation{precision_, true};
  return Valuation{padic_valuation(residue_, prime_), false};
}

bool PAdicInt::is_unit() const {
  return mpz_divisible_ui_p(residue_.get_mpz_t(), prime_) == 0;
}

PAdicInt PAdicInt::inverse() const {
  if (!is_unit()) {
    throw NonUnit(str() + " is not a unit (valuation " + valuation().str() + ")");
  }
  mpz_class inv;
  mpz_class m = pow_ui(prime_, precision_);
  mpz_invert(inv.get_mpz_t(), residue_.get_mpz_t(), m.get_mpz_t());
  return PAdicInt(prime_, inv, precision_);
}

PAdicInt PAdicInt::with_precision(unsigned precision) const {
  return PAdicInt(prime_, residue_, precision);
}

PAdicInt PAdicInt::operator-() const { return PAdicInt(prime_, -residue_, precision_); }

namespace {
unsigned joint_precision(const PAdicInt& a, const PAdicInt& b) {
  if (a.prime() != b.prime()) throw RingMismatch("p-adic primes differ");
  return std::min(a.precision(), b.precision());
}
}  // namespace

PAdicInt operator+(const PAdicInt& a, const PAdicInt& b) {
  return PAdicInt(a.prime_, a.residue_ + b.residue_, joint_precision(a, b));
}

PAdicInt operator-(const PAdicInt& a, const PAdicInt& b) {
  return PAdicInt(a.prime_, a.residue_ - b.residue_, joint_precision(a, b));
}

PAdicInt operator*(const PAdicInt& a, const PAdicInt& b) {
  return PAdicInt(a.prime_, a.residue_ * b.residue_, joint_precision(a, b));
}

bool operator==(const PAdicInt& a, const PAdicInt& b) {
  unsigned k = joint_precision(a, b);
  mpz_class m = pow_ui(a.prime_, k);
  return mod_floor(a.residue_ - b.residue_, m) == 0;
}

std::string PAdicInt::str() const {
  return residue_.get_str() + " (mod " + std::to_string(prime_) + "^" +
         std::to_string(precision_) + ")";
}

Valuation valuation(const PAdicInt& x) { return x.valuation(); }

PAdicInt invert(const PAdicInt& x) { return x.inverse(); }

PAdicInt hensel_sqrt(const PAdicInt& a, const mpz_class& seed) {
  const unsigned p = a.prime();
  const unsigned k = a.precision();
  const mpz_class& r = a.residue();

  if (p == 2) {
    // A unit is a 2-adic square iff it is ≡ 1 mod 8. With a ≡ 1 mod 8 we
    // iterate y <- y(3 - a y²)/2 towards a^{-1/2}; each step takes
    // a y² ≡ 1 mod 2^j to mod 2^{2j-2}.
    if (k < 4) throw NotASquare("2-adic square roots need precision >= 4");
    if (mod_floor(r, 8) != 1) {
      throw NotASquare(a.str() + " is not ≡ 1 mod 8, so not a 2-adic square");
    }
    if (mod_floor(seed, 2) != 1 || mod_floor(seed * seed - r, 16) != 0) {
      throw NotASquare("seed² ≢ a mod 16");
    }
    const unsigned work = k + 32;  // each halving step costs one bit
    const mpz_class m = pow_ui(2, work);
    const mpz_class a_work = r;  // only r mod 2^k is meaningful
    mpz_class y = 1;
    for (unsigned j = 3; j <= k; j = 2 * j - 2) {
      mpz_class t = mod_floor(a_work * y * y, m);
      mpz_class next = mod_floor(3 - t, m);  // even since t ≡ 1 mod 8
      next /= 2;
      y = mod_floor(y * next, m);
    }
    mpz_class x = mod_floor(a_work * y, m);
    const mpz_class mk = pow_ui(2, k);
    x = mod_floor(x, mk);
    if (mod_floor(x - seed, 4) != 0) x = mod_floor(-x, mk);
    if (mod_floor(x * x - r, mk) != 0) {
      throw NotASquare("2-adic Newton iteration failed to converge");
    }
    return PAdicInt(2, x, k);
  }

  if (!a.is_unit()) throw NotASquare("odd-p square roots are only lifted for units");
  const mpz_class pz = p;
  if (mpz_legendre(r.get_mpz_t(), pz.get_mpz_t()) != 1) {
    throw NotASquare(a.str() + " is not a quadratic residue mod " + std::to_string(p));
  }
  if (mod_floor(seed * seed - r, pz) != 0) throw NotASquare("seed² ≢ a mod p");

  mpz_class x = mod_floor(seed, pz);
  for (unsigned j = 1; j < k;) {
    j = std::min(2 * j, k);
    const mpz_class m = pow_ui(p, j);
    mpz_class inv;
    mpz_class two_x = mod_floor(2 * x, m);
    mpz_invert(inv.get_mpz_t(), two_x.get_mpz_t(), m.get_mpz_t());
    x = mod_floor(x - (x * x - r) * inv, m);
  }
  return PAdicInt(p, x, k);
}

}  // namespace rootdatum
