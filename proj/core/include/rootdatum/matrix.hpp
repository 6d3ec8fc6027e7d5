#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "rootdatum/ring.hpp"

namespace rootdatum {

/// Exact dense matrix over Z, Q, or Z_p at one shared precision.
///
/// Entries are stored as integers: plain integers over Z, residues in
/// [0, p^k) over Z_p, and numerators over a common positive denominator
/// over Q. Vectors are r x 1 matrices; covectors are 1 x r.
class Matrix {
 public:
  Matrix() : ring_(Ring::integers()) {}
  Matrix(Ring ring, std::size_t rows, std::size_t cols);

  static Matrix identity(Ring ring, std::size_t n);
  static Matrix from_rows(Ring ring, const std::vector<std::vector<mpz_class>>& rows);
  static Matrix from_rows(Ring ring, std::initializer_list<std::initializer_list<long>> rows);
  static Matrix column_vector(Ring ring, const std::vector<mpz_class>& entries);
  static Matrix row_vector(Ring ring, const std::vector<mpz_class>& entries);
  static Matrix rational(const Matrix& numerators, const mpz_class& denominator);

  const Ring& ring() const { return ring_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  /// Integer entry (numerator over Q).
  const mpz_class& operator()(std::size_t i, std::size_t j) const {
    return entries_[i * cols_ + j];
  }
  void set(std::size_t i, std::size_t j, const mpz_class& value);
  const mpz_class& denominator() const { return denominator_; }
  mpq_class rational_at(std::size_t i, std::size_t j) const;
  const std::vector<mpz_class>& entries() const { return entries_; }

  Matrix row(std::size_t i) const;
  Matrix col(std::size_t j) const;
  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  Matrix transpose() const;
  std::vector<mpz_class> column_entries(std::size_t j) const;

  static Matrix hstack(const std::vector<Matrix>& parts, const Ring& ring, std::size_t rows);
  static Matrix vstack(const std::vector<Matrix>& parts, const Ring& ring, std::size_t cols);
  static Matrix block_diagonal(const Matrix& a, const Matrix& b);

  /// Reinterpret in another ring: Z -> Z_p reduces, Z_p -> lower precision
  /// truncates, Z -> Q embeds. Other directions throw WrongRing.
  Matrix to_ring(const Ring& target) const;
  Matrix with_precision(unsigned precision) const { return to_ring(ring_.with_precision(precision)); }
  /// Q -> Z when every entry is integral.
  std::optional<Matrix> to_integers() const;

  bool is_zero() const;
  bool is_identity() const;

  Matrix operator-() const;
  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a, const Matrix& b);
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator*(const mpz_class& s, const Matrix& a);
  /// Same family; Z_p entries compared modulo the smaller precision.
  friend bool operator==(const Matrix& a, const Matrix& b);

  std::string str() const;

 private:
  void normalize_entry(mpz_class& x) const;
  void normalize_rational();

  Ring ring_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<mpz_class> entries_;
  mpz_class denominator_ = 1;
};

/// Coefficients [1, c1, ..., cn] of det(x I - A), computed without division
/// (Berkowitz), so valid over Z and over Z/p^k alike.
std::vector<mpz_class> characteristic_polynomial(const Matrix& a);
mpz_class determinant(const Matrix& a);
/// Adjugate via Cayley-Hamilton; M * adj(M) = det(M) I.
Matrix adjugate(const Matrix& a);

/// Determinant is a unit of the ring (±1 over Z, valuation 0 over Z_p).
bool is_unimodular(const Matrix& a);
/// Inverse of a unimodular matrix in its own ring; NonInvertibleGenerator otherwise.
Matrix inverse_unimodular(const Matrix& a);
/// Inverse over the fraction field of a Z or Q matrix, returned over Q.
Matrix inverse_over_q(const Matrix& a);
Matrix power(const Matrix& a, unsigned long exponent);
/// Smallest n <= cap with a^n = 1, if any.
std::optional<unsigned> multiplicative_order(const Matrix& a, unsigned cap = 1000);

/// Ring-level scalar helpers shared by the normal-form code.
namespace scalar {
mpz_class reduce(const Ring& ring, const mpz_class& x);
bool is_unit(const Ring& ring, const mpz_class& x);
mpz_class unit_inverse(const Ring& ring, const mpz_class& x);
/// Zero test honouring the guard band: residue 0 is zero, valuation below
/// k - g is nonzero, anything in between throws PrecisionLoss.
bool is_zero(const Ring& ring, const mpz_class& x);
/// Valuation of a nonzero Z_p residue, or |x| ordering key over Z.
unsigned valuation(const Ring& ring, const mpz_class& x);
/// Symmetric representative of a Z_p residue in (-p^k/2, p^k/2].
mpz_class signed_lift(const Ring& ring, const mpz_class& x);
}  // namespace scalar

}  // namespace rootdatum
