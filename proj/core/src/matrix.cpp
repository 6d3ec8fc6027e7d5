#include "rootdatum/matrix.hpp"

#include <sstream>

#include "rootdatum/errors.hpp"
#include "rootdatum/padic.hpp"

namespace rootdatum {

namespace scalar {

mpz_class reduce(const Ring& ring, const mpz_class& x) {
  if (ring.is_padic()) return mod_floor(x, ring.modulus());
  return x;
}

bool is_unit(const Ring& ring, const mpz_class& x) {
  switch (ring.kind()) {
    case RingKind::Integers:
      return x == 1 || x == -1;
    case RingKind::Rationals:
      return x != 0;
    case RingKind::PAdic:
      return mpz_divisible_ui_p(x.get_mpz_t(), ring.prime()) == 0;
  }
  return false;
}

mpz_class unit_inverse(const Ring& ring, const mpz_class& x) {
  if (!is_unit(ring, x)) throw NonUnit(x.get_str() + " is not a unit in " + ring.name());
  if (ring.is_padic()) {
    mpz_class inv;
    mpz_class r = mod_floor(x, ring.modulus());
    mpz_invert(inv.get_mpz_t(), r.get_mpz_t(), ring.modulus().get_mpz_t());
    return inv;
  }
  if (ring.is_integers()) return x;
  throw WrongRing("unit_inverse over Q needs rational entries");
}

bool is_zero(const Ring& ring, const mpz_class& x) {
  if (x == 0) return true;
  if (!ring.is_padic()) return false;
  unsigned v = padic_valuation(x, ring.prime());
  if (v + ring.guard_band() >= ring.precision()) {
    throw PrecisionLoss("residue " + x.get_str() + " has valuation " + std::to_string(v) +
                        " inside the guard band of " + ring.name());
  }
  return false;
}

unsigned valuation(const Ring& ring, const mpz_class& x) {
  if (ring.is_padic()) return padic_valuation(x, ring.prime());
  return 0;
}

mpz_class signed_lift(const Ring& ring, const mpz_class& x) {
  if (!ring.is_padic()) return x;
  mpz_class r = mod_floor(x, ring.modulus());
  if (2 * r > ring.modulus()) r -= ring.modulus();
  return r;
}

}  // namespace scalar

Matrix::Matrix(Ring ring, std::size_t rows, std::size_t cols)
    : ring_(std::move(ring)), rows_(rows), cols_(cols), entries_(rows * cols) {}

Matrix Matrix::identity(Ring ring, std::size_t n) {
  Matrix m(std::move(ring), n, n);
  for (std::size_t i = 0; i < n; ++i) m.entries_[i * n + i] = 1;
  return m;
}

Matrix Matrix::from_rows(Ring ring, const std::vector<std::vector<mpz_class>>& rows) {
  std::size_t cols = rows.empty() ? 0 : rows.front().size();
  Matrix m(std::move(ring), rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw DimensionMismatch("ragged matrix rows");
    for (std::size_t j = 0; j < cols; ++j) m.set(i, j, rows[i][j]);
  }
  return m;
}

Matrix Matrix::from_rows(Ring ring, std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<std::vector<mpz_class>> data;
  for (const auto& r : rows) {
    std::vector<mpz_class> row;
    for (long x : r) row.emplace_back(x);
    data.push_back(std::move(row));
  }
  return from_rows(std::move(ring), data);
}

Matrix Matrix::column_vector(Ring ring, const std::vector<mpz_class>& entries) {
  Matrix m(std::move(ring), entries.size(), 1);
  for (std::size_t i = 0; i < entries.size(); ++i) m.set(i, 0, entries[i]);
  return m;
}

Matrix Matrix::row_vector(Ring ring, const std::vector<mpz_class>& entries) {
  Matrix m(std::move(ring), 1, entries.size());
  for (std::size_t j = 0; j < entries.size(); ++j) m.set(0, j, entries[j]);
  return m;
}

Matrix Matrix::rational(const Matrix& numerators, const mpz_class& denominator) {
  if (numerators.ring().is_padic()) throw WrongRing("Q matrices need integer numerators");
  if (denominator == 0) throw Inconsistent("zero denominator");
  Matrix m(Ring::rationals(), numerators.rows(), numerators.cols());
  m.entries_ = numerators.entries_;
  m.denominator_ = denominator * numerators.denominator_;
  m.normalize_rational();
  return m;
}

void Matrix::normalize_entry(mpz_class& x) const {
  if (ring_.is_padic()) x = mod_floor(x, ring_.modulus());
}

void Matrix::normalize_rational() {
  if (!ring_.is_rationals()) return;
  if (denominator_ < 0) {
    denominator_ = -denominator_;
    for (auto& e : entries_) e = -e;
  }
  mpz_class g = denominator_;
  for (const auto& e : entries_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.get_mpz_t());
    if (g == 1) return;
  }
  if (g > 1) {
    denominator_ /= g;
    for (auto& e : entries_) mpz_divexact(e.get_mpz_t(), e.get_mpz_t(), g.get_mpz_t());
  }
}

void Matrix::set(std::size_t i, std::size_t j, const mpz_class& value) {
  if (ring_.is_rationals() && denominator_ != 1) {
    throw WrongRing("set() on a Q matrix with a denominator; build via Matrix::rational");
  }
  mpz_class& e = entries_[i * cols_ + j];
  e = value;
  normalize_entry(e);
}

mpq_class Matrix::rational_at(std::size_t i, std::size_t j) const {
  mpq_class q((*this)(i, j), denominator_);
  q.canonicalize();
  return q;
}

Matrix Matrix::row(std::size_t i) const { return block(i, 0, 1, cols_); }
Matrix Matrix::col(std::size_t j) const { return block(0, j, rows_, 1); }

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw DimensionMismatch("block out of range");
  Matrix m(ring_, nr, nc);
  m.denominator_ = denominator_;
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) m.entries_[i * nc + j] = (*this)(r0 + i, c0 + j);
  m.normalize_rational();
  return m;
}

Matrix Matrix::transpose() const {
  Matrix m(ring_, cols_, rows_);
  m.denominator_ = denominator_;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m.entries_[j * rows_ + i] = (*this)(i, j);
  return m;
}

std::vector<mpz_class> Matrix::column_entries(std::size_t j) const {
  std::vector<mpz_class> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
  return out;
}

Matrix Matrix::hstack(const std::vector<Matrix>& parts, const Ring& ring, std::size_t rows) {
  Ring r = ring;
  std::size_t cols = 0;
  for (const auto& p : parts) {
    if (p.rows() != rows) throw DimensionMismatch("hstack row mismatch");
    if (p.ring().is_rationals()) throw WrongRing("hstack over Q is not supported");
    r = common_ring(r, p.ring());
    cols += p.cols();
  }
  Matrix m(r, rows, cols);
  std::size_t c = 0;
  for (const auto& p : parts) {
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < p.cols(); ++j) m.set(i, c + j, p(i, j));
    c += p.cols();
  }
  return m;
}

Matrix Matrix::vstack(const std::vector<Matrix>& parts, const Ring& ring, std::size_t cols) {
  std::vector<Matrix> t;
  t.reserve(parts.size());
  for (const auto& p : parts) t.push_back(p.transpose());
  return hstack(t, ring, cols).transpose();
}

Matrix Matrix::block_diagonal(const Matrix& a, const Matrix& b) {
  Ring r = common_ring(a.ring(), b.ring());
  Matrix m(r, a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m.set(i, j, a(i, j));
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) m.set(a.rows() + i, a.cols() + j, b(i, j));
  return m;
}

Matrix Matrix::to_ring(const Ring& target) const {
  if (target == ring_) return *this;
  bool ok = (ring_.is_integers() && (target.is_padic() || target.is_rationals())) ||
            (ring_.is_padic() && target.is_padic() && ring_.prime() == target.prime() &&
             target.precision() <= ring_.precision());
  if (!ok) throw WrongRing("cannot convert " + ring_.name() + " matrix to " + target.name());
  Matrix m(target, rows_, cols_);
  for (std::size_t k = 0; k < entries_.size(); ++k) {
    m.entries_[k] = entries_[k];
    m.normalize_entry(m.entries_[k]);
  }
  return m;
}

std::optional<Matrix> Matrix::to_integers() const {
  if (ring_.is_integers()) return *this;
  if (!ring_.is_rationals()) throw WrongRing("to_integers expects Q or Z");
  if (denominator_ != 1) return std::nullopt;
  Matrix m(Ring::integers(), rows_, cols_);
  m.entries_ = entries_;
  return m;
}

bool Matrix::is_zero() const {
  for (const auto& e : entries_)
    if (e != 0) return false;
  return true;
}

bool Matrix::is_identity() const {
  if (!is_square()) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) {
      const mpz_class& e = (*this)(i, j);
      if (i == j ? e != denominator_ : e != 0) return false;
    }
  return true;
}

Matrix Matrix::operator-() const {
  Matrix m(*this);
  for (auto& e : m.entries_) {
    e = -e;
    m.normalize_entry(e);
  }
  return m;
}

namespace {

Matrix combine(const Matrix& a, const Matrix& b, int sign) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionMismatch("matrix sum shapes differ");
  Ring r = common_ring(a.ring(), b.ring());
  if (r.is_rationals()) {
    Matrix num(Ring::integers(), a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j)
        num.set(i, j, a(i, j) * b.denominator() + sign * b(i, j) * a.denominator());
    return Matrix::rational(num, a.denominator() * b.denominator());
  }
  Matrix m(r, a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m.set(i, j, a(i, j) + sign * b(i, j));
  return m;
}

}  // namespace

Matrix operator+(const Matrix& a, const Matrix& b) { return combine(a, b, 1); }
Matrix operator-(const Matrix& a, const Matrix& b) { return combine(a, b, -1); }

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw DimensionMismatch("matrix product shapes differ");
  Ring r = common_ring(a.ring(), b.ring());
  Matrix m(r.is_rationals() ? Ring::integers() : r, a.rows(), b.cols());
  mpz_class acc;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      acc = 0;
      for (std::size_t k = 0; k < a.cols(); ++k) mpz_addmul(acc.get_mpz_t(), a(i, k).get_mpz_t(), b(k, j).get_mpz_t());
      m.set(i, j, acc);
    }
  if (r.is_rationals()) return Matrix::rational(m, a.denominator() * b.denominator());
  return m;
}

Matrix operator*(const mpz_class& s, const Matrix& a) {
  Matrix m(a);
  for (auto& e : m.entries_) {
    e *= s;
    m.normalize_entry(e);
  }
  m.normalize_rational();
  return m;
}

bool operator==(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  if (!a.ring().same_family(b.ring())) return false;
  if (a.ring().is_padic()) {
    const mpz_class& m = a.ring().precision() <= b.ring().precision() ? a.ring().modulus() : b.ring().modulus();
    for (std::size_t k = 0; k < a.entries_.size(); ++k)
      if (mod_floor(a.entries_[k] - b.entries_[k], m) != 0) return false;
    return true;
  }
  return a.denominator_ == b.denominator_ && a.entries_ == b.entries_;
}

std::string Matrix::str() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < rows_; ++i) {
    os << "[";
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) os << " ";
      if (ring_.is_rationals()) os << rational_at(i, j).get_str();
      else os << (*this)(i, j).get_str();
    }
    os << "]";
    if (i + 1 < rows_) os << "\n";
  }
  return os.str();
}

// Division-free charpoly (Berkowitz). Works on integer numerators; over Q the
// caller rescales.
std::vector<mpz_class> characteristic_polynomial(const Matrix& a) {
  if (!a.is_square()) throw DimensionMismatch("characteristic polynomial of a non-square matrix");
  if (a.ring().is_rationals()) throw WrongRing("characteristic_polynomial expects Z or Z_p");
  const Ring& ring = a.ring();
  const std::size_t n = a.rows();
  auto red = [&](mpz_class x) { return scalar::reduce(ring, x); };
  std::vector<mpz_class> poly{1};
  if (n == 0) return poly;
  poly.push_back(red(-a(0, 0)));
  for (std::size_t r = 1; r < n; ++r) {
    // Toeplitz column: 1, -a_rr, -R C, -R A C, ..., -R A^{r-1} C
    std::vector<mpz_class> q{1, red(-a(r, r))};
    std::vector<mpz_class> x(r);
    for (std::size_t i = 0; i < r; ++i) x[i] = a(i, r);
    for (std::size_t step = 0; step < r; ++step) {
      mpz_class dot = 0;
      for (std::size_t i = 0; i < r; ++i) dot += a(r, i) * x[i];
      q.push_back(red(-dot));
      std::vector<mpz_class> y(r);
      for (std::size_t i = 0; i < r; ++i) {
        mpz_class s = 0;
        for (std::size_t k = 0; k < r; ++k) s += a(i, k) * x[k];
        y[i] = red(s);
      }
      x = std::move(y);
    }
    std::vector<mpz_class> next(r + 2);
    for (std::size_t i = 0; i < r + 2; ++i) {
      mpz_class s = 0;
      for (std::size_t j = 0; j <= std::min(i, r); ++j) s += q[i - j] * poly[j];
      next[i] = red(s);
    }
    poly = std::move(next);
  }
  return poly;
}

mpz_class determinant(const Matrix& a) {
  if (a.ring().is_rationals()) throw WrongRing("determinant over Q: use the integer numerators");
  auto poly = characteristic_polynomial(a);
  mpz_class d = poly.back();
  if (a.rows() % 2 == 1) d = -d;
  return scalar::reduce(a.ring(), d);
}

Matrix adjugate(const Matrix& a) {
  const std::size_t n = a.rows();
  auto poly = characteristic_polynomial(a);
  Matrix acc = Matrix::identity(a.ring(), n);
  // Horner: A^{n-1} + c1 A^{n-2} + ... + c_{n-1} I
  for (std::size_t i = 1; i < n; ++i) acc = acc * a + poly[i] * Matrix::identity(a.ring(), n);
  if (n % 2 == 0) acc = -acc;
  return acc;
}

bool is_unimodular(const Matrix& a) {
  if (!a.is_square()) return false;
  if (a.ring().is_rationals()) {
    Matrix num(Ring::integers(), a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j) num.set(i, j, a(i, j));
    return determinant(num) != 0;
  }
  return scalar::is_unit(a.ring(), determinant(a));
}

Matrix inverse_unimodular(const Matrix& a) {
  if (!a.is_square()) throw DimensionMismatch("inverse of a non-square matrix");
  mpz_class d = determinant(a);
  if (!scalar::is_unit(a.ring(), d)) {
    throw NonInvertibleGenerator("matrix is not invertible over " + a.ring().name());
  }
  return scalar::unit_inverse(a.ring(), d) * adjugate(a);
}

Matrix inverse_over_q(const Matrix& a) {
  if (a.ring().is_padic()) throw WrongRing("inverse_over_q expects Z or Q");
  Matrix num(Ring::integers(), a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) num.set(i, j, a(i, j));
  mpz_class d = determinant(num);
  if (d == 0) throw NonInvertibleGenerator("singular matrix");
  // (N / den)^{-1} = den * adj(N) / det(N)
  return Matrix::rational(a.denominator() * adjugate(num), d);
}

Matrix power(const Matrix& a, unsigned long exponent) {
  Matrix result = Matrix::identity(a.ring(), a.rows());
  Matrix base = a;
  while (exponent) {
    if (exponent & 1UL) result = result * base;
    exponent >>= 1;
    if (exponent) base = base * base;
  }
  return result;
}

std::optional<unsigned> multiplicative_order(const Matrix& a, unsigned cap) {
  if (!a.is_square()) throw DimensionMismatch("order of a non-square matrix");
  Matrix x = a;
  for (unsigned n = 1; n <= cap; ++n) {
    if (x.is_identity()) return n;
    x = x * a;
  }
  return std::nullopt;
}

}  // namespace rootdatum
