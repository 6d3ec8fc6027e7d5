#include "rootdatum/smith.hpp"

#include <utility>

#include "rootdatum/errors.hpp"
#include "rootdatum/padic.hpp"

namespace rootdatum {

namespace {

int cmpabs(const mpz_class& a, const mpz_class& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }

// Working copy with row/column operations mirrored into U and V.
class Reducer {
 public:
  Reducer(const Matrix& m, bool track)
      : ring_(m.ring()), rows_(m.rows()), cols_(m.cols()), track_(track), a_(m.entries()) {
    if (track_) {
      u_ = Matrix::identity(ring_, rows_).entries();
      v_ = Matrix::identity(ring_, cols_).entries();
    }
  }

  mpz_class& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }

  void swap_rows(std::size_t i, std::size_t k) {
    if (i == k) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap(at(i, j), at(k, j));
    if (track_)
      for (std::size_t j = 0; j < rows_; ++j) std::swap(u_[i * rows_ + j], u_[k * rows_ + j]);
  }
  void swap_cols(std::size_t j, std::size_t k) {
    if (j == k) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap(at(i, j), at(i, k));
    if (track_)
      for (std::size_t i = 0; i < cols_; ++i) std::swap(v_[i * cols_ + j], v_[i * cols_ + k]);
  }
  // row i += f * row k
  void add_row(std::size_t i, std::size_t k, const mpz_class& f) {
    if (f == 0) return;
    for (std::size_t j = 0; j < cols_; ++j) at(i, j) = red(at(i, j) + f * at(k, j));
    if (track_)
      for (std::size_t j = 0; j < rows_; ++j) u_[i * rows_ + j] = red(u_[i * rows_ + j] + f * u_[k * rows_ + j]);
  }
  // col j += f * col k
  void add_col(std::size_t j, std::size_t k, const mpz_class& f) {
    if (f == 0) return;
    for (std::size_t i = 0; i < rows_; ++i) at(i, j) = red(at(i, j) + f * at(i, k));
    if (track_)
      for (std::size_t i = 0; i < cols_; ++i) v_[i * cols_ + j] = red(v_[i * cols_ + j] + f * v_[i * cols_ + k]);
  }
  void scale_row(std::size_t i, const mpz_class& f) {
    for (std::size_t j = 0; j < cols_; ++j) at(i, j) = red(at(i, j) * f);
    if (track_)
      for (std::size_t j = 0; j < rows_; ++j) u_[i * rows_ + j] = red(u_[i * rows_ + j] * f);
  }

  mpz_class red(const mpz_class& x) const { return scalar::reduce(ring_, x); }

  SmithDecomposition finish() const {
    SmithDecomposition out{Matrix(ring_, rows_, rows_), Matrix(ring_, rows_, cols_), Matrix(ring_, cols_, cols_)};
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out.D.set(i, j, a_[i * cols_ + j]);
    if (track_) {
      for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < rows_; ++j) out.U.set(i, j, u_[i * rows_ + j]);
      for (std::size_t i = 0; i < cols_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out.V.set(i, j, v_[i * cols_ + j]);
    }
    return out;
  }

  void reduce_integers();
  void reduce_padic();

 private:
  Ring ring_;
  std::size_t rows_, cols_;
  bool track_;
  std::vector<mpz_class> a_, u_, v_;
};

void Reducer::reduce_integers() {
  const std::size_t n = std::min(rows_, cols_);
  for (std::size_t t = 0; t < n; ++t) {
    for (;;) {
      // least |entry| in the trailing block
      std::size_t pi = rows_, pj = cols_;
      for (std::size_t i = t; i < rows_; ++i)
        for (std::size_t j = t; j < cols_; ++j) {
          if (at(i, j) == 0) continue;
          if (pi == rows_ || cmpabs(at(i, j), at(pi, pj)) < 0) {
            pi = i;
            pj = j;
          }
        }
      if (pi == rows_) return;
      swap_rows(t, pi);
      swap_cols(t, pj);
      bool clean = true;
      mpz_class q;
      for (std::size_t i = t + 1; i < rows_; ++i) {
        if (at(i, t) == 0) continue;
        mpz_fdiv_q(q.get_mpz_t(), at(i, t).get_mpz_t(), at(t, t).get_mpz_t());
        add_row(i, t, -q);
        if (at(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols_; ++j) {
        if (at(t, j) == 0) continue;
        mpz_fdiv_q(q.get_mpz_t(), at(t, j).get_mpz_t(), at(t, t).get_mpz_t());
        add_col(j, t, -q);
        if (at(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      // divisibility chain: fold any non-multiple into the pivot row
      bool divides = true;
      for (std::size_t i = t + 1; i < rows_ && divides; ++i)
        for (std::size_t j = t + 1; j < cols_; ++j)
          if (mpz_divisible_p(at(i, j).get_mpz_t(), at(t, t).get_mpz_t()) == 0) {
            add_row(t, i, 1);
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (at(t, t) < 0) scale_row(t, -1);
  }
}

void Reducer::reduce_padic() {
  const unsigned p = ring_.prime();
  const std::size_t n = std::min(rows_, cols_);
  for (std::size_t t = 0; t < n; ++t) {
    std::size_t pi = rows_, pj = cols_;
    unsigned best = 0;
    for (std::size_t i = t; i < rows_; ++i)
      for (std::size_t j = t; j < cols_; ++j) {
        if (scalar::is_zero(ring_, at(i, j))) continue;
        unsigned v = padic_valuation(at(i, j), p);
        if (pi == rows_ || v < best) {
          pi = i;
          pj = j;
          best = v;
        }
      }
    if (pi == rows_) return;
    swap_rows(t, pi);
    swap_cols(t, pj);
    mpz_class pv;
    mpz_ui_pow_ui(pv.get_mpz_t(), p, best);
    mpz_class unit;
    mpz_divexact(unit.get_mpz_t(), at(t, t).get_mpz_t(), pv.get_mpz_t());
    scale_row(t, scalar::unit_inverse(ring_, unit));
    // Every remaining entry has valuation >= best, so the representative
    // quotients below are exact.
    mpz_class q;
    for (std::size_t i = t + 1; i < rows_; ++i) {
      if (at(i, t) == 0) continue;
      mpz_divexact(q.get_mpz_t(), at(i, t).get_mpz_t(), pv.get_mpz_t());
      add_row(i, t, -q);
    }
    for (std::size_t j = t + 1; j < cols_; ++j) {
      if (at(t, j) == 0) continue;
      mpz_divexact(q.get_mpz_t(), at(t, j).get_mpz_t(), pv.get_mpz_t());
      add_col(j, t, -q);
    }
  }
}

SmithDecomposition run(const Matrix& m, bool track) {
  if (m.ring().is_rationals()) throw WrongRing("Smith normal form needs Z or Z_p");
  Reducer r(m, track);
  if (m.ring().is_padic()) r.reduce_padic();
  else r.reduce_integers();
  return r.finish();
}

}  // namespace

std::vector<mpz_class> SmithDecomposition::diagonal() const {
  std::vector<mpz_class> d;
  for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) d.push_back(D(i, i));
  return d;
}

std::size_t SmithDecomposition::rank() const {
  std::size_t r = 0;
  for (const auto& d : diagonal())
    if (d != 0) ++r;
  return r;
}

SmithDecomposition smith_normal_form(const Matrix& m) { return run(m, true); }

std::vector<mpz_class> smith_diagonal(const Matrix& m) { return run(m, false).diagonal(); }

std::size_t rank_over_fractions(const Matrix& m) {
  if (m.ring().is_rationals()) {
    Matrix num(Ring::integers(), m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) num.set(i, j, m(i, j));
    return run(num, false).rank();
  }
  return run(m, false).rank();
}

Matrix hermite_row_form(const Matrix& m) {
  if (m.ring().is_rationals()) throw WrongRing("Hermite form needs Z or Z_p");
  // Over Z_p a pivot p^v u has its unit u known only modulo p^(k-v), so
  // the rows it touches lose v digits; the working precision drops with it.
  Ring ring = m.ring();
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::vector<mpz_class>> a(rows, std::vector<mpz_class>(cols));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) a[i][j] = m(i, j);
  auto red = [&](const mpz_class& x) { return scalar::reduce(ring, x); };
  auto axpy = [&](std::size_t dst, std::size_t src, const mpz_class& f) {
    for (std::size_t j = 0; j < cols; ++j) a[dst][j] = red(a[dst][j] + f * a[src][j]);
  };

  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    if (ring.is_padic()) {
      std::size_t best = rows;
      unsigned bv = 0;
      for (std::size_t i = r; i < rows; ++i) {
        if (scalar::is_zero(ring, a[i][c])) continue;
        unsigned v = padic_valuation(a[i][c], ring.prime());
        if (best == rows || v < bv) {
          best = i;
          bv = v;
        }
      }
      if (best == rows) continue;
      std::swap(a[r], a[best]);
      mpz_class pv, unit;
      mpz_ui_pow_ui(pv.get_mpz_t(), ring.prime(), bv);
      mpz_divexact(unit.get_mpz_t(), a[r][c].get_mpz_t(), pv.get_mpz_t());
      // quotients come from the residues before any digits are dropped
      std::vector<mpz_class> quot(rows);
      for (std::size_t i = r + 1; i < rows; ++i)
        if (a[i][c] != 0) mpz_divexact(quot[i].get_mpz_t(), a[i][c].get_mpz_t(), pv.get_mpz_t());
      if (bv > 0) {
        if (bv >= ring.precision()) throw PrecisionLoss("Hermite pivot exhausts the precision");
        ring = ring.with_precision(ring.precision() - bv);
        for (auto& row : a)
          for (auto& x : row) x = red(x);
      }
      mpz_class inv = scalar::unit_inverse(ring, red(unit));
      for (std::size_t j = 0; j < cols; ++j) a[r][j] = red(a[r][j] * inv);
      for (std::size_t i = r + 1; i < rows; ++i)
        if (quot[i] != 0) axpy(i, r, -quot[i]);
    } else {
      // Euclid down the column until one nonzero entry remains.
      for (;;) {
        std::size_t best = rows;
        for (std::size_t i = r; i < rows; ++i)
          if (a[i][c] != 0 && (best == rows || cmpabs(a[i][c], a[best][c]) < 0)) best = i;
        if (best == rows) break;
        std::swap(a[r], a[best]);
        bool done = true;
        mpz_class q;
        for (std::size_t i = r + 1; i < rows; ++i) {
          if (a[i][c] == 0) continue;
          mpz_fdiv_q(q.get_mpz_t(), a[i][c].get_mpz_t(), a[r][c].get_mpz_t());
          axpy(i, r, -q);
          if (a[i][c] != 0) done = false;
        }
        if (done) break;
      }
      if (a[r][c] == 0) continue;
      if (a[r][c] < 0)
        for (auto& x : a[r]) x = -x;
    }
    // reduce the entries above the pivot into [0, pivot)
    mpz_class q;
    for (std::size_t i = 0; i < r; ++i) {
      mpz_fdiv_q(q.get_mpz_t(), a[i][c].get_mpz_t(), a[r][c].get_mpz_t());
      if (q != 0) axpy(i, r, -q);
    }
    ++r;
  }
  Matrix h(ring, r, cols);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < cols; ++j) h.set(i, j, a[i][j]);
  return h;
}

}  // namespace rootdatum
