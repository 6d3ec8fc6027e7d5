#include "rootdatum/molien.hpp"

#include <algorithm>
#include <map>

#include "rootdatum/errors.hpp"

namespace rootdatum {

std::vector<std::uint64_t> compact_det_one_minus(const CompactRing& cr, std::span<const std::uint64_t> a,
                                                 std::size_t n) {
  // Berkowitz; det(xI - A) = Σ c_i x^{n-i} gives det(1 - tA) = Σ c_i t^i.
  auto at = [&](std::size_t i, std::size_t j) { return a[i * n + j]; };
  std::vector<std::uint64_t> poly{1};
  if (n == 0) return poly;
  poly.push_back(cr.neg(at(0, 0)));
  std::vector<std::uint64_t> x, y, q, next;
  for (std::size_t r = 1; r < n; ++r) {
    q.assign({1, cr.neg(at(r, r))});
    x.resize(r);
    for (std::size_t i = 0; i < r; ++i) x[i] = at(i, r);
    for (std::size_t step = 0; step < r; ++step) {
      std::uint64_t dot = 0;
      for (std::size_t i = 0; i < r; ++i) dot = cr.add(dot, cr.mul(at(r, i), x[i]));
      q.push_back(cr.neg(dot));
      if (step + 1 == r) break;
      y.assign(r, 0);
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t k = 0; k < r; ++k) y[i] = cr.add(y[i], cr.mul(at(i, k), x[k]));
      x.swap(y);
    }
    next.assign(r + 2, 0);
    for (std::size_t i = 0; i < r + 2; ++i)
      for (std::size_t j = 0; j <= std::min(i, r); ++j) next[i] = cr.add(next[i], cr.mul(q[i - j], poly[j]));
    poly.swap(next);
  }
  return poly;
}

namespace {

mpz_class binomial(unsigned long n, unsigned long k) {
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return b;
}

// Coefficients 0..len-1 of the Molien series.
std::vector<mpz_class> molien_series(const MatrixGroup& w, std::size_t len) {
  const CompactRing& cr = w.compact_ring();
  const std::size_t r = w.rank();
  std::map<std::vector<std::uint64_t>, std::uint64_t> charpolys;
  w.for_each_compact([&](std::span<const std::uint64_t> e) { ++charpolys[compact_det_one_minus(cr, e, r)]; });

  std::vector<std::uint64_t> total(len, 0);
  std::vector<std::uint64_t> inv(len);
  for (const auto& [c, count] : charpolys) {
    // 1 / c(t) with c(0) = 1: q_n = -Σ_{i>=1} c_i q_{n-i}
    for (std::size_t m = 0; m < len; ++m) {
      std::uint64_t s = m == 0 ? 1 : 0;
      for (std::size_t i = 1; i < c.size() && i <= m; ++i) s = cr.sub(s, cr.mul(c[i], inv[m - i]));
      inv[m] = s;
    }
    std::uint64_t mult = cr.from_signed(static_cast<std::int64_t>(count));
    for (std::size_t m = 0; m < len; ++m) total[m] = cr.add(total[m], cr.mul(mult, inv[m]));
  }

  // divide by |W| = p^a * u
  std::uint64_t order = w.order();
  unsigned a = 0;
  while (order % cr.prime() == 0) {
    order /= cr.prime();
    ++a;
  }
  if (a >= cr.exponent()) throw PrecisionLoss("group order exceeds the compact precision");
  const std::uint64_t u_inv = cr.inverse_unit(cr.from_signed(static_cast<std::int64_t>(order)));
  mpz_class pa, rest;
  mpz_ui_pow_ui(pa.get_mpz_t(), cr.prime(), a);
  mpz_ui_pow_ui(rest.get_mpz_t(), cr.prime(), cr.exponent() - a);
  std::vector<mpz_class> out(len);
  for (std::size_t m = 0; m < len; ++m) {
    std::uint64_t raw = cr.mul(total[m], u_inv);
    mpz_class s;
    mpz_import(s.get_mpz_t(), 1, -1, sizeof(raw), 0, 0, &raw);
    if (mpz_divisible_p(s.get_mpz_t(), pa.get_mpz_t()) == 0)
      throw Inconsistent("Molien coefficient " + std::to_string(m) + " is not integral");
    mpz_divexact(s.get_mpz_t(), s.get_mpz_t(), pa.get_mpz_t());
    // s is the coefficient modulo p^(e - a); the true value is at most
    // the number of monomials of degree m.
    mpz_class bound = binomial(m + r - 1, r == 0 ? 0 : r - 1);
    if (bound >= rest) throw PrecisionLoss("Molien coefficient bound exceeds the compact precision");
    if (s > bound) throw Inconsistent("Molien coefficient " + std::to_string(m) + " exceeds the monomial count");
    out[m] = s;
  }
  return out;
}

}  // namespace

std::vector<unsigned> molien_degrees(const MatrixGroup& w) {
  if (!w.enumerated()) throw CapExceeded("Molien degrees need an enumerated group");
  const std::size_t r = w.rank();
  if (r == 0) return {};
  std::size_t len = 32;
  for (;;) {
    std::vector<mpz_class> m = molien_series(w, len);
    std::vector<unsigned> degrees;
    bool short_series = false;
    while (degrees.size() < r) {
      std::size_t d = 1;
      while (d < len && m[d] == 0) ++d;
      if (d == len) {
        short_series = true;
        break;
      }
      degrees.push_back(static_cast<unsigned>(d));
      // multiply by (1 - t^d)
      for (std::size_t i = len; i-- > d;) m[i] -= m[i - d];
    }
    if (!short_series) {
      for (std::size_t i = 1; i < len; ++i)
        if (m[i] != 0) throw Inconsistent("Molien series is not a product of 1/(1 - t^d)");
      return degrees;
    }
    if (len > w.order() + 1) throw Inconsistent("Molien series has too few degrees");
    len *= 2;
  }
}

}  // namespace rootdatum
