#include "rootdatum/lattice.hpp"

#include <algorithm>
#include <sstream>

#include "rootdatum/errors.hpp"
#include "rootdatum/padic.hpp"
#include "rootdatum/smith.hpp"

namespace rootdatum {

Sublattice::Sublattice(Ring ring, std::size_t ambient_rank) : basis_(std::move(ring), ambient_rank, 0) {}

Sublattice Sublattice::from_generators(const Matrix& generators) {
  if (generators.cols() == 0) return Sublattice(generators.ring(), generators.rows());
  Matrix h = hermite_row_form(generators.transpose());
  if (h.rows() == 0) return Sublattice(generators.ring(), generators.rows());
  return Sublattice(h.transpose());
}

std::optional<Matrix> Sublattice::coordinates(const Matrix& v) const {
  if (v.rows() != ambient_rank() || v.cols() != 1) throw DimensionMismatch("coordinates: vector shape");
  const Ring ring = common_ring(basis_.ring(), v.ring());
  const std::size_t s = rank();
  const std::size_t r = ambient_rank();
  std::vector<mpz_class> residual = v.column_entries(0);
  std::vector<mpz_class> x(s);
  unsigned loss = 0;
  std::size_t row = 0;
  for (std::size_t i = 0; i < s; ++i) {
    // pivot row of column i: first nonzero entry
    while (row < r && basis_(row, i) == 0) ++row;
    const mpz_class& piv = basis_(row, i);
    // entries of the residual above the pivot must already vanish
    mpz_class q;
    if (ring.is_padic()) {
      unsigned v_piv = padic_valuation(piv, ring.prime());
      loss = std::max(loss, v_piv);
      mpz_class y = mod_floor(residual[row], ring.modulus());
      if (y != 0) {
        if (padic_valuation(y, ring.prime()) < v_piv) return std::nullopt;
        mpz_class unit, pv;
        mpz_ui_pow_ui(pv.get_mpz_t(), ring.prime(), v_piv);
        mpz_divexact(unit.get_mpz_t(), piv.get_mpz_t(), pv.get_mpz_t());
        mpz_divexact(q.get_mpz_t(), y.get_mpz_t(), pv.get_mpz_t());
        q = mod_floor(q * scalar::unit_inverse(ring, unit), ring.modulus());
      }
    } else {
      if (mpz_divisible_p(residual[row].get_mpz_t(), piv.get_mpz_t()) == 0) return std::nullopt;
      mpz_divexact(q.get_mpz_t(), residual[row].get_mpz_t(), piv.get_mpz_t());
    }
    x[i] = q;
    for (std::size_t k = 0; k < r; ++k) residual[k] = scalar::reduce(ring, residual[k] - q * basis_(k, i));
    ++row;
  }
  if (ring.is_padic()) {
    // Dividing by p^loss leaves the top `loss` digits of the quotients
    // undetermined; the residual is only meaningful modulo p^(k - loss).
    const unsigned k_eff = ring.precision() - loss;
    const Ring eff = ring.with_precision(k_eff);
    for (const auto& y : residual)
      if (!scalar::is_zero(eff, mod_floor(y, eff.modulus()))) return std::nullopt;
    return Matrix::column_vector(eff, x);
  }
  for (const auto& y : residual)
    if (y != 0) return std::nullopt;
  return Matrix::column_vector(ring, x);
}

bool Sublattice::contains(const Sublattice& other) const {
  for (std::size_t j = 0; j < other.rank(); ++j)
    if (!contains(other.basis().col(j))) return false;
  return true;
}

Sublattice Sublattice::image(const Matrix& g) const {
  if (rank() == 0) return *this;
  return from_generators(g * basis_);
}

mpz_class FiniteAbelianGroup::order() const {
  if (free_rank) return 0;
  mpz_class n = 1;
  for (const auto& d : invariant_factors) n *= d;
  return n;
}

std::string FiniteAbelianGroup::str() const {
  if (is_trivial()) return "trivial";
  std::ostringstream os;
  bool first = true;
  if (free_rank) {
    os << (free_rank == 1 ? std::string("Z") : "Z^" + std::to_string(free_rank));
    first = false;
  }
  for (const auto& d : invariant_factors) {
    if (!first) os << " + ";
    os << "Z/" << d.get_str();
    first = false;
  }
  return os.str();
}

FiniteAbelianGroup direct_sum(const FiniteAbelianGroup& a, const FiniteAbelianGroup& b) {
  // Re-normalise the combined diagonal through the Smith form.
  std::size_t n = a.invariant_factors.size() + b.invariant_factors.size();
  FiniteAbelianGroup out;
  out.free_rank = a.free_rank + b.free_rank;
  if (n == 0) return out;
  Matrix d(Ring::integers(), n, n);
  std::size_t i = 0;
  for (const auto& x : a.invariant_factors) d.set(i, i, x), ++i;
  for (const auto& x : b.invariant_factors) d.set(i, i, x), ++i;
  for (const auto& x : smith_diagonal(d))
    if (x > 1) out.invariant_factors.push_back(x);
  return out;
}

Sublattice span(const Ring& ring, std::size_t ambient_rank, const std::vector<Matrix>& vectors) {
  if (vectors.empty()) return Sublattice(ring, ambient_rank);
  return Sublattice::from_generators(Matrix::hstack(vectors, ring, ambient_rank));
}

Sublattice sum(const Sublattice& a, const Sublattice& b) {
  return Sublattice::from_generators(
      Matrix::hstack({a.basis(), b.basis()}, common_ring(a.ring(), b.ring()), a.ambient_rank()));
}

Sublattice saturation(const Sublattice& s) {
  if (s.rank() == 0) return s;
  SmithDecomposition snf = smith_normal_form(s.basis());
  Matrix u_inv = inverse_unimodular(snf.U);
  return Sublattice::from_generators(u_inv.block(0, 0, u_inv.rows(), snf.rank()));
}

Sublattice kernel(const Matrix& m) {
  SmithDecomposition snf = smith_normal_form(m);
  std::size_t rho = snf.rank();
  const std::size_t n = m.cols();
  if (rho == n) return Sublattice(m.ring(), n);
  return Sublattice::from_generators(snf.V.block(0, rho, n, n - rho));
}

FiniteAbelianGroup quotient(const Lattice& lattice, const Sublattice& s) {
  if (s.ambient_rank() != lattice.rank) throw DimensionMismatch("quotient: rank mismatch");
  FiniteAbelianGroup g;
  g.free_rank = lattice.rank - s.rank();
  if (s.rank() == 0) return g;
  for (const auto& d : smith_diagonal(s.basis())) {
    if (d == 0) {
      ++g.free_rank;  // cannot happen for a Hermite basis
      continue;
    }
    if (d != 1) g.invariant_factors.push_back(d);
  }
  return g;
}

mpz_class lattice_index(const Sublattice& s, const Sublattice& s_prime) {
  if (s.rank() != s_prime.rank() || s.ambient_rank() != s_prime.ambient_rank()) {
    throw NotContained("lattice_index: rational spans differ");
  }
  const std::size_t n = s.rank();
  if (n == 0) return 1;
  std::vector<Matrix> coords;
  for (std::size_t j = 0; j < n; ++j) {
    auto c = s_prime.coordinates(s.basis().col(j));
    if (!c) throw NotContained("lattice_index: S is not contained in S'");
    coords.push_back(*c);
  }
  Ring ring = coords.front().ring();
  for (const auto& c : coords) ring = common_ring(ring, c.ring());
  mpz_class d = determinant(Matrix::hstack(coords, ring, n));
  if (ring.is_padic()) {
    if (scalar::is_zero(ring, d)) throw NotContained("lattice_index: index is not finite");
    mpz_class pv;
    mpz_ui_pow_ui(pv.get_mpz_t(), ring.prime(), padic_valuation(d, ring.prime()));
    return pv;
  }
  return abs(d);
}

bool is_direct_sum(const std::vector<Sublattice>& parts, const Lattice& lattice) {
  std::size_t total = 0;
  std::vector<Matrix> bases;
  for (const auto& p : parts) {
    if (p.ambient_rank() != lattice.rank) throw DimensionMismatch("is_direct_sum: ambient rank");
    total += p.rank();
    if (p.rank()) bases.push_back(p.basis());
  }
  if (total != lattice.rank) return false;
  if (total == 0) return true;
  Matrix all = Matrix::hstack(bases, lattice.ring, lattice.rank);
  return is_unimodular(all);
}

mpz_class content(const Matrix& v) {
  const Ring& ring = v.ring();
  if (ring.is_padic()) {
    bool any = false;
    unsigned best = 0;
    for (const auto& e : v.entries()) {
      if (scalar::is_zero(ring, e)) continue;
      unsigned val = padic_valuation(e, ring.prime());
      if (!any || val < best) best = val;
      any = true;
    }
    if (!any) return 0;
    mpz_class pv;
    mpz_ui_pow_ui(pv.get_mpz_t(), ring.prime(), best);
    return pv;
  }
  mpz_class g = 0;
  for (const auto& e : v.entries()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.get_mpz_t());
  return g;
}

}  // namespace rootdatum
