#include "rootdatum/isomorphism.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <tuple>
#include <unordered_map>

#include "rootdatum/errors.hpp"
#include "rootdatum/padic.hpp"
#include "rootdatum/smith.hpp"

namespace rootdatum {

namespace {

std::string residues_key(const Matrix& m, const Ring& ring) {
  std::string key;
  for (const auto& e : m.entries()) {
    key += scalar::reduce(ring, e).get_str(16);
    key += ',';
  }
  return key;
}

// (class size, scale, order) per class, sorted
using ClassProfile = std::vector<std::tuple<std::size_t, mpz_class, unsigned>>;

ClassProfile class_profile(const RootDatum& d) {
  const ReflectionSet& refl = d.reflections();
  const auto& lines = d.coroot_lines();
  ClassProfile out;
  for (const auto& cls : refl.classes())
    out.emplace_back(cls.size(), lines[cls.front()].scale, refl[cls.front()].order);
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<std::string> invariant_mismatch(const RootDatum& a, const RootDatum& b) {
  if (!a.ring().same_family(b.ring())) return "rings differ (" + a.ring().name() + " vs " + b.ring().name() + ")";
  if (a.rank() != b.rank())
    return "rank differs (" + std::to_string(a.rank()) + " vs " + std::to_string(b.rank()) + ")";
  const MatrixGroup& wa = a.weyl_group();
  const MatrixGroup& wb = b.weyl_group();
  if (wa.enumerated() && wb.enumerated() && wa.order() != wb.order())
    return "|W| differs (" + std::to_string(wa.order()) + " vs " + std::to_string(wb.order()) + ")";
  if (a.reflections().size() != b.reflections().size())
    return "reflection count differs (" + std::to_string(a.reflections().size()) + " vs " +
           std::to_string(b.reflections().size()) + ")";
  ClassProfile pa = class_profile(a), pb = class_profile(b);
  auto sizes = [](const ClassProfile& p) {
    std::vector<std::size_t> s;
    for (const auto& t : p) s.push_back(std::get<0>(t));
    std::sort(s.begin(), s.end());
    return s;
  };
  if (sizes(pa) != sizes(pb)) return std::string("reflection class sizes differ");
  if (pa != pb) return std::string("coroot scale multiset per class differs");
  FiniteAbelianGroup fa = fundamental_group(a), fb = fundamental_group(b);
  if (!(fa == fb)) return "fundamental group differs (" + fa.str() + " vs " + fb.str() + ")";
  CenterDescriptor ca = center(a), cb = center(b);
  if (!(ca == cb)) return "center differs (" + ca.str() + " vs " + cb.str() + ")";
  return std::nullopt;
}

// Fixed lattice L^W as an r x t basis.
Matrix fixed_basis(const RootDatum& d) {
  const std::size_t r = d.rank();
  if (d.generators().empty()) return Matrix::identity(d.ring(), r);
  std::vector<Matrix> rows;
  for (const auto& g : d.generators()) rows.push_back(Matrix::identity(d.ring(), r) - g);
  return kernel(Matrix::vstack(rows, d.ring(), r)).basis();
}

struct Side {
  const RootDatum& d;
  const ReflectionSet& refl;
  std::vector<Matrix> b;
  std::vector<Matrix> beta;
  std::vector<std::size_t> class_size;
  Matrix fixed;

  explicit Side(const RootDatum& datum) : d(datum), refl(datum.reflections()) {
    for (const auto& line : d.coroot_lines()) b.push_back(line.generator());
    for (std::size_t i = 0; i < refl.size(); ++i) beta.push_back(root_of(d, i).beta);
    class_size.resize(refl.size());
    for (const auto& cls : refl.classes())
      for (std::size_t i : cls) class_size[i] = cls.size();
    fixed = fixed_basis(d);
  }
};

class Search {
 public:
  Search(const RootDatum& a, const RootDatum& b) : A_(a), B_(b) {
    pring_ = common_ring(a.ring(), b.ring());
    for (const auto& x : A_.beta) pring_ = common_ring(pring_, x.ring());
    for (const auto& x : B_.beta) pring_ = common_ring(pring_, x.ring());
    n_ = a.generators().size();
    gref_.resize(n_);
    for (std::size_t g = 0; g < n_; ++g) gref_[g] = A_.refl.generator_reflection(g);
    ca_.assign(n_, std::vector<mpz_class>(n_));
    for (std::size_t j = 0; j < n_; ++j)
      for (std::size_t i = 0; i < n_; ++i) ca_[j][i] = pairing(A_, gref_[j], gref_[i]);
    order_a_.assign(n_, std::vector<unsigned>(n_, 0));
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j)
        order_a_[i][j] = *multiplicative_order(A_.refl[gref_[i]].sigma * A_.refl[gref_[j]].sigma);
    plan_order();
    plan_solve();
  }

  std::optional<Matrix> run() {
    assign_.assign(n_, 0);
    unit_.assign(n_, mpz_class(1));
    if (n_ == 0) return leaf();
    return extend(0);
  }

  std::size_t leaves() const { return leaves_; }

 private:
  mpz_class pairing(const Side& s, std::size_t j, std::size_t i) const {
    // β_j(b_i)
    Matrix v = s.beta[j] * s.b[i];
    return scalar::reduce(pring_, v(0, 0));
  }

  const mpz_class& pairing_b(std::size_t j, std::size_t i) {
    auto key = j * B_.refl.size() + i;
    auto it = cb_.find(key);
    if (it == cb_.end()) it = cb_.emplace(key, pairing(B_, j, i)).first;
    return it->second;
  }

  unsigned order_b(std::size_t i, std::size_t j) {
    auto key = i * B_.refl.size() + j;
    auto it = order_b_.find(key);
    if (it == order_b_.end()) {
      auto o = multiplicative_order(B_.refl[i].sigma * B_.refl[j].sigma);
      it = order_b_.emplace(key, o ? *o : 0u).first;
    }
    return it->second;
  }

  bool is_zero(const mpz_class& x) const { return pring_.is_padic() ? scalar::is_zero(pring_, x) : x == 0; }

  // unit u with x = u y, given both nonzero
  std::optional<mpz_class> ratio(const mpz_class& x, const mpz_class& y) const {
    if (pring_.is_integers()) {
      if (x == y) return mpz_class(1);
      if (x == -y) return mpz_class(-1);
      return std::nullopt;
    }
    unsigned vx = padic_valuation(x, pring_.prime()), vy = padic_valuation(y, pring_.prime());
    if (vx != vy) return std::nullopt;
    mpz_class pv, xu, yu;
    mpz_ui_pow_ui(pv.get_mpz_t(), pring_.prime(), vx);
    mpz_divexact(xu.get_mpz_t(), x.get_mpz_t(), pv.get_mpz_t());
    mpz_divexact(yu.get_mpz_t(), y.get_mpz_t(), pv.get_mpz_t());
    return scalar::reduce(pring_, xu * scalar::unit_inverse(pring_, yu));
  }

  // units agree outside the guard band
  bool same(const mpz_class& x, const mpz_class& y) const {
    if (pring_.is_integers()) return x == y;
    mpz_class diff = scalar::reduce(pring_, x - y);
    return diff == 0 || padic_valuation(diff, pring_.prime()) >= pring_.precision() - pring_.guard_band();
  }

  void plan_order() {
    // breadth-first over the pairing graph so that components are contiguous
    std::vector<bool> seen(n_, false);
    for (std::size_t s = 0; s < n_; ++s) {
      if (seen[s]) continue;
      std::vector<std::size_t> queue{s};
      seen[s] = true;
      for (std::size_t q = 0; q < queue.size(); ++q) {
        std::size_t x = queue[q];
        order_.push_back(x);
        for (std::size_t y = 0; y < n_; ++y)
          if (!seen[y] && (!is_zero(ca_[x][y]) || !is_zero(ca_[y][x]))) {
            seen[y] = true;
            queue.push_back(y);
          }
      }
      component_roots_.push_back(s);
    }
  }

  void plan_solve() {
    // independent generator coroots, then the fixed lattice
    const std::size_t r = A_.d.rank();
    std::vector<Matrix> cols;
    for (std::size_t g = 0; g < n_; ++g) {
      cols.push_back(A_.b[gref_[g]]);
      if (rank_over_fractions(Matrix::hstack(cols, A_.d.ring(), r)) == cols.size()) basis_gens_.push_back(g);
      else cols.pop_back();
    }
    if (A_.fixed.cols()) cols.push_back(A_.fixed);
    x_ = Matrix::hstack(cols, A_.d.ring(), r);
    if (x_.cols() != r) throw Inconsistent("coroot span and fixed lattice do not fill the lattice");
    const Ring& ring = A_.d.ring();
    std::vector<std::vector<mpz_class>> rows(r, std::vector<mpz_class>(r));
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) rows[i][j] = x_(i, j);
    x_int_ = Matrix::from_rows(Ring::integers(), rows);
    det_ = determinant(x_int_);
    adj_ = adjugate(x_int_);
    if (ring.is_padic()) {
      if (scalar::is_zero(ring, scalar::reduce(ring, det_))) throw PrecisionLoss("coroot basis is singular at working precision");
      det_val_ = padic_valuation(det_, ring.prime());
    } else {
      unimodular_x_ = abs(det_) == 1;
    }
    t_ = A_.fixed.cols();
  }

  std::optional<Matrix> extend(std::size_t pos) {
    if (pos == n_) return leaf();
    const std::size_t g = order_[pos];
    const std::size_t sg = gref_[g];
    std::vector<std::size_t> cands;
    if (pos == 0) {
      for (const auto& cls : B_.refl.classes()) cands.push_back(cls.front());
    } else {
      for (std::size_t t = 0; t < B_.refl.size(); ++t) cands.push_back(t);
    }
    const auto& lines_a = A_.d.coroot_lines();
    const auto& lines_b = B_.d.coroot_lines();
    for (std::size_t tau : cands) {
      if (B_.refl[tau].order != A_.refl[sg].order) continue;
      if (B_.class_size[tau] != A_.class_size[sg]) continue;
      if (lines_b[tau].scale != lines_a[sg].scale) continue;
      bool ok = true;
      std::optional<mpz_class> unit;
      for (std::size_t q = 0; q < pos && ok; ++q) {
        const std::size_t h = order_[q];
        const std::size_t th = assign_[h];
        if (gref_[h] == sg) {
          ok = th == tau;
          continue;
        }
        if (th == tau) {
          ok = false;
          continue;
        }
        if (order_b(th, tau) != order_a_[h][g]) {
          ok = false;
          continue;
        }
        const mpz_class& c_hg = ca_[h][g];  // β_h(b_g)
        const mpz_class& c_gh = ca_[g][h];
        const mpz_class& d_hg = pairing_b(th, tau);
        const mpz_class& d_gh = pairing_b(tau, th);
        if (is_zero(c_hg) != is_zero(d_hg) || is_zero(c_gh) != is_zero(d_gh)) {
          ok = false;
          continue;
        }
        if (is_zero(c_hg)) continue;
        // C_hg = (u_g / u_h) C'_hg
        auto rho = ratio(c_hg, d_hg);
        if (!rho) {
          ok = false;
          continue;
        }
        mpz_class u = scalar::reduce(pring_, unit_[h] * *rho);
        if (!unit) unit = u;
        else if (!same(*unit, u)) ok = false;
        // C_gh = (u_h / u_g) C'_gh
        if (ok && !is_zero(c_gh)) {
          auto rho2 = ratio(c_gh, d_gh);
          if (!rho2 || !same(scalar::reduce(pring_, *unit * *rho2), unit_[h])) ok = false;
        }
      }
      if (!ok) continue;
      assign_[g] = tau;
      unit_[g] = unit ? *unit : mpz_class(1);
      if (auto phi = extend(pos + 1)) return phi;
    }
    return std::nullopt;
  }

  std::optional<Matrix> leaf() {
    ++leaves_;
    const Ring& ring = A_.d.ring();

    // options for component scalars and the map on fixed lattices
    std::vector<mpz_class> scalars{1};
    bool exact_basis = ring.is_padic() ? det_val_ == 0 : unimodular_x_;
    if (!exact_basis) {
      if (ring.is_integers()) scalars = {1, -1};
      else {
        mpz_class m;
        mpz_ui_pow_ui(m.get_mpz_t(), ring.prime(), det_val_);
        scalars.clear();
        for (mpz_class u = 1; u < m; ++u)
          if (mpz_divisible_ui_p(u.get_mpz_t(), ring.prime()) == 0) scalars.push_back(u);
      }
    }
    std::vector<Matrix> fixed_maps = fixed_options(exact_basis);
    const std::size_t extra = component_roots_.size() > 0 ? component_roots_.size() - 1 : 0;
    std::vector<std::size_t> pick(extra, 0);
    for (;;) {
      std::vector<mpz_class> unit = unit_;
      // rescale every component after the first
      for (std::size_t c = 0; c < extra; ++c) {
        const mpz_class& s = scalars[pick[c]];
        if (s == 1) continue;
        std::size_t lo = component_start(c + 1), hi = component_start(c + 2);
        for (std::size_t q = lo; q < hi; ++q) unit[order_[q]] = scalar::reduce(ring.is_padic() ? ring : Ring::integers(), unit[order_[q]] * s);
      }
      for (const auto& fmap : fixed_maps)
        if (auto phi = solve(unit, fmap); phi && is_isomorphism(A_.d, B_.d, *phi)) return phi;
      std::size_t c = 0;
      while (c < extra && ++pick[c] == scalars.size()) pick[c++] = 0;
      if (c == extra) break;
    }
    return std::nullopt;
  }

  std::size_t component_start(std::size_t c) const {
    if (c >= component_roots_.size()) return n_;
    return static_cast<std::size_t>(std::find(order_.begin(), order_.end(), component_roots_[c]) - order_.begin());
  }

  std::vector<Matrix> fixed_options(bool exact_basis) const {
    const Ring& ring = B_.d.ring();
    std::vector<Matrix> out;
    if (t_ == 0) return {Matrix(ring, 0, 0)};
    if (exact_basis) return {Matrix::identity(ring, t_)};
    if (ring.is_padic() && t_ == 1) {
      mpz_class m;
      mpz_ui_pow_ui(m.get_mpz_t(), ring.prime(), std::max(det_val_, 1u));
      for (mpz_class u = 1; u < m; ++u)
        if (mpz_divisible_ui_p(u.get_mpz_t(), ring.prime()) == 0) {
          Matrix g(ring, 1, 1);
          g.set(0, 0, u);
          out.push_back(g);
        }
      return out;
    }
    if (t_ > 3) return {Matrix::identity(ring, t_), -Matrix::identity(ring, t_)};
    std::vector<std::size_t> perm(t_);
    for (std::size_t i = 0; i < t_; ++i) perm[i] = i;
    do {
      for (unsigned signs = 0; signs < (1u << t_); ++signs) {
        Matrix g(ring, t_, t_);
        for (std::size_t i = 0; i < t_; ++i) g.set(perm[i], i, (signs >> i) & 1 ? -1 : 1);
        out.push_back(g);
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
  }

  std::optional<Matrix> solve(const std::vector<mpz_class>& unit, const Matrix& fmap) const {
    const Ring& ring = B_.d.ring();
    const std::size_t r = A_.d.rank();
    std::vector<Matrix> cols;
    for (std::size_t g : basis_gens_) cols.push_back(unit[g] * B_.b[assign_[g]]);
    if (t_) cols.push_back(B_.fixed * fmap);
    Matrix y = Matrix::hstack(cols, ring, r);
    std::vector<std::vector<mpz_class>> rows(r, std::vector<mpz_class>(r));
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) rows[i][j] = y(i, j);
    Matrix n = Matrix::from_rows(Ring::integers(), rows) * adj_;  // = φ det
    if (ring.is_integers()) {
      Matrix phi(ring, r, r);
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) {
          if (mpz_divisible_p(n(i, j).get_mpz_t(), det_.get_mpz_t()) == 0) return std::nullopt;
          mpz_class q;
          mpz_divexact(q.get_mpz_t(), n(i, j).get_mpz_t(), det_.get_mpz_t());
          phi.set(i, j, q);
        }
      return phi;
    }
    const unsigned e = det_val_;
    const Ring out = ring.with_precision(ring.precision() - e);
    mpz_class pe, w;
    mpz_ui_pow_ui(pe.get_mpz_t(), ring.prime(), e);
    mpz_divexact(w.get_mpz_t(), det_.get_mpz_t(), pe.get_mpz_t());
    const mpz_class w_inv = scalar::unit_inverse(out, scalar::reduce(out, w));
    Matrix phi(out, r, r);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) {
        mpz_class x = scalar::reduce(ring, n(i, j));
        if (x != 0 && padic_valuation(x, ring.prime()) < e) return std::nullopt;
        mpz_class q;
        mpz_divexact(q.get_mpz_t(), x.get_mpz_t(), pe.get_mpz_t());
        phi.set(i, j, q * w_inv);
      }
    return phi;
  }

  Side A_, B_;
  Ring pring_ = Ring::integers();
  std::size_t n_ = 0;
  std::vector<std::size_t> gref_;
  std::vector<std::vector<mpz_class>> ca_;
  std::vector<std::vector<unsigned>> order_a_;
  std::unordered_map<std::size_t, mpz_class> cb_;
  std::unordered_map<std::size_t, unsigned> order_b_;
  std::vector<std::size_t> order_;
  std::vector<std::size_t> component_roots_;
  std::vector<std::size_t> basis_gens_;
  Matrix x_, x_int_, adj_;
  mpz_class det_;
  unsigned det_val_ = 0;
  bool unimodular_x_ = true;
  std::size_t t_ = 0;
  std::vector<std::size_t> assign_;
  std::vector<mpz_class> unit_;
  std::size_t leaves_ = 0;
};

}  // namespace

bool is_isomorphism(const RootDatum& a, const RootDatum& b, const Matrix& phi_in) {
  const std::size_t r = a.rank();
  if (b.rank() != r || phi_in.rows() != r || phi_in.cols() != r) return false;
  if (!a.ring().same_family(b.ring())) return false;
  Matrix phi = phi_in.ring().is_integers() && a.ring().is_padic() ? phi_in.to_ring(a.ring()) : phi_in;
  if (!is_unimodular(phi)) return false;
  Ring ring = common_ring(common_ring(a.ring(), b.ring()), phi.ring());
  phi = phi.to_ring(ring);
  Matrix phi_inv = inverse_unimodular(phi);
  const ReflectionSet& ra = a.reflections();
  const ReflectionSet& rb = b.reflections();
  if (ra.size() != rb.size()) return false;
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < rb.size(); ++i) index.emplace(residues_key(rb[i].sigma, ring), i);
  const auto& la = a.coroot_lines();
  const auto& lb = b.coroot_lines();
  std::vector<bool> hit(rb.size(), false);
  for (std::size_t i = 0; i < ra.size(); ++i) {
    Matrix c = phi * ra[i].sigma.to_ring(ring) * phi_inv;
    auto it = index.find(residues_key(c, ring));
    if (it == index.end() || hit[it->second]) return false;
    hit[it->second] = true;
    Sublattice image = Sublattice::from_generators(phi * la[i].generator().to_ring(ring));
    Sublattice target = Sublattice::from_generators(lb[it->second].generator().to_ring(ring));
    if (!(image == target)) return false;
  }
  return true;
}

IsoResult find_isomorphism(const RootDatum& a, const RootDatum& b) {
  IsoResult out;
  if (auto why = invariant_mismatch(a, b)) {
    out.status = IsoStatus::Invariant;
    out.reason = *why;
    return out;
  }
  Search search(a, b);
  if (auto phi = search.run()) {
    out.status = IsoStatus::Found;
    out.witness = std::move(phi);
    out.reason = "witness verified";
    return out;
  }
  out.status = IsoStatus::Exhausted;
  out.reason = "exhausted: " + std::to_string(search.leaves()) + " complete assignments, none extends to an isomorphism";
  return out;
}

}  // namespace rootdatum
