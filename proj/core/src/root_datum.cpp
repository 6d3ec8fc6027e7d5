#include "rootdatum/root_datum.hpp"

#include <deque>
#include <mutex>
#include <sstream>

#include "rootdatum/errors.hpp"
#include "rootdatum/padic.hpp"
#include "rootdatum/smith.hpp"

namespace rootdatum {

// ---- CorootLine -------------------------------------------------------------

CorootLine CorootLine::from_generator(const Matrix& b) {
  if (b.cols() != 1) throw DimensionMismatch("coroot must be a column vector");
  const Ring& ring = b.ring();
  mpz_class c = content(b);
  if (c == 0) throw Inconsistent("coroot vector is zero");
  Matrix v(ring, b.rows(), 1);
  for (std::size_t i = 0; i < b.rows(); ++i) {
    mpz_class q;
    if (ring.is_padic() && scalar::is_zero(ring, b(i, 0))) continue;
    mpz_divexact(q.get_mpz_t(), b(i, 0).get_mpz_t(), c.get_mpz_t());
    v.set(i, 0, q);
  }
  if (ring.is_padic()) {
    for (std::size_t i = 0; i < v.rows(); ++i)
      if (scalar::is_unit(ring, v(i, 0))) {
        v = scalar::unit_inverse(ring, v(i, 0)) * v;
        break;
      }
  } else {
    for (std::size_t i = 0; i < v.rows(); ++i)
      if (v(i, 0) != 0) {
        if (v(i, 0) < 0) v = -v;
        break;
      }
  }
  return CorootLine{std::move(v), std::move(c)};
}

CorootLine CorootLine::make(const Matrix& v, const mpz_class& scale) { return from_generator(scale * v); }

std::string CenterDescriptor::str() const {
  if (is_trivial()) return "trivial";
  std::string out;
  if (torus_rank) out = "T^" + std::to_string(torus_rank);
  if (!finite_part.is_trivial()) out += (out.empty() ? "" : " + ") + finite_part.str();
  return out;
}

// ---- RootDatum --------------------------------------------------------------

struct RootDatum::Cache {
  std::once_flag group_once, reflections_once, extension_once, lines_once;
  std::optional<MatrixGroup> group;
  std::optional<ReflectionSet> reflections;
  std::optional<Extension> extension;
  std::optional<std::vector<CorootLine>> lines;
};

RootDatum::RootDatum(Ring ring, std::size_t rank, std::vector<Matrix> generators,
                     std::map<std::size_t, CorootLine> coroots, bool reflection_local)
    : ring_(std::move(ring)),
      rank_(rank),
      generators_(std::move(generators)),
      coroots_(std::move(coroots)),
      reflection_local_(reflection_local),
      cache_(std::make_shared<Cache>()) {
  if (ring_.is_rationals()) throw WrongRing("root data live over Z or Z_p");
  // the datum is only as precise as its least precise input
  auto absorb = [&](const Ring& r) {
    if (r.is_integers() && ring_.is_padic()) return;
    if (!r.same_family(ring_)) throw RingMismatch("generator ring differs from datum ring");
    ring_ = common_ring(ring_, r);
  };
  for (const auto& g : generators_) {
    if (g.rows() != rank_ || g.cols() != rank_) throw DimensionMismatch("generator has the wrong shape");
    absorb(g.ring());
  }
  for (const auto& [idx, line] : coroots_) {
    if (idx >= generators_.size()) throw DimensionMismatch("coroot attached to a missing generator");
    if (line.vector.rows() != rank_) throw DimensionMismatch("coroot has the wrong length");
    absorb(line.vector.ring());
  }
  for (auto& g : generators_) g = g.to_ring(ring_);
  for (auto& [idx, line] : coroots_) line = CorootLine::make(line.vector.to_ring(ring_), line.scale);
}

RootDatum RootDatum::with_closure_cap(std::size_t cap) const {
  RootDatum d(ring_, rank_, generators_, coroots_, reflection_local_);
  d.closure_cap_ = cap;
  d.label_ = label_;
  return d;
}

RootDatum RootDatum::with_label(std::string label) const {
  RootDatum d = *this;  // shares the cache; derived data does not depend on the label
  d.label_ = std::move(label);
  return d;
}

const MatrixGroup& RootDatum::weyl_group() const {
  std::call_once(cache_->group_once, [&] {
    if (reflection_local_) cache_->group.emplace(ring_, rank_, generators_);
    else cache_->group.emplace(generate_group(ring_, rank_, generators_, closure_cap_));
  });
  return *cache_->group;
}

const ReflectionSet& RootDatum::reflections() const {
  std::call_once(cache_->reflections_once, [&] {
    cache_->reflections.emplace(reflections_of(MatrixGroup(ring_, rank_, generators_)));
  });
  return *cache_->reflections;
}

const RootDatum::Extension& RootDatum::extension() const {
  std::call_once(cache_->extension_once, [&] {
    const ReflectionSet& refl = reflections();
    Extension ext;
    ext.lines.assign(refl.size(), std::nullopt);
    std::deque<std::size_t> queue;
    auto assign = [&](std::size_t i, const CorootLine& line, const std::string& from) {
      if (!ext.lines[i]) {
        ext.lines[i] = line;
        queue.push_back(i);
      } else if (!(*ext.lines[i] == line)) {
        ext.conflicts.push_back("reflection " + std::to_string(i) + ": line from " + from +
                                " differs from the line already assigned");
      }
    };
    for (const auto& [g, line] : coroots_) assign(refl.generator_reflection(g), line, "coroot of generator " + std::to_string(g));
    for (;;) {
      while (!queue.empty()) {
        std::size_t i = queue.front();
        queue.pop_front();
        for (std::size_t g = 0; g < refl.generator_count(); ++g)
          assign(refl.conjugate(g, i), ext.lines[i]->image(generators_[g]),
                 "conjugating reflection " + std::to_string(i) + " by generator " + std::to_string(g));
      }
      // σ^j shares the line of σ
      for (const auto& [base, pow] : refl.powers())
        if (ext.lines[base]) assign(pow, *ext.lines[base], "power of reflection " + std::to_string(base));
      if (queue.empty()) break;
    }
    cache_->extension.emplace(std::move(ext));
  });
  return *cache_->extension;
}

const std::vector<CorootLine>& RootDatum::coroot_lines() const {
  std::call_once(cache_->lines_once, [&] {
    const Extension& ext = extension();
    if (!ext.conflicts.empty()) throw Inconsistent("equivariant extension is not well defined: " + ext.conflicts.front());
    std::vector<CorootLine> lines;
    for (std::size_t i = 0; i < ext.lines.size(); ++i) {
      if (!ext.lines[i]) throw Inconsistent("reflection " + std::to_string(i) + " has no coroot");
      lines.push_back(*ext.lines[i]);
    }
    cache_->lines.emplace(std::move(lines));
  });
  return *cache_->lines;
}

// ---- validation -------------------------------------------------------------

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    case Verdict::Flagged: return "FLAGGED";
    case Verdict::Skipped: return "SKIPPED";
  }
  return "?";
}

bool ValidationReport::passed() const {
  for (const auto& c : checks)
    if (c.verdict == Verdict::Fail || c.verdict == Verdict::Skipped) return false;
  return true;
}

const AxiomCheck& ValidationReport::clause(char c) const {
  for (const auto& x : checks)
    if (x.clause == c) return x;
  throw BadKey(std::string("no clause ") + c);
}

std::string ValidationReport::str() const {
  std::ostringstream os;
  for (const auto& c : checks) {
    os << "(" << c.clause << ") " << c.name << ": " << to_string(c.verdict);
    if (!c.detail.empty()) os << " (" << c.detail << ")";
    os << "\n";
  }
  os << (passed() ? "valid" : "invalid") << "\n";
  return os.str();
}

namespace {

constexpr const char* kClauseNames[] = {
    "generators are reflections",
    "W is finite",
    "im(1-s) in Rb_s",
    "Rb_s in ker(sum s^i)",
    "equivariance w(Rb_s) = Rb_(wsw^-1)",
};

Matrix norm_map(const Matrix& sigma, unsigned order) {
  Matrix acc = Matrix::identity(sigma.ring(), sigma.rows());
  Matrix p = acc;
  for (unsigned i = 1; i < order; ++i) {
    p = p * sigma;
    acc = acc + p;
  }
  return acc;
}

}  // namespace

ValidationReport validate(const RootDatum& d) {
  ValidationReport rep;
  auto push = [&](char c, Verdict v, std::string detail) {
    rep.checks.push_back({c, kClauseNames[c - 'a'], v, std::move(detail)});
  };
  auto skip_rest = [&](char from, const std::string& why) {
    for (char c = from; c <= 'e'; ++c) push(c, Verdict::Skipped, why);
  };

  // (a)
  const auto& gens = d.generators();
  std::vector<unsigned> orders;
  for (std::size_t g = 0; g < gens.size(); ++g) {
    std::string bad;
    try {
      auto refl = is_reflection(gens[g]);
      if (refl) orders.push_back(refl->order);
      else bad = "generator " + std::to_string(g) + " has rank(1-s) != 1";
    } catch (const NonInvertibleGenerator&) {
      bad = "generator " + std::to_string(g) + " is not invertible";
    } catch (const OrderCapExceeded&) {
      bad = "generator " + std::to_string(g) + " has no finite order <= 1000";
    }
    if (!bad.empty()) {
      push('a', Verdict::Fail, bad);
      skip_rest('b', "generators are not all reflections");
      return rep;
    }
  }
  push('a', Verdict::Pass, std::to_string(gens.size()) + " generators");

  // (b) pairwise products first: an infinite dihedral pair shows up here
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      if (!multiplicative_order(gens[i] * gens[j])) {
        push('b', Verdict::Fail,
             "generators " + std::to_string(i) + " and " + std::to_string(j) + " have a product of infinite order");
        skip_rest('c', "W is not finite");
        return rep;
      }
  if (d.reflection_local()) {
    push('b', Verdict::Flagged, "reflection-local mode: closure not attempted, pairwise orders finite");
  } else {
    const MatrixGroup& w = d.weyl_group();
    if (w.cap_exceeded()) {
      push('b', Verdict::Flagged, "closure cap " + std::to_string(d.closure_cap()) + " exceeded, pairwise orders finite");
    } else if (!w.finite_certified()) {
      push('b', Verdict::Fail, "closure is not faithful modulo the certificate prime power");
      skip_rest('c', "W is not finite");
      return rep;
    } else {
      push('b', Verdict::Pass, "|W| = " + std::to_string(w.order()));
    }
  }

  const ReflectionSet* refl = nullptr;
  try {
    refl = &d.reflections();
  } catch (const CapExceeded&) {
    skip_rest('c', "reflection orbit exceeds cap");
    return rep;
  }
  const auto& ext = d.extension();

  // (c), (d) on every reflection with an assigned line
  std::string fail_c, fail_d;
  std::size_t checked = 0;
  for (std::size_t i = 0; i < refl->size(); ++i) {
    if (!ext.lines[i]) continue;
    ++checked;
    const Reflection& s = (*refl)[i];
    const CorootLine& line = *ext.lines[i];
    if (fail_c.empty() && !line.line().contains(s.line))
      fail_c = "reflection " + std::to_string(i) + ": im(1-s) not contained in the coroot line";
    Matrix nb = norm_map(s.sigma, s.order) * line.generator();
    bool zero = true;
    for (const auto& e : nb.entries()) zero = zero && scalar::is_zero(nb.ring(), e);
    if (fail_d.empty() && !zero) fail_d = "reflection " + std::to_string(i) + ": coroot not killed by sum s^i";
  }
  std::string count = std::to_string(checked) + " reflections";
  push('c', fail_c.empty() ? Verdict::Pass : Verdict::Fail, fail_c.empty() ? count : fail_c);
  push('d', fail_d.empty() ? Verdict::Pass : Verdict::Fail, fail_d.empty() ? count : fail_d);

  // (e)
  std::string fail_e;
  if (!ext.conflicts.empty()) fail_e = ext.conflicts.front();
  for (std::size_t i = 0; i < ext.lines.size() && fail_e.empty(); ++i)
    if (!ext.lines[i]) fail_e = "reflection " + std::to_string(i) + " has no coroot";
  push('e', fail_e.empty() ? Verdict::Pass : Verdict::Fail,
       fail_e.empty() ? std::to_string(refl->classes().size()) + (refl->classes().size() == 1 ? " class" : " classes") : fail_e);
  return rep;
}

// ---- roots and invariants ---------------------------------------------------

Root root_of(const RootDatum& d, std::size_t reflection) {
  const ReflectionSet& refl = d.reflections();
  if (reflection >= refl.size()) throw DimensionMismatch("root_of: reflection index out of range");
  const CorootLine& line = d.coroot_lines()[reflection];
  const Matrix& sigma = refl[reflection].sigma;
  const Ring& ring = d.ring();
  const std::size_t r = d.rank();
  Matrix m = sigma - Matrix::identity(ring, r);
  Matrix b = line.generator();

  // pick a coordinate where the primitive part is a unit (Z_p) or nonzero (Z)
  std::size_t i0 = r;
  for (std::size_t i = 0; i < r && i0 == r; ++i) {
    const mpz_class& v = line.vector(i, 0);
    if (ring.is_padic() ? scalar::is_unit(ring, v) : v != 0) i0 = i;
  }
  if (i0 == r) throw Inconsistent("root_of: coroot has no usable coordinate");

  std::vector<mpz_class> beta(r);
  Ring out_ring = ring;
  if (ring.is_padic()) {
    unsigned m_val = padic_valuation(line.scale, ring.prime());
    out_ring = ring.with_precision(ring.precision() - m_val);
    mpz_class u_inv = scalar::unit_inverse(ring, line.vector(i0, 0));
    for (std::size_t j = 0; j < r; ++j) {
      const mpz_class& e = m(i0, j);
      if (e != 0 && padic_valuation(e, ring.prime()) < m_val) throw Inconsistent("root_of: s - 1 not divisible by the coroot");
      mpz_class q;
      mpz_divexact(q.get_mpz_t(), e.get_mpz_t(), line.scale.get_mpz_t());
      beta[j] = mod_floor(q * u_inv, out_ring.modulus());
    }
  } else {
    for (std::size_t j = 0; j < r; ++j) {
      if (mpz_divisible_p(m(i0, j).get_mpz_t(), b(i0, 0).get_mpz_t()) == 0)
        throw Inconsistent("root_of: s - 1 not divisible by the coroot");
      mpz_divexact(beta[j].get_mpz_t(), m(i0, j).get_mpz_t(), b(i0, 0).get_mpz_t());
    }
  }
  Matrix beta_m = Matrix::row_vector(out_ring, beta);
  if (!(b * beta_m == m))
    throw Inconsistent("root_of: s(x) = x + beta(x) b fails");
  return Root{std::move(beta_m), reflection};
}

Root root_of(const RootDatum& d, const Matrix& sigma) {
  Matrix s = sigma.ring().is_integers() && d.ring().is_padic() ? sigma.to_ring(d.ring()) : sigma;
  auto idx = d.reflections().find(s);
  if (!idx) throw Inconsistent("root_of: matrix is not a reflection of the datum");
  return root_of(d, *idx);
}

std::vector<Root> roots(const RootDatum& d) {
  std::vector<Root> out;
  for (std::size_t i = 0; i < d.reflections().size(); ++i) out.push_back(root_of(d, i));
  return out;
}

Sublattice coroot_lattice(const RootDatum& d) {
  std::vector<Matrix> gens;
  for (const auto& line : d.coroot_lines()) gens.push_back(line.generator());
  return span(d.ring(), d.rank(), gens);
}

FiniteAbelianGroup fundamental_group(const RootDatum& d) {
  return quotient(Lattice{d.ring(), d.rank()}, coroot_lattice(d));
}

CenterDescriptor center(const RootDatum& d) {
  CenterDescriptor out;
  std::vector<Root> rs = roots(d);
  if (rs.empty()) {
    out.torus_rank = d.rank();
    return out;
  }
  Ring ring = rs.front().beta.ring();
  for (const auto& r : rs) ring = common_ring(ring, r.beta.ring());
  std::vector<Matrix> rows;
  for (const auto& r : rs) rows.push_back(r.beta.to_ring(ring));
  Matrix b = Matrix::vstack(rows, ring, d.rank());
  std::size_t rank = 0;
  for (const auto& x : smith_diagonal(b)) {
    if (x == 0) continue;
    ++rank;
    if (x != 1) out.finite_part.invariant_factors.push_back(x);
  }
  out.torus_rank = d.rank() - rank;
  return out;
}

RootDatum product(const RootDatum& a, const RootDatum& b) {
  if (!a.ring().same_family(b.ring())) throw RingMismatch("product of data over different rings");
  Ring ring = common_ring(a.ring(), b.ring());
  const std::size_t ra = a.rank(), rb = b.rank();
  std::vector<Matrix> gens;
  std::map<std::size_t, CorootLine> coroots;
  for (std::size_t g = 0; g < a.generators().size(); ++g)
    gens.push_back(Matrix::block_diagonal(a.generators()[g].to_ring(ring), Matrix::identity(ring, rb)));
  for (std::size_t g = 0; g < b.generators().size(); ++g)
    gens.push_back(Matrix::block_diagonal(Matrix::identity(ring, ra), b.generators()[g].to_ring(ring)));
  Matrix za(ring, rb, 1), zb(ring, ra, 1);
  for (const auto& [g, line] : a.coroots())
    coroots.emplace(g, CorootLine::make(Matrix::vstack({line.vector.to_ring(ring), za}, ring, 1), line.scale));
  for (const auto& [g, line] : b.coroots())
    coroots.emplace(a.generators().size() + g,
                    CorootLine::make(Matrix::vstack({zb, line.vector.to_ring(ring)}, ring, 1), line.scale));
  RootDatum out(ring, ra + rb, std::move(gens), std::move(coroots), a.reflection_local() || b.reflection_local());
  out = out.with_closure_cap(std::max(a.closure_cap(), b.closure_cap()));
  if (!a.label().empty() && !b.label().empty()) out = out.with_label(a.label() + " x " + b.label());
  return out;
}

std::vector<RootDatum> coroot_collections(const Ring& ring, std::size_t rank, const std::vector<Matrix>& generators) {
  MatrixGroup w(ring, rank, generators);
  ReflectionSet refl = reflections_of(w);
  struct Choice {
    std::size_t generator;
    Matrix v;
    std::vector<mpz_class> scales;
  };
  std::vector<Choice> choices;
  for (const auto& cls : refl.classes()) {
    std::optional<std::size_t> rep;
    for (std::size_t g = 0; g < generators.size() && !rep; ++g)
      if (refl.class_of(refl.generator_reflection(g)) == refl.class_of(cls.front())) rep = g;
    if (!rep) continue;  // reached only through powers
    CorootLine lower = CorootLine::from_generator(refl[refl.generator_reflection(*rep)].line.basis().col(0));
    Choice c{*rep, lower.vector, {}};
    if (ring.is_padic()) {
      mpz_class s = 1;
      for (unsigned j = 0; j <= padic_valuation(lower.scale, ring.prime()); ++j, s *= ring.prime()) c.scales.push_back(s);
    } else {
      for (mpz_class s = 1; s <= lower.scale; ++s)
        if (mpz_divisible_p(lower.scale.get_mpz_t(), s.get_mpz_t())) c.scales.push_back(s);
    }
    choices.push_back(std::move(c));
  }

  std::vector<RootDatum> out;
  std::vector<std::size_t> pick(choices.size(), 0);
  for (;;) {
    std::map<std::size_t, CorootLine> coroots;
    for (std::size_t i = 0; i < choices.size(); ++i)
      coroots.emplace(choices[i].generator, CorootLine::make(choices[i].v, choices[i].scales[pick[i]]));
    RootDatum d(ring, rank, generators, std::move(coroots));
    if (validate(d).passed()) out.push_back(std::move(d));
    std::size_t i = 0;
    while (i < choices.size() && ++pick[i] == choices[i].scales.size()) pick[i++] = 0;
    if (i == choices.size()) break;
  }
  return out;
}

bool is_automorphism(const RootDatum& d, const Matrix& phi_in) {
  if (phi_in.rows() != d.rank() || phi_in.cols() != d.rank()) return false;
  Matrix phi = phi_in.ring().is_integers() && d.ring().is_padic() ? phi_in.to_ring(d.ring()) : phi_in;
  if (!is_unimodular(phi)) return false;
  Matrix phi_inv = inverse_unimodular(phi);
  const ReflectionSet& refl = d.reflections();
  for (const auto& g : d.generators())
    if (!refl.find(phi * g * phi_inv)) return false;
  const auto& lines = d.coroot_lines();
  for (std::size_t i = 0; i < refl.size(); ++i) {
    auto j = refl.find(phi * refl[i].sigma * phi_inv);
    if (!j) return false;
    if (!(lines[i].image(phi) == lines[*j])) return false;
  }
  return true;
}

ClassicalRootDatum to_classical(const RootDatum& d) {
  if (!d.ring().is_integers()) throw WrongRing("classical root data live over Z");
  ClassicalRootDatum out;
  out.rank = d.rank();
  const auto& lines = d.coroot_lines();
  for (std::size_t i = 0; i < lines.size(); ++i) {
    Matrix b = lines[i].generator();
    Matrix beta = root_of(d, i).beta;
    out.coroots.push_back(b);
    out.roots.push_back(beta);
    out.coroots.push_back(-b);
    out.roots.push_back(-beta);
  }
  return out;
}

}  // namespace rootdatum
