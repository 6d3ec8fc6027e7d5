#include "property_suites.hpp"

#include <chrono>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "rootdatum/catalog.hpp"
#include "rootdatum/smith.hpp"

namespace rootdatum::property {
namespace {

using Clock = std::chrono::steady_clock;

struct Timer {
  Clock::time_point t0 = Clock::now();
  double seconds() const { return std::chrono::duration<double>(Clock::now() - t0).count(); }
};

oracle::Mat random_matrix(std::mt19937_64& rng, std::size_t m, std::size_t n, long lo, long hi) {
  std::uniform_int_distribution<long> entry(lo, hi);
  oracle::Mat a(m, oracle::Row(n));
  for (auto& row : a)
    for (auto& x : row) x = entry(rng);
  return a;
}

// Product of random elementary operations.
oracle::Mat random_unimodular(std::mt19937_64& rng, std::size_t n) {
  oracle::Mat u = oracle::identity(n);
  if (n == 0) return u;
  std::uniform_int_distribution<std::size_t> idx(0, n - 1);
  std::uniform_int_distribution<long> mult(-3, 3);
  std::uniform_int_distribution<int> kind(0, 5);
  for (int step = 0; step < 10; ++step) {
    std::size_t i = idx(rng), j = idx(rng);
    int k = kind(rng);
    if (k == 0 && i != j) {
      std::swap(u[i], u[j]);
    } else if (k == 1) {
      for (auto& x : u[i]) x = -x;
    } else if (i != j) {
      long f = mult(rng);
      for (std::size_t c = 0; c < n; ++c) u[i][c] += f * u[j][c];
    }
  }
  return u;
}

Matrix to_matrix(const Ring& ring, const oracle::Mat& a, std::size_t cols) {
  if (a.empty()) return Matrix(ring, 0, cols);
  return Matrix::from_rows(ring, a);
}

std::vector<mpz_class> nonzero(const std::vector<mpz_class>& d) {
  std::vector<mpz_class> out;
  for (const auto& x : d)
    if (x != 0) out.push_back(x);
  return out;
}

// Planted rank: sometimes a product through a thin middle dimension.
oracle::Mat random_test_matrix(std::mt19937_64& rng, std::size_t m, std::size_t n) {
  std::uniform_int_distribution<int> coin(0, 2);
  if (coin(rng) == 0) {
    std::uniform_int_distribution<std::size_t> mid(0, std::min(m, n));
    std::size_t k = mid(rng);
    if (k == 0) return oracle::Mat(m, oracle::Row(n, 0));
    return oracle::multiply(random_matrix(rng, m, k, -4, 4), random_matrix(rng, k, n, -4, 4));
  }
  return random_matrix(rng, m, n, -9, 9);
}

template <class F>
void record(SuiteResult& r, bool ok, F&& describe) {
  ++r.trials;
  if (ok) return;
  if (r.failures++ == 0) r.first_failure = describe();
}

std::string show(const oracle::Mat& a) {
  std::ostringstream os;
  for (const auto& row : a) {
    os << '[';
    for (std::size_t j = 0; j < row.size(); ++j) os << (j ? " " : "") << row[j];
    os << ']';
  }
  return os.str();
}

}  // namespace

SuiteResult smith_invariance(std::uint64_t seed, std::size_t trials) {
  SuiteResult r{"smith unimodular invariance", 0, 0, 0, {}};
  Timer timer;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> dim(1, 5);
  const unsigned primes[] = {2, 3};
  for (std::size_t t = 0; t < trials; ++t) {
    const std::size_t m = dim(rng), n = dim(rng);
    oracle::Mat a = random_test_matrix(rng, m, n);
    oracle::Mat u = random_unimodular(rng, m), v = random_unimodular(rng, n);
    oracle::Mat b = oracle::multiply(oracle::multiply(u, a), v);
    std::vector<mpz_class> expect = oracle::smith_by_minors(a);
    Ring ring = Ring::integers();
    if (t % 3 == 2) {
      unsigned p = primes[(t / 3) % 2];
      ring = Ring::padic(p, 64);
      for (auto& d : expect) {
        mpz_class pp;
        mpz_ui_pow_ui(pp.get_mpz_t(), p, oracle::valuation(d, p));
        d = pp;
      }
    }
    bool ok = true;
    try {
      Matrix ma = to_matrix(ring, a, n), mb = to_matrix(ring, b, n);
      ok = nonzero(smith_diagonal(ma)) == expect && nonzero(smith_diagonal(mb)) == expect;
      SmithDecomposition s = smith_normal_form(mb);
      ok = ok && s.U * mb * s.V == s.D && is_unimodular(s.U) && is_unimodular(s.V);
    } catch (const std::exception&) {
      ok = false;
    }
    record(r, ok, [&] { return ring.name() + " " + show(a); });
  }
  r.seconds = timer.seconds();
  return r;
}

SuiteResult rank_agreement(std::uint64_t seed, std::size_t trials) {
  SuiteResult r{"rank oracle agreement", 0, 0, 0, {}};
  Timer timer;
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_int_distribution<std::size_t> dim(1, 7);
  for (std::size_t t = 0; t < trials; ++t) {
    const std::size_t m = dim(rng), n = dim(rng);
    oracle::Mat a = random_test_matrix(rng, m, n);
    bool padic = t % 4 == 3;
    bool ok;
    try {
      if (padic) {
        ok = rank_over_fractions(to_matrix(Ring::padic(2, 64), a, n)) == oracle::rank_over_qp(a, 2, 64);
      } else {
        ok = rank_over_fractions(to_matrix(Ring::integers(), a, n)) == oracle::rank_over_q(a);
      }
    } catch (const std::exception&) {
      ok = false;
    }
    record(r, ok, [&] { return std::string(padic ? "Z2 " : "Z ") + show(a); });
  }
  r.seconds = timer.seconds();
  return r;
}

SuiteResult equivariance(std::uint64_t seed, std::size_t trials) {
  SuiteResult r{"equivariance of coroot lines", 0, 0, 0, {}};
  Timer timer;
  std::mt19937_64 rng(seed ^ 0xd1b54a32d192ed03ULL);
  const char* keys[] = {"A2.sc.Z", "A3.ad.Z2", "B3.ad.Z2", "C3.sc.Z", "D4.ad.Z", "G2.sc.Z",
                        "F4.sc.Z2", "E6.ad.Z", "E7.sc.Z", "DI4"};
  std::uniform_int_distribution<std::size_t> pick_key(0, std::size(keys) - 1);
  std::uniform_int_distribution<std::size_t> length(1, 12);
  for (std::size_t t = 0; t < trials; ++t) {
    const char* key = keys[pick_key(rng)];
    bool ok = true;
    std::string where;
    try {
      const RootDatum d = catalog_datum(key);
      const auto& gens = d.generators();
      const ReflectionSet& refl = d.reflections();
      const auto& lines = d.coroot_lines();
      std::uniform_int_distribution<std::size_t> pick_gen(0, gens.size() - 1), pick_refl(0, refl.size() - 1);
      Matrix w = Matrix::identity(d.ring(), d.rank());
      for (std::size_t k = length(rng); k > 0; --k) w = gens[pick_gen(rng)] * w;
      const std::size_t i = pick_refl(rng);
      const Matrix tau = w * refl[i].sigma * inverse_unimodular(w);
      auto j = refl.find(tau);
      where = std::string(key) + " reflection " + std::to_string(i);
      if (!j) {
        ok = false;
      } else {
        ok = Sublattice::from_generators(w * lines[i].generator()) == lines[*j].line();
        Root root = root_of(d, *j);
        ok = ok && tau == Matrix::identity(d.ring(), d.rank()) + lines[*j].generator() * root.beta;
      }
    } catch (const std::exception& e) {
      ok = false;
      where += std::string(": ") + e.what();
    }
    record(r, ok, [&] { return where; });
  }
  r.seconds = timer.seconds();
  return r;
}

std::vector<SuiteResult> run_all(std::uint64_t seed) {
  return {smith_invariance(seed), rank_agreement(seed), equivariance(seed)};
}

}  // namespace rootdatum::property
