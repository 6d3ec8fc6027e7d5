#include "rootdatum/compact.hpp"

#include <functional>
#include <string>

#include "rootdatum/errors.hpp"
#include "rootdatum/padic.hpp"

namespace rootdatum {

CompactRing::CompactRing(const Ring& ring) : source_(ring) {
  switch (ring.kind()) {
    case RingKind::Rationals:
      throw WrongRing("compact arithmetic needs Z or Z_p");
    case RingKind::Integers:
      kind_ = Kind::PowerOfTwo;
      prime_ = 2;
      exponent_ = 64;
      return;
    case RingKind::PAdic:
      break;
  }
  prime_ = ring.prime();
  if (prime_ == 2) {
    kind_ = Kind::PowerOfTwo;
    exponent_ = std::min(ring.precision(), 64u);
    mask_ = exponent_ == 64 ? ~0ULL : ((1ULL << exponent_) - 1);
    return;
  }
  kind_ = Kind::General;
  unsigned __int128 m = 1;
  unsigned e = 0;
  while (e < ring.precision() && m * prime_ <= static_cast<unsigned __int128>(~0ULL)) {
    m *= prime_;
    ++e;
  }
  modulus_ = m;
  exponent_ = e;
}

Ring CompactRing::decoded_ring() const {
  if (source_.is_integers()) return source_;
  return Ring::padic(prime_, exponent_);
}

std::uint64_t CompactRing::from(const mpz_class& x) const {
  mpz_class m;
  if (kind_ == Kind::PowerOfTwo) mpz_ui_pow_ui(m.get_mpz_t(), 2, exponent_);
  else mpz_ui_pow_ui(m.get_mpz_t(), prime_, exponent_);
  mpz_class r = mod_floor(x, m);
  std::uint64_t lo = 0;
  mpz_export(&lo, nullptr, -1, sizeof(lo), 0, 0, r.get_mpz_t());
  return lo;
}

mpz_class CompactRing::to(std::uint64_t x) const {
  if (source_.is_integers()) {
    auto s = static_cast<std::int64_t>(x);
    if (s > (1LL << 62) || s < -(1LL << 62)) {
      throw PrecisionLoss("integer group element exceeds 62 bits in compact form");
    }
    return mpz_class(static_cast<long>(s));
  }
  mpz_class r;
  mpz_import(r.get_mpz_t(), 1, -1, sizeof(x), 0, 0, &x);
  return r;
}

std::int64_t CompactRing::centered(std::uint64_t x) const {
  if (kind_ == Kind::PowerOfTwo) {
    if (exponent_ == 64) return static_cast<std::int64_t>(x);
    std::uint64_t half = 1ULL << (exponent_ - 1);
    return x >= half ? static_cast<std::int64_t>(x) - static_cast<std::int64_t>(mask_ + 1) : static_cast<std::int64_t>(x);
  }
  unsigned __int128 half = modulus_ / 2;
  if (x > half) return -static_cast<std::int64_t>(static_cast<std::uint64_t>(modulus_ - x));
  return static_cast<std::int64_t>(x);
}

std::uint64_t CompactRing::from_signed(std::int64_t s) const {
  if (kind_ == Kind::PowerOfTwo) return static_cast<std::uint64_t>(s) & mask_;
  if (s >= 0) return static_cast<std::uint64_t>(static_cast<unsigned __int128>(s) % modulus_);
  auto m = static_cast<std::uint64_t>(static_cast<unsigned __int128>(-(s + 1)) % modulus_);
  return static_cast<std::uint64_t>(modulus_ - 1 - m);
}

unsigned CompactRing::valuation(std::uint64_t x) const {
  if (x == 0) return exponent_;
  unsigned v = 0;
  while (x % prime_ == 0) {
    x /= prime_;
    ++v;
  }
  return v;
}

std::uint64_t CompactRing::inverse_unit(std::uint64_t x) const {
  if (x % prime_ == 0) throw NonUnit("compact inverse of a non-unit");
  // Newton: y <- y (2 - x y) doubles the correct p-adic digits.
  std::uint64_t y = 1;
  if (prime_ != 2) {
    // seed with the inverse mod p
    std::uint64_t xm = x % prime_;
    for (std::uint64_t c = 1; c < prime_; ++c)
      if ((xm * c) % prime_ == 1) {
        y = c;
        break;
      }
  }
  for (int i = 0; i < 8; ++i) y = mul(y, sub(2, mul(x, y)));
  if (mul(x, y) != 1) throw Inconsistent("compact inverse failed");
  return y;
}

void CompactRing::multiply(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* out, std::size_t n) const {
  if (kind_ == Kind::PowerOfTwo) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        std::uint64_t s = 0;
        for (std::size_t k = 0; k < n; ++k) s += a[i * n + k] * b[k * n + j];
        out[i * n + j] = s & mask_;
      }
    return;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::uint64_t s = 0;
      for (std::size_t k = 0; k < n; ++k) s = add(s, mul(a[i * n + k], b[k * n + j]));
      out[i * n + j] = s;
    }
}

std::vector<std::uint64_t> CompactRing::encode(const Matrix& m) const {
  if (!m.ring().same_family(source_)) throw RingMismatch("compact encode: ring family differs");
  std::vector<std::uint64_t> out;
  out.reserve(m.entries().size());
  for (const auto& e : m.entries()) out.push_back(from(e));
  return out;
}

Matrix CompactRing::decode(std::span<const std::uint64_t> entries, std::size_t n) const {
  Matrix m(decoded_ring(), n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m.set(i, j, to(entries[i * n + j]));
  return m;
}

ElementStore::ElementStore(const CompactRing& ring, std::size_t n)
    : ring_(&ring), n_(n), offsets_{0}, slots_(64, kEmpty) {}

std::string_view ElementStore::bytes_of(std::uint32_t i) const {
  return std::string_view(reinterpret_cast<const char*>(bytes_.data()) + offsets_[i],
                          offsets_[i + 1] - offsets_[i]);
}

void ElementStore::encode_into(std::span<const std::uint64_t> element, std::string& out) const {
  // zigzag + LEB128 of the centred representative
  out.clear();
  for (std::uint64_t x : element) {
    std::int64_t s = ring_->centered(x);
    std::uint64_t z = (static_cast<std::uint64_t>(s) << 1) ^ static_cast<std::uint64_t>(s >> 63);
    do {
      char byte = static_cast<char>(z & 0x7f);
      z >>= 7;
      if (z) byte = static_cast<char>(byte | 0x80);
      out.push_back(byte);
    } while (z);
  }
}

std::size_t ElementStore::probe(std::string_view key, std::size_t hash) const {
  const std::size_t mask = slots_.size() - 1;
  std::size_t pos = hash & mask;
  while (slots_[pos] != kEmpty) {
    std::uint32_t id = slots_[pos];
    if (hashes_[id] == hash && bytes_of(id) == key) return pos;
    pos = (pos + 1) & mask;
  }
  return pos;
}

void ElementStore::grow() {
  std::vector<std::uint32_t> old(slots_.size() * 2, kEmpty);
  old.swap(slots_);
  const std::size_t mask = slots_.size() - 1;
  for (std::uint32_t id : old) {
    if (id == kEmpty) continue;
    std::size_t pos = hashes_[id] & mask;
    while (slots_[pos] != kEmpty) pos = (pos + 1) & mask;
    slots_[pos] = id;
  }
}

std::pair<std::uint32_t, bool> ElementStore::insert(std::span<const std::uint64_t> element) {
  thread_local std::string key;
  encode_into(element, key);
  std::size_t hash = std::hash<std::string_view>{}(key);
  std::size_t pos = probe(key, hash);
  if (slots_[pos] != kEmpty) return {slots_[pos], false};
  if (size() >= kEmpty - 1) throw CapExceeded("element store is full");
  auto id = static_cast<std::uint32_t>(size());
  bytes_.insert(bytes_.end(), key.begin(), key.end());
  offsets_.push_back(bytes_.size());
  hashes_.push_back(hash);
  slots_[pos] = id;
  if (2 * size() > slots_.size()) grow();
  return {id, true};
}

std::optional<std::uint32_t> ElementStore::find(std::span<const std::uint64_t> element) const {
  std::string key;
  encode_into(element, key);
  std::size_t pos = probe(key, std::hash<std::string_view>{}(key));
  if (slots_[pos] == kEmpty) return std::nullopt;
  return slots_[pos];
}

void ElementStore::decode(std::uint32_t index, std::vector<std::uint64_t>& out) const {
  out.assign(n_ * n_, 0);
  std::size_t pos = offsets_[index];
  for (std::size_t k = 0; k < n_ * n_; ++k) {
    std::uint64_t z = 0;
    unsigned shift = 0;
    for (;;) {
      std::uint8_t byte = bytes_[pos++];
      z |= static_cast<std::uint64_t>(byte & 0x7f) << shift;
      if (!(byte & 0x80)) break;
      shift += 7;
    }
    auto s = static_cast<std::int64_t>((z >> 1) ^ (~(z & 1) + 1));
    out[k] = ring_->from_signed(s);
  }
}

}  // namespace rootdatum
