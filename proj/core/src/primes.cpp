#include "dioprime/primes.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "dioprime/parallel.hpp"

namespace dioprime {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod(u64 base, u64 e, u64 m) {
  u64 r = 1 % m;
  base %= m;
  while (e) {
    if (e & 1) r = mulmod(r, base, m);
    base = mulmod(base, base, m);
    e >>= 1;
  }
  return r;
}

std::vector<u64> small_primes_upto(u64 limit) {
  std::vector<bool> composite(limit + 1, false);
  std::vector<u64> out;
  for (u64 i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (u64 j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return out;
}

constexpr char kMagic[8] = {'D', 'P', 'R', 'I', 'M', 'E', 'S', '1'};

}  // namespace

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

PrimeTable::PrimeTable(double X, std::vector<u64> primes) : X_(X), primes_(std::move(primes)) {
  for (std::size_t i = 0; i < primes_.size(); ++i) {
    if (i > 0 && primes_[i] <= primes_[i - 1]) throw std::logic_error("PrimeTable: entries not strictly increasing");
    if (!is_prime_u64(primes_[i])) throw std::logic_error("PrimeTable: composite entry " + std::to_string(primes_[i]));
  }
  logs_.resize(primes_.size());
  for (std::size_t i = 0; i < primes_.size(); ++i) logs_[i] = std::log(static_cast<double>(primes_[i]));
}

double PrimeTable::theta() const {
  return deterministic_sum<double>(logs_.size(), 1, [&](std::size_t i) { return logs_[i]; });
}

PrimeTable sieve_primes(double X) {
  if (!(X >= 1.0)) throw std::invalid_argument("sieve_primes: X must be >= 1");
  if (2.0 * X > kMaxSieveBound) throw std::overflow_error("sieve_primes: 2X exceeds 2^53");
  const u64 lo = static_cast<u64>(std::floor(X));      // exclusive
  const u64 hi = static_cast<u64>(std::floor(2.0 * X));  // inclusive
  const u64 root = static_cast<u64>(std::sqrt(static_cast<double>(hi))) + 1;
  const std::vector<u64> base = small_primes_upto(root);

  std::vector<u64> out;
  constexpr u64 kSegment = 1u << 20;
  std::vector<char> composite;
  for (u64 seg_lo = lo + 1; seg_lo <= hi; seg_lo += kSegment) {
    const u64 seg_hi = std::min(hi, seg_lo + kSegment - 1);
    composite.assign(seg_hi - seg_lo + 1, 0);
    for (u64 p : base) {
      if (p * p > seg_hi) break;
      u64 start = std::max(p * p, (seg_lo + p - 1) / p * p);
      for (u64 j = start; j <= seg_hi; j += p) composite[j - seg_lo] = 1;
    }
    for (u64 n = seg_lo; n <= seg_hi; ++n) {
      if (n >= 2 && !composite[n - seg_lo]) out.push_back(n);
    }
  }
  return PrimeTable(X, std::move(out));
}

void PrimeTable::save(const std::filesystem::path& path) const {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write prime cache " + path.string());
  f.write(kMagic, sizeof kMagic);
  f.write(reinterpret_cast<const char*>(&X_), sizeof X_);
  const u64 n = primes_.size();
  f.write(reinterpret_cast<const char*>(&n), sizeof n);
  f.write(reinterpret_cast<const char*>(primes_.data()), static_cast<std::streamsize>(n * sizeof(u64)));
}

std::optional<PrimeTable> PrimeTable::load(const std::filesystem::path& path, double X) {
  std::ifstream f(path, std::ios::binary);
  if (!f) return std::nullopt;
  char magic[sizeof kMagic];
  double stored_x = 0.0;
  u64 n = 0;
  if (!f.read(magic, sizeof magic) || std::memcmp(magic, kMagic, sizeof kMagic) != 0) return std::nullopt;
  if (!f.read(reinterpret_cast<char*>(&stored_x), sizeof stored_x) || stored_x != X) return std::nullopt;
  if (!f.read(reinterpret_cast<char*>(&n), sizeof n)) return std::nullopt;
  std::vector<u64> primes(n);
  if (!f.read(reinterpret_cast<char*>(primes.data()), static_cast<std::streamsize>(n * sizeof(u64)))) {
    return std::nullopt;
  }
  return PrimeTable(X, std::move(primes));
}

PrimeTable cached_primes(double X, const std::filesystem::path& dir) {
  std::ostringstream name;
  name.precision(17);
  name << "primes_" << X << ".bin";
  const auto path = dir / name.str();
  if (auto table = PrimeTable::load(path, X)) return std::move(*table);
  PrimeTable table = sieve_primes(X);
  std::filesystem::create_directories(dir);
  table.save(path);
  return table;
}

}  // namespace dioprime
