#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

namespace dioprime {

/// Deterministic Miller–Rabin, exact for all 64-bit inputs.
bool is_prime_u64(std::uint64_t n);

/// Primes in (X, 2X] with natural logs, strictly increasing.
class PrimeTable {
 public:
  PrimeTable() = default;
  /// Takes ownership of `primes`; verifies order and primality.
  PrimeTable(double X, std::vector<std::uint64_t> primes);

  double X() const { return X_; }
  std::span<const std::uint64_t> primes() const { return primes_; }
  std::span<const double> logs() const { return logs_; }
  std::size_t size() const { return primes_.size(); }
  bool empty() const { return primes_.empty(); }
  std::uint64_t operator[](std::size_t i) const { return primes_[i]; }

  /// θ(2X) - θ(X) = Σ log p.
  double theta() const;

  /// Binary cache: magic, X, count, primes (little-endian u64).
  void save(const std::filesystem::path& path) const;
  static std::optional<PrimeTable> load(const std::filesystem::path& path, double X);

 private:
  double X_ = 0.0;
  std::vector<std::uint64_t> primes_;
  std::vector<double> logs_;
};

/// Largest supported 2X (exact integer range of double).
inline constexpr double kMaxSieveBound = 9007199254740992.0;  // 2^53

/// Segmented sieve over (floor(X), floor(2X)]. Throws std::overflow_error
/// when 2X exceeds kMaxSieveBound, std::invalid_argument when X < 1.
PrimeTable sieve_primes(double X);

/// sieve_primes with a binary cache file keyed by X inside `dir`.
PrimeTable cached_primes(double X, const std::filesystem::path& dir);

}  // namespace dioprime
