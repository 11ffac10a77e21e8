// prime_engine.hpp
// Segmented sieve of Eratosthenes and the immutable prime oracle built from it.
//
// Layout:
//   bit n of words_ is set  <=>  n is prime, for n in [0, x_max]
//   word_rank_[w]           =    number of primes below 64*w
//   segment_counts_[s]      =    number of primes below s*segment_size
//
// The store is immutable once built and safe for concurrent reads.

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace primeseq {

/// Default sieve window, in integers per segment. 2^18 bits fits in L2.
inline constexpr std::uint64_t kDefaultSegmentSize = std::uint64_t{1} << 18;

struct SieveOptions {
    /// Integers per sieve window; must be a positive multiple of 64.
    std::uint64_t segment_size = kDefaultSegmentSize;
    /// Worker threads for the segment phase; 0 means hardware concurrency.
    unsigned threads = 0;
};

/// A prime p together with its 1-based position in the ascending prime list.
struct PrimeIndexPair {
    std::uint64_t index;
    std::uint64_t prime;

    friend bool operator==(const PrimeIndexPair&, const PrimeIndexPair&) = default;
};

class SieveStore {
public:
    std::uint64_t x_max() const noexcept { return x_max_; }
    std::uint64_t segment_size() const noexcept { return segment_size_; }

    /// Primality of n. Throws OutOfRange for n > x_max.
    bool is_prime(std::uint64_t n) const;

    /// Number of primes <= x. Throws OutOfRange for x > x_max.
    std::uint64_t prime_pi(std::uint64_t x) const;

    /// The n-th prime, 1-based (nth_prime(1) == 2). Throws OutOfRange when
    /// p_n exceeds x_max and InvalidArgument for n == 0.
    std::uint64_t nth_prime(std::uint64_t n) const;

    /// Inverse of nth_prime. Throws NotAPrime or OutOfRange.
    std::uint64_t prime_index(std::uint64_t p) const;

    PrimeIndexPair indexed(std::uint64_t n) const { return {n, nth_prime(n)}; }

    /// All primes <= x_max, ascending.
    std::span<const std::uint64_t> primes() const noexcept { return primes_; }
    std::uint64_t prime_count() const noexcept { return primes_.size(); }

    /// Cumulative prime counts at segment boundaries; entry s counts primes
    /// below s * segment_size. The last entry equals prime_count().
    std::span<const std::uint64_t> segment_counts() const noexcept { return segment_counts_; }

private:
    friend SieveStore build_sieve(std::uint64_t x_max, const SieveOptions& options);

    SieveStore() = default;

    std::uint64_t x_max_ = 0;
    std::uint64_t segment_size_ = 0;
    std::vector<std::uint64_t> words_;
    std::vector<std::uint64_t> word_rank_;
    std::vector<std::uint64_t> segment_counts_;
    std::vector<std::uint64_t> primes_;
};

/// Sieves [0, x_max]. Throws InvalidLimit for x_max < 2 and InvalidArgument
/// for a segment size that is zero or not a multiple of 64.
SieveStore build_sieve(std::uint64_t x_max, const SieveOptions& options = {});

/// Integer square root: largest r with r*r <= n.
std::uint64_t isqrt(std::uint64_t n) noexcept;

}  // namespace primeseq
