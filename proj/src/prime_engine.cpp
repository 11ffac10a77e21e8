#include "primeseq/prime_engine.hpp"

#include "primeseq/error.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <string>
#include <thread>

namespace primeseq {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::InvalidLimit: return "invalid_limit";
        case ErrorKind::OutOfRange: return "out_of_range";
        case ErrorKind::NotAPrime: return "not_a_prime";
        case ErrorKind::InvalidArgument: return "invalid_argument";
        case ErrorKind::UnsupportedCombination: return "unsupported_combination";
        case ErrorKind::Domain: return "domain_error";
        case ErrorKind::StrategyLimit: return "strategy_limit";
    }
    return "unknown";
}

std::uint64_t isqrt(std::uint64_t n) noexcept {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r > n / r) --r;
    while ((r + 1) <= n / (r + 1)) ++r;
    return r;
}

namespace {

std::vector<std::uint64_t> small_primes(std::uint64_t limit) {
    std::vector<char> composite(limit + 1, 0);
    std::vector<std::uint64_t> out;
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = 1;
    }
    return out;
}

// Sieves [lo, hi) into the words covering it and returns its prime count.
// lo is a multiple of 64, so distinct segments never share a word.
std::uint64_t sieve_segment(std::uint64_t lo, std::uint64_t hi,
                            std::span<const std::uint64_t> base,
                            std::vector<char>& scratch, std::uint64_t* words) {
    const std::uint64_t len = hi - lo;
    scratch.assign(len, 1);
    for (std::uint64_t p : base) {
        if (p * p >= hi) break;
        std::uint64_t start = std::max(p * p, (lo + p - 1) / p * p);
        for (std::uint64_t m = start; m < hi; m += p) scratch[m - lo] = 0;
    }
    for (std::uint64_t n = lo; n < std::min<std::uint64_t>(hi, 2); ++n) scratch[n - lo] = 0;

    std::uint64_t count = 0;
    for (std::uint64_t off = 0; off < len; off += 64) {
        std::uint64_t word = 0;
        const std::uint64_t end = std::min<std::uint64_t>(64, len - off);
        for (std::uint64_t b = 0; b < end; ++b)
            word |= static_cast<std::uint64_t>(scratch[off + b]) << b;
        words[(lo + off) / 64] = word;
        count += static_cast<std::uint64_t>(std::popcount(word));
    }
    return count;
}

}  // namespace

SieveStore build_sieve(std::uint64_t x_max, const SieveOptions& options) {
    if (x_max < 2)
        throw Error(ErrorKind::InvalidLimit,
                    "sieve limit must be >= 2, got " + std::to_string(x_max));
    if (options.segment_size == 0 || options.segment_size % 64 != 0)
        throw Error(ErrorKind::InvalidArgument,
                    "segment size must be a positive multiple of 64, got " +
                        std::to_string(options.segment_size));

    SieveStore store;
    store.x_max_ = x_max;
    store.segment_size_ = options.segment_size;

    const std::uint64_t total = x_max + 1;
    const std::uint64_t seg = options.segment_size;
    const std::uint64_t n_segments = (total + seg - 1) / seg;
    store.words_.assign((total + 63) / 64, 0);

    const std::vector<std::uint64_t> base = small_primes(isqrt(x_max));
    std::vector<std::uint64_t> per_segment(n_segments, 0);

    unsigned n_threads = options.threads != 0 ? options.threads
                                              : std::max(1u, std::thread::hardware_concurrency());
    n_threads = static_cast<unsigned>(std::min<std::uint64_t>(n_threads, n_segments));

    std::atomic<std::uint64_t> next{0};
    auto worker = [&] {
        std::vector<char> scratch;
        for (std::uint64_t s = next.fetch_add(1); s < n_segments; s = next.fetch_add(1)) {
            const std::uint64_t lo = s * seg;
            const std::uint64_t hi = std::min(total, lo + seg);
            per_segment[s] = sieve_segment(lo, hi, base, scratch, store.words_.data());
        }
    };
    if (n_threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(n_threads);
        for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    }

    store.segment_counts_.assign(n_segments + 1, 0);
    for (std::uint64_t s = 0; s < n_segments; ++s)
        store.segment_counts_[s + 1] = store.segment_counts_[s] + per_segment[s];

    store.word_rank_.assign(store.words_.size() + 1, 0);
    for (std::size_t w = 0; w < store.words_.size(); ++w)
        store.word_rank_[w + 1] =
            store.word_rank_[w] + static_cast<std::uint64_t>(std::popcount(store.words_[w]));

    store.primes_.reserve(store.segment_counts_.back());
    for (std::size_t w = 0; w < store.words_.size(); ++w) {
        for (std::uint64_t word = store.words_[w]; word != 0; word &= word - 1)
            store.primes_.push_back(64 * w + static_cast<std::uint64_t>(std::countr_zero(word)));
    }
    return store;
}

bool SieveStore::is_prime(std::uint64_t n) const {
    if (n > x_max_)
        throw Error(ErrorKind::OutOfRange, "is_prime(" + std::to_string(n) +
                                               ") exceeds sieve limit " + std::to_string(x_max_));
    return (words_[n / 64] >> (n % 64)) & 1u;
}

std::uint64_t SieveStore::prime_pi(std::uint64_t x) const {
    if (x > x_max_)
        throw Error(ErrorKind::OutOfRange, "prime_pi(" + std::to_string(x) +
                                               ") exceeds sieve limit " + std::to_string(x_max_));
    const std::uint64_t w = x / 64;
    const std::uint64_t bits = x % 64;
    const std::uint64_t mask = bits == 63 ? ~std::uint64_t{0} : ((std::uint64_t{1} << (bits + 1)) - 1);
    return word_rank_[w] + static_cast<std::uint64_t>(std::popcount(words_[w] & mask));
}

std::uint64_t SieveStore::nth_prime(std::uint64_t n) const {
    if (n == 0) throw Error(ErrorKind::InvalidArgument, "prime indices are 1-based");
    if (n > primes_.size())
        throw Error(ErrorKind::OutOfRange, "nth_prime(" + std::to_string(n) +
                                               ") lies beyond sieve limit " + std::to_string(x_max_));
    return primes_[n - 1];
}

std::uint64_t SieveStore::prime_index(std::uint64_t p) const {
    if (!is_prime(p))
        throw Error(ErrorKind::NotAPrime, std::to_string(p) + " is not prime");
    return prime_pi(p);
}

}  // namespace primeseq
