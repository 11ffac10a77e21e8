#pragma once

#include "primeseq/prime_engine.hpp"

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace primeseq {

enum class SequenceKind { AllPrimes, PPrime, PDoublePrime, Twin, Order };

/// Which prime subsequence an operation works on. Order(1) normalizes to
/// AllPrimes, so the two compare equal and behave identically.
struct SequenceSelector {
    SequenceKind kind = SequenceKind::AllPrimes;
    std::uint32_t order = 1;  // meaningful only for SequenceKind::Order

    static SequenceSelector all_primes() { return {SequenceKind::AllPrimes, 1}; }
    static SequenceSelector p_prime() { return {SequenceKind::PPrime, 1}; }
    static SequenceSelector p_dprime() { return {SequenceKind::PDoublePrime, 1}; }
    static SequenceSelector twin() { return {SequenceKind::Twin, 1}; }
    /// Throws InvalidArgument for k == 0.
    static SequenceSelector superprime(std::uint32_t k);

    friend bool operator==(const SequenceSelector&, const SequenceSelector&) = default;
};

enum class GeneratorMethod { DepthParity, IndexSieve, PrimeIndexing };

/// CLI spellings: all, p-prime, p-dprime, twin, order:K.
SequenceSelector parse_selector(std::string_view text);
std::string to_string(const SequenceSelector& selector);

/// CLI spellings: depth-parity, index-sieve, prime-indexing.
GeneratorMethod parse_method(std::string_view text);
std::string_view to_string(GeneratorMethod method) noexcept;

struct DepthRecord {
    std::uint64_t value;
    std::uint32_t depth;

    friend bool operator==(const DepthRecord&, const DepthRecord&) = default;
};

/// Prime-iteration depth: 0 for non-primes, otherwise 1 + depth(prime_index(n)).
/// For a prime this is the number of superprime levels p^(1), p^(2), ...
/// containing it. Throws InvalidArgument for n == 0.
std::uint32_t depth(std::uint64_t n, const SieveStore& store);

/// Depths of every n in [0, limit], built bottom-up in one pass.
class DepthTable {
public:
    DepthTable(const SieveStore& store, std::uint64_t limit);

    std::uint64_t limit() const noexcept { return depths_.size() - 1; }
    std::uint32_t operator[](std::uint64_t n) const;
    DepthRecord record(std::uint64_t n) const { return {n, (*this)[n]}; }

private:
    std::vector<std::uint8_t> depths_;
};

/// Members of p^(k) not exceeding limit, ascending, built by iterated indexing.
std::vector<std::uint64_t> order_k_sequence(std::uint32_t k, std::uint64_t limit,
                                            const SieveStore& store);

/// Members of the selected sequence not exceeding limit, ascending.
///
/// Supported combinations:
///   AllPrimes, Order(k)   DepthParity (depth >= k), PrimeIndexing (iterated indexing)
///   PPrime                DepthParity (odd depth), IndexSieve (sieve of the natural line)
///   PDoublePrime          DepthParity (even depth >= 2), PrimeIndexing (P indexed by P')
///   Twin                  DepthParity (store scan: p with p-2 or p+2 prime)
/// Anything else throws UnsupportedCombination. Twin needs limit + 2 <= x_max.
std::vector<std::uint64_t> generate(SequenceSelector selector, GeneratorMethod method,
                                    std::uint64_t limit, const SieveStore& store);

/// The index sieve on the natural line: start at n = 1, emit p_n, strike p_n
/// from the line, advance to the next surviving natural and repeat. The
/// struck-set bound doubles until the run completes without overrunning it.
std::vector<std::uint64_t> index_sieve_p_prime(std::uint64_t limit, const SieveStore& store);

/// True iff P'(limit) and P''(limit) are disjoint and their union is every
/// prime <= limit. P' comes from the index sieve, P'' from prime indexing.
bool verify_partition(std::uint64_t limit, const SieveStore& store);

/// True iff every supported method produces the same P' and the same P''.
bool methods_agree(std::uint64_t limit, const SieveStore& store);

/// OEIS b-file: one "n a(n)" line per term, 1-indexed.
void write_bfile(std::ostream& out, std::span<const std::uint64_t> terms);

}  // namespace primeseq
