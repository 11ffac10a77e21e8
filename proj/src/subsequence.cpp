#include "primeseq/subsequence.hpp"

#include "primeseq/error.hpp"

#include <algorithm>
#include <charconv>
#include <ostream>

namespace primeseq {

SequenceSelector SequenceSelector::superprime(std::uint32_t k) {
    if (k == 0) throw Error(ErrorKind::InvalidArgument, "superprime order must be >= 1");
    if (k == 1) return all_primes();
    return {SequenceKind::Order, k};
}

SequenceSelector parse_selector(std::string_view text) {
    if (text == "all" || text == "p") return SequenceSelector::all_primes();
    if (text == "p-prime") return SequenceSelector::p_prime();
    if (text == "p-dprime") return SequenceSelector::p_dprime();
    if (text == "twin") return SequenceSelector::twin();
    if (text.starts_with("order:")) {
        const std::string_view digits = text.substr(6);
        std::uint32_t k = 0;
        auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
        if (ec == std::errc{} && ptr == digits.data() + digits.size() && !digits.empty())
            return SequenceSelector::superprime(k);
    }
    throw Error(ErrorKind::InvalidArgument, "unknown selector '" + std::string(text) + "'");
}

std::string to_string(const SequenceSelector& selector) {
    switch (selector.kind) {
        case SequenceKind::AllPrimes: return "all";
        case SequenceKind::PPrime: return "p-prime";
        case SequenceKind::PDoublePrime: return "p-dprime";
        case SequenceKind::Twin: return "twin";
        case SequenceKind::Order: return "order:" + std::to_string(selector.order);
    }
    return "unknown";
}

GeneratorMethod parse_method(std::string_view text) {
    if (text == "depth-parity") return GeneratorMethod::DepthParity;
    if (text == "index-sieve") return GeneratorMethod::IndexSieve;
    if (text == "prime-indexing") return GeneratorMethod::PrimeIndexing;
    throw Error(ErrorKind::InvalidArgument, "unknown method '" + std::string(text) + "'");
}

std::string_view to_string(GeneratorMethod method) noexcept {
    switch (method) {
        case GeneratorMethod::DepthParity: return "depth-parity";
        case GeneratorMethod::IndexSieve: return "index-sieve";
        case GeneratorMethod::PrimeIndexing: return "prime-indexing";
    }
    return "unknown";
}

std::uint32_t depth(std::uint64_t n, const SieveStore& store) {
    if (n == 0) throw Error(ErrorKind::InvalidArgument, "depth is defined for n >= 1");
    std::uint32_t d = 0;
    while (store.is_prime(n)) {
        ++d;
        n = store.prime_index(n);
    }
    return d;
}

DepthTable::DepthTable(const SieveStore& store, std::uint64_t limit) {
    if (limit > store.x_max())
        throw Error(ErrorKind::OutOfRange, "depth table limit " + std::to_string(limit) +
                                               " exceeds sieve limit " + std::to_string(store.x_max()));
    depths_.assign(limit + 1, 0);
    const auto primes = store.primes();
    // pi(p_i) = i + 1 < p_i, so the index's depth is always already filled in.
    for (std::size_t i = 0; i < primes.size() && primes[i] <= limit; ++i)
        depths_[primes[i]] = static_cast<std::uint8_t>(1 + depths_[i + 1]);
}

std::uint32_t DepthTable::operator[](std::uint64_t n) const {
    if (n >= depths_.size())
        throw Error(ErrorKind::OutOfRange, "depth table does not cover " + std::to_string(n));
    return depths_[n];
}

std::vector<std::uint64_t> order_k_sequence(std::uint32_t k, std::uint64_t limit,
                                            const SieveStore& store) {
    if (k == 0) throw Error(ErrorKind::InvalidArgument, "superprime order must be >= 1");
    if (limit > store.x_max())
        throw Error(ErrorKind::OutOfRange, "limit " + std::to_string(limit) +
                                               " exceeds sieve limit " + std::to_string(store.x_max()));
    const auto primes = store.primes();
    std::vector<std::uint64_t> level(primes.begin(),
                                     std::upper_bound(primes.begin(), primes.end(), limit));
    for (std::uint32_t step = 1; step < k && !level.empty(); ++step) {
        std::vector<std::uint64_t> next;
        for (std::uint64_t m : level) {
            if (m > primes.size() || primes[m - 1] > limit) break;
            next.push_back(primes[m - 1]);
        }
        level = std::move(next);
    }
    return level;
}

std::vector<std::uint64_t> index_sieve_p_prime(std::uint64_t limit, const SieveStore& store) {
    if (limit > store.x_max())
        throw Error(ErrorKind::OutOfRange, "limit " + std::to_string(limit) +
                                               " exceeds sieve limit " + std::to_string(store.x_max()));
    const auto primes = store.primes();
    std::uint64_t bound = 64;
    for (;;) {
        std::vector<bool> struck(bound + 1, false);
        std::vector<std::uint64_t> out;
        bool overran = false;
        for (std::uint64_t m = 1;; ++m) {
            if (m > bound) {
                overran = true;
                break;
            }
            if (struck[m]) continue;
            // p_m beyond the store is beyond limit as well.
            if (m > primes.size()) break;
            const std::uint64_t p = primes[m - 1];
            if (p > limit) break;
            out.push_back(p);
            if (p <= bound) struck[p] = true;
        }
        if (!overran) return out;
        bound *= 2;
    }
}

namespace {

template <class Pred>
std::vector<std::uint64_t> primes_where(std::uint64_t limit, const SieveStore& store, Pred pred) {
    const DepthTable table(store, limit);
    std::vector<std::uint64_t> out;
    for (std::uint64_t p : store.primes()) {
        if (p > limit) break;
        if (pred(table[p])) out.push_back(p);
    }
    return out;
}

[[noreturn]] void unsupported(SequenceSelector selector, GeneratorMethod method) {
    throw Error(ErrorKind::UnsupportedCombination,
                "method " + std::string(to_string(method)) + " does not generate " +
                    to_string(selector));
}

}  // namespace

std::vector<std::uint64_t> generate(SequenceSelector selector, GeneratorMethod method,
                                    std::uint64_t limit, const SieveStore& store) {
    if (limit > store.x_max())
        throw Error(ErrorKind::OutOfRange, "limit " + std::to_string(limit) +
                                               " exceeds sieve limit " + std::to_string(store.x_max()));
    switch (selector.kind) {
        case SequenceKind::AllPrimes:
        case SequenceKind::Order: {
            const std::uint32_t k = selector.kind == SequenceKind::AllPrimes ? 1 : selector.order;
            if (method == GeneratorMethod::DepthParity)
                return primes_where(limit, store, [k](std::uint32_t d) { return d >= k; });
            if (method == GeneratorMethod::PrimeIndexing) return order_k_sequence(k, limit, store);
            unsupported(selector, method);
        }
        case SequenceKind::PPrime:
            if (method == GeneratorMethod::DepthParity)
                return primes_where(limit, store, [](std::uint32_t d) { return d % 2 == 1; });
            if (method == GeneratorMethod::IndexSieve) return index_sieve_p_prime(limit, store);
            unsupported(selector, method);
        case SequenceKind::PDoublePrime:
            if (method == GeneratorMethod::DepthParity)
                return primes_where(limit, store,
                                    [](std::uint32_t d) { return d >= 2 && d % 2 == 0; });
            if (method == GeneratorMethod::PrimeIndexing) {
                const auto primes = store.primes();
                std::vector<std::uint64_t> out;
                // p_k <= limit needs k <= pi(limit) <= limit.
                for (std::uint64_t k : index_sieve_p_prime(store.prime_pi(limit), store)) {
                    if (primes[k - 1] > limit) break;
                    out.push_back(primes[k - 1]);
                }
                return out;
            }
            unsupported(selector, method);
        case SequenceKind::Twin: {
            if (method != GeneratorMethod::DepthParity) unsupported(selector, method);
            if (limit + 2 > store.x_max())
                throw Error(ErrorKind::OutOfRange,
                            "twin membership up to " + std::to_string(limit) +
                                " needs a sieve limit of at least " + std::to_string(limit + 2));
            std::vector<std::uint64_t> out;
            for (std::uint64_t p : store.primes()) {
                if (p > limit) break;
                if ((p >= 2 && store.is_prime(p - 2)) || store.is_prime(p + 2)) out.push_back(p);
            }
            return out;
        }
    }
    unsupported(selector, method);
}

bool verify_partition(std::uint64_t limit, const SieveStore& store) {
    const auto p_prime = generate(SequenceSelector::p_prime(), GeneratorMethod::IndexSieve, limit, store);
    const auto p_dprime =
        generate(SequenceSelector::p_dprime(), GeneratorMethod::PrimeIndexing, limit, store);
    const auto primes = store.primes();
    const auto end = std::upper_bound(primes.begin(), primes.end(), limit);

    std::vector<std::uint64_t> shared;
    std::set_intersection(p_prime.begin(), p_prime.end(), p_dprime.begin(), p_dprime.end(),
                          std::back_inserter(shared));
    if (!shared.empty()) return false;

    std::vector<std::uint64_t> merged;
    merged.reserve(p_prime.size() + p_dprime.size());
    std::merge(p_prime.begin(), p_prime.end(), p_dprime.begin(), p_dprime.end(),
               std::back_inserter(merged));
    return std::equal(merged.begin(), merged.end(), primes.begin(), end);
}

bool methods_agree(std::uint64_t limit, const SieveStore& store) {
    const auto pp = SequenceSelector::p_prime();
    const auto pd = SequenceSelector::p_dprime();
    return generate(pp, GeneratorMethod::DepthParity, limit, store) ==
               generate(pp, GeneratorMethod::IndexSieve, limit, store) &&
           generate(pd, GeneratorMethod::DepthParity, limit, store) ==
               generate(pd, GeneratorMethod::PrimeIndexing, limit, store);
}

void write_bfile(std::ostream& out, std::span<const std::uint64_t> terms) {
    for (std::size_t i = 0; i < terms.size(); ++i) out << (i + 1) << ' ' << terms[i] << '\n';
}

}  // namespace primeseq
