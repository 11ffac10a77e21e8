#pragma once

#include "primeseq/prime_engine.hpp"
#include "primeseq/subsequence.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace primeseq {

/// Exact counts at x next to the density predictions for P' and P''.
struct CountReport {
    std::uint64_t x = 0;
    std::uint64_t pi = 0;
    std::uint64_t pi_prime = 0;
    std::uint64_t pi_dprime = 0;
    std::uint64_t pi_twin_pairs = 0;
    double d_prime_pred = 0.0;
    double d_dprime_pred = 0.0;
    double g_prime_pred = 0.0;
    double g_dprime_pred = 0.0;
};

/// Prefix-count oracle for the subsequences over [0, limit]. Builds the
/// member lists once; each count is a binary search.
///
/// Twin counts pairs (p, p+2) with p+2 <= x.
class SubsequenceCounter {
public:
    SubsequenceCounter(const SieveStore& store, std::uint64_t limit);

    std::uint64_t limit() const noexcept { return limit_; }
    std::uint64_t count(SequenceSelector selector, std::uint64_t x) const;
    /// Requires x >= 2 (densities need ln x > 0).
    CountReport report(std::uint64_t x) const;

    std::span<const std::uint64_t> members(SequenceSelector selector) const;

private:
    const SieveStore* store_;
    std::uint64_t limit_;
    DepthTable depths_;
    std::vector<std::uint64_t> p_prime_;
    std::vector<std::uint64_t> p_dprime_;
    std::vector<std::uint64_t> twin_lesser_;
};

/// Exact member count of the selected subsequence up to x.
std::uint64_t pi_subseq(SequenceSelector selector, std::uint64_t x, const SieveStore& store);

// --- Legendre inclusion-exclusion ------------------------------------------

enum class LegendreStrategy { Auto, Direct, Recursive };

/// Largest r the signed subset expansion accepts.
inline constexpr std::uint64_t kMaxDirectR = 20;

/// Count of n in [1, x] coprime to p_1 ... p_r, n = 1 included.
///
/// Direct evaluates the signed subset sum term by term, pruning subsets whose
/// prime product exceeds x (their floor is 0). Recursive uses
/// phi(x, r) = phi(x, r-1) - phi(x / p_r, r-1). Auto picks Direct for
/// r <= kMaxDirectR. Pinning Direct with a larger r throws StrategyLimit.
std::uint64_t legendre_A(std::uint64_t x, std::uint64_t r, const SieveStore& store,
                         LegendreStrategy strategy = LegendreStrategy::Auto);

/// A(x, r) for every x <= x_max and r <= r_max, filled bottom-up with
/// phi(x, r) = phi(x, r-1) - phi(x / p_r, r-1), phi(x, 0) = x.
class LegendreTable {
public:
    LegendreTable(std::uint64_t x_max, std::uint64_t r_max, const SieveStore& store);

    std::uint64_t x_max() const noexcept { return x_max_; }
    std::uint64_t r_max() const noexcept { return r_max_; }
    std::uint64_t at(std::uint64_t x, std::uint64_t r) const;

private:
    std::uint64_t x_max_;
    std::uint64_t r_max_;
    std::vector<std::uint32_t> cells_;  // row r holds phi(0..x_max, r)
};

/// prod_{i<=r} (1 - 1/p_i).
double sieve_product(std::uint64_t r, const SieveStore& store);

/// prod_{p<=x} (1 - 1/p) < 1 / ln x. Throws Domain for x < 2.
bool check_theorem1(std::uint64_t x, const SieveStore& store);

struct JkSplit {
    double j;
    double k;
};

/// j = 1/(ln x + 1), k = ln x/(ln x + 1). Throws Domain for x <= 1.
JkSplit jk_split(double x);

/// d'(x) = 1/(ln x + 1), d''(x) = 1/(ln x (ln x + 1)), and 1/ln x for all
/// primes. Other selectors throw UnsupportedCombination; x <= 1 throws Domain.
double density_pred(SequenceSelector selector, double x);
double gap_pred(SequenceSelector selector, double x);

// --- Bounds ----------------------------------------------------------------

enum class BoundForm { Raw, Final };

struct BoundConfig {
    /// Number of sieving primes. Absent means derive r = floor(x^m) with
    /// m = 1 / (c ln ln x), which needs x > e^e.
    std::optional<std::uint64_t> r;
    double c = 5.0;
    double C = 1.0;
};

/// floor(x^m), m = 1/(c ln ln x), clamped below at 1.
std::uint64_t derived_r(std::uint64_t x, double c);

/// Members of the selected subsequence among the first r primes (r', r'', r2;
/// twin members are primes with p-2 or p+2 prime).
std::uint64_t members_among_first(SequenceSelector selector, std::uint64_t r,
                                  const SieveStore& store);

/// The x-dependent factor of a Final bound, so bound = C * final_shape.
///   PDoublePrime  x (ln ln x)^2 / ((ln x)^2 + ln ln x ln x)
///   PPrime        x ln ln x / (ln x + ln ln x)
///   Twin          x (ln ln x)^2 / (ln x)^2
/// Throws Domain unless x > e^e.
double final_shape(SequenceSelector selector, double x);

/// Raw forms (need the store for p_r and the subsequence counts):
///   AllPrimes     r + x / ln p_r + 2^r
///   PDoublePrime  r'' + x / (ln p_r (ln p_r + 1)) + 2^r''
///   PPrime        r' + x / (ln p_r + 1) + 2^r'
///   Twin          r2 + C x / (ln p_r)^2 + 2^r2
/// Final forms are C * final_shape(selector, x). The 2^r term is +infinity
/// once r exceeds the double exponent range.
double bound_eval(SequenceSelector selector, std::uint64_t x, const BoundConfig& cfg,
                  BoundForm form, const SieveStore& store);

/// Smallest double C with count(x) <= C * final_shape(x) at every grid point.
double fit_constant(SequenceSelector selector, std::span<const std::uint64_t> x_grid,
                    const SieveStore& store);

}  // namespace primeseq
