#include "primeseq/counting.hpp"

#include "primeseq/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

namespace primeseq {

namespace {

void require_within(std::uint64_t x, const SieveStore& store) {
    if (x > store.x_max())
        throw Error(ErrorKind::OutOfRange, std::to_string(x) + " exceeds sieve limit " +
                                               std::to_string(store.x_max()));
}

std::uint64_t count_upto(std::span<const std::uint64_t> sorted, std::uint64_t x) {
    return static_cast<std::uint64_t>(std::upper_bound(sorted.begin(), sorted.end(), x) -
                                      sorted.begin());
}

}  // namespace

SubsequenceCounter::SubsequenceCounter(const SieveStore& store, std::uint64_t limit)
    : store_(&store), limit_(limit), depths_(store, limit) {
    for (std::uint64_t p : store.primes()) {
        if (p > limit) break;
        const std::uint32_t d = depths_[p];
        (d % 2 == 1 ? p_prime_ : p_dprime_).push_back(p);
        if (p + 2 <= limit && store.is_prime(p + 2)) twin_lesser_.push_back(p);
    }
}

std::span<const std::uint64_t> SubsequenceCounter::members(SequenceSelector selector) const {
    switch (selector.kind) {
        case SequenceKind::AllPrimes: {
            const auto primes = store_->primes();
            return primes.first(count_upto(primes, limit_));
        }
        case SequenceKind::PPrime: return p_prime_;
        case SequenceKind::PDoublePrime: return p_dprime_;
        case SequenceKind::Twin: return twin_lesser_;
        case SequenceKind::Order: break;
    }
    throw Error(ErrorKind::UnsupportedCombination,
                "no materialized member list for " + to_string(selector));
}

std::uint64_t SubsequenceCounter::count(SequenceSelector selector, std::uint64_t x) const {
    if (x > limit_)
        throw Error(ErrorKind::OutOfRange, std::to_string(x) + " exceeds counter limit " +
                                               std::to_string(limit_));
    switch (selector.kind) {
        case SequenceKind::AllPrimes: return store_->prime_pi(x);
        case SequenceKind::PPrime: return count_upto(p_prime_, x);
        case SequenceKind::PDoublePrime: return count_upto(p_dprime_, x);
        case SequenceKind::Twin: return x < 2 ? 0 : count_upto(twin_lesser_, x - 2);
        case SequenceKind::Order: {
            std::uint64_t n = 0;
            for (std::uint64_t p : store_->primes()) {
                if (p > x) break;
                if (depths_[p] >= selector.order) ++n;
            }
            return n;
        }
    }
    return 0;
}

CountReport SubsequenceCounter::report(std::uint64_t x) const {
    CountReport rep;
    rep.x = x;
    rep.pi = count(SequenceSelector::all_primes(), x);
    rep.pi_prime = count(SequenceSelector::p_prime(), x);
    rep.pi_dprime = count(SequenceSelector::p_dprime(), x);
    rep.pi_twin_pairs = count(SequenceSelector::twin(), x);
    const auto xd = static_cast<double>(x);
    rep.d_prime_pred = density_pred(SequenceSelector::p_prime(), xd);
    rep.d_dprime_pred = density_pred(SequenceSelector::p_dprime(), xd);
    rep.g_prime_pred = gap_pred(SequenceSelector::p_prime(), xd);
    rep.g_dprime_pred = gap_pred(SequenceSelector::p_dprime(), xd);
    return rep;
}

std::uint64_t pi_subseq(SequenceSelector selector, std::uint64_t x, const SieveStore& store) {
    require_within(x, store);
    return SubsequenceCounter(store, x).count(selector, x);
}

// --- Legendre ---------------------------------------------------------------

namespace {

void require_sieving_primes(std::uint64_t r, const SieveStore& store) {
    if (r == 0) throw Error(ErrorKind::InvalidArgument, "r must be >= 1");
    if (r > store.prime_count())
        throw Error(ErrorKind::OutOfRange, "p_" + std::to_string(r) + " lies beyond sieve limit " +
                                               std::to_string(store.x_max()));
}

// Signed subset expansion: every squarefree product d of the chosen primes
// with d <= x contributes (-1)^{|S|} floor(x / d).
std::int64_t expand_subsets(std::uint64_t x, std::span<const std::uint64_t> primes,
                            std::size_t from, std::uint64_t product, int sign) {
    std::int64_t total = 0;
    for (std::size_t i = from; i < primes.size(); ++i) {
        const std::uint64_t p = primes[i];
        if (product > x / p) break;  // primes ascend, so every later product is larger too
        const std::uint64_t d = product * p;
        total += -sign * static_cast<std::int64_t>(x / d);
        total += expand_subsets(x, primes, i + 1, d, -sign);
    }
    return total;
}

// phi(n, k) for k <= kTableDepth from per-primorial lookup tables:
// phi(n, k) = (n / Q) * totient(Q) + phi(n mod Q, k), Q = p_1 ... p_k.
constexpr std::size_t kTableDepth = 6;

struct PrimorialTables {
    std::array<std::uint64_t, kTableDepth + 1> modulus{};
    std::array<std::uint64_t, kTableDepth + 1> totient{};
    std::array<std::vector<std::uint32_t>, kTableDepth + 1> prefix;

    PrimorialTables() {
        constexpr std::array<std::uint64_t, kTableDepth> small{2, 3, 5, 7, 11, 13};
        modulus[0] = 1;
        totient[0] = 1;
        prefix[0] = {0};
        for (std::size_t k = 1; k <= kTableDepth; ++k) {
            modulus[k] = modulus[k - 1] * small[k - 1];
            totient[k] = totient[k - 1] * (small[k - 1] - 1);
            auto& table = prefix[k];
            table.assign(modulus[k], 0);
            std::uint32_t run = 0;
            for (std::uint64_t n = 1; n < modulus[k]; ++n) {
                if (std::gcd(n, modulus[k]) == 1) ++run;
                table[n] = run;
            }
        }
    }

    std::uint64_t phi(std::uint64_t n, std::size_t k) const {
        return (n / modulus[k]) * totient[k] + prefix[k][n % modulus[k]];
    }
};

const PrimorialTables& primorial_tables() {
    static const PrimorialTables tables;
    return tables;
}

std::uint64_t phi_recursive(std::uint64_t x, std::size_t r, std::span<const std::uint64_t> primes,
                            const PrimorialTables& tables) {
    if (r == 0 || x <= 1) return x;
    // Sieving primes above x remove nothing.
    r = std::min<std::size_t>(
        r, static_cast<std::size_t>(std::upper_bound(primes.begin(), primes.begin() + r, x) -
                                    primes.begin()));
    if (r <= kTableDepth) return tables.phi(x, r);
    return phi_recursive(x, r - 1, primes, tables) -
           phi_recursive(x / primes[r - 1], r - 1, primes, tables);
}

}  // namespace

std::uint64_t legendre_A(std::uint64_t x, std::uint64_t r, const SieveStore& store,
                         LegendreStrategy strategy) {
    require_sieving_primes(r, store);
    if (strategy == LegendreStrategy::Auto)
        strategy = r <= kMaxDirectR ? LegendreStrategy::Direct : LegendreStrategy::Recursive;

    const auto primes = store.primes().first(r);
    if (strategy == LegendreStrategy::Direct) {
        if (r > kMaxDirectR)
            throw Error(ErrorKind::StrategyLimit,
                        "direct expansion supports r <= " + std::to_string(kMaxDirectR) +
                            ", got " + std::to_string(r) + "; use the recursive form");
        const std::int64_t value = static_cast<std::int64_t>(x) + expand_subsets(x, primes, 0, 1, 1);
        return static_cast<std::uint64_t>(value);
    }
    return phi_recursive(x, r, primes, primorial_tables());
}

LegendreTable::LegendreTable(std::uint64_t x_max, std::uint64_t r_max, const SieveStore& store)
    : x_max_(x_max), r_max_(r_max) {
    if (r_max > 0) require_sieving_primes(r_max, store);
    if (x_max > UINT32_MAX)
        throw Error(ErrorKind::OutOfRange, "legendre table supports x <= 2^32 - 1");
    const std::uint64_t width = x_max + 1;
    cells_.resize(width * (r_max + 1));
    for (std::uint64_t x = 0; x <= x_max; ++x) cells_[x] = static_cast<std::uint32_t>(x);
    const auto primes = store.primes();
    for (std::uint64_t r = 1; r <= r_max; ++r) {
        const std::uint32_t* prev = &cells_[(r - 1) * width];
        std::uint32_t* row = &cells_[r * width];
        const std::uint64_t p = primes[r - 1];
        for (std::uint64_t x = 0; x <= x_max; ++x) row[x] = prev[x] - prev[x / p];
    }
}

std::uint64_t LegendreTable::at(std::uint64_t x, std::uint64_t r) const {
    if (x > x_max_ || r > r_max_)
        throw Error(ErrorKind::OutOfRange, "A(" + std::to_string(x) + ", " + std::to_string(r) +
                                               ") lies outside the table");
    return cells_[r * (x_max_ + 1) + x];
}

double sieve_product(std::uint64_t r, const SieveStore& store) {
    require_sieving_primes(r, store);
    double product = 1.0;
    for (std::uint64_t p : store.primes().first(r)) product *= 1.0 - 1.0 / static_cast<double>(p);
    return product;
}

bool check_theorem1(std::uint64_t x, const SieveStore& store) {
    if (x < 2) throw Error(ErrorKind::Domain, "the product bound needs x >= 2");
    require_within(x, store);
    const double product = sieve_product(store.prime_pi(x), store);
    return product < 1.0 / std::log(static_cast<double>(x));
}

JkSplit jk_split(double x) {
    if (!(x > 1.0)) throw Error(ErrorKind::Domain, "j/k split needs x > 1");
    const double l = std::log(x);
    return {1.0 / (l + 1.0), l / (l + 1.0)};
}

double density_pred(SequenceSelector selector, double x) {
    if (!(x > 1.0)) throw Error(ErrorKind::Domain, "density predictions need x > 1");
    const double l = std::log(x);
    switch (selector.kind) {
        case SequenceKind::AllPrimes: return 1.0 / l;
        case SequenceKind::PPrime: return 1.0 / (l + 1.0);
        case SequenceKind::PDoublePrime: return 1.0 / (l * (l + 1.0));
        default: break;
    }
    throw Error(ErrorKind::UnsupportedCombination,
                "no density prediction for " + to_string(selector));
}

double gap_pred(SequenceSelector selector, double x) { return 1.0 / density_pred(selector, x); }

// --- Bounds -----------------------------------------------------------------

std::uint64_t derived_r(std::uint64_t x, double c) {
    if (!(c >= 1.0)) throw Error(ErrorKind::InvalidArgument, "c must be >= 1");
    const double xd = static_cast<double>(x);
    if (!(xd > std::exp(std::numbers::e)))
        throw Error(ErrorKind::Domain, "deriving r = x^m needs x > e^e");
    const double m = 1.0 / (c * std::log(std::log(xd)));
    return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::floor(std::pow(xd, m))));
}

std::uint64_t members_among_first(SequenceSelector selector, std::uint64_t r,
                                  const SieveStore& store) {
    require_sieving_primes(r, store);
    std::uint64_t n = 0;
    for (std::uint64_t p : store.primes().first(r)) {
        switch (selector.kind) {
            case SequenceKind::AllPrimes: ++n; break;
            case SequenceKind::PPrime: n += depth(p, store) % 2 == 1; break;
            case SequenceKind::PDoublePrime: n += depth(p, store) % 2 == 0; break;
            case SequenceKind::Twin:
                n += (p >= 2 && store.is_prime(p - 2)) || store.is_prime(p + 2);
                break;
            case SequenceKind::Order: n += depth(p, store) >= selector.order; break;
        }
    }
    return n;
}

double final_shape(SequenceSelector selector, double x) {
    if (!(x > std::exp(std::numbers::e)))
        throw Error(ErrorKind::Domain, "final bound forms need x > e^e");
    const double l = std::log(x);
    const double ll = std::log(l);
    switch (selector.kind) {
        case SequenceKind::PDoublePrime: return x * (ll * ll) / (l * l + ll * l);
        case SequenceKind::PPrime: return x * ll / (l + ll);
        case SequenceKind::Twin: return x * (ll * ll) / (l * l);
        default: break;
    }
    throw Error(ErrorKind::UnsupportedCombination, "no final bound form for " + to_string(selector));
}

namespace {

double pow2(std::uint64_t e) {
    if (e > static_cast<std::uint64_t>(std::numeric_limits<double>::max_exponent - 1))
        return std::numeric_limits<double>::infinity();
    return std::ldexp(1.0, static_cast<int>(e));
}

}  // namespace

double bound_eval(SequenceSelector selector, std::uint64_t x, const BoundConfig& cfg,
                  BoundForm form, const SieveStore& store) {
    if (!(cfg.C > 0.0)) throw Error(ErrorKind::InvalidArgument, "C must be positive");
    const double xd = static_cast<double>(x);
    if (form == BoundForm::Final) return cfg.C * final_shape(selector, xd);

    if (x < 2) throw Error(ErrorKind::Domain, "raw bound forms need x >= 2");
    const std::uint64_t r = cfg.r ? *cfg.r : derived_r(x, cfg.c);
    require_sieving_primes(r, store);
    const double lp = std::log(static_cast<double>(store.nth_prime(r)));
    switch (selector.kind) {
        case SequenceKind::AllPrimes:
            return static_cast<double>(r) + xd / lp + pow2(r);
        case SequenceKind::PDoublePrime: {
            const std::uint64_t rd = members_among_first(selector, r, store);
            return static_cast<double>(rd) + xd / (lp * (lp + 1.0)) + pow2(rd);
        }
        case SequenceKind::PPrime: {
            const std::uint64_t rp = members_among_first(selector, r, store);
            return static_cast<double>(rp) + xd / (lp + 1.0) + pow2(rp);
        }
        case SequenceKind::Twin: {
            const std::uint64_t r2 = members_among_first(selector, r, store);
            return static_cast<double>(r2) + cfg.C * xd / (lp * lp) + pow2(r2);
        }
        case SequenceKind::Order: break;
    }
    throw Error(ErrorKind::UnsupportedCombination, "no raw bound form for " + to_string(selector));
}

double fit_constant(SequenceSelector selector, std::span<const std::uint64_t> x_grid,
                    const SieveStore& store) {
    if (x_grid.empty()) throw Error(ErrorKind::InvalidArgument, "fit grid is empty");
    const std::uint64_t top = *std::max_element(x_grid.begin(), x_grid.end());
    require_within(top, store);
    const SubsequenceCounter counter(store, top);

    double best = 0.0;
    for (std::uint64_t x : x_grid) {
        const double shape = final_shape(selector, static_cast<double>(x));
        const auto count = static_cast<double>(counter.count(selector, x));
        double c = count / shape;
        // Step up past rounding so the evaluated bound really dominates.
        while (c * shape < count) c = std::nextafter(c, std::numeric_limits<double>::infinity());
        best = std::max(best, c);
    }
    if (!(best > 0.0))
        throw Error(ErrorKind::Domain, "every grid count is zero; no positive constant fits");
    return best;
}

}  // namespace primeseq
