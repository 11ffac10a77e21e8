#include "primeseq/reciprocal.hpp"

#include "primeseq/error.hpp"

#include <algorithm>
#include <cmath>

namespace primeseq {

TwinConvention parse_twin_convention(std::string_view text) {
    if (text == "pair") return TwinConvention::PairBothMembers;
    if (text == "distinct") return TwinConvention::DistinctMembers;
    if (text == "lesser") return TwinConvention::LesserOnly;
    throw Error(ErrorKind::InvalidArgument, "unknown twin convention '" + std::string(text) + "'");
}

std::string_view to_string(TwinConvention convention) noexcept {
    switch (convention) {
        case TwinConvention::PairBothMembers: return "pair";
        case TwinConvention::DistinctMembers: return "distinct";
        case TwinConvention::LesserOnly: return "lesser";
    }
    return "unknown";
}

void CompensatedSum::add(double term) noexcept {
    const double t = sum_ + term;
    if (std::abs(sum_) >= std::abs(term))
        compensation_ += (sum_ - t) + term;
    else
        compensation_ += (term - t) + sum_;
    sum_ = t;
}

double pairwise_sum(std::span<const double> terms) noexcept {
    if (terms.size() <= 8) {
        double s = 0.0;
        for (double t : terms) s += t;
        return s;
    }
    const std::size_t half = terms.size() / 2;
    return pairwise_sum(terms.first(half)) + pairwise_sum(terms.subspan(half));
}

namespace {

struct Entry {
    std::uint64_t enters_at;
    double term;
};

std::vector<Entry> entries(SequenceSelector selector, std::uint64_t x, TwinConvention convention,
                           const SieveStore& store) {
    if (x > store.x_max())
        throw Error(ErrorKind::OutOfRange, std::to_string(x) + " exceeds sieve limit " +
                                               std::to_string(store.x_max()));
    std::vector<Entry> out;
    if (selector.kind != SequenceKind::Twin) {
        for (std::uint64_t p : generate(selector, GeneratorMethod::DepthParity, x, store))
            out.push_back({p, 1.0 / static_cast<double>(p)});
        return out;
    }
    std::uint64_t last_upper = 0;
    for (std::uint64_t p : store.primes()) {
        if (p + 2 > x) break;
        if (!store.is_prime(p + 2)) continue;
        const double lesser = 1.0 / static_cast<double>(p);
        const double upper = 1.0 / static_cast<double>(p + 2);
        switch (convention) {
            case TwinConvention::PairBothMembers:
                out.push_back({p + 2, lesser});
                out.push_back({p + 2, upper});
                break;
            case TwinConvention::DistinctMembers:
                if (last_upper != p) out.push_back({p + 2, lesser});
                out.push_back({p + 2, upper});
                break;
            case TwinConvention::LesserOnly:
                out.push_back({p + 2, lesser});
                break;
        }
        last_upper = p + 2;
    }
    return out;
}

}  // namespace

std::vector<double> reciprocal_terms(SequenceSelector selector, std::uint64_t x,
                                     TwinConvention convention, const SieveStore& store) {
    std::vector<double> terms;
    for (const Entry& e : entries(selector, x, convention, store)) terms.push_back(e.term);
    return terms;
}

double reciprocal_sum(SequenceSelector selector, std::uint64_t x, TwinConvention convention,
                      const SieveStore& store) {
    CompensatedSum sum;
    for (const Entry& e : entries(selector, x, convention, store)) sum.add(e.term);
    return sum.value();
}

std::vector<ReciprocalRow> table3(std::span<const std::uint64_t> grid, TwinConvention convention,
                                  const SieveStore& store) {
    if (grid.empty()) throw Error(ErrorKind::InvalidArgument, "reciprocal grid is empty");
    if (!std::is_sorted(grid.begin(), grid.end()))
        throw Error(ErrorKind::InvalidArgument, "reciprocal grid must be ascending");

    const std::uint64_t top = grid.back();
    const auto dprime = entries(SequenceSelector::p_dprime(), top, convention, store);
    const auto twin = entries(SequenceSelector::twin(), top, convention, store);

    std::vector<ReciprocalRow> rows;
    rows.reserve(grid.size());
    CompensatedSum sum_dprime;
    CompensatedSum sum_twin;
    std::size_t i = 0;
    std::size_t j = 0;
    for (std::uint64_t x : grid) {
        for (; i < dprime.size() && dprime[i].enters_at <= x; ++i) sum_dprime.add(dprime[i].term);
        for (; j < twin.size() && twin[j].enters_at <= x; ++j) sum_twin.add(twin[j].term);
        rows.push_back({x, sum_dprime.value(), sum_twin.value(), convention});
    }
    return rows;
}

}  // namespace primeseq
