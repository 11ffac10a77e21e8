#pragma once

#include "primeseq/prime_engine.hpp"
#include "primeseq/subsequence.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace primeseq {

/// How twin-prime reciprocals are accumulated over the pairs (p, p+2) with
/// p+2 <= x.
enum class TwinConvention {
    PairBothMembers,  // 1/p + 1/(p+2) per pair; 5 counts twice (Brun)
    DistinctMembers,  // each member of a completed pair once
    LesserOnly,       // 1/p per pair
};

inline constexpr TwinConvention kAllTwinConventions[] = {
    TwinConvention::PairBothMembers, TwinConvention::DistinctMembers, TwinConvention::LesserOnly};

/// CLI spellings: pair, distinct, lesser.
TwinConvention parse_twin_convention(std::string_view text);
std::string_view to_string(TwinConvention convention) noexcept;

/// Neumaier's variant of Kahan summation.
class CompensatedSum {
public:
    void add(double term) noexcept;
    double value() const noexcept { return sum_ + compensation_; }

private:
    double sum_ = 0.0;
    double compensation_ = 0.0;
};

/// Recursive halving sum; an independent summation order for cross-checks.
double pairwise_sum(std::span<const double> terms) noexcept;

/// Reciprocal terms entering each sum, in ascending order of the x at which
/// they enter. For twins a pair enters at p+2.
std::vector<double> reciprocal_terms(SequenceSelector selector, std::uint64_t x,
                                     TwinConvention convention, const SieveStore& store);

/// Compensated sum of reciprocals of the members <= x. The convention only
/// matters for Twin.
double reciprocal_sum(SequenceSelector selector, std::uint64_t x, TwinConvention convention,
                      const SieveStore& store);

struct ReciprocalRow {
    std::uint64_t x = 0;
    double sum_dprime = 0.0;
    double sum_twin = 0.0;
    TwinConvention twin_convention = TwinConvention::PairBothMembers;
};

/// One row per grid point, each extending the running sums of the previous
/// row. Throws InvalidArgument for an empty or descending grid.
std::vector<ReciprocalRow> table3(std::span<const std::uint64_t> grid, TwinConvention convention,
                                  const SieveStore& store);

}  // namespace primeseq
