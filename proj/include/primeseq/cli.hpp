#pragma once

#include "primeseq/counting.hpp"
#include "primeseq/reciprocal.hpp"
#include "primeseq/subsequence.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace primeseq::cli {

enum class Command { Gen, Count, Depth, Legendre, Bounds, Recip, Verify };
enum class Format { Csv, Json, Bfile, Table, Text };

/// Limits above this need --allow-large.
inline constexpr std::uint64_t kDefaultLimitCap = 10'000'000;

/// Default reciprocal grid: decades to 1e6, then every 1e6 up to 1e7.
inline constexpr std::string_view kReciprocalGrid = "1e2..1e6,2e6..1e7:1e6";

struct RunConfig {
    Command command = Command::Gen;
    std::optional<std::uint64_t> limit;
    std::optional<std::uint64_t> x;
    SequenceSelector selector = SequenceSelector::all_primes();
    GeneratorMethod method = GeneratorMethod::DepthParity;
    std::optional<std::uint64_t> r;
    double c = 5.0;
    double C = 1.0;
    std::vector<std::uint64_t> grid;
    std::vector<std::uint64_t> fit_grid;
    BoundForm form = BoundForm::Final;
    LegendreStrategy strategy = LegendreStrategy::Auto;
    Format format = Format::Csv;
    /// Empty means all three conventions.
    std::vector<TwinConvention> twin_conventions{TwinConvention::PairBothMembers};
    bool allow_large = false;
    unsigned threads = 0;
};

/// Parses "1000", "1e6", "10E6" (= 1e7) exactly. Throws InvalidArgument.
std::uint64_t parse_natural(std::string_view text);

/// Comma-joined pieces, each a natural, a decade range "1e2..1e6", or a
/// linear range "2e6..1e7:1e6". Throws InvalidArgument.
std::vector<std::uint64_t> parse_grid(std::string_view text);

/// Shortest decimal that round-trips to the same double.
std::string format_double(double value);

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Thrown by parse_args for --help; what() is the help text.
struct HelpRequested : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Argument vector without the program name. Throws UsageError for unknown
/// commands or flags, missing required flags, or limits above the cap.
RunConfig parse_args(std::span<const std::string> args);

/// Runs one configured command. Returns the process exit status: 0 on
/// success, 1 when an inner module fails or `verify` finds a failing check.
int execute(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_args + execute; usage errors exit 2, help exits 0. Errors are one
/// JSON line on err: {"error": kind, "message": text}.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace primeseq::cli
