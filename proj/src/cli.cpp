#include "primeseq/cli.hpp"

#include "primeseq/error.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace primeseq::cli {

using nlohmann::json;

// --- Argument syntax ---------------------------------------------------------

std::uint64_t parse_natural(std::string_view text) {
    auto fail = [&]() -> std::uint64_t {
        throw Error(ErrorKind::InvalidArgument, "not a natural number: '" + std::string(text) + "'");
    };
    const std::size_t e_pos = text.find_first_of("eE");
    const std::string_view mantissa = text.substr(0, e_pos);
    std::int64_t exponent = 0;
    if (e_pos != std::string_view::npos) {
        const std::string_view exp_text = text.substr(e_pos + 1);
        auto [ptr, ec] = std::from_chars(exp_text.data(), exp_text.data() + exp_text.size(), exponent);
        if (exp_text.empty() || ec != std::errc{} || ptr != exp_text.data() + exp_text.size())
            return fail();
    }
    std::uint64_t digits = 0;
    std::int64_t fraction_digits = 0;
    bool seen_point = false;
    bool any_digit = false;
    for (char ch : mantissa) {
        if (ch == '.' && !seen_point) {
            seen_point = true;
            continue;
        }
        if (ch < '0' || ch > '9') return fail();
        if (digits > (UINT64_MAX - 9) / 10) return fail();
        digits = digits * 10 + static_cast<std::uint64_t>(ch - '0');
        fraction_digits += seen_point;
        any_digit = true;
    }
    if (!any_digit) return fail();
    for (exponent -= fraction_digits; exponent > 0; --exponent) {
        if (digits > UINT64_MAX / 10) return fail();
        digits *= 10;
    }
    for (; exponent < 0; ++exponent) {
        if (digits % 10 != 0) return fail();
        digits /= 10;
    }
    return digits;
}

std::vector<std::uint64_t> parse_grid(std::string_view text) {
    std::vector<std::uint64_t> grid;
    if (text.empty()) throw Error(ErrorKind::InvalidArgument, "empty grid");
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t comma = std::min(text.find(',', start), text.size());
        const std::string_view piece = text.substr(start, comma - start);
        const std::size_t dots = piece.find("..");
        if (dots == std::string_view::npos) {
            grid.push_back(parse_natural(piece));
        } else {
            const std::uint64_t lo = parse_natural(piece.substr(0, dots));
            std::string_view rest = piece.substr(dots + 2);
            const std::size_t colon = rest.find(':');
            const std::uint64_t hi = parse_natural(rest.substr(0, colon));
            if (lo == 0 || hi < lo)
                throw Error(ErrorKind::InvalidArgument, "bad grid range '" + std::string(piece) + "'");
            if (colon == std::string_view::npos) {
                for (std::uint64_t v = lo; v <= hi; v *= 10) {
                    grid.push_back(v);
                    if (v > hi / 10) break;
                }
            } else {
                const std::uint64_t step = parse_natural(rest.substr(colon + 1));
                if (step == 0) throw Error(ErrorKind::InvalidArgument, "grid step must be positive");
                for (std::uint64_t v = lo; v <= hi; v += step) {
                    grid.push_back(v);
                    if (hi - v < step) break;
                }
            }
        }
        start = comma + 1;
    }
    return grid;
}

std::string format_double(double value) {
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, ptr);
}

// --- Parsing -----------------------------------------------------------------

namespace {

Format parse_format(const std::string& text) {
    if (text == "csv") return Format::Csv;
    if (text == "json") return Format::Json;
    if (text == "bfile") return Format::Bfile;
    if (text == "table") return Format::Table;
    if (text == "text") return Format::Text;
    throw UsageError("unknown format '" + text + "'");
}

const char* format_name(Format f) {
    switch (f) {
        case Format::Csv: return "csv";
        case Format::Json: return "json";
        case Format::Bfile: return "bfile";
        case Format::Table: return "table";
        case Format::Text: return "text";
    }
    return "?";
}

std::uint64_t largest_requested(const RunConfig& cfg) {
    std::uint64_t top = std::max(cfg.limit.value_or(0), cfg.x.value_or(0));
    for (std::uint64_t v : cfg.grid) top = std::max(top, v);
    for (std::uint64_t v : cfg.fit_grid) top = std::max(top, v);
    return top;
}

}  // namespace

RunConfig parse_args(std::span<const std::string> args) {
    CLI::App app{"Prime subsequences P', P'', superprimes and twins: generation, counting, "
                 "bounds and reciprocal sums.",
                 "primeseq"};
    app.require_subcommand(1, 1);
    app.fallthrough();

    RunConfig cfg;
    std::string selector_text, method_text, format_text, grid_text, fit_grid_text;
    std::string form_text = "final", strategy_text = "auto", convention_text = "pair";
    std::string limit_text, x_text, r_text;

    app.add_option("--format", format_text, "csv | json | bfile | table | text");
    app.add_flag("--allow-large", cfg.allow_large, "permit limits above 1e7");
    app.add_option("--threads", cfg.threads, "sieve worker threads (0 = hardware)");

    auto* gen = app.add_subcommand("gen", "generate a sequence up to a limit");
    gen->add_option("--selector", selector_text, "all | p-prime | p-dprime | twin | order:K")->required();
    gen->add_option("--method", method_text, "depth-parity | index-sieve | prime-indexing");
    gen->add_option("--limit", limit_text, "largest term")->required();

    auto* count = app.add_subcommand("count", "exact counts and density predictions");
    count->add_option("--grid", grid_text, "x values, e.g. 1e2..1e6 or 10,100,1000");
    count->add_option("--x", x_text, "single x");

    auto* dep = app.add_subcommand("depth", "prime-iteration depth of n, or of every n <= limit");
    dep->add_option("--x", x_text, "single value");
    dep->add_option("--limit", limit_text, "list depths for 1..limit");

    auto* leg = app.add_subcommand("legendre", "inclusion-exclusion count A(x, r)");
    leg->add_option("--x", x_text, "upper end of the counted range")->required();
    leg->add_option("--r", r_text, "number of sieving primes")->required();
    leg->add_option("--strategy", strategy_text, "auto | direct | recursive");

    auto* bnd = app.add_subcommand("bounds", "evaluate count bounds against exact counts");
    bnd->add_option("--selector", selector_text, "all | p-prime | p-dprime | twin")->required();
    bnd->add_option("--grid", grid_text, "x values")->required();
    bnd->add_option("--form", form_text, "raw | final");
    bnd->add_option("--r", r_text, "sieving primes; derived from c when omitted");
    bnd->add_option("--c", cfg.c, "exponent constant in r = x^m, m = 1/(c ln ln x)");
    bnd->add_option("--C", cfg.C, "leading constant");
    bnd->add_option("--fit-grid", fit_grid_text, "fit the smallest dominating C on this grid");

    auto* rec = app.add_subcommand("recip", "reciprocal sums over P'' and the twin primes");
    rec->add_option("--grid", grid_text, "ascending x values");
    rec->add_option("--twin-convention", convention_text, "pair | distinct | lesser | all");

    auto* ver = app.add_subcommand("verify", "cross-method, partition and product-bound checks");
    ver->add_option("--limit", limit_text, "largest checked value");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        throw HelpRequested(app.help());
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }

    try {
        if (!limit_text.empty()) cfg.limit = parse_natural(limit_text);
        if (!x_text.empty()) cfg.x = parse_natural(x_text);
        if (!r_text.empty()) cfg.r = parse_natural(r_text);
        if (!grid_text.empty()) cfg.grid = parse_grid(grid_text);
        if (!fit_grid_text.empty()) cfg.fit_grid = parse_grid(fit_grid_text);
        if (!selector_text.empty()) cfg.selector = parse_selector(selector_text);
        if (!method_text.empty()) cfg.method = parse_method(method_text);
        if (convention_text == "all")
            cfg.twin_conventions.assign(std::begin(kAllTwinConventions), std::end(kAllTwinConventions));
        else
            cfg.twin_conventions = {parse_twin_convention(convention_text)};
    } catch (const Error& e) {
        throw UsageError(e.what());
    }

    if (form_text == "raw") cfg.form = BoundForm::Raw;
    else if (form_text == "final") cfg.form = BoundForm::Final;
    else throw UsageError("unknown bound form '" + form_text + "'");

    if (strategy_text == "auto") cfg.strategy = LegendreStrategy::Auto;
    else if (strategy_text == "direct") cfg.strategy = LegendreStrategy::Direct;
    else if (strategy_text == "recursive") cfg.strategy = LegendreStrategy::Recursive;
    else throw UsageError("unknown strategy '" + strategy_text + "'");

    std::vector<Format> allowed;
    Format fallback = Format::Csv;
    if (gen->parsed()) {
        cfg.command = Command::Gen;
        allowed = {Format::Bfile, Format::Csv, Format::Json};
        fallback = Format::Bfile;
    } else if (count->parsed()) {
        cfg.command = Command::Count;
        if (cfg.x) cfg.grid.push_back(*cfg.x);
        if (cfg.grid.empty()) throw UsageError("count needs --grid or --x");
        allowed = {Format::Csv, Format::Json};
    } else if (dep->parsed()) {
        cfg.command = Command::Depth;
        if (!cfg.x && !cfg.limit) throw UsageError("depth needs --x or --limit");
        allowed = {Format::Csv, Format::Json};
    } else if (leg->parsed()) {
        cfg.command = Command::Legendre;
        allowed = {Format::Csv, Format::Json};
    } else if (bnd->parsed()) {
        cfg.command = Command::Bounds;
        allowed = {Format::Csv, Format::Json};
    } else if (rec->parsed()) {
        cfg.command = Command::Recip;
        if (cfg.grid.empty()) cfg.grid = parse_grid(kReciprocalGrid);
        allowed = {Format::Csv, Format::Json, Format::Table};
    } else {
        cfg.command = Command::Verify;
        if (!cfg.limit) cfg.limit = 1'000'000;
        allowed = {Format::Text, Format::Json};
        fallback = Format::Text;
    }
    cfg.format = format_text.empty() ? fallback : parse_format(format_text);
    if (std::find(allowed.begin(), allowed.end(), cfg.format) == allowed.end())
        throw UsageError(std::string("format ") + format_name(cfg.format) +
                         " is not available for this command");

    if (largest_requested(cfg) > kDefaultLimitCap && !cfg.allow_large)
        throw UsageError("values above 1e7 need --allow-large");
    return cfg;
}

// --- Execution ---------------------------------------------------------------

namespace {

constexpr std::string_view kTwinNote =
    "twin sums use the stated convention; the published twin column (1.28989 at x=100) matches "
    "none of pair (Brun, 1.330990), distinct (1.130990) or lesser (0.772973)";

SieveStore store_for(const RunConfig& cfg) {
    SieveOptions options;
    options.threads = cfg.threads;
    return build_sieve(std::max<std::uint64_t>(largest_requested(cfg) + 2, 16), options);
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::string optional_cell(const std::optional<double>& v) { return v ? format_double(*v) : ""; }

int run_gen(const RunConfig& cfg, std::ostream& out) {
    const SieveStore store = store_for(cfg);
    const auto terms = generate(cfg.selector, cfg.method, *cfg.limit, store);
    switch (cfg.format) {
        case Format::Bfile: write_bfile(out, terms); break;
        case Format::Csv:
            out << "index,value\n";
            for (std::size_t i = 0; i < terms.size(); ++i) out << (i + 1) << ',' << terms[i] << '\n';
            break;
        default:
            out << json{{"selector", to_string(cfg.selector)},
                        {"method", to_string(cfg.method)},
                        {"limit", *cfg.limit},
                        {"terms", terms}}
                       .dump()
                << '\n';
    }
    return 0;
}

struct BoundRow {
    CountReport report;
    std::optional<double> bound;
    std::optional<double> C;
};

void write_bound_rows(const std::vector<BoundRow>& rows, Format format, std::ostream& out) {
    if (format == Format::Json) {
        json arr = json::array();
        for (const auto& row : rows) {
            const CountReport& r = row.report;
            arr.push_back({{"x", r.x},
                           {"pi", r.pi},
                           {"pi_prime", r.pi_prime},
                           {"pi_dprime", r.pi_dprime},
                           {"pi_twin_pairs", r.pi_twin_pairs},
                           {"d_prime_pred", r.d_prime_pred},
                           {"d_dprime_pred", r.d_dprime_pred},
                           {"bound_value", optional_number(row.bound)},
                           {"C_used", optional_number(row.C)}});
        }
        out << json{{"rows", arr}}.dump() << '\n';
        return;
    }
    out << "x,pi,pi_prime,pi_dprime,pi_twin_pairs,d_prime_pred,d_dprime_pred,bound_value,C_used\n";
    for (const auto& row : rows) {
        const CountReport& r = row.report;
        out << r.x << ',' << r.pi << ',' << r.pi_prime << ',' << r.pi_dprime << ','
            << r.pi_twin_pairs << ',' << format_double(r.d_prime_pred) << ','
            << format_double(r.d_dprime_pred) << ',' << optional_cell(row.bound) << ','
            << optional_cell(row.C) << '\n';
    }
}

int run_count(const RunConfig& cfg, std::ostream& out) {
    const SieveStore store = store_for(cfg);
    const SubsequenceCounter counter(store, largest_requested(cfg));
    std::vector<BoundRow> rows;
    for (std::uint64_t x : cfg.grid) rows.push_back({counter.report(x), std::nullopt, std::nullopt});
    write_bound_rows(rows, cfg.format, out);
    return 0;
}

int run_bounds(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const SieveStore store = store_for(cfg);
    const SubsequenceCounter counter(store, largest_requested(cfg));
    BoundConfig bc;
    bc.r = cfg.r;
    bc.c = cfg.c;
    bc.C = cfg.C;
    if (!cfg.fit_grid.empty()) {
        bc.C = fit_constant(cfg.selector, cfg.fit_grid, store);
        err << "fitted C = " << format_double(bc.C) << " on " << cfg.fit_grid.size()
            << " grid points\n";
    }
    const bool uses_C = cfg.form == BoundForm::Final || cfg.selector.kind == SequenceKind::Twin;
    std::vector<BoundRow> rows;
    for (std::uint64_t x : cfg.grid) {
        const double bound = bound_eval(cfg.selector, x, bc, cfg.form, store);
        rows.push_back({counter.report(x), bound, uses_C ? std::optional<double>(bc.C) : std::nullopt});
    }
    write_bound_rows(rows, cfg.format, out);
    return 0;
}

int run_depth(const RunConfig& cfg, std::ostream& out) {
    const SieveStore store = store_for(cfg);
    std::vector<DepthRecord> records;
    if (cfg.x) {
        records.push_back({*cfg.x, depth(*cfg.x, store)});
    } else {
        const DepthTable table(store, *cfg.limit);
        for (std::uint64_t n = 1; n <= *cfg.limit; ++n) records.push_back(table.record(n));
    }
    if (cfg.format == Format::Json) {
        json arr = json::array();
        for (const auto& r : records) arr.push_back({{"value", r.value}, {"depth", r.depth}});
        out << json{{"records", arr}}.dump() << '\n';
    } else {
        out << "value,depth\n";
        for (const auto& r : records) out << r.value << ',' << r.depth << '\n';
    }
    return 0;
}

int run_legendre(const RunConfig& cfg, std::ostream& out) {
    const SieveStore store = store_for(cfg);
    const std::uint64_t x = *cfg.x;
    const std::uint64_t r = *cfg.r;
    const std::uint64_t a = legendre_A(x, r, store, cfg.strategy);
    const std::uint64_t pi = store.prime_pi(x);
    const bool holds = pi <= r + a;
    if (cfg.format == Format::Json) {
        out << json{{"x", x}, {"r", r}, {"legendre_A", a}, {"pi", pi}, {"pi_le_r_plus_A", holds}}.dump()
            << '\n';
    } else {
        out << "x,r,legendre_A,pi,pi_le_r_plus_A\n"
            << x << ',' << r << ',' << a << ',' << pi << ',' << (holds ? "true" : "false") << '\n';
    }
    return 0;
}

int run_recip(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const SieveStore store = store_for(cfg);
    std::vector<ReciprocalRow> rows;
    for (TwinConvention c : cfg.twin_conventions) {
        auto part = table3(cfg.grid, c, store);
        rows.insert(rows.end(), part.begin(), part.end());
    }
    switch (cfg.format) {
        case Format::Json: {
            json arr = json::array();
            for (const auto& r : rows)
                arr.push_back({{"x", r.x},
                               {"sum_p_dprime", r.sum_dprime},
                               {"sum_twin", r.sum_twin},
                               {"twin_convention", to_string(r.twin_convention)}});
            out << json{{"rows", arr}, {"note", kTwinNote}}.dump() << '\n';
            return 0;
        }
        case Format::Table: {
            char line[128];
            std::snprintf(line, sizeof line, "%12s  %12s  %12s  %s\n", "x", "sum_p_dprime",
                          "sum_twin", "twin_convention");
            out << line;
            for (const auto& r : rows) {
                std::snprintf(line, sizeof line, "%12llu  %12.6f  %#12.6g  %s\n",
                              static_cast<unsigned long long>(r.x), r.sum_dprime, r.sum_twin,
                              std::string(to_string(r.twin_convention)).c_str());
                out << line;
            }
            break;
        }
        default:
            out << "x,sum_p_dprime,sum_twin,twin_convention\n";
            for (const auto& r : rows)
                out << r.x << ',' << format_double(r.sum_dprime) << ',' << format_double(r.sum_twin)
                    << ',' << to_string(r.twin_convention) << '\n';
    }
    err << "note: " << kTwinNote << '\n';
    return 0;
}

int run_verify(const RunConfig& cfg, std::ostream& out) {
    const SieveStore store = store_for(cfg);
    const std::uint64_t limit = *cfg.limit;
    const bool partition = verify_partition(limit, store);
    const bool agree = methods_agree(limit, store);
    bool theorem1 = limit < 2 || check_theorem1(limit, store);
    if (limit >= 2) {
        const double span = std::log(static_cast<double>(limit) / 2.0);
        for (int i = 0; i < 100 && theorem1; ++i) {
            const auto x = static_cast<std::uint64_t>(std::llround(2.0 * std::exp(span * i / 99.0)));
            theorem1 = check_theorem1(std::clamp<std::uint64_t>(x, 2, limit), store);
        }
    }
    const bool ok = partition && agree && theorem1;
    if (cfg.format == Format::Json) {
        out << json{{"limit", limit},
                    {"partition", partition},
                    {"methods_agree", agree},
                    {"theorem1", theorem1},
                    {"ok", ok}}
                   .dump()
            << '\n';
    } else {
        out << (partition ? "partition ok" : "partition FAILED") << ", "
            << (agree ? "methods agree" : "methods DISAGREE") << ", "
            << (theorem1 ? "theorem1 ok" : "theorem1 FAILED") << '\n';
    }
    return ok ? 0 : 1;
}

void error_line(std::ostream& err, std::string_view kind, std::string_view message) {
    err << json{{"error", kind}, {"message", message}}.dump() << '\n';
}

}  // namespace

int execute(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        switch (cfg.command) {
            case Command::Gen: return run_gen(cfg, out);
            case Command::Count: return run_count(cfg, out);
            case Command::Depth: return run_depth(cfg, out);
            case Command::Legendre: return run_legendre(cfg, out);
            case Command::Bounds: return run_bounds(cfg, out, err);
            case Command::Recip: return run_recip(cfg, out, err);
            case Command::Verify: return run_verify(cfg, out);
        }
    } catch (const Error& e) {
        error_line(err, to_string(e.kind()), e.what());
        return 1;
    }
    return 1;
}

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    try {
        cfg = parse_args(args);
    } catch (const HelpRequested& help) {
        out << help.what();
        return 0;
    } catch (const UsageError& e) {
        error_line(err, "usage", e.what());
        return 2;
    }
    return execute(cfg, out, err);
}

}  // namespace primeseq::cli
