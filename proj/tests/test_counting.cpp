#include "oracles.hpp"

#include "primeseq/counting.hpp"
#include "primeseq/error.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace primeseq;

namespace {

const SieveStore& store() {
    static const SieveStore s = build_sieve(1'000'002);
    return s;
}

ErrorKind kind_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an error");
    return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("pi_subseq spot values") {
    CHECK(pi_subseq(SequenceSelector::p_dprime(), 100, store()) == 6);
    CHECK(pi_subseq(SequenceSelector::p_prime(), 100, store()) == 19);
    CHECK(pi_subseq(SequenceSelector::all_primes(), 100, store()) == 25);
    CHECK(pi_subseq(SequenceSelector::twin(), 100, store()) == oracle::twin_lesser(100).size());
    CHECK(pi_subseq(SequenceSelector::twin(), 100, store()) == 8);
    CHECK(pi_subseq(SequenceSelector::twin(), 4, store()) == 0);
    CHECK(pi_subseq(SequenceSelector::twin(), 5, store()) == 1);
    CHECK(pi_subseq(SequenceSelector::superprime(3), 60, store()) == 4);
    CHECK(kind_of([] { (void)pi_subseq(SequenceSelector::p_prime(), 2'000'000, store()); }) ==
          ErrorKind::OutOfRange);
}

TEST_CASE("count report") {
    const SubsequenceCounter counter(store(), 1000);
    const CountReport r = counter.report(100);
    CHECK(r.pi == 25);
    CHECK(r.pi_prime + r.pi_dprime == r.pi);
    CHECK(r.pi_twin_pairs == 8);
    CHECK(r.g_prime_pred == doctest::Approx(1.0 / r.d_prime_pred).epsilon(1e-15));
    CHECK(r.g_dprime_pred == doctest::Approx(1.0 / r.d_dprime_pred).epsilon(1e-15));
    for (std::uint64_t x = 3; x <= 1000; ++x) {
        const CountReport q = counter.report(x);
        REQUIRE(q.d_prime_pred > 0.0);
        REQUIRE(q.d_prime_pred < 1.0);
        REQUIRE(q.d_dprime_pred > 0.0);
        REQUIRE(q.d_dprime_pred < 1.0);
    }
}

TEST_CASE("legendre spot values") {
    CHECK(legendre_A(10, 1, store()) == 5);
    CHECK(legendre_A(30, 3, store()) == 8);
    CHECK(legendre_A(100, 4, store()) == 22);
    for (auto s : {LegendreStrategy::Direct, LegendreStrategy::Recursive}) {
        CHECK(legendre_A(10, 1, store(), s) == 5);
        CHECK(legendre_A(30, 3, store(), s) == 8);
        CHECK(legendre_A(100, 4, store(), s) == 22);
    }
    CHECK(legendre_A(0, 3, store()) == 0);
    CHECK(legendre_A(1, 3, store()) == 1);
}

TEST_CASE("legendre routes against brute-force coprime counting") {
    const auto primes = oracle::primes_upto(100);
    for (std::uint64_t x = 0; x <= 2000; x += 7) {
        for (std::size_t r = 1; r <= 10; ++r) {
            const std::uint64_t expected = oracle::coprime_count(x, primes, r);
            REQUIRE(legendre_A(x, r, store(), LegendreStrategy::Direct) == expected);
            REQUIRE(legendre_A(x, r, store(), LegendreStrategy::Recursive) == expected);
        }
    }
}

TEST_CASE("legendre strategy pinning") {
    CHECK(kind_of([] { (void)legendre_A(1000, 21, store(), LegendreStrategy::Direct); }) ==
          ErrorKind::StrategyLimit);
    CHECK(legendre_A(1000, 21, store(), LegendreStrategy::Auto) ==
          legendre_A(1000, 21, store(), LegendreStrategy::Recursive));
    CHECK(legendre_A(1000, 20, store(), LegendreStrategy::Direct) ==
          legendre_A(1000, 20, store(), LegendreStrategy::Recursive));
    CHECK(kind_of([] { (void)legendre_A(10, 0, store()); }) == ErrorKind::InvalidArgument);
    CHECK(kind_of([] { (void)legendre_A(10, 100'000, store()); }) == ErrorKind::OutOfRange);
}

TEST_CASE("legendre table matches both routes") {
    const LegendreTable table(5000, 30, store());
    for (std::uint64_t x = 0; x <= 5000; x += 13)
        for (std::uint64_t r = 1; r <= 30; ++r) {
            REQUIRE(table.at(x, r) == legendre_A(x, r, store(), LegendreStrategy::Recursive));
            if (r <= kMaxDirectR)
                REQUIRE(table.at(x, r) == legendre_A(x, r, store(), LegendreStrategy::Direct));
        }
    CHECK(table.at(77, 0) == 77);
    CHECK(kind_of([&] { (void)table.at(5001, 1); }) == ErrorKind::OutOfRange);
}

TEST_CASE("sieve product") {
    CHECK(sieve_product(1, store()) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(sieve_product(2, store()) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(sieve_product(4, store()) == doctest::Approx(48.0 / 210.0).epsilon(1e-15));
    double prev = 1.0;
    for (std::uint64_t r = 1; r <= 2000; ++r) {
        const double v = sieve_product(r, store());
        REQUIRE(v < prev);
        REQUIRE(v > 0.0);
        prev = v;
    }
}

TEST_CASE("theorem 1 product bound") {
    CHECK(check_theorem1(2, store()));
    CHECK(check_theorem1(10, store()));
    CHECK(check_theorem1(1'000'000, store()));
    CHECK(kind_of([] { (void)check_theorem1(1, store()); }) == ErrorKind::Domain);
}

TEST_CASE("j/k split") {
    const auto e = jk_split(std::numbers::e);
    CHECK(e.j == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(e.k == doctest::Approx(0.5).epsilon(1e-15));
    const auto e2 = jk_split(std::exp(2.0));
    CHECK(e2.j == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(e2.k == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    const auto m = jk_split(1e6);
    CHECK(std::abs(m.j + m.k - 1.0) <= 1e-12);
    CHECK(kind_of([] { (void)jk_split(1.0); }) == ErrorKind::Domain);
    CHECK(kind_of([] { (void)jk_split(0.5); }) == ErrorKind::Domain);

    // The j, k weights split 1/ln x exactly: (1/ln x)(j + k) = 1/ln x.
    for (double x : {1.5, 10.0, 1e3, 1e9}) {
        const auto s = jk_split(x);
        CHECK(std::abs((s.j + s.k) / std::log(x) - 1.0 / std::log(x)) <= 1e-12 / std::log(x));
    }
}

TEST_CASE("density predictions") {
    CHECK(density_pred(SequenceSelector::p_prime(), std::numbers::e) == doctest::Approx(0.5));
    CHECK(density_pred(SequenceSelector::p_dprime(), std::numbers::e) == doctest::Approx(0.5));
    const double l = std::log(1e6);
    CHECK(density_pred(SequenceSelector::p_prime(), 1e6) == doctest::Approx(1.0 / (l + 1.0)));
    CHECK(density_pred(SequenceSelector::p_prime(), 1e6) == doctest::Approx(0.06750).epsilon(1e-4));
    CHECK(gap_pred(SequenceSelector::p_dprime(), 1e6) == doctest::Approx(l * (l + 1.0)));
    CHECK(kind_of([] { (void)density_pred(SequenceSelector::twin(), 100.0); }) ==
          ErrorKind::UnsupportedCombination);
    CHECK(kind_of([] { (void)density_pred(SequenceSelector::p_prime(), 1.0); }) == ErrorKind::Domain);
}

TEST_CASE("bound evaluation") {
    BoundConfig cfg;
    cfg.r = 4;
    const double raw = bound_eval(SequenceSelector::all_primes(), 100, cfg, BoundForm::Raw, store());
    CHECK(raw == doctest::Approx(4.0 + 100.0 / std::log(7.0) + 16.0).epsilon(1e-14));
    CHECK(raw == doctest::Approx(71.39).epsilon(1e-4));
    CHECK(25.0 <= raw);

    const double l = std::log(1e6);
    const double ll = std::log(l);
    BoundConfig unit;
    const double dprime = bound_eval(SequenceSelector::p_dprime(), 1'000'000, unit, BoundForm::Final, store());
    CHECK(dprime == doctest::Approx(1e6 * ll * ll / (l * l + ll * l)).epsilon(1e-14));
    CHECK(dprime == doctest::Approx(3.04e4).epsilon(1e-2));
    const double twin = bound_eval(SequenceSelector::twin(), 1'000'000, unit, BoundForm::Final, store());
    CHECK(twin == doctest::Approx(3.61e4).epsilon(1e-2));
    const double pp = bound_eval(SequenceSelector::p_prime(), 1'000'000, unit, BoundForm::Final, store());
    CHECK(pp == doctest::Approx(1e6 * ll / (l + ll)).epsilon(1e-14));

    // Raw forms with exact r', r'', r2 from the store.
    cfg.r = 5;  // first five primes 2 3 5 7 11: P' {2,5,7}, P'' {3,11}, twins {3,5,7,11}
    CHECK(members_among_first(SequenceSelector::p_prime(), 5, store()) == 3);
    CHECK(members_among_first(SequenceSelector::p_dprime(), 5, store()) == 2);
    CHECK(members_among_first(SequenceSelector::twin(), 5, store()) == 4);
    const double lp = std::log(11.0);
    CHECK(bound_eval(SequenceSelector::p_dprime(), 1000, cfg, BoundForm::Raw, store()) ==
          doctest::Approx(2.0 + 1000.0 / (lp * (lp + 1.0)) + 4.0).epsilon(1e-14));
    CHECK(bound_eval(SequenceSelector::p_prime(), 1000, cfg, BoundForm::Raw, store()) ==
          doctest::Approx(3.0 + 1000.0 / (lp + 1.0) + 8.0).epsilon(1e-14));
    cfg.C = 1.5;
    CHECK(bound_eval(SequenceSelector::twin(), 1000, cfg, BoundForm::Raw, store()) ==
          doctest::Approx(4.0 + 1.5 * 1000.0 / (lp * lp) + 16.0).epsilon(1e-14));
}

TEST_CASE("bound domain and overflow handling") {
    BoundConfig cfg;
    CHECK(kind_of([&] { (void)bound_eval(SequenceSelector::p_dprime(), 15, cfg, BoundForm::Final, store()); }) ==
          ErrorKind::Domain);
    CHECK(kind_of([&] { (void)bound_eval(SequenceSelector::all_primes(), 1000, cfg, BoundForm::Final, store()); }) ==
          ErrorKind::UnsupportedCombination);
    cfg.C = 0.0;
    CHECK(kind_of([&] { (void)bound_eval(SequenceSelector::twin(), 100, cfg, BoundForm::Final, store()); }) ==
          ErrorKind::InvalidArgument);

    BoundConfig big;
    big.r = 5000;
    CHECK(std::isinf(bound_eval(SequenceSelector::all_primes(), 1'000'000, big, BoundForm::Raw, store())));
}

TEST_CASE("derived r") {
    // m = 1/(5 ln ln 1e6) = 0.07617, x^m = 2.864
    CHECK(derived_r(1'000'000, 5.0) == 2);
    CHECK(derived_r(100, 1.0) == static_cast<std::uint64_t>(std::pow(100.0, 1.0 / std::log(std::log(100.0)))));
    CHECK(kind_of([] { (void)derived_r(15, 5.0); }) == ErrorKind::Domain);
    CHECK(kind_of([] { (void)derived_r(1000, 0.5); }) == ErrorKind::InvalidArgument);
    for (std::uint64_t x : {16u, 100u, 10'000u, 1'000'000u}) {
        const double m = 1.0 / (5.0 * std::log(std::log(static_cast<double>(x))));
        CHECK(m > 0.0);
        CHECK(m < 1.0);
        CHECK(derived_r(x, 5.0) >= 1);
    }
    BoundConfig cfg;  // r derived from c = 5
    CHECK(bound_eval(SequenceSelector::all_primes(), 1'000'000, cfg, BoundForm::Raw, store()) ==
          doctest::Approx(2.0 + 1e6 / std::log(3.0) + 4.0));
}

TEST_CASE("subsequence counts among the first r primes respect the caps") {
    for (std::uint64_t r = 1; r <= 2000; ++r) {
        const auto rp = members_among_first(SequenceSelector::p_prime(), r, store());
        const auto rd = members_among_first(SequenceSelector::p_dprime(), r, store());
        REQUIRE(rp + rd == r);
        REQUIRE(rp <= r);
        REQUIRE(rd <= r / 2);
    }
}

TEST_CASE("fit constant") {
    const std::vector<std::uint64_t> single{16};
    const double c = fit_constant(SequenceSelector::p_dprime(), single, store());
    // pi''(16) = 2 (3 and 11); the one-point fit saturates that point.
    const double shape = final_shape(SequenceSelector::p_dprime(), 16.0);
    CHECK(c == doctest::Approx(2.0 / shape).epsilon(1e-15));
    BoundConfig cfg;
    cfg.C = c;
    CHECK(bound_eval(SequenceSelector::p_dprime(), 16, cfg, BoundForm::Final, store()) >= 2.0);
    cfg.C = std::nextafter(c, 0.0);
    CHECK(bound_eval(SequenceSelector::p_dprime(), 16, cfg, BoundForm::Final, store()) < 2.0);

    const std::vector<std::uint64_t> decades{100, 1000, 10'000, 100'000, 1'000'000};
    for (auto sel : {SequenceSelector::p_dprime(), SequenceSelector::twin(), SequenceSelector::p_prime()}) {
        const double fitted = fit_constant(sel, decades, store());
        CHECK(fitted > 0.0);
        BoundConfig f;
        f.C = fitted;
        for (std::uint64_t x : decades)
            CHECK(static_cast<double>(pi_subseq(sel, x, store())) <=
                  bound_eval(sel, x, f, BoundForm::Final, store()));
    }
    CHECK(kind_of([] { (void)fit_constant(SequenceSelector::twin(), {}, store()); }) ==
          ErrorKind::InvalidArgument);
}
