#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "redundancy/birthday.hpp"
#include "redundancy/errors.hpp"
#include "redundancy/order_stats.hpp"

using namespace redundancy;

TEST_CASE("truncated exponential series in log space") {
    CHECK(log_truncated_exp_series(1, 3.0) == 0.0);
    CHECK(log_truncated_exp_series(3, 2.0) == doctest::Approx(std::log(1.0 + 2.0 + 2.0)));
    CHECK(log_truncated_exp_series(500, 10.0) == doctest::Approx(10.0).epsilon(1e-14));
    CHECK(std::isfinite(log_truncated_exp_series(2000, 1e5)));
}

TEST_CASE("birthday expectation: closed small cases") {
    CHECK(birthday_expectation(2, 2) == doctest::Approx(2.5).epsilon(1e-10));
    CHECK(birthday_expectation(365, 2) == doctest::Approx(24.616585894598854).epsilon(1e-9));
    for (int n = 1; n <= 50; n += 7) CHECK(std::abs(birthday_expectation(n, 1) - 1.0) <= 1e-8);
    for (int d = 1; d <= 50; d += 7)
        CHECK(std::abs(birthday_expectation(1, d) - static_cast<double>(d)) <= 1e-8);
}

TEST_CASE("birthday expectation against the exact discrete sum") {
    for (int n = 1; n <= 12; ++n) {
        for (int d = 1; d <= 6; ++d) {
            CAPTURE(n);
            CAPTURE(d);
            const QuadratureResult q = birthday_integral(n, d);
            const double exact = oracle::birthday_exact(n, d);
            CHECK(q.value == doctest::Approx(exact).epsilon(1e-10));
            CHECK(q.error_estimate <= 1e-9 * exact);
        }
    }
}

TEST_CASE("birthday asymptote") {
    const double e = birthday_expectation(10000, 2);
    CHECK(std::abs(e / birthday_asymptotic(10000, 2) - 1.0) <= 0.02);
    CHECK(birthday_asymptotic(1, 1) == doctest::Approx(1.0));
}

TEST_CASE("replication under additive scaling equals the minimum of erlangs") {
    // min of n Erlang(n, 1) variables, by integrating the order survival directly.
    CHECK(replication_additive_sexp_mean(12, 0.0, 1.0) ==
          doctest::Approx(7.053622953618409).epsilon(1e-10));
    CHECK(replication_additive_sexp_mean(6, 0.0, 2.0) ==
          doctest::Approx(oracle::erlang_order_mean(6, 1, 6, 2.0)).epsilon(1e-9));
    CHECK(replication_additive_sexp_mean(12, 1.0, 1.0) ==
          doctest::Approx(12.0 + erlang_order_mean(12, 1, 12, 1.0)).epsilon(1e-10));
}

TEST_CASE("replication asymptote is a fixed-d formula and undershoots at d = n") {
    // The n^{1-1/n} asymptote is derived for fixed d; with d = n it is not
    // tight. Values frozen from the exact integral and the formula.
    const double exact12 = replication_additive_sexp_mean(12, 0.0, 1.0);
    const double asym12 = replication_additive_sexp_asymptotic(12, 0.0, 1.0);
    CHECK(asym12 == doctest::Approx(4.120260).epsilon(1e-6));
    CHECK(asym12 / exact12 == doctest::Approx(0.5841).epsilon(1e-3));
    const double exact100 = replication_additive_sexp_mean(100, 0.0, 1.0);
    CHECK(exact100 == doctest::Approx(76.7469).epsilon(1e-5));
    CHECK(replication_additive_sexp_asymptotic(100, 0.0, 1.0) ==
          doctest::Approx(36.0769).epsilon(1e-5));
}

TEST_CASE("birthday input validation") {
    CHECK_THROWS_AS(birthday_expectation(0, 2), DomainError);
    CHECK_THROWS_AS(birthday_expectation(3, 0), DomainError);
}
