#include <doctest.h>

#include <cmath>
#include <numeric>

#include "oracles.hpp"
#include "redundancy/errors.hpp"
#include "redundancy/order_stats.hpp"

using namespace redundancy;

TEST_CASE("harmonic numbers") {
    const auto& h = HarmonicTable::shared();
    CHECK(h(0) == 0.0);
    CHECK(h(1) == 1.0);
    CHECK(h(12) == doctest::Approx(86021.0 / 27720.0).epsilon(1e-15));
    CHECK(h(10000) == doctest::Approx(9.787606036044382).epsilon(1e-14));
    CHECK(h.difference(12, 11) == doctest::Approx(1.0 / 12.0).epsilon(1e-15));
    CHECK(h(5000) == doctest::Approx(9.094508852984437).epsilon(1e-14));
    const HarmonicTable small(3);
    CHECK(small(10) == doctest::Approx(7381.0 / 2520.0).epsilon(1e-15));
}

TEST_CASE("exponential order statistics") {
    CHECK(exp_order_mean(12, 1, 1.0) == doctest::Approx(1.0 / 12.0));
    CHECK(exp_order_mean(12, 12, 2.0) == doctest::Approx(2.0 * 86021.0 / 27720.0));
    CHECK(exp_order_mean(5, 3, 0.0) == 0.0);
    CHECK_THROWS_AS(exp_order_mean(5, 6, 1.0), DomainError);
}

TEST_CASE("erlang order statistics against quadrature of the order survival") {
    // Frozen from an independent high-precision quadrature.
    const int ks[] = {1, 2, 3, 4, 6, 12};
    const double frozen[] = {7.05362295361841,   3.478399033814788, 2.4105820349257563,
                             1.9394874079869595, 1.591627452037894, 3.103210678210678};
    for (int i = 0; i < 6; ++i) {
        const int k = ks[i], s = 12 / k;
        CAPTURE(k);
        CHECK(erlang_order_mean(12, k, s, 1.0) == doctest::Approx(frozen[i]).epsilon(1e-10));
    }
    for (auto [n, k, s] : {std::tuple{4, 2, 2}, {6, 3, 2}, {5, 1, 3}, {8, 4, 5}, {10, 5, 2}}) {
        CAPTURE(n);
        CAPTURE(k);
        CAPTURE(s);
        CHECK(erlang_order_mean(n, k, s, 1.5) ==
              doctest::Approx(oracle::erlang_order_mean(n, k, s, 1.5)).epsilon(1e-9));
    }
}

TEST_CASE("erlang with one unit reduces to the exponential") {
    for (int n = 1; n <= 12; ++n)
        for (int k = 1; k <= n; ++k)
            CHECK(erlang_order_mean(n, k, 1, 2.5) ==
                  doctest::Approx(exp_order_mean(n, k, 2.5)).epsilon(1e-12));
}

TEST_CASE("erlang cancellation guard refuses instead of returning garbage") {
    CHECK_THROWS_AS(erlang_order_mean(60, 30, 2, 1.0), NumericalRangeError);
    ErlangOrderOptions tiny;
    tiny.max_units = 10;
    CHECK_THROWS_AS(erlang_order_mean(12, 6, 2, 1.0, tiny), NumericalRangeError);
    CHECK_THROWS_AS(erlang_order_mean(12, 6, 2, 0.0), InvalidArgument);
}

TEST_CASE("erlang by incomplete beta quadrature") {
    for (int n = 2; n <= 12; ++n)
        for (int k = 1; k <= n; ++k)
            for (int s : {1, 2, 5})
                CHECK(erlang_order_mean_quadrature(n, k, s, 2.0) ==
                      doctest::Approx(erlang_order_mean(n, k, s, 2.0)).epsilon(1e-10));
    // Pairs the closed form refuses.
    for (auto [k, s] : {std::pair{6, 10}, {10, 6}, {30, 2}, {20, 3}, {59, 4}}) {
        REQUIRE_THROWS_AS(erlang_order_mean(60, k, s, 1.0), NumericalRangeError);
        CHECK(erlang_order_mean_quadrature(60, k, s, 1.0) ==
              doctest::Approx(oracle::erlang_order_mean(60, k, s, 1.0, 20000)).epsilon(1e-9));
    }
    CHECK(erlang_order_mean_quadrature(100000, 50000, 3, 1.0) > 0.0);
}

TEST_CASE("pareto order statistics match the product form") {
    for (double alpha : {1.5, 2.0, 3.0, 5.0}) {
        for (int n : {1, 5, 12, 40}) {
            for (int k = 1; k <= n; ++k) {
                long double prod = 1.0L;
                for (int i = 0; i < k; ++i) prod *= (n - i) / (n - i - 1.0L / alpha);
                CHECK(pareto_order_mean(n, k, 2.0, alpha) ==
                      doctest::Approx(2.0 * static_cast<double>(prod)).epsilon(1e-12));
            }
        }
    }
    CHECK_THROWS_AS(pareto_order_mean(12, 6, 1.0, 1.0), MomentDoesNotExist);
}

TEST_CASE("gamma ratio and its approximation") {
    CHECK(gamma_ratio(5.0, 1.0, 0.0) == doctest::Approx(5.0));
    CHECK(gamma_ratio(1000.0, 0.5, 0.0) ==
          doctest::Approx(gamma_ratio_approx(1000.0, 0.5, 0.0)).epsilon(1e-3));
    CHECK(gamma_ratio_approx(4.0, 0.5, 0.0) == doctest::Approx(2.0));
}

TEST_CASE("bimodal order statistics") {
    CHECK(bimodal_order_mean(12, 12, 10.0, 0.005) ==
          doctest::Approx(1.0 + 9.0 * (1.0 - std::pow(0.995, 12))).epsilon(1e-14));
    CHECK(bimodal_order_mean(12, 12, 10.0, 0.005) == doctest::Approx(1.52538).epsilon(1e-5));
    CHECK(bimodal_order_mean(12, 6, 10.0, 0.0) == 1.0);
    CHECK(bimodal_order_mean(12, 6, 10.0, 1.0) == 10.0);
    for (int n : {1, 2, 3, 4})
        for (int k = 1; k <= n; ++k)
            CHECK(bimodal_order_mean(n, k, 7.0, 0.35) ==
                  doctest::Approx(oracle::bimodal_sum_enumerated(n, k, 1, 7.0, 0.35)).epsilon(1e-13));
}

TEST_CASE("sums of bimodal units against full enumeration") {
    CHECK(bimodal_sum_order_mean(2, 1, 2, 10.0, 0.5) == doctest::Approx(7.625).epsilon(1e-14));
    for (auto [n, k, s] : {std::tuple{2, 1, 2}, {3, 1, 3}, {3, 2, 3}, {4, 2, 2}, {4, 4, 1},
                           {4, 1, 4}, {5, 3, 3}}) {
        for (double eps : {0.1, 0.4, 0.9}) {
            CAPTURE(n);
            CAPTURE(k);
            CAPTURE(s);
            CAPTURE(eps);
            CHECK(bimodal_sum_order_mean(n, k, s, 10.0, eps) ==
                  doctest::Approx(oracle::bimodal_sum_enumerated(n, k, s, 10.0, eps)).epsilon(1e-12));
        }
    }
}

TEST_CASE("bimodal sum pmf is a distribution with the right support") {
    const auto pmf = bimodal_sum_order_pmf(12, 4, 3, 106.0, 0.4);
    REQUIRE(pmf.size() == 4);
    double total = 0.0;
    for (const auto& p : pmf) {
        CHECK(p.probability >= 0.0);
        CHECK(p.value == doctest::Approx(3 - p.stragglers + 106.0 * p.stragglers));
        total += p.probability;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-13));
    const auto big = bimodal_sum_order_pmf(300, 150, 2, 10.0, 0.5);
    double t2 = 0.0;
    for (const auto& p : big) t2 += p.probability;
    CHECK(t2 == doctest::Approx(1.0).epsilon(1e-12));
}
