#include <doctest.h>

#include <cmath>

#include "uaroot/rng.hpp"
#include "uaroot/stats.hpp"

using namespace uaroot;

TEST_CASE("one-sample KS distance") {
    // empirical CDF of {0.5} vs uniform: sup gap is 0.5 on both sides
    CHECK(ks_distance_uniform01({0.5}) == doctest::Approx(0.5));
    std::vector<double> grid;
    for (int i = 0; i < 1000; ++i) grid.push_back((i + 0.5) / 1000.0);
    CHECK(ks_distance_uniform01(grid) == doctest::Approx(0.0005));
    CHECK_THROWS_AS(ks_distance_uniform01({}), std::invalid_argument);
}

TEST_CASE("two-sample KS distance") {
    CHECK(ks_distance_two_sample({0.1, 0.2}, {0.8, 0.9}) == doctest::Approx(1.0));
    std::vector<double> a, b;
    Rng rng(4);
    for (int i = 0; i < 20'000; ++i) {
        a.push_back(rng.u01());
        b.push_back(rng.u01());
    }
    CHECK(ks_distance_two_sample(a, b) < 0.02);
}

TEST_CASE("chi square tail values") {
    CHECK(chi_square_pvalue(0.0, 2.0) == doctest::Approx(1.0));
    CHECK(chi_square_pvalue(2.0, 2.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-10));
    CHECK(chi_square_pvalue(3.841458820694124, 1.0) == doctest::Approx(0.05).epsilon(1e-6));
}

TEST_CASE("wilson interval") {
    const auto centred = wilson_interval(50, 100);
    CHECK(centred.low == doctest::Approx(0.404).epsilon(0.01));
    CHECK(centred.high == doctest::Approx(0.596).epsilon(0.01));
    const auto empty = wilson_interval(0, 10);
    CHECK(empty.low == 0.0);
    CHECK(empty.high > 0.0);
    CHECK_THROWS_AS(wilson_interval(5, 0), std::invalid_argument);
}

TEST_CASE("linear fit recovers exact lines") {
    std::vector<double> xs, ys;
    for (int i = 0; i < 10; ++i) {
        xs.push_back(i);
        ys.push_back(3.0 * i - 2.0);
    }
    const auto fit = linear_fit(xs, ys);
    CHECK(fit.slope == doctest::Approx(3.0));
    CHECK(fit.intercept == doctest::Approx(-2.0));
    CHECK(fit.r_squared == doctest::Approx(1.0));
    CHECK_THROWS_AS(linear_fit({1.0}, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(linear_fit({1.0, 1.0}, {1.0, 2.0}), std::invalid_argument);
}

TEST_CASE("running moments merge like a single pass") {
    Rng rng(10);
    RunningMoments whole, left, right;
    for (int i = 0; i < 5000; ++i) {
        const double v = rng.normal();
        whole.add(v);
        (i < 2000 ? left : right).add(v);
    }
    left.merge(right);
    CHECK(left.count == whole.count);
    CHECK(left.mean == doctest::Approx(whole.mean).epsilon(1e-12));
    CHECK(left.variance() == doctest::Approx(whole.variance()).epsilon(1e-10));
}

TEST_CASE("pearson correlation of independent draws is small") {
    Rng rng(21);
    std::vector<double> a, b;
    for (int i = 0; i < 30'000; ++i) {
        a.push_back(rng.u01());
        b.push_back(rng.u01());
    }
    CHECK(std::abs(pearson_correlation(a, b)) < 0.02);
    CHECK(pearson_correlation(a, a) == doctest::Approx(1.0));
}
