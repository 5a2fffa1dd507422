#include <doctest.h>

#include <cmath>

#include "ph/stats.hpp"

using namespace ph;

TEST_SUITE_BEGIN("stats");

TEST_CASE("chi-square p-values match closed forms and published quantiles") {
    // df=2: p = exp(-x/2) exactly
    CHECK(chi_square_p_value(5.991, 2) == doctest::Approx(0.05).epsilon(0.01));
    CHECK(chi_square_p_value(2.0, 2) == doctest::Approx(std::exp(-1.0)).epsilon(1e-9));
    // standard table quantiles
    CHECK(chi_square_p_value(3.841, 1) == doctest::Approx(0.05).epsilon(0.01));
    CHECK(chi_square_p_value(16.919, 9) == doctest::Approx(0.05).epsilon(0.01));
    CHECK(chi_square_p_value(27.877, 9) == doctest::Approx(0.001).epsilon(0.01));
    CHECK(chi_square_p_value(123.225, 99) == doctest::Approx(0.05).epsilon(0.01));
    // degenerate ends
    CHECK(chi_square_p_value(0.0, 5) == doctest::Approx(1.0));
    CHECK(chi_square_p_value(1000.0, 5) < 1e-12);
}

TEST_CASE("uniform goodness-of-fit behaves at both extremes") {
    std::vector<std::size_t> flat(10, 1000);
    ChiSquareResult ok = chi_square_uniform(flat);
    CHECK(ok.stat == doctest::Approx(0.0));
    CHECK(ok.p_value == doctest::Approx(1.0));
    CHECK(ok.df == 9);

    std::vector<std::size_t> spiked(10, 0);
    spiked[0] = 10000;
    CHECK(chi_square_uniform(spiked).p_value < 1e-12);
}

TEST_CASE("two-sample homogeneity accepts identical and rejects disjoint distributions") {
    std::vector<std::size_t> a{100, 200, 300, 400};
    CHECK(chi_square_two_sample(a, a).p_value == doctest::Approx(1.0));

    std::vector<std::size_t> b{400, 300, 200, 100};
    CHECK(chi_square_two_sample(a, b).p_value < 1e-12);

    // empty-in-both cells are dropped, not fatal
    std::vector<std::size_t> c{100, 0, 300};
    std::vector<std::size_t> d{110, 0, 290};
    ChiSquareResult r = chi_square_two_sample(c, d);
    CHECK(r.df == 1);
    CHECK(r.p_value > 0.05);
}

TEST_CASE("binomial bounds") {
    CHECK(binomial_sigma_bound(10000, 3.0) == doctest::Approx(0.015));
    CHECK(within_binomial_sigma(5000, 10000, 0.5, 3.0));
    CHECK_FALSE(within_binomial_sigma(5200, 10000, 0.5, 3.0));
    CHECK(within_binomial_sigma(1030, 10000, 0.1, 1.0));
}

TEST_SUITE_END();
