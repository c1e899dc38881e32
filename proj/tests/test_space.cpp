#include <doctest.h>

#include <cmath>
#include <numbers>

#include "focklab/space.hpp"

using namespace focklab;

TEST_CASE("SpaceParams validation") {
    CHECK_THROWS_AS(SpaceParams(0, 1.0, 1.0), DomainError);
    CHECK_THROWS_AS(SpaceParams(1, 0.5, 1.0), DomainError);
    CHECK_THROWS_AS(SpaceParams(1, 1.0, 0.0), DomainError);
    CHECK_NOTHROW(SpaceParams(2, 1.5, 0.5));
}

TEST_CASE("multi_indices_up_to: counts and ordering") {
    const auto idx1 = multi_indices_up_to(1, 5);
    CHECK(idx1.size() == 6);
    const auto idx2 = multi_indices_up_to(2, 3);
    CHECK(idx2.size() == 10);  // C(3+2,2)
    const auto idx3 = multi_indices_up_to(3, 4);
    CHECK(idx3.size() == 35);  // C(4+3,3)
    // graded: degrees non-decreasing
    for (std::size_t i = 1; i < idx2.size(); ++i)
        CHECK(idx2[i - 1].degree() <= idx2[i].degree());
    // no duplicates
    for (std::size_t i = 0; i < idx2.size(); ++i)
        for (std::size_t j = i + 1; j < idx2.size(); ++j)
            CHECK(!(idx2[i] == idx2[j]));
}

TEST_CASE("c_norm_const") {
    CHECK(c_norm_const(1, 1.0) == doctest::Approx(1.0));
    CHECK(c_norm_const(1, 2.0) == doctest::Approx(std::sqrt(std::numbers::pi)));
    CHECK(c_norm_const(2, 1.0) == doctest::Approx(1.0));
}

TEST_CASE("density_const") {
    CHECK(density_const(1, 1.0, 1.0) == doctest::Approx(1.0 / std::numbers::pi));
    CHECK(density_const(1, 2.0, 1.0) ==
          doctest::Approx(2.0 / std::pow(std::numbers::pi, 1.5)));
}

TEST_CASE("monomial_norm_sq: closed forms") {
    // m = 1, d = 1, alpha = 1, nu = 3 -> 3! = 6
    CHECK(monomial_norm_sq(SpaceParams(1, 1.0, 1.0), MultiIndex({3})) ==
          doctest::Approx(6.0).epsilon(1e-13));
    // nu = 0 -> 1 for any parameters
    for (int d : {1, 2, 3})
        for (double m : {1.0, 1.5, 2.0})
            for (double a : {0.5, 1.0, 2.0})
                CHECK(monomial_norm_sq(SpaceParams(d, m, a), MultiIndex::zeros(d)) ==
                      doctest::Approx(1.0).epsilon(1e-12));
    // m = 1, d = 2, alpha = 2, nu = (1,0) -> nu!/alpha = 1/2
    CHECK(monomial_norm_sq(SpaceParams(2, 1.0, 2.0), MultiIndex({1, 0})) ==
          doctest::Approx(0.5).epsilon(1e-13));
    // m = 1 closed form nu!/alpha^{|nu|} across a small sweep
    for (int k = 0; k <= 8; ++k) {
        const double want = std::tgamma(k + 1.0) / std::pow(1.5, k);
        CHECK(monomial_norm_sq(SpaceParams(1, 1.0, 1.5), MultiIndex({k})) ==
              doctest::Approx(want).epsilon(1e-12));
    }
}

TEST_CASE("monomial_norm_sq: log variant for large degree") {
    const SpaceParams params(1, 1.0, 1.0);
    // 400! overflows doubles; the log variant stays finite
    CHECK_THROWS_AS(monomial_norm_sq(params, MultiIndex({400})), OverflowError);
    const double lg = log_monomial_norm_sq(params, MultiIndex({400}));
    CHECK(lg == doctest::Approx(std::lgamma(401.0)).epsilon(1e-12));
}
