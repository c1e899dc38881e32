#include <doctest.h>

#include <cmath>

#include "focklab/symbol.hpp"
#include "focklab/symbol_io.hpp"

using namespace focklab;

namespace {

VecC pt1(Complex z) {
    VecC v(1);
    v(0) = z;
    return v;
}

} // namespace

TEST_CASE("symbol eval: constants, monomials, coefficients") {
    const TaylorSymbol id = TaylorSymbol::constant(1, Mat::Identity(1, 1));
    CHECK(std::abs(id.eval_scalar(pt1({2.0, 3.0})) - 1.0) == 0.0);

    const TaylorSymbol z1 = TaylorSymbol::scalar_monomial(MultiIndex({1}));
    const Complex z{2.0, 1.0};
    CHECK(std::abs(z1.eval_scalar(pt1(z)) - z) == 0.0);

    TaylorSymbol b(1, 1);
    Mat c(1, 1);
    c(0, 0) = Complex(0.5, -0.25);
    b.set_coeff(MultiIndex({2}), c);
    CHECK(std::abs(b.eval_scalar(pt1({2.0, 0.0})) - 4.0 * c(0, 0)) < 1e-15);
}

TEST_CASE("radial derivative") {
    const TaylorSymbol cst = TaylorSymbol::constant(1, Mat::Identity(1, 1));
    CHECK(cst.radial_derivative(1).support_size() == 0);

    const TaylorSymbol z3 = TaylorSymbol::scalar_monomial(MultiIndex({3}));
    CHECK(std::abs(z3.radial_derivative(1).coeff(MultiIndex({3}))(0, 0) - 3.0) == 0.0);

    TaylorSymbol b(2, 2);
    Mat M = Mat::Random(2, 2);
    b.set_coeff(MultiIndex({2, 1}), M);
    const Mat got = b.radial_derivative(2).coeff(MultiIndex({2, 1}));
    CHECK((got - 9.0 * M).norm() == 0.0);
}

TEST_CASE("dilate") {
    const TaylorSymbol z2 = TaylorSymbol::scalar_monomial(MultiIndex({2}));
    CHECK(std::abs(z2.dilate(1.0).coeff(MultiIndex({2}))(0, 0) - 1.0) == 0.0);
    CHECK(std::abs(z2.dilate(0.5).coeff(MultiIndex({2}))(0, 0) - 0.25) == 0.0);
    CHECK_THROWS_AS(z2.dilate(1.5), DomainError);
    CHECK_THROWS_AS(z2.dilate(0.0), DomainError);
}

TEST_CASE("radial derivative commutes with dilation up to scaling") {
    const TaylorSymbol b = random_decay_symbol(2, 1, 7, 0.6, 5);
    const double r = 0.7;
    const TaylorSymbol lhs = b.dilate(r).radial_derivative(1);
    const TaylorSymbol rhs = b.radial_derivative(1).dilate(r);
    for (const auto& [nu, c] : lhs.coeffs())
        CHECK((c - rhs.coeff(nu)).norm() == 0.0);
}

TEST_CASE("fejer smoothing multipliers") {
    // d = 1, N = 2: (b0, b1, b2, b3) -> (b0, 2/3 b1, 1/3 b2, 0)
    TaylorSymbol b(1, 1);
    for (int k = 0; k <= 3; ++k) {
        Mat c(1, 1);
        c(0, 0) = 1.0;
        b.set_coeff(MultiIndex({k}), c);
    }
    const TaylorSymbol s = b.fejer_smooth(2);
    CHECK(std::abs(s.coeff(MultiIndex({0}))(0, 0) - 1.0) < 1e-15);
    CHECK(std::abs(s.coeff(MultiIndex({1}))(0, 0) - 2.0 / 3.0) < 1e-15);
    CHECK(std::abs(s.coeff(MultiIndex({2}))(0, 0) - 1.0 / 3.0) < 1e-15);
    CHECK(s.coeff(MultiIndex({3}))(0, 0) == Complex(0.0, 0.0));

    // N = 0 keeps only the constant term
    const TaylorSymbol s0 = b.fejer_smooth(0);
    CHECK(s0.support_size() == 1);
    CHECK(std::abs(s0.coeff(MultiIndex({0}))(0, 0) - 1.0) < 1e-15);

    // multipliers always lie in [0, 1]
    const TaylorSymbol big = random_decay_symbol(2, 1, 3, 0.7, 6);
    const TaylorSymbol sm = big.fejer_smooth(4);
    for (const auto& [nu, c] : sm.coeffs()) {
        const double ratio = std::abs(c(0, 0) / big.coeff(nu)(0, 0));
        CHECK(ratio <= 1.0 + 1e-15);
    }
}

TEST_CASE("sup_growth_norm: closed forms") {
    const SpaceParams params(1, 1.0, 1.0);
    const GrowthGrid grid = GrowthGrid::logspaced(1, 1e-3, 12.0, 64, 8);

    // constant symbol: sup = 1 at z = 0
    const auto c = sup_growth_norm(TaylorSymbol::constant(1, Mat::Identity(1, 1)),
                                   params, 1.0, grid);
    CHECK(c.value == doctest::Approx(1.0).epsilon(1e-9));

    // b(z) = z at beta = 1/2: sup r e^{-r^2/4} = sqrt(2) e^{-1/2}
    const auto s = sup_growth_norm(TaylorSymbol::scalar_monomial(MultiIndex({1})),
                                   params, 0.5, grid);
    CHECK(s.value == doctest::Approx(std::sqrt(2.0) * std::exp(-0.5)).epsilon(1e-10));
    CHECK(s.argmax.norm() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-5));

    // b = e^{c z^2}, c < 1/4: weighted sup = 1, attained at 0
    const auto e = sup_growth_norm(exp_quadratic_symbol(0.2, 48), params, 0.5, grid);
    CHECK(e.value == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(std::isfinite(e.value));
}

TEST_CASE("littlewood_paley_norm") {
    const SpaceParams params(1, 1.0, 1.0);
    const GrowthGrid grid = GrowthGrid::logspaced(1, 1e-3, 12.0, 64, 8);
    const TaylorSymbol z1 = TaylorSymbol::scalar_monomial(MultiIndex({1}));

    // k = 0 equals sup_growth_norm exactly
    CHECK(littlewood_paley_norm(z1, params, 0.5, 0, grid) ==
          sup_growth_norm(z1, params, 0.5, grid).value);

    // constant symbol, k = 1: derivative term vanishes, origin term survives
    Mat c0(1, 1);
    c0(0, 0) = 2.5;
    CHECK(littlewood_paley_norm(TaylorSymbol::constant(1, c0), params, 0.5, 1, grid) ==
          doctest::Approx(2.5));

    // b(z) = z, k = 1: sup (1+r^2)^{-1} r e^{-r^2/4}; 1-d oracle by dense scan
    double oracle = 0.0;
    for (int i = 0; i <= 400000; ++i) {
        const double r = 20.0 * i / 400000;
        oracle = std::max(oracle, r / (1.0 + r * r) * std::exp(-r * r / 4.0));
    }
    CHECK(littlewood_paley_norm(z1, params, 0.5, 1, grid) ==
          doctest::Approx(oracle).epsilon(1e-6));
}

TEST_CASE("littlewood-paley ratio bounded across the exp_quadratic family") {
    const SpaceParams params(1, 1.0, 1.0);
    const GrowthGrid grid = GrowthGrid::logspaced(1, 1e-3, 40.0, 128, 4);
    for (double c : {0.05, 0.1, 0.2}) {
        const TaylorSymbol b = exp_quadratic_symbol(c, 60);
        const double lp = littlewood_paley_norm(b, params, 0.5, 1, grid);
        const double sup = sup_growth_norm(b, params, 0.5, grid).value;
        const double ratio = lp / sup;
        CHECK(ratio >= 1.0 / 50.0);
        CHECK(ratio <= 50.0);
    }
}

TEST_CASE("littleoh_profile: decay and plateau cases") {
    const SpaceParams params(1, 1.0, 1.0);
    const std::vector<double> radii{1, 2, 3, 4, 5, 6, 7, 8};

    // polynomial: tends to 0
    const auto p = littleoh_profile(TaylorSymbol::scalar_monomial(MultiIndex({2})),
                                    params, 0.5, 0, radii);
    CHECK(p.back().second < 1e-4);

    // e^{0.2 z^2}: profile at r = 8 equals e^{(0.2 - 0.25) * 64}
    const auto q =
        littleoh_profile(exp_quadratic_symbol(0.2, 80), params, 0.5, 0, radii);
    CHECK(q.back().second ==
          doctest::Approx(std::exp(-0.05 * 64.0)).epsilon(1e-3));
    CHECK(q.back().second < 0.05);

    // e^{z^2/4}: weighted modulus identically 1 along the real axis
    const auto r =
        littleoh_profile(exp_quadratic_symbol(0.25, 120), params, 0.5, 0, radii);
    CHECK(r.back().second == doctest::Approx(1.0).epsilon(1e-2));
    CHECK(r.back().second > 0.9);
}

TEST_CASE("dilate convergence in the growth norm") {
    const SpaceParams params(1, 1.0, 1.0);
    const GrowthGrid grid = GrowthGrid::logspaced(1, 1e-3, 30.0, 96, 4);
    const TaylorSymbol b = exp_quadratic_symbol(0.2, 48);
    double prev = std::numeric_limits<double>::infinity();
    for (double r : {0.9, 0.99, 0.999}) {
        const double gap = sup_growth_norm(b - b.dilate(r), params, 0.5, grid).value;
        CHECK(gap < prev);
        prev = gap;
    }
}

TEST_CASE("integral_means") {
    // constants: M_p = ||C0|| for every p, r
    Mat c0(1, 1);
    c0(0, 0) = Complex(3.0, 4.0);  // modulus 5
    const TaylorSymbol cst = TaylorSymbol::constant(1, c0);
    CHECK(integral_means(cst, 2.0, 1.7) == doctest::Approx(5.0));
    CHECK(integral_means(cst, 3.0, 0.4, 64) == doctest::Approx(5.0));

    // f(z) = z at d = 1: M_2(f, r) = r
    const TaylorSymbol z1 = TaylorSymbol::scalar_monomial(MultiIndex({1}));
    CHECK(integral_means(z1, 2.0, 0.8) == doctest::Approx(0.8));

    // monotone in r for the coefficient form
    const TaylorSymbol b = random_decay_symbol(1, 2, 11, 0.5, 6);
    double prev = 0.0;
    for (double r : {0.2, 0.5, 1.0, 1.5}) {
        const double m2 = integral_means(b, 2.0, r);
        CHECK(m2 >= prev);
        prev = m2;
    }
}

TEST_CASE("pointwise_bound_ratio basics") {
    const SpaceParams params(1, 1.0, 1.0);
    const TaylorSymbol one = TaylorSymbol::constant(1, Mat::Identity(1, 1));
    // ||1||_{F^p} = 1 for the probability measure; ratio <= 1 everywhere
    for (double rr : {0.0, 1.0, 3.0}) {
        const double ratio = pointwise_bound_ratio(one, params, 2.0, pt1({rr, 0.0}), 1.0);
        CHECK(ratio <= 1.0 + 1e-12);
    }
    // ratio at z = 0 is ||f(0)|| / fp_norm
    TaylorSymbol f(1, 1);
    Mat c(1, 1);
    c(0, 0) = 2.0;
    f.set_coeff(MultiIndex({0}), c);
    CHECK(pointwise_bound_ratio(f, params, 2.0, pt1({0.0, 0.0}), 4.0) ==
          doctest::Approx(0.5));
    CHECK_THROWS_AS(pointwise_bound_ratio(f, params, 2.0, pt1({0.0, 0.0}), 0.0),
                    DomainError);
}

TEST_CASE("symbol json round trip") {
    const TaylorSymbol b = random_decay_symbol(2, 2, 5, 0.4, 3);
    const auto j = symbol_to_json(b);
    const TaylorSymbol back = symbol_from_json(j);
    CHECK(back.d() == b.d());
    CHECK(back.n() == b.n());
    CHECK(back.support_size() == b.support_size());
    for (const auto& [nu, c] : b.coeffs()) CHECK((back.coeff(nu) - c).norm() < 1e-15);
}

TEST_CASE("named symbol families") {
    const TaylorSymbol e = exp_quadratic_symbol(0.3, 10);
    CHECK(std::abs(e.coeff(MultiIndex({4}))(0, 0) - 0.045) < 1e-15);  // c^2/2!
    CHECK(e.coeff(MultiIndex({3}))(0, 0) == Complex(0.0, 0.0));

    const TaylorSymbol r1 = random_decay_symbol(1, 1, 42, 0.5, 6);
    const TaylorSymbol r2 = random_decay_symbol(1, 1, 42, 0.5, 6);
    for (const auto& [nu, c] : r1.coeffs()) CHECK((r2.coeff(nu) - c).norm() == 0.0);
}
