#include <cmath>
#include <limits>
#include <numbers>

#include "doctest.h"
#include "svlab/experiment.hpp"
#include "svlab/series.hpp"
#include "test_support.hpp"

using namespace svlab;
using svlab::test::poly;

TEST_CASE("CoeffSeries rejects non-finite coefficients and compares after padding") {
    CHECK_THROWS_AS(poly({1.0, std::numeric_limits<double>::quiet_NaN()}), std::invalid_argument);
    CHECK_THROWS_AS(poly({cplx{0.0, std::numeric_limits<double>::infinity()}}), std::invalid_argument);
    CHECK_THROWS_AS(CoeffSeries(std::vector<cplx>{}), std::invalid_argument);
    CHECK(poly({1.0, 2.0}) == poly({1.0, 2.0, 0.0, 0.0}));
    CHECK_FALSE(poly({1.0, 2.0}) == poly({1.0, 2.0, 1e-300}));
    CHECK(CoeffSeries{}.order() == 0);
}

TEST_CASE("add") {
    CHECK(add(poly({1.0, 1.0}), poly({0.0, 1.0})) == poly({1.0, 2.0}));
    const auto f = poly({3.0, cplx{0.0, 1.0}, -2.0});
    CHECK(add(f, CoeffSeries::zero(0)) == f);
    const auto s = add(poly({1.0, -1.0}), poly({-1.0, 1.0}));
    CHECK(s.is_zero());
    CHECK(add(poly({1.0}), poly({0.0, 0.0, 5.0})).order() == 2);
}

TEST_CASE("mul is the exact Cauchy product") {
    CHECK(mul(poly({1.0, 1.0}), poly({1.0, -1.0})) == poly({1.0, 0.0, -1.0}));
    const auto f = poly({2.0, cplx{1.0, -1.0}, 0.5});
    CHECK(mul(f, CoeffSeries::constant(1.0)) == f);
    CHECK(mul(poly({1.0, 1.0, 1.0}), poly({1.0, 1.0})) == poly({1.0, 2.0, 2.0, 1.0}));
    CHECK(mul(poly({1.0, 1.0, 1.0}), poly({1.0, 1.0})).order() == 3);
}

TEST_CASE("h2 and s2 norms") {
    CHECK(h2_norm(CoeffSeries::zero(4)) == 0.0);
    CHECK(h2_norm(poly({1.0, 1.0})) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(h2_norm(poly({1.0, 1.0, 1.0, 1.0})) == 2.0);

    CHECK(s2_norm(CoeffSeries::constant(1.0)) == 1.0);
    CHECK(s2_norm(CoeffSeries::monomial(1)) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(s2_norm(CoeffSeries::monomial(2)) == doctest::Approx(std::sqrt(5.0)).epsilon(1e-15));
}

TEST_CASE("s2_inner") {
    const auto one = CoeffSeries::constant(1.0);
    const auto z = CoeffSeries::monomial(1);
    const auto z2 = CoeffSeries::monomial(2);
    CHECK(s2_inner(z, z) == cplx{2.0, 0.0});
    CHECK(s2_inner(one, z) == cplx{});
    CHECK(s2_inner(z, z2) == cplx{});

    RandomPolynomials gen(7);
    for (int t = 0; t < 50; ++t) {
        const auto f = gen.up_to_degree(20);
        const double n = s2_norm(f);
        CHECK(std::abs(s2_inner(f, f) - n * n) <= 1e-12 * n * n);
        // Sesquilinear: <cf, g> = c <f, g>, <f, cg> = conj(c) <f, g>.
        const auto g = gen.up_to_degree(20);
        const cplx c{0.3, -1.2};
        CHECK(std::abs(s2_inner(scale(f, c), g) - c * s2_inner(f, g)) <= 1e-12 * (1.0 + std::abs(s2_inner(f, g))));
        CHECK(std::abs(s2_inner(f, scale(g, c)) - std::conj(c) * s2_inner(f, g)) <=
              1e-12 * (1.0 + std::abs(s2_inner(f, g))));
    }
}

TEST_CASE("eval") {
    CHECK(eval(poly({1.0, 1.0}), 0.0) == cplx{1.0});
    const cplx i{0.0, 1.0};
    CHECK(std::abs(eval(CoeffSeries::monomial(2), i) - cplx{-1.0}) < 1e-15);
    CHECK(eval(poly({1.0, 1.0, 1.0}), 0.5) == cplx{1.75});
    CHECK_THROWS_AS(eval(poly({1.0}), cplx{1.1, 0.0}), std::domain_error);
    CHECK_NOTHROW(eval(poly({1.0}), std::polar(1.0, 0.3)));
}

TEST_CASE("sup_bound") {
    auto s = sup_bound(CoeffSeries::constant(1.0), 64);
    CHECK(s.bound == 1.0);
    CHECK(s.sampled_sup == doctest::Approx(1.0));
    s = sup_bound(CoeffSeries::monomial(1), 64);
    CHECK(s.bound == 2.0);
    CHECK(s.sampled_sup < 1.0);
    s = sup_bound(CoeffSeries::constant(3.0), 16);
    CHECK(s.bound == 3.0);
    CHECK(s.sampled_sup == doctest::Approx(3.0));
    CHECK_THROWS(sup_bound(CoeffSeries::constant(1.0), 0));
}

TEST_CASE("dilate") {
    CHECK(dilate(CoeffSeries::monomial(1), 0.5) == poly({0.0, 0.5}));
    const auto f = poly({1.0, cplx{2.0, 3.0}, -4.0});
    CHECK(dilate(f, 1.0) == f);
    CHECK(dilate(CoeffSeries::monomial(2), 0.5) == poly({0.0, 0.0, 0.25}));
    CHECK_THROWS_AS(dilate(f, 0.0), std::domain_error);
    CHECK_THROWS_AS(dilate(f, 1.5), std::domain_error);
    CHECK_THROWS_AS(dilate(f, -0.5), std::domain_error);
}

namespace {

// Direct re-implementation of the schedule rule by repeated summation.
struct ScheduleOracle {
    std::size_t N;
    int k;
};

ScheduleOracle schedule_oracle(const CoeffSeries& f, double eps) {
    const std::size_t order = f.order();
    auto tail = [&](std::size_t N, int weight) {
        double s = 0.0;
        for (std::size_t n = N + 1; n <= order; ++n) s += std::pow(double(n), 2 * weight) * std::norm(f[n]);
        return s;
    };
    auto head = [&](std::size_t N, int weight) {
        double s = 0.0;
        for (std::size_t n = 0; n <= N; ++n) s += std::pow(double(n), 2 * weight) * std::norm(f[n]);
        return s;
    };
    std::size_t N = 0;
    while (!(tail(N, 0) < eps / 2 && tail(N, 1) < eps / 2)) ++N;
    for (int k = 1;; ++k) {
        const double q = 1.0 - std::pow(2.0, -k);
        const double c = 1.0 - std::pow(q, double(N));
        if (c * c * head(N, 0) < eps / 2 && c * c * head(N, 1) < eps / 2) return {N, k};
    }
}

CoeffSeries harmonic_series(std::size_t terms) {
    std::vector<cplx> a(terms + 1);
    for (std::size_t n = 1; n <= terms; ++n) a[n] = 1.0 / double(n);
    return CoeffSeries(std::move(a));
}

}  // namespace

TEST_CASE("density_schedule examples") {
    auto s = density_schedule(CoeffSeries::monomial(1), 1.0);
    CHECK(s.tail_index == 1);
    CHECK(s.dilation_param == 0.5);
    CHECK((1 - s.dilation_param) * (1 - s.dilation_param) < 0.5);

    s = density_schedule(CoeffSeries::zero(5), 0.1);
    CHECK(s.tail_index == 0);
    CHECK(s.dilation_param == 0.5);

    const auto f = harmonic_series(64);
    s = density_schedule(f, 1e-2);
    const auto oracle = schedule_oracle(f, 1e-2);
    CHECK(s.tail_index == oracle.N);
    CHECK(s.grid_exponent == oracle.k);
    const double err = h2_norm(sub(f, dilate(f, s.dilation_param)));
    CHECK(err * err < 1e-2);
    const double serr = s2_norm(sub(f, dilate(f, s.dilation_param)));
    CHECK(serr * serr < 2e-2);

    CHECK_THROWS_AS(density_schedule(f, 0.0), std::domain_error);
    CHECK_THROWS_AS(density_schedule(f, -1.0), std::domain_error);
}

TEST_CASE("density_schedule invariants hold on random inputs") {
    RandomPolynomials gen(99);
    for (int t = 0; t < 40; ++t) {
        const auto f = gen.up_to_degree(48);
        for (double eps : {1.0, 1e-2, 1e-4}) {
            const auto s = density_schedule(f, eps);
            const auto o = schedule_oracle(f, eps);
            CHECK(s.tail_index == o.N);
            CHECK(s.grid_exponent == o.k);
            CHECK(s.h2_error_sq < eps);
            CHECK(s.s2_error_sq < 2 * eps);
            CHECK(s.dilation_param > 0.0);
            CHECK(s.dilation_param < 1.0);
        }
    }
}

TEST_CASE("norm axioms and triangle inequality") {
    RandomPolynomials gen(1);
    CHECK(h2_norm(CoeffSeries::zero(10)) == 0.0);
    for (int t = 0; t < 1000; ++t) {
        const auto f = gen.up_to_degree(32);
        const auto g = gen.up_to_degree(32);
        CHECK(h2_norm(f) > 0.0);
        CHECK(h2_norm(add(f, g)) <= h2_norm(f) + h2_norm(g) + 1e-12);
        CHECK(s2_norm(add(f, g)) <= s2_norm(f) + s2_norm(g) + 1e-12);
    }
}

TEST_CASE("parallelogram law for the s2 inner product") {
    RandomPolynomials gen(2);
    for (int t = 0; t < 500; ++t) {
        const auto f = gen.up_to_degree(32);
        const auto g = gen.up_to_degree(32);
        const double a = s2_norm(add(f, g)), b = s2_norm(sub(f, g)), nf = s2_norm(f), ng = s2_norm(g);
        const double lhs = a * a + b * b, rhs = 2 * nf * nf + 2 * ng * ng;
        CHECK(std::abs(lhs - rhs) <= 1e-10 * rhs);
    }
}

TEST_CASE("decomposition into constants and functions vanishing at 0") {
    RandomPolynomials gen(3);
    const auto one = CoeffSeries::constant(1.0);
    for (int t = 0; t < 200; ++t) {
        const auto f = gen.up_to_degree(40);
        const auto rest = sub(f, CoeffSeries::constant(f[0]));
        CHECK(rest[0] == cplx{});
        CHECK(add(scale(one, f[0]), rest) == f);
        CHECK(s2_inner(one, rest) == cplx{});
    }
}

TEST_CASE("product bound with constant 16") {
    RandomPolynomials gen(4);
    for (int t = 0; t < 1000; ++t) {
        const auto f = gen.up_to_degree(32);
        const auto g = gen.up_to_degree(32);
        const double p = s2_norm(mul(f, g)), a = s2_norm(f), b = s2_norm(g);
        CHECK(p * p <= 16 * a * a * b * b);
    }
}

TEST_CASE("sampled sup never exceeds the a-priori bound") {
    RandomPolynomials gen(5);
    for (int t = 0; t < 1000; ++t) {
        const auto f = gen.up_to_degree(64);
        const auto s = sup_bound(f, 256);
        CHECK(s.sampled_sup <= s.bound + 1e-9);
    }
}

TEST_CASE("dilation error decreases toward q = 1") {
    RandomPolynomials gen(6);
    for (int t = 0; t < 50; ++t) {
        const auto f = gen.with_degree(1 + t % 60);
        double prev = std::numeric_limits<double>::infinity();
        double first = 0.0, last = 0.0;
        for (double q : {0.9, 0.99, 0.999, 0.9999}) {
            const double e = s2_norm(sub(f, dilate(f, q)));
            CHECK(e <= prev);
            if (q == 0.9) first = e;
            last = e;
            prev = e;
        }
        CHECK(last < first);
    }
}

TEST_CASE("truncate and derivative") {
    CHECK(truncate(poly({1.0, 2.0, 3.0}), 1) == poly({1.0, 2.0}));
    CHECK(truncate(poly({1.0}), 3).order() == 3);
    CHECK(derivative(poly({5.0})) == CoeffSeries::zero(0));
    CHECK(derivative(poly({1.0, 1.0, 1.0, 1.0})) == poly({1.0, 2.0, 3.0}));
}
