#include <cmath>

#include "doctest.h"
#include "svlab/lattice.hpp"
#include "svlab/operators.hpp"
#include "test_support.hpp"

using namespace svlab;
using svlab::test::poly;

namespace {

IdealSpec make_spec(std::vector<cplx> zeros, std::vector<Atom> atoms, std::vector<cplx> k, std::size_t m,
                    std::size_t N, std::size_t b) {
    IdealSpec s;
    s.inner.zeros = std::move(zeros);
    s.inner.atoms = std::move(atoms);
    s.boundary = BoundarySet(std::move(k));
    s.generator_count = m;
    s.order = N;
    s.buffer = b;
    return s;
}

IdealSpec acceptance_spec() { return make_spec({0.5, cplx{0.0, -0.3}}, {{1.0, 0.2}}, {1.0}, 8, 256, 32); }

}  // namespace

TEST_CASE("structural check on monomial towers") {
    IdealBasis a{make_spec({}, {}, {}, 2, 16, 0), {CoeffSeries::monomial(1), CoeffSeries::monomial(2)}};
    for (double r : structural_check(a)) CHECK(r == 0.0);
    CHECK(apply_T(apply_D(CoeffSeries::monomial(1))) == poly({0.0, 2.0}));

    IdealBasis b{make_spec({}, {}, {}, 2, 16, 0), {CoeffSeries::monomial(2), CoeffSeries::monomial(3)}};
    for (double r : structural_check(b)) CHECK(r == 0.0);
    CHECK(apply_T(poly({0.0, 2.0})) == poly({0.0, 0.0, 3.0}));
}

TEST_CASE("structural residuals vanish for constructed towers") {
    const auto ideal = build_ideal_basis(make_spec({0.5}, {}, {1.0}, 4, 256, 16));
    const auto r = structural_check(ideal);
    CHECK(r.size() == 4);
    for (double x : r) CHECK(x <= 1e-13);
    for (double x : structural_check(build_ideal_basis(acceptance_spec()))) CHECK(x <= 1e-13);
}

TEST_CASE("projection_residual examples") {
    const std::vector<CoeffSeries> basis{poly({0.0, 1.0}), poly({0.0, 0.0, 1.0})};
    CHECK(projection_residual(basis[1], basis, 4).residual <= 1e-14);
    CHECK(projection_residual(CoeffSeries::constant(1.0), basis, 4).residual == 1.0);
    const auto p = projection_residual(poly({0.0, 1.0, 0.0, 1.0}), {CoeffSeries::monomial(1)}, 3);
    CHECK(std::abs(p.residual - 1.0 / std::sqrt(2.0)) <= 1e-15);
    CHECK(projection_residual(CoeffSeries::zero(3), basis, 3).residual == 0.0);
    CHECK_THROWS_AS(projection_residual(CoeffSeries::constant(1.0), {}, 3), std::invalid_argument);
}

TEST_CASE("projection_residual reports rank deficiency but still measures distance") {
    const std::vector<CoeffSeries> basis{poly({0.0, 1.0}), poly({0.0, 2.0}), CoeffSeries::zero(2)};
    const auto p = projection_residual(poly({1.0, 1.0}), basis, 2);
    CHECK(p.rank_deficient);
    CHECK(p.rank == 1);
    CHECK(std::abs(p.residual - 1.0 / std::sqrt(2.0)) <= 1e-15);
}

TEST_CASE("projection_residual is scale invariant") {
    const auto ideal = build_ideal_basis(make_spec({0.5}, {{1.0, 0.1}}, {1.0}, 3, 64, 8));
    std::vector<CoeffSeries> basis;
    for (const auto& h : ideal.generators) basis.push_back(apply_D(h));
    const CoeffSeries v = apply_T(apply_D(apply_Mz(ideal.generators.back())));
    const double base = projection_residual(v, basis, 64).residual;
    for (cplx c : {cplx{3.0, 0.0}, cplx{0.0, -1e-3}, cplx{250.0, 71.0}}) {
        std::vector<CoeffSeries> scaled;
        for (const auto& b : basis) scaled.push_back(scale(b, c));
        CHECK(std::abs(projection_residual(v, scaled, 64).residual - base) <= 1e-13);
        CHECK(std::abs(projection_residual(scale(v, c), basis, 64).residual - base) <= 1e-13);
    }
}

TEST_CASE("invariance_report: whole space") {
    const auto rep = invariance_report(make_spec({}, {}, {}, 8, 64, 8));
    CHECK(rep.verdict == Verdict::Invariant);
    REQUIRE(rep.per_generator.size() == 8);
    for (const auto& g : rep.per_generator) {
        CHECK(g.projection <= 1e-12);
        CHECK(*g.structural <= 1e-12);
    }
    CHECK(rep.test_order == 64);
    CHECK(rep.buffer == 8);
}

TEST_CASE("invariance_report: Blaschke pair with a boundary atom") {
    const auto rep = invariance_report(acceptance_spec());
    CHECK(rep.verdict == Verdict::Invariant);
    for (const auto& g : rep.per_generator) {
        CHECK(g.projection <= 1e-8);
        CHECK(*g.structural <= 1e-13);
    }
}

TEST_CASE("invariance_report: single generator without the tower step fails") {
    const auto ideal = build_ideal_basis(make_spec({0.5, cplx{0.0, -0.3}}, {{1.0, 0.2}}, {1.0}, 1, 256, 32));
    const auto rep = span_report("span{D h1}", {apply_D(ideal.generators[0])}, 256);
    CHECK(rep.verdict == Verdict::NotInvariant);
    CHECK(rep.per_generator[0].projection >= 1e-1);
}

TEST_CASE("negative controls") {
    const auto controls = negative_controls();
    REQUIRE(controls.size() == 3);
    for (const auto& c : controls) {
        CHECK(c.verdict == Verdict::NotInvariant);
        CHECK(c.per_generator[0].projection >= 1e-1);
        CHECK_FALSE(c.per_generator[0].structural.has_value());
    }
    CHECK(std::abs(controls[0].per_generator[0].projection - 1.0) <= 1e-14);

    const auto z = span_report("span{z}", {CoeffSeries::monomial(1)}, 8);
    CHECK(z.verdict == Verdict::NotInvariant);
    CHECK(z.per_generator[0].projection == 1.0);
}

TEST_CASE("projection and structural tests agree in the pass direction") {
    for (const auto& spec : {make_spec({0.0, 0.7}, {}, {}, 4, 128, 16),
                             make_spec({cplx{-0.2, 0.5}}, {{cplx{0.0, 1.0}, 0.4}}, {cplx{0.0, 1.0}, -1.0}, 6, 128, 16),
                             make_spec({}, {{1.0, 1.0}}, {1.0}, 3, 96, 8)}) {
        const auto rep = invariance_report(spec);
        bool structural_pass = true;
        for (const auto& g : rep.per_generator) structural_pass = structural_pass && *g.structural <= kStructuralTol;
        CHECK(structural_pass);
        CHECK(rep.verdict == Verdict::Invariant);
    }
}

TEST_CASE("raising the buffer never worsens projection residuals") {
    auto spec = make_spec({0.5}, {{1.0, 0.2}}, {1.0}, 4, 128, 8);
    std::vector<double> prev;
    for (std::size_t b : {8, 32, 64}) {
        spec.buffer = b;
        const auto rep = invariance_report(spec);
        std::vector<double> cur;
        for (const auto& g : rep.per_generator) cur.push_back(g.projection);
        for (std::size_t j = 0; j < prev.size(); ++j) CHECK(cur[j] <= prev[j] + 1e-12);
        prev = cur;
    }
}

TEST_CASE("verdict thresholds") {
    CHECK_THROWS_AS(invariance_report(acceptance_spec(), 1e-1, 1e-8), std::invalid_argument);
    // With an absurdly strict pass tolerance the gray zone is reported, not resolved.
    const auto rep = span_report("span{1, z}", {CoeffSeries::constant(1.0), CoeffSeries::monomial(1)}, 4, 1e-8, 0.99);
    CHECK(rep.verdict == Verdict::NotInvariant);
    const auto gray = span_report("span{1, z}", {CoeffSeries::constant(1.0), CoeffSeries::monomial(1)}, 4, 1e-8, 1.1);
    CHECK(gray.verdict == Verdict::Inconclusive);
}

TEST_CASE("lattice endpoints") {
    const auto ends = lattice_endpoints(32);
    REQUIRE(ends.size() == 2);
    CHECK(ends[0].label == "{0}");
    CHECK(ends[0].verdict == Verdict::Invariant);
    CHECK(ends[0].per_generator.empty());
    CHECK(ends[1].verdict == Verdict::Invariant);
    CHECK_THROWS(lattice_endpoints(4));
}
