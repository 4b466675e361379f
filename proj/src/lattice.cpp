#include "svlab/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "svlab/operators.hpp"

namespace svlab {

namespace {

using Vec = std::vector<cplx>;

Vec head(const CoeffSeries& f, std::size_t order) {
    Vec v(order + 1);
    for (std::size_t n = 0; n <= order; ++n) v[n] = f[n];
    return v;
}

cplx dot(const Vec& a, const Vec& b) {  // <a, b> = sum a conj(b)
    cplx s{};
    for (std::size_t n = 0; n < a.size(); ++n) s += a[n] * std::conj(b[n]);
    return s;
}

double norm2(const Vec& a) {
    double s = 0.0;
    for (cplx c : a) s += std::norm(c);
    return std::sqrt(s);
}

void remove_components(Vec& w, const std::vector<Vec>& q) {
    for (int pass = 0; pass < 2; ++pass) {
        for (const auto& e : q) {
            const cplx c = dot(w, e);
            for (std::size_t n = 0; n < w.size(); ++n) w[n] -= c * e[n];
        }
    }
}

Verdict decide(const std::vector<GeneratorResidual>& rows, double pass_tol, double fail_thr) {
    bool all_pass = true;
    for (const auto& r : rows) {
        if (r.projection >= fail_thr) return Verdict::NotInvariant;
        if (!(r.projection <= pass_tol)) all_pass = false;
        if (r.structural && !(*r.structural <= kStructuralTol)) all_pass = false;
    }
    return all_pass ? Verdict::Invariant : Verdict::Inconclusive;
}

// Orthonormal basis of the span at a fixed test order; built once, reused per vector.
class OrthoBasis {
public:
    OrthoBasis(const std::vector<CoeffSeries>& basis, std::size_t test_order) : order_(test_order) {
        if (basis.empty()) throw std::invalid_argument("projection_residual: empty basis");
        for (const auto& b : basis) {
            Vec w = head(b, order_);
            const double before = norm2(w);
            if (before == 0.0) {
                deficient_ = true;
                continue;
            }
            remove_components(w, q_);
            const double after = norm2(w);
            if (after <= 1e-12 * before) {
                deficient_ = true;
                continue;
            }
            for (auto& c : w) c /= after;
            q_.push_back(std::move(w));
        }
    }

    Projection project(const CoeffSeries& v) const {
        Projection p;
        p.rank = q_.size();
        p.rank_deficient = deficient_;
        Vec r = head(v, order_);
        const double vn = norm2(r);
        if (vn == 0.0) return p;
        remove_components(r, q_);
        p.residual = norm2(r) / vn;
        return p;
    }

private:
    std::size_t order_;
    std::vector<Vec> q_;
    bool deficient_ = false;
};

void check_tolerances(double pass_tol, double fail_thr) {
    if (!(pass_tol < fail_thr)) throw std::invalid_argument("pass tolerance must be below the fail threshold");
}

}  // namespace

std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::Invariant: return "Invariant";
        case Verdict::NotInvariant: return "NotInvariant";
        case Verdict::Inconclusive: return "Inconclusive";
    }
    return "?";
}

std::vector<double> structural_check(const IdealBasis& ideal) {
    const std::size_t N = ideal.spec.order;
    const auto& h = ideal.generators;
    std::vector<double> out;
    out.reserve(h.size());
    for (std::size_t j = 0; j < h.size(); ++j) {
        const CoeffSeries next = j + 1 < h.size() ? h[j + 1] : apply_Mz(h[j]);
        const CoeffSeries lhs = truncate(apply_T(apply_D(h[j])), N);
        const CoeffSeries rhs = truncate(apply_D(next), N);
        out.push_back(max_abs_diff(lhs, rhs));
    }
    return out;
}

Projection projection_residual(const CoeffSeries& v, const std::vector<CoeffSeries>& basis,
                               std::size_t test_order) {
    return OrthoBasis(basis, test_order).project(v);
}

InvarianceReport invariance_report(const IdealSpec& spec, double pass_tol, double fail_thr) {
    check_tolerances(pass_tol, fail_thr);
    const IdealBasis ideal = build_ideal_basis(spec);
    const SubspaceBasis sub = build_subspace_basis(ideal);
    const std::vector<double> structural = structural_check(ideal);

    // T raises degree by one, so the span is extended by the next tower step.
    std::vector<CoeffSeries> extended = sub.generators;
    extended.push_back(apply_D(apply_Mz(ideal.generators.back())));

    InvarianceReport rep;
    rep.label = "D(I(G;K))";
    rep.spec = spec;
    rep.pass_tol = pass_tol;
    rep.fail_threshold = fail_thr;
    rep.test_order = spec.order;
    rep.buffer = spec.buffer;
    const OrthoBasis ortho(extended, spec.order);
    for (std::size_t j = 0; j < sub.generators.size(); ++j) {
        const Projection p = ortho.project(apply_T(sub.generators[j]));
        rep.rank_deficient = rep.rank_deficient || p.rank_deficient;
        rep.per_generator.push_back({j + 1, structural[j], p.residual});
    }
    rep.verdict = decide(rep.per_generator, pass_tol, fail_thr);
    return rep;
}

InvarianceReport span_report(std::string label, const std::vector<CoeffSeries>& basis, std::size_t test_order,
                             double pass_tol, double fail_thr) {
    check_tolerances(pass_tol, fail_thr);
    InvarianceReport rep;
    rep.label = std::move(label);
    rep.pass_tol = pass_tol;
    rep.fail_threshold = fail_thr;
    rep.test_order = test_order;
    const OrthoBasis ortho(basis, test_order);
    for (std::size_t j = 0; j < basis.size(); ++j) {
        const Projection p = ortho.project(apply_T(basis[j]));
        rep.rank_deficient = rep.rank_deficient || p.rank_deficient;
        rep.per_generator.push_back({j + 1, std::nullopt, p.residual});
    }
    rep.verdict = decide(rep.per_generator, pass_tol, fail_thr);
    return rep;
}

std::vector<InvarianceReport> negative_controls() {
    std::vector<InvarianceReport> out;
    out.push_back(span_report("span{1}", {CoeffSeries::constant(1.0)}, 8));

    IdealSpec spec;
    spec.inner.zeros = {0.5};
    spec.generator_count = 1;
    spec.order = 64;
    spec.buffer = 8;
    const IdealBasis ideal = build_ideal_basis(spec);
    out.push_back(span_report("span{D h1}, G = b_{1/2}, no tower step", {apply_D(ideal.generators.front())},
                              spec.order));

    out.push_back(span_report("span{z - 1/2}", {CoeffSeries{-0.5, 1.0}}, 8));
    return out;
}

std::vector<InvarianceReport> lattice_endpoints(std::size_t order) {
    if (order < 9) throw std::invalid_argument("lattice_endpoints: order must be at least 9");
    std::vector<InvarianceReport> out;

    InvarianceReport zero;
    zero.label = "{0}";
    zero.test_order = order;
    zero.verdict = Verdict::Invariant;
    out.push_back(zero);

    IdealSpec full;
    full.generator_count = order - 8;
    full.order = order;
    full.buffer = 8;
    InvarianceReport whole = invariance_report(full);
    whole.label = "H2 = D(S2_0), G = 1, K empty";
    out.push_back(std::move(whole));
    return out;
}

}  // namespace svlab
