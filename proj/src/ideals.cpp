#include "svlab/ideals.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "svlab/operators.hpp"

namespace svlab {

namespace {

constexpr double kIndependenceTol = 1e-10;

double l1_mass(std::span<const cplx> a) {
    double s = 0.0;
    for (cplx c : a) s += std::abs(c);
    return s;
}

double max_abs(std::span<const cplx> a) {
    double m = 0.0;
    for (cplx c : a) m = std::max(m, std::abs(c));
    return m;
}

// p(z) = (z - a) q(z) + r, evaluated from the top coefficient down, which is
// stable for |a| <= 1. Returns r; p is replaced by q.
cplx divide_linear(std::vector<cplx>& p, cplx a) {
    if (p.size() <= 1) {
        const cplx r = p.empty() ? cplx{} : p[0];
        p.assign(1, cplx{});
        return r;
    }
    std::vector<cplx> q(p.size() - 1);
    cplx acc{};
    for (std::size_t k = p.size() - 1; k >= 1; --k) {
        acc = p[k] + a * acc;
        q[k - 1] = acc;
    }
    const cplx r = p[0] + a * acc;
    p = std::move(q);
    return r;
}

}  // namespace

void IdealSpec::validate() const {
    inner.validate();
    if (!associated_with(inner, boundary))
        throw std::invalid_argument("inner function is not associated with the boundary set");
    if (generator_count < 1) throw std::invalid_argument("generator_count must be at least 1");
    if (order < generator_count + boundary.size() + 8)
        throw std::invalid_argument("order too small for the requested number of generators");
}

std::size_t IdealSpec::origin_shift() const noexcept { return inner.zeros_at_origin() == 0 ? 1 : 0; }

IdealBasis build_ideal_basis(const IdealSpec& spec) {
    spec.validate();
    const std::size_t top = spec.order + spec.buffer;
    const std::size_t t = spec.origin_shift();
    const std::size_t inner_order = top - spec.boundary.size() - t - (spec.generator_count - 1);

    CoeffSeries h = mul(inner_expand(spec.inner, inner_order), vanish_polynomial(spec.boundary));
    if (t == 1) h = apply_Mz(h);

    IdealBasis basis{spec, {}};
    basis.generators.reserve(spec.generator_count);
    basis.generators.push_back(truncate(h, top));
    for (std::size_t j = 1; j < spec.generator_count; ++j)
        basis.generators.push_back(truncate(apply_Mz(basis.generators.back()), top));
    return basis;
}

SubspaceBasis build_subspace_basis(const IdealBasis& ideal) {
    SubspaceBasis s{ideal.spec, {}, 0.0};
    for (const auto& h : ideal.generators) s.generators.push_back(apply_D(h));

    const auto rows = static_cast<Eigen::Index>(s.generators.front().order() + 1);
    Eigen::MatrixXcd cols(rows, static_cast<Eigen::Index>(s.generators.size()));
    for (Eigen::Index j = 0; j < cols.cols(); ++j) {
        const auto& g = s.generators[static_cast<std::size_t>(j)];
        for (Eigen::Index n = 0; n < rows; ++n) cols(n, j) = g[static_cast<std::size_t>(n)];
        const double nrm = cols.col(j).norm();
        if (nrm > 0.0) cols.col(j) /= nrm;
    }
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(cols);
    s.min_singular_value = svd.singularValues().minCoeff();
    if (!(s.min_singular_value > kIndependenceTol))
        throw DegenerateSubspace("subspace generators are linearly dependent");
    return s;
}

MembershipResult membership_residual(const CoeffSeries& f, const IdealSpec& spec) {
    spec.validate();
    MembershipResult res;
    const double mass = l1_mass(f.coeffs());
    if (mass == 0.0) return res;
    if (std::abs(f[0]) > 1e-15 * mass) {
        res.residual = std::numeric_limits<double>::infinity();
        res.status = Membership::NotInS0;
        return res;
    }

    std::vector<cplx> g(f.coeffs().begin(), f.coeffs().end());
    const std::size_t m0 = spec.inner.zeros_at_origin();
    if (g.size() <= m0) g.resize(m0 + 1);
    for (std::size_t k = 0; k < m0; ++k) res.origin_residual = std::max(res.origin_residual, std::abs(g[k]) / mass);
    g.erase(g.begin(), g.begin() + static_cast<std::ptrdiff_t>(m0));

    std::vector<cplx> nonzero;
    for (cplx a : spec.inner.zeros)
        if (a != cplx{}) nonzero.push_back(a);

    for (cplx a : nonzero) {
        const double scale = l1_mass(g);
        const cplx r = divide_linear(g, a);
        if (scale > 0.0) res.zero_residual = std::max(res.zero_residual, std::abs(r) / scale);
    }
    for (cplx zeta : spec.boundary.points()) {
        const double scale = l1_mass(g);
        const cplx r = divide_linear(g, zeta);
        if (scale > 0.0) res.boundary_residual = std::max(res.boundary_residual, std::abs(r) / scale);
    }

    // Restore the Blaschke denominators: v = g * prod (1 - conj(a) z).
    CoeffSeries v{std::vector<cplx>(g)};
    for (cplx a : nonzero) v = mul(v, CoeffSeries{1.0, -std::conj(a)});

    const std::size_t window = 3 * spec.order / 4;
    const std::size_t head = spec.order / 2;
    const CoeffSeries vw = truncate(v, window);
    const double vmax = max_abs(vw.coeffs());
    if (vmax > 0.0) {
        // Best fit of v by S * u with deg u <= head, via a Toeplitz least-squares solve.
        // Deconvolving by 1/S directly amplifies rounding like the growth of 1/S.
        const auto s = singular_expand(spec.inner.atoms, window);
        const auto W = static_cast<Eigen::Index>(window);
        const auto H = static_cast<Eigen::Index>(head);
        Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(W + 1, H + 1);
        for (Eigen::Index n = 0; n <= W; ++n)
            for (Eigen::Index k = 0; k <= std::min(n, H); ++k) A(n, k) = s[static_cast<std::size_t>(n - k)];
        Eigen::VectorXcd rhs(W + 1);
        for (Eigen::Index n = 0; n <= W; ++n) rhs(n) = vw[static_cast<std::size_t>(n)];
        const Eigen::VectorXcd u = A.colPivHouseholderQr().solve(rhs);
        res.cofactor_residual = (A * u - rhs).cwiseAbs().maxCoeff() / vmax;
    }

    res.residual = std::max({res.origin_residual, res.zero_residual, res.boundary_residual, res.cofactor_residual});
    if (res.residual <= kMemberTol)
        res.status = Membership::Member;
    else if (res.residual >= kNonMemberThreshold)
        res.status = Membership::NonMember;
    else
        res.status = Membership::Inconclusive;
    return res;
}

}  // namespace svlab
