#include "svlab/inner.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace svlab {

namespace {

constexpr double kModulusTol = 1e-12;
constexpr double kSeparation = 1e-9;

// exp of a power series: c_0 = e^{E_0}, n c_n = sum_{k=1}^n k E_k c_{n-k}.
CoeffSeries exp_series(const std::vector<cplx>& e) {
    std::vector<cplx> c(e.size());
    c[0] = std::exp(e[0]);
    for (std::size_t n = 1; n < c.size(); ++n) {
        cplx acc{};
        for (std::size_t k = 1; k <= n; ++k) acc += static_cast<double>(k) * e[k] * c[n - k];
        c[n] = acc / static_cast<double>(n);
    }
    return CoeffSeries(std::move(c));
}

// Series of -sum m_j (zeta_j + z)/(zeta_j - z), times `sign`.
std::vector<cplx> singular_exponent(const std::vector<Atom>& atoms, std::size_t order, double sign) {
    std::vector<cplx> e(order + 1);
    for (const auto& atom : atoms) {
        if (!(atom.mass > 0.0) || !std::isfinite(atom.mass))
            throw std::invalid_argument("singular atom mass must be positive and finite");
        const cplx w = std::conj(atom.point);  // zeta^{-1} on the circle
        e[0] -= sign * atom.mass;
        cplx wn = 1.0;
        for (std::size_t n = 1; n <= order; ++n) {
            wn *= w;
            e[n] -= sign * 2.0 * atom.mass * wn;
        }
    }
    return e;
}

CoeffSeries blaschke_factor(cplx a, std::size_t order) {
    if (a == cplx{}) return truncate(CoeffSeries::monomial(1), order);
    // phi (a - z) / (1 - conj(a) z): c_0 = phi a, c_n = phi conj(a)^{n-1} (|a|^2 - 1).
    const cplx phi = blaschke_phase(a);
    const cplx ab = std::conj(a);
    const double d = std::norm(a) - 1.0;
    std::vector<cplx> c(order + 1);
    c[0] = phi * a;
    cplx p = 1.0;
    for (std::size_t n = 1; n <= order; ++n) {
        c[n] = phi * p * d;
        p *= ab;
    }
    return CoeffSeries(std::move(c));
}

}  // namespace

BoundarySet::BoundarySet(std::vector<cplx> points) {
    for (cplx z : points) {
        const double r = std::abs(z);
        if (!std::isfinite(r) || std::abs(r - 1.0) > kModulusTol)
            throw std::invalid_argument("boundary point is not on the unit circle");
        const cplx u = z / r;
        if (contains(u)) throw std::invalid_argument("boundary points must be distinct");
        points_.push_back(u);
    }
}

bool BoundarySet::contains(cplx zeta) const noexcept {
    return std::any_of(points_.begin(), points_.end(),
                       [&](cplx p) { return std::abs(p - zeta) <= kSeparation; });
}

void InnerFunctionSpec::validate() const {
    for (cplx a : zeros) {
        if (!(std::abs(a) <= 1.0 - kZeroMargin))
            throw std::invalid_argument("inner function zero too close to (or outside) the unit circle");
    }
    for (const auto& atom : atoms) {
        if (!(atom.mass > 0.0) || !std::isfinite(atom.mass))
            throw std::invalid_argument("singular atom mass must be positive and finite");
        if (!(std::abs(std::abs(atom.point) - 1.0) <= kModulusTol))
            throw std::invalid_argument("singular atom is not on the unit circle");
    }
}

std::size_t InnerFunctionSpec::zeros_at_origin() const noexcept {
    return static_cast<std::size_t>(std::count(zeros.begin(), zeros.end(), cplx{}));
}

double blaschke_tail(const InnerFunctionSpec& spec, std::size_t order) {
    double worst = 0.0;
    for (cplx a : spec.zeros) worst = std::max(worst, std::pow(std::abs(a), static_cast<double>(order) + 1.0));
    return worst;
}

void check_resolvable(const InnerFunctionSpec& spec, std::size_t order) {
    spec.validate();
    if (blaschke_tail(spec, order) > 1e-8)
        throw std::invalid_argument("a Blaschke zero is too close to the circle to resolve at order " +
                                    std::to_string(order));
}

bool associated_with(const InnerFunctionSpec& spec, const BoundarySet& boundary) {
    return std::all_of(spec.atoms.begin(), spec.atoms.end(),
                       [&](const Atom& a) { return boundary.contains(a.point / std::abs(a.point)); });
}

cplx blaschke_phase(cplx a) { return std::abs(a) / a; }

CoeffSeries blaschke_expand(const std::vector<cplx>& zeros, std::size_t order) {
    for (cplx a : zeros) {
        if (!(std::abs(a) <= 1.0 - kZeroMargin))
            throw std::invalid_argument("blaschke_expand: zero too close to the unit circle");
    }
    CoeffSeries b = CoeffSeries::constant(1.0, order);
    for (cplx a : zeros) b = truncate(mul(b, blaschke_factor(a, order)), order);
    return b;
}

CoeffSeries singular_expand(const std::vector<Atom>& atoms, std::size_t order) {
    return exp_series(singular_exponent(atoms, order, 1.0));
}

CoeffSeries singular_reciprocal_expand(const std::vector<Atom>& atoms, std::size_t order) {
    return exp_series(singular_exponent(atoms, order, -1.0));
}

CoeffSeries inner_expand(const InnerFunctionSpec& spec, std::size_t order) {
    spec.validate();
    return truncate(mul(blaschke_expand(spec.zeros, order), singular_expand(spec.atoms, order)), order);
}

cplx blaschke_value(const std::vector<cplx>& zeros, cplx z) {
    cplx v = 1.0;
    for (cplx a : zeros) {
        if (a == cplx{})
            v *= z;
        else
            v *= blaschke_phase(a) * (a - z) / (1.0 - std::conj(a) * z);
    }
    return v;
}

double boundary_modulus_check(const InnerFunctionSpec& spec, std::size_t samples) {
    if (!spec.atoms.empty())
        throw std::invalid_argument("boundary_modulus_check: singular factors are not unimodular pointwise");
    spec.validate();
    double worst = 0.0;
    for (std::size_t k = 0; k < samples; ++k) {
        const double t = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(samples);
        worst = std::max(worst, std::abs(std::abs(blaschke_value(spec.zeros, std::polar(1.0, t))) - 1.0));
    }
    return worst;
}

CoeffSeries vanish_polynomial(const BoundarySet& boundary) {
    CoeffSeries q = CoeffSeries::constant(1.0);
    for (cplx zeta : boundary.points()) q = mul(q, CoeffSeries{-zeta, 1.0});
    return q;
}

}  // namespace svlab
