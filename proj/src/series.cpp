#include "svlab/series.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace svlab {

namespace {

bool finite(cplx c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); }

// 1 - q^n for q = 1 - 2^-k without cancellation.
double one_minus_power(int k, std::size_t n) {
    if (n == 0) return 0.0;
    const double log_q = std::log1p(-std::ldexp(1.0, -k));
    return -std::expm1(static_cast<double>(n) * log_q);
}

}  // namespace

CoeffSeries::CoeffSeries(std::vector<cplx> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw std::invalid_argument("CoeffSeries needs at least one coefficient");
    for (std::size_t n = 0; n < coeffs_.size(); ++n) {
        if (!finite(coeffs_[n]))
            throw std::invalid_argument("non-finite coefficient at index " + std::to_string(n));
    }
}

CoeffSeries CoeffSeries::zero(std::size_t order) {
    return CoeffSeries(std::vector<cplx>(order + 1));
}

CoeffSeries CoeffSeries::constant(cplx c, std::size_t order) {
    std::vector<cplx> a(order + 1);
    a[0] = c;
    return CoeffSeries(std::move(a));
}

CoeffSeries CoeffSeries::monomial(std::size_t n, cplx c) {
    std::vector<cplx> a(n + 1);
    a[n] = c;
    return CoeffSeries(std::move(a));
}

bool CoeffSeries::is_zero() const noexcept {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](cplx c) { return c == cplx{}; });
}

bool operator==(const CoeffSeries& f, const CoeffSeries& g) noexcept {
    const std::size_t n = std::max(f.coeffs_.size(), g.coeffs_.size());
    for (std::size_t k = 0; k < n; ++k) {
        if (f[k] != g[k]) return false;
    }
    return true;
}

CoeffSeries add(const CoeffSeries& f, const CoeffSeries& g) {
    std::vector<cplx> c(std::max(f.order(), g.order()) + 1);
    for (std::size_t n = 0; n < c.size(); ++n) c[n] = f[n] + g[n];
    return CoeffSeries(std::move(c));
}

CoeffSeries sub(const CoeffSeries& f, const CoeffSeries& g) {
    std::vector<cplx> c(std::max(f.order(), g.order()) + 1);
    for (std::size_t n = 0; n < c.size(); ++n) c[n] = f[n] - g[n];
    return CoeffSeries(std::move(c));
}

CoeffSeries scale(const CoeffSeries& f, cplx s) {
    std::vector<cplx> c(f.coeffs().begin(), f.coeffs().end());
    for (auto& x : c) x *= s;
    return CoeffSeries(std::move(c));
}

CoeffSeries mul(const CoeffSeries& f, const CoeffSeries& g) {
    const auto a = f.coeffs();
    const auto b = g.coeffs();
    std::vector<cplx> c(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == cplx{}) continue;
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    }
    return CoeffSeries(std::move(c));
}

CoeffSeries truncate(const CoeffSeries& f, std::size_t order) {
    std::vector<cplx> c(order + 1);
    for (std::size_t n = 0; n <= order; ++n) c[n] = f[n];
    return CoeffSeries(std::move(c));
}

CoeffSeries derivative(const CoeffSeries& f) {
    if (f.order() == 0) return CoeffSeries::zero(0);
    std::vector<cplx> c(f.order());
    for (std::size_t n = 0; n < c.size(); ++n) c[n] = static_cast<double>(n + 1) * f[n + 1];
    return CoeffSeries(std::move(c));
}

double h2_norm(const CoeffSeries& f) {
    double s = 0.0;
    for (cplx a : f.coeffs()) s += std::norm(a);
    return std::sqrt(s);
}

cplx h2_inner(const CoeffSeries& f, const CoeffSeries& g) {
    cplx s{};
    const std::size_t n = std::min(f.order(), g.order());
    for (std::size_t k = 0; k <= n; ++k) s += f[k] * std::conj(g[k]);
    return s;
}

double s2_norm(const CoeffSeries& f) {
    const double d = h2_norm(derivative(f));
    const double h = h2_norm(f);
    return std::sqrt(d * d + h * h);
}

cplx s2_inner(const CoeffSeries& f, const CoeffSeries& g) {
    return h2_inner(derivative(f), derivative(g)) + h2_inner(f, g);
}

cplx eval(const CoeffSeries& f, cplx z) {
    if (std::abs(z) > 1.0 + 1e-12)
        throw std::domain_error("eval: truncated series is only evaluated on the closed disk");
    const auto a = f.coeffs();
    cplx acc{};
    for (std::size_t n = a.size(); n-- > 0;) acc = acc * z + a[n];
    return acc;
}

SupBound sup_bound(const CoeffSeries& f, std::size_t samples) {
    if (samples == 0) throw std::invalid_argument("sup_bound: samples must be positive");
    const double r = 1.0 - 1.0 / (4.0 * static_cast<double>(samples));
    double sup = 0.0;
    for (std::size_t k = 0; k < samples; ++k) {
        const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(samples);
        sup = std::max(sup, std::abs(eval(f, std::polar(r, theta))));
    }
    return {2.0 * h2_norm(derivative(f)) + std::abs(f[0]), sup};
}

CoeffSeries dilate(const CoeffSeries& f, double q) {
    if (!(q > 0.0 && q <= 1.0)) throw std::domain_error("dilate: q must lie in (0, 1]");
    std::vector<cplx> c(f.coeffs().begin(), f.coeffs().end());
    double qn = 1.0;
    for (auto& x : c) {
        x *= qn;
        qn *= q;
    }
    return CoeffSeries(std::move(c));
}

DensitySchedule density_schedule(const CoeffSeries& f, double eps) {
    if (!(eps > 0.0)) throw std::domain_error("density_schedule: eps must be positive");
    const std::size_t order = f.order();

    // Squared masses of f and of Df, indexed by the exponent of f.
    std::vector<double> w0(order + 1), w1(order + 1);
    for (std::size_t n = 0; n <= order; ++n) {
        w0[n] = std::norm(f[n]);
        w1[n] = static_cast<double>(n) * static_cast<double>(n) * w0[n];
    }
    std::vector<double> tail0(order + 2, 0.0), tail1(order + 2, 0.0);
    for (std::size_t n = order + 1; n-- > 0;) {
        tail0[n] = tail0[n + 1] + w0[n];
        tail1[n] = tail1[n + 1] + w1[n];
    }

    DensitySchedule s;
    s.target_eps = eps;
    const double half = eps / 2.0;
    std::size_t N = 0;
    while (N < order && !(tail0[N + 1] < half && tail1[N + 1] < half)) ++N;
    s.tail_index = N;

    const double head0 = tail0[0] - tail0[N + 1];
    const double head1 = tail1[0] - tail1[N + 1];
    int k = 1;
    for (; k <= 60; ++k) {
        const double c = one_minus_power(k, N);
        if (c * c * head0 < half && c * c * head1 < half) break;
    }
    if (k > 60) throw std::runtime_error("density_schedule: dyadic grid exhausted");
    s.grid_exponent = k;
    s.dilation_param = 1.0 - std::ldexp(1.0, -k);

    double e0 = 0.0, e1 = 0.0;
    for (std::size_t n = 0; n <= order; ++n) {
        const double c = one_minus_power(k, n);
        e0 += c * c * w0[n];
        e1 += c * c * w1[n];
    }
    s.h2_error_sq = e0;
    s.s2_error_sq = e0 + e1;
    if (!(e0 < eps && s.s2_error_sq < 2.0 * eps))
        throw std::runtime_error("density_schedule: re-summation check failed");
    return s;
}

double max_abs_diff(const CoeffSeries& f, const CoeffSeries& g) {
    double m = 0.0;
    const std::size_t n = std::max(f.order(), g.order());
    for (std::size_t k = 0; k <= n; ++k) m = std::max(m, std::abs(f[k] - g[k]));
    return m;
}

}  // namespace svlab
