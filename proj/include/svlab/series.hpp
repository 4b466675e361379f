#pragma once

// Truncated Taylor series on the unit disk, with the Hardy-space (H2) and
// derivative-Hardy (S2) norms.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace svlab {

using cplx = std::complex<double>;

/// Taylor coefficients a_0..a_N of a holomorphic function at truncation
/// order N. Every coefficient is finite; the order is carried explicitly and
/// never changes implicitly.
class CoeffSeries {
public:
    /// The zero series of order 0.
    CoeffSeries() : coeffs_(1, cplx{0.0, 0.0}) {}

    /// Throws std::invalid_argument if `coeffs` is empty or has a non-finite entry.
    explicit CoeffSeries(std::vector<cplx> coeffs);
    CoeffSeries(std::initializer_list<cplx> coeffs)
        : CoeffSeries(std::vector<cplx>(coeffs)) {}

    static CoeffSeries zero(std::size_t order);
    static CoeffSeries constant(cplx c, std::size_t order = 0);
    static CoeffSeries monomial(std::size_t n, cplx c = 1.0);

    std::size_t order() const noexcept { return coeffs_.size() - 1; }
    std::span<const cplx> coeffs() const noexcept { return coeffs_; }
    /// Coefficient n; zero beyond the order.
    cplx operator[](std::size_t n) const noexcept {
        return n < coeffs_.size() ? coeffs_[n] : cplx{};
    }
    bool is_zero() const noexcept;

    /// Equality after zero-padding to a common order.
    friend bool operator==(const CoeffSeries& f, const CoeffSeries& g) noexcept;

private:
    std::vector<cplx> coeffs_;
};

CoeffSeries add(const CoeffSeries& f, const CoeffSeries& g);
CoeffSeries sub(const CoeffSeries& f, const CoeffSeries& g);
CoeffSeries scale(const CoeffSeries& f, cplx c);

/// Exact Cauchy product; result order is order(f) + order(g).
CoeffSeries mul(const CoeffSeries& f, const CoeffSeries& g);

/// Keeps coefficients 0..order, zero-padding if the series is shorter.
CoeffSeries truncate(const CoeffSeries& f, std::size_t order);

/// Coefficients of f', order reduced by one (order 0 stays order 0).
CoeffSeries derivative(const CoeffSeries& f);

double h2_norm(const CoeffSeries& f);
cplx h2_inner(const CoeffSeries& f, const CoeffSeries& g);
double s2_norm(const CoeffSeries& f);
cplx s2_inner(const CoeffSeries& f, const CoeffSeries& g);

/// Horner evaluation. Throws std::domain_error for |z| > 1.
cplx eval(const CoeffSeries& f, cplx z);

struct SupBound {
    double bound;        // 2 ||Df||_{H2} + |f(0)|
    double sampled_sup;  // max |f| on the sampling circle
};

/// Compares the a-priori sup bound with max |f| over `samples` equispaced
/// points on the circle of radius 1 - 1/(4 samples).
SupBound sup_bound(const CoeffSeries& f, std::size_t samples);

/// f_q(z) = f(qz). Throws std::domain_error unless 0 < q <= 1.
CoeffSeries dilate(const CoeffSeries& f, double q);

/// Dilation parameters that bring f_q within eps of f.
struct DensitySchedule {
    std::size_t tail_index = 0;
    double dilation_param = 0.5;
    double target_eps = 0.0;
    int grid_exponent = 1;        // q = 1 - 2^-grid_exponent
    double h2_error_sq = 0.0;     // ||f - f_q||^2_{H2}, re-summed
    double s2_error_sq = 0.0;     // ||f - f_q||^2_{S2}, re-summed
};

/// Smallest tail index N such that both the tail of f and the tail of Df
/// carry less than eps/2 of squared mass, then the first q = 1 - 2^-k with
/// (1 - q^N)^2 sum_{n<=N} |a_n|^2 < eps/2 and likewise for the weights n^2.
/// The returned errors satisfy h2_error_sq < eps and s2_error_sq < 2 eps.
/// Throws std::domain_error for eps <= 0 and std::runtime_error if the
/// dyadic grid is exhausted before the condition holds.
DensitySchedule density_schedule(const CoeffSeries& f, double eps);

/// Largest |f_n - g_n| after zero-padding.
double max_abs_diff(const CoeffSeries& f, const CoeffSeries& g);

}  // namespace svlab
