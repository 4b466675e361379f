#pragma once

// Inner functions G built from a finite zero list and finitely many
// boundary point masses, and the finite boundary sets K they may be
// associated with.

#include <cstddef>
#include <vector>

#include "svlab/series.hpp"

namespace svlab {

/// Minimum distance of a zero from the unit circle.
inline constexpr double kZeroMargin = 1e-9;

/// Finite closed subset of the unit circle. Points are renormalized to
/// modulus one and kept in insertion order.
class BoundarySet {
public:
    BoundarySet() = default;
    /// Throws std::invalid_argument if a point is off the circle by more
    /// than 1e-12 or two points are within chordal distance 1e-9.
    explicit BoundarySet(std::vector<cplx> points);

    const std::vector<cplx>& points() const noexcept { return points_; }
    std::size_t size() const noexcept { return points_.size(); }
    bool empty() const noexcept { return points_.empty(); }
    /// Membership up to chordal distance 1e-9.
    bool contains(cplx zeta) const noexcept;

    friend bool operator==(const BoundarySet&, const BoundarySet&) = default;

private:
    std::vector<cplx> points_;
};

struct Atom {
    cplx point;
    double mass;
    friend bool operator==(const Atom&, const Atom&) = default;
};

/// G = B * S with B the Blaschke product over `zeros` (repeats are
/// multiplicities) and S = exp(-sum m_j (zeta_j + z)/(zeta_j - z)).
struct InnerFunctionSpec {
    std::vector<cplx> zeros;
    std::vector<Atom> atoms;

    /// Throws std::invalid_argument on a zero within kZeroMargin of the
    /// circle, a non-positive or non-finite mass, or an off-circle atom.
    void validate() const;

    /// Number of zeros at the origin.
    std::size_t zeros_at_origin() const noexcept;

    friend bool operator==(const InnerFunctionSpec&, const InnerFunctionSpec&) = default;
};

/// Largest |a|^(order+1) over the zeros: the size of the Taylor tail a
/// Blaschke factor leaves beyond `order`.
double blaschke_tail(const InnerFunctionSpec& spec, std::size_t order);

/// Throws std::invalid_argument when blaschke_tail exceeds 1e-8, i.e. a zero
/// sits too close to the circle for the series to resolve it at `order`.
void check_resolvable(const InnerFunctionSpec& spec, std::size_t order);

/// Every atom lies in K. For a finite zero list the limit-point clause has
/// nothing to check.
bool associated_with(const InnerFunctionSpec& spec, const BoundarySet& boundary);

/// Unimodular factor |a|/a of the Blaschke factor at a != 0.
cplx blaschke_phase(cplx a);

CoeffSeries blaschke_expand(const std::vector<cplx>& zeros, std::size_t order);
CoeffSeries singular_expand(const std::vector<Atom>& atoms, std::size_t order);
/// Taylor coefficients of 1/S; they grow, so only short windows are usable.
CoeffSeries singular_reciprocal_expand(const std::vector<Atom>& atoms, std::size_t order);
CoeffSeries inner_expand(const InnerFunctionSpec& spec, std::size_t order);

/// Closed-form value of the Blaschke product at z (|z| <= 1).
cplx blaschke_value(const std::vector<cplx>& zeros, cplx z);

/// max over `samples` equispaced circle points of ||B(e^it)| - 1|, using the
/// rational formula. Throws std::invalid_argument when atoms are present.
double boundary_modulus_check(const InnerFunctionSpec& spec, std::size_t samples);

/// prod_j (z - zeta_j), monic of degree |K|.
CoeffSeries vanish_polynomial(const BoundarySet& boundary);

}  // namespace svlab
