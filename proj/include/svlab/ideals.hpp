#pragma once

// Finite-order shadows of the closed ideals I(G;K) of functions vanishing at
// the origin, divisible by an inner function G and vanishing on K, and of
// their derivative images.

#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

#include "svlab/inner.hpp"
#include "svlab/series.hpp"

namespace svlab {

struct IdealSpec {
    InnerFunctionSpec inner;
    BoundarySet boundary;
    std::size_t generator_count = 1;
    std::size_t order = 0;
    std::size_t buffer = 0;

    /// Throws std::invalid_argument unless G is valid and associated with K,
    /// generator_count >= 1 and order >= generator_count + |K| + 8.
    void validate() const;
    /// 1 when neither G nor q_K vanishes at the origin, else 0.
    std::size_t origin_shift() const noexcept;

    friend bool operator==(const IdealSpec&, const IdealSpec&) = default;
};

/// Shift tower h_1, z h_1, ..., z^{m-1} h_1, each stored at order N + b.
struct IdealBasis {
    IdealSpec spec;
    std::vector<CoeffSeries> generators;
};

struct SubspaceBasis {
    IdealSpec spec;
    std::vector<CoeffSeries> generators;  // D h_j
    double min_singular_value = 0.0;      // of the column-normalized matrix
};

/// Raised when the derivative images fail the independence check.
class DegenerateSubspace : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// h_1 = z^t q_K G_L with G_L the Taylor expansion of G at order
/// L = N + b - |K| - t - (m - 1). Every product is exact, so each h_j
/// vanishes on K to rounding and h_{j+1} = z h_j holds with no truncation.
IdealBasis build_ideal_basis(const IdealSpec& spec);

/// Throws DegenerateSubspace if the smallest singular value of the
/// column-normalized generator matrix is <= 1e-10.
SubspaceBasis build_subspace_basis(const IdealBasis& ideal);

enum class Membership { Member, NonMember, Inconclusive, NotInS0 };

struct MembershipResult {
    double residual = 0.0;
    Membership status = Membership::Member;
    double origin_residual = 0.0;    // coefficients below the origin multiplicity
    double zero_residual = 0.0;      // worst relative remainder at a Blaschke zero
    double boundary_residual = 0.0;  // worst relative remainder at a point of K
    double cofactor_residual = 0.0;  // least-squares misfit of S * u on the window
};

inline constexpr double kMemberTol = 1e-8;
inline constexpr double kNonMemberThreshold = 1e-2;

/// Numerical divisibility test for f in I(G;K). The origin multiplicity is
/// checked on the leading coefficients, each Blaschke zero and each point of
/// K is divided out by backward synthetic division (remainders relative to
/// the l1 coefficient mass), the Blaschke denominators are multiplied back,
/// and what remains is fitted by S * u with deg u <= N/2 in least squares on
/// the window 0..3N/4 (max-abs misfit relative to the window). `residual` is the largest of the four components; f(0) != 0
/// yields +infinity with status NotInS0.
MembershipResult membership_residual(const CoeffSeries& f, const IdealSpec& spec);

}  // namespace svlab
