#pragma once

// Certification that derivative images of ideal shadows are invariant under
// T = Mz + V, by an exact structural identity and by least-squares
// projection residuals, plus spans that must fail the same test.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "svlab/ideals.hpp"
#include "svlab/series.hpp"

namespace svlab {

enum class Verdict { Invariant, NotInvariant, Inconclusive };

std::string_view to_string(Verdict v);

inline constexpr double kDefaultPassTol = 1e-8;
inline constexpr double kDefaultFailThreshold = 1e-1;
inline constexpr double kStructuralTol = 1e-12;

struct GeneratorResidual {
    std::size_t index;                  // 1-based generator index j
    std::optional<double> structural;   // absent for spans with no tower structure
    double projection;
};

struct InvarianceReport {
    std::string label;
    std::optional<IdealSpec> spec;
    std::vector<GeneratorResidual> per_generator;
    Verdict verdict = Verdict::Inconclusive;
    double pass_tol = kDefaultPassTol;
    double fail_threshold = kDefaultFailThreshold;
    double structural_tol = kStructuralTol;
    std::size_t test_order = 0;
    std::size_t buffer = 0;
    bool rank_deficient = false;
};

/// residual_j = max |T D h_j - D h_{j+1}| on coefficients 0..N; the last
/// generator is compared with D(z h_m).
std::vector<double> structural_check(const IdealBasis& ideal);

struct Projection {
    double residual = 0.0;  // ||v - P v|| / ||v||, 0 for v = 0
    std::size_t rank = 0;
    bool rank_deficient = false;
};

/// Relative distance from v to span(basis) after truncating everything to
/// `test_order`, via modified Gram-Schmidt with one reorthogonalization pass.
/// Throws std::invalid_argument for an empty basis.
Projection projection_residual(const CoeffSeries& v, const std::vector<CoeffSeries>& basis,
                               std::size_t test_order);

/// Full certification of D(I(G;K)) for one spec. Throws std::invalid_argument
/// unless pass_tol < fail_thr.
InvarianceReport invariance_report(const IdealSpec& spec, double pass_tol = kDefaultPassTol,
                                   double fail_thr = kDefaultFailThreshold);

/// Projection test of T b_j against span(basis) for an arbitrary span.
InvarianceReport span_report(std::string label, const std::vector<CoeffSeries>& basis,
                             std::size_t test_order, double pass_tol = kDefaultPassTol,
                             double fail_thr = kDefaultFailThreshold);

/// span{1}, span{D h_1} without the tower step (G = b_{1/2}, K empty), and
/// span{z - 1/2}. Each one must come back NotInvariant.
std::vector<InvarianceReport> negative_controls();

/// The trivial subspace {0} and the whole space D(S2_0) at `order`.
std::vector<InvarianceReport> lattice_endpoints(std::size_t order);

}  // namespace svlab
