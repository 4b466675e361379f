#pragma once

// The differentiation, Volterra, shift and shift-plus-Volterra operators as
// exact maps between coefficient spaces of adjacent truncation orders.

#include <cstddef>
#include <string_view>

#include <Eigen/Dense>

#include "svlab/series.hpp"

namespace svlab {

enum class OperatorKind { Derivative, Volterra, Shift, ShiftPlusVolterra };

std::string_view to_string(OperatorKind kind);
/// Throws std::invalid_argument for unknown names.
OperatorKind operator_kind_from_string(std::string_view name);

/// Dense coefficient matrix of an operator acting on order in_order series.
struct OperatorMatrix {
    OperatorKind kind;
    std::size_t in_order;
    std::size_t out_order;
    Eigen::MatrixXcd entries;  // (out_order + 1) x (in_order + 1)
};

/// (Df)_n = (n+1) a_{n+1}; order N -> N-1 (order 0 -> 0).
CoeffSeries apply_D(const CoeffSeries& f);
/// (Vf)_0 = 0, (Vf)_n = a_{n-1} / n; order N -> N+1.
CoeffSeries apply_V(const CoeffSeries& f);
/// Shift by one index; order N -> N+1.
CoeffSeries apply_Mz(const CoeffSeries& f);
/// Mz f + V f.
CoeffSeries apply_T(const CoeffSeries& f);
/// Closed-form recurrence (Tf)_n = a_{n-1} (n+1)/n, kept as an independent
/// route to cross-check apply_T.
CoeffSeries apply_T_recurrence(const CoeffSeries& f);

CoeffSeries apply(OperatorKind kind, const CoeffSeries& f);

OperatorMatrix matrix_of(OperatorKind kind, std::size_t in_order);

/// Matrix-vector product; f must have order m.in_order.
CoeffSeries apply_matrix(const OperatorMatrix& m, const CoeffSeries& f);

/// max |V_{N+1} T_N - Mz_{N+1} V_N| over all entries.
double similarity_residual(std::size_t order);

struct InverseResiduals {
    double dv_residual;  // max |D V f - f|
    double vd_residual;  // max |V D f - (f - f(0))|
};

InverseResiduals inverse_residuals(const CoeffSeries& f);

}  // namespace svlab
