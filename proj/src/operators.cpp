#include "svlab/operators.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace svlab {

std::string_view to_string(OperatorKind kind) {
    switch (kind) {
        case OperatorKind::Derivative: return "Derivative";
        case OperatorKind::Volterra: return "Volterra";
        case OperatorKind::Shift: return "Shift";
        case OperatorKind::ShiftPlusVolterra: return "ShiftPlusVolterra";
    }
    return "?";
}

OperatorKind operator_kind_from_string(std::string_view name) {
    for (auto k : {OperatorKind::Derivative, OperatorKind::Volterra, OperatorKind::Shift,
                   OperatorKind::ShiftPlusVolterra}) {
        if (name == to_string(k)) return k;
    }
    throw std::invalid_argument("unknown operator kind: " + std::string(name));
}

CoeffSeries apply_D(const CoeffSeries& f) { return derivative(f); }

CoeffSeries apply_V(const CoeffSeries& f) {
    std::vector<cplx> c(f.order() + 2);
    for (std::size_t n = 1; n < c.size(); ++n) c[n] = f[n - 1] * (1.0 / static_cast<double>(n));
    return CoeffSeries(std::move(c));
}

CoeffSeries apply_Mz(const CoeffSeries& f) {
    std::vector<cplx> c(f.order() + 2);
    for (std::size_t n = 1; n < c.size(); ++n) c[n] = f[n - 1];
    return CoeffSeries(std::move(c));
}

CoeffSeries apply_T(const CoeffSeries& f) { return add(apply_Mz(f), apply_V(f)); }

CoeffSeries apply_T_recurrence(const CoeffSeries& f) {
    std::vector<cplx> c(f.order() + 2);
    for (std::size_t n = 1; n < c.size(); ++n) {
        const double nd = static_cast<double>(n);
        c[n] = f[n - 1] * ((nd + 1.0) / nd);
    }
    return CoeffSeries(std::move(c));
}

CoeffSeries apply(OperatorKind kind, const CoeffSeries& f) {
    switch (kind) {
        case OperatorKind::Derivative: return apply_D(f);
        case OperatorKind::Volterra: return apply_V(f);
        case OperatorKind::Shift: return apply_Mz(f);
        case OperatorKind::ShiftPlusVolterra: return apply_T(f);
    }
    throw std::logic_error("unreachable operator kind");
}

OperatorMatrix matrix_of(OperatorKind kind, std::size_t in_order) {
    const auto N = static_cast<Eigen::Index>(in_order);
    OperatorMatrix m{kind, in_order, 0, {}};
    if (kind == OperatorKind::Derivative) {
        m.out_order = in_order == 0 ? 0 : in_order - 1;
        m.entries = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(m.out_order) + 1, N + 1);
        for (Eigen::Index n = 0; n < N; ++n) m.entries(n, n + 1) = static_cast<double>(n + 1);
        return m;
    }
    m.out_order = in_order + 1;
    m.entries = Eigen::MatrixXcd::Zero(N + 2, N + 1);
    for (Eigen::Index n = 1; n <= N + 1; ++n) {
        const double nd = static_cast<double>(n);
        switch (kind) {
            case OperatorKind::Volterra: m.entries(n, n - 1) = 1.0 / nd; break;
            case OperatorKind::Shift: m.entries(n, n - 1) = 1.0; break;
            default: m.entries(n, n - 1) = 1.0 + 1.0 / nd; break;
        }
    }
    return m;
}

CoeffSeries apply_matrix(const OperatorMatrix& m, const CoeffSeries& f) {
    if (f.order() != m.in_order) throw std::invalid_argument("apply_matrix: order mismatch");
    Eigen::VectorXcd x(static_cast<Eigen::Index>(f.order()) + 1);
    for (Eigen::Index n = 0; n < x.size(); ++n) x(n) = f[static_cast<std::size_t>(n)];
    const Eigen::VectorXcd y = m.entries * x;
    return CoeffSeries(std::vector<cplx>(y.data(), y.data() + y.size()));
}

double similarity_residual(std::size_t order) {
    const Eigen::MatrixXcd vt = matrix_of(OperatorKind::Volterra, order + 1).entries *
                    matrix_of(OperatorKind::ShiftPlusVolterra, order).entries;
    const Eigen::MatrixXcd mv = matrix_of(OperatorKind::Shift, order + 1).entries *
                    matrix_of(OperatorKind::Volterra, order).entries;
    return (vt - mv).cwiseAbs().maxCoeff();
}

InverseResiduals inverse_residuals(const CoeffSeries& f) {
    const CoeffSeries centered = sub(f, CoeffSeries::constant(f[0]));
    return {max_abs_diff(apply_D(apply_V(f)), f), max_abs_diff(apply_V(apply_D(f)), centered)};
}

}  // namespace svlab
