#include "sqi/hilbert.hpp"

#include <algorithm>
#include <cmath>

namespace sqi {

namespace {

bool all_finite(const Matrix& m) {
    return m.allFinite();
}

bool all_finite(const CVector& v) {
    return v.allFinite();
}

std::string dim_text(Eigen::Index a, Eigen::Index b) {
    return std::to_string(a) + " vs " + std::to_string(b);
}

// Extremal eigenvalues of the hermitian part (A + A^dagger)/2. The
// symmetrization keeps the solver well-defined for operators that fail the
// hermiticity check; their residual is reported separately.
std::pair<double, double> extremal_eigenvalues(const Matrix& m) {
    Matrix sym = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(sym, Eigen::EigenvaluesOnly);
    const auto& ev = solver.eigenvalues();
    return {ev(0), ev(ev.size() - 1)};
}

} // namespace

BasisLabels default_labels(Eigen::Index dim) {
    BasisLabels labels;
    labels.reserve(static_cast<std::size_t>(dim));
    for (Eigen::Index i = 0; i < dim; ++i) {
        labels.push_back("e" + std::to_string(i));
    }
    return labels;
}

StateVector::StateVector(CVector amplitudes, BasisLabels labels,
                         const Tolerances& tol)
    : amplitudes_(std::move(amplitudes)), labels_(std::move(labels)) {
    validate(tol);
}

StateVector::StateVector(CVector amplitudes, const Tolerances& tol)
    : amplitudes_(std::move(amplitudes)),
      labels_(default_labels(amplitudes_.size())) {
    validate(tol);
}

void StateVector::validate(const Tolerances& tol) const {
    if (amplitudes_.size() < 1) {
        throw InvalidStateVector("state vector must have dimension >= 1");
    }
    if (static_cast<Eigen::Index>(labels_.size()) != amplitudes_.size()) {
        throw InvalidStateVector(
            "amplitude/label length mismatch: " +
            dim_text(amplitudes_.size(),
                     static_cast<Eigen::Index>(labels_.size())));
    }
    if (!all_finite(amplitudes_)) {
        throw InvalidStateVector("state vector has non-finite amplitudes");
    }
    const double norm_residual = std::abs(amplitudes_.norm() - 1.0);
    if (norm_residual > tol.norm) {
        throw InvalidStateVector("state vector norm deviates from 1 by " +
                                 std::to_string(norm_residual));
    }
}

StateVector StateVector::basis_state(Eigen::Index dim, Eigen::Index index) {
    return basis_state(index, default_labels(dim));
}

StateVector StateVector::basis_state(Eigen::Index index, BasisLabels labels) {
    const auto dim = static_cast<Eigen::Index>(labels.size());
    if (index < 0 || index >= dim) {
        throw InvalidStateVector("basis index out of range");
    }
    CVector v = CVector::Zero(dim);
    v(index) = Complex(1.0, 0.0);
    return StateVector(std::move(v), std::move(labels));
}

Eigen::Index StateVector::index_of(const std::string& label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) {
        throw BasisMismatch("basis label not present: " + label);
    }
    return static_cast<Eigen::Index>(it - labels_.begin());
}

Operator::Operator(Matrix entries) : entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols()) {
        throw InvalidOperator("operator must be square, got " +
                              dim_text(entries_.rows(), entries_.cols()));
    }
    if (entries_.rows() < 1) {
        throw InvalidOperator("operator must have dimension >= 1");
    }
    if (!all_finite(entries_)) {
        throw InvalidOperator("operator has non-finite entries");
    }
}

EffectDiagnostics validate_effect(const Operator& op, const Tolerances& tol) {
    EffectDiagnostics diag;
    diag.hermiticity_residual =
        (op.mat() - op.mat().adjoint()).cwiseAbs().maxCoeff();
    auto [lo, hi] = extremal_eigenvalues(op.mat());
    diag.min_eigenvalue = lo;
    diag.max_eigenvalue = hi;
    diag.hermitian_pass = diag.hermiticity_residual <= tol.herm;
    diag.positive_pass = lo >= -tol.pos;
    diag.bounded_pass = hi <= 1.0 + tol.pos;
    return diag;
}

Effect::Effect(Operator op, const Tolerances& tol) : op_(std::move(op)) {
    EffectDiagnostics diag = validate_effect(op_, tol);
    if (!diag.pass()) {
        throw InvalidEffect(
            "operator violates effect invariants: hermiticity residual " +
            std::to_string(diag.hermiticity_residual) + ", spectrum [" +
            std::to_string(diag.min_eigenvalue) + ", " +
            std::to_string(diag.max_eigenvalue) + "]");
    }
}

Effect::Effect(Operator op, bool) : op_(std::move(op)) {}

Effect Effect::unchecked(Operator op) {
    return Effect(std::move(op), true);
}

double Effect::operator_norm() const {
    auto [lo, hi] = extremal_eigenvalues(op_.mat());
    return std::max(std::abs(lo), std::abs(hi));
}

Effect Effect::identity(Eigen::Index dim) {
    return Effect(Operator::identity(dim));
}

Effect Effect::zero(Eigen::Index dim) {
    return Effect(Operator::zero(dim));
}

Effect Effect::projector(const StateVector& phi) {
    const CVector& v = phi.amplitudes();
    return Effect(Operator(v * v.adjoint()));
}

Effect Effect::scaled_basis_projector(Eigen::Index dim, Eigen::Index index,
                                      double eta) {
    if (eta < 0.0 || eta > 1.0) {
        throw InvalidEffect("projector scale must lie in [0, 1]");
    }
    if (index < 0 || index >= dim) {
        throw InvalidEffect("basis index out of range");
    }
    Matrix m = Matrix::Zero(dim, dim);
    m(index, index) = Complex(eta, 0.0);
    return Effect(Operator(std::move(m)));
}

DensityOperator::DensityOperator(Operator op, const Tolerances& tol)
    : op_(std::move(op)) {
    const double herm_residual =
        (op_.mat() - op_.mat().adjoint()).cwiseAbs().maxCoeff();
    if (herm_residual > tol.herm) {
        throw InvalidDensityOperator("density operator not hermitian, residual " +
                                     std::to_string(herm_residual));
    }
    auto [lo, hi] = extremal_eigenvalues(op_.mat());
    (void)hi;
    if (lo < -tol.pos) {
        throw InvalidDensityOperator("density operator not positive, min eigenvalue " +
                                     std::to_string(lo));
    }
    const double trace_residual = std::abs(op_.mat().trace().real() - 1.0) +
                                  std::abs(op_.mat().trace().imag());
    if (trace_residual > 1e-12) {
        throw InvalidDensityOperator("density operator trace deviates from 1 by " +
                                     std::to_string(trace_residual));
    }
}

DensityOperator::DensityOperator(Operator op, bool) : op_(std::move(op)) {}

DensityOperator DensityOperator::pure(const StateVector& phi) {
    const CVector& v = phi.amplitudes();
    return DensityOperator(Operator(v * v.adjoint()), true);
}

DensityOperator DensityOperator::mixture(
    const std::vector<std::pair<double, StateVector>>& components,
    const Tolerances& tol) {
    if (components.empty()) {
        throw InvalidDensityOperator("mixture needs at least one component");
    }
    const Eigen::Index dim = components.front().second.dim();
    double weight_sum = 0.0;
    Matrix rho = Matrix::Zero(dim, dim);
    for (const auto& [weight, phi] : components) {
        if (weight < 0.0) {
            throw InvalidDensityOperator("mixture weights must be nonnegative");
        }
        if (phi.dim() != dim) {
            throw DimensionMismatch("mixture components differ in dimension: " +
                                    dim_text(dim, phi.dim()));
        }
        weight_sum += weight;
        rho += weight * (phi.amplitudes() * phi.amplitudes().adjoint());
    }
    if (std::abs(weight_sum - 1.0) > tol.norm) {
        throw InvalidDensityOperator("mixture weights sum to " +
                                     std::to_string(weight_sum));
    }
    return DensityOperator(Operator(std::move(rho)), tol);
}

StateVector superpose(Complex c1, const StateVector& phi1, Complex c2,
                      const StateVector& phi2, const Tolerances& tol) {
    if (!phi1.same_basis(phi2)) {
        throw BasisMismatch("superpose requires a shared basis");
    }
    const Complex overlap = phi1.amplitudes().dot(phi2.amplitudes());
    if (std::abs(overlap) > 1e-10) {
        throw NotOrthogonal("|<phi1|phi2>| = " + std::to_string(std::abs(overlap)));
    }
    const double coeff_norm = std::norm(c1) + std::norm(c2);
    if (std::abs(coeff_norm - 1.0) > 1e-10) {
        throw CoefficientsNotNormalized("|c1|^2 + |c2|^2 = " +
                                        std::to_string(coeff_norm));
    }
    CVector combined = c1 * phi1.amplitudes() + c2 * phi2.amplitudes();
    return StateVector(std::move(combined), phi1.labels(), tol);
}

Complex quadratic_form(const Matrix& M, const CVector& v) {
    return v.dot(M * v); // Eigen's dot conjugates the left argument
}

double expectation(const Effect& A, const StateVector& phi,
                   const Tolerances& tol) {
    if (A.dim() != phi.dim()) {
        throw DimensionMismatch("effect/state dimensions differ: " +
                                dim_text(A.dim(), phi.dim()));
    }
    const Complex value = quadratic_form(A.mat(), phi.amplitudes());
    if (std::abs(value.imag()) > 1e-10) {
        throw ExpectationOutOfRange("imaginary residue " +
                                    std::to_string(value.imag()) +
                                    " exceeds 1e-10; effect is not hermitian");
    }
    const double p = value.real();
    if (p < -tol.pos || p > 1.0 + tol.pos) {
        throw ExpectationOutOfRange("expectation " + std::to_string(p) +
                                    " outside [0, 1]; operator is not a valid effect");
    }
    return std::clamp(p, 0.0, 1.0);
}

double expectation_mixed(const Effect& A, const DensityOperator& rho,
                         const Tolerances& tol) {
    if (A.dim() != rho.dim()) {
        throw DimensionMismatch("effect/density dimensions differ: " +
                                dim_text(A.dim(), rho.dim()));
    }
    const Complex value = (rho.mat() * A.mat()).trace();
    if (std::abs(value.imag()) > 1e-10) {
        throw ExpectationOutOfRange("imaginary residue " +
                                    std::to_string(value.imag()) +
                                    " exceeds 1e-10");
    }
    const double p = value.real();
    if (p < -tol.pos || p > 1.0 + tol.pos) {
        throw ExpectationOutOfRange("trace expectation " + std::to_string(p) +
                                    " outside [0, 1]");
    }
    return std::clamp(p, 0.0, 1.0);
}

KernelCheck kernel_member(const Effect& A, const StateVector& psi,
                          const Tolerances& tol) {
    if (A.dim() != psi.dim()) {
        throw DimensionMismatch("effect/state dimensions differ: " +
                                dim_text(A.dim(), psi.dim()));
    }
    EffectDiagnostics diag = validate_effect(A.op(), tol);
    if (!diag.hermitian_pass || !diag.positive_pass) {
        throw NotPositive("kernel membership is only meaningful for positive "
                          "operators; min eigenvalue " +
                          std::to_string(diag.min_eigenvalue));
    }
    KernelCheck check;
    check.residual = (A.mat() * psi.amplitudes()).norm();
    const double op_norm =
        std::max(std::abs(diag.min_eigenvalue), std::abs(diag.max_eigenvalue));
    check.threshold = tol.kernel * op_norm;
    check.member = check.residual <= check.threshold;
    return check;
}

} // namespace sqi
