#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "sqi/errors.hpp"
#include "sqi/tolerances.hpp"

// Finite-dimensional complex Hilbert-space arithmetic: normed state vectors,
// effect operators (hermitian, spectrum in [0,1]), density operators, and the
// positivity machinery behind the kernel lemma. Dense matrices throughout;
// intended for dimensions up to 32.

namespace sqi {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using BasisLabels = std::vector<std::string>;

/// Labels "e0", "e1", ... for a dim-dimensional basis.
BasisLabels default_labels(Eigen::Index dim);

/// Normed element of a finite-dimensional Hilbert space over an ordered,
/// labelled basis. Immutable after construction; the constructor rejects
/// vectors whose Euclidean norm deviates from 1 by more than tol.norm,
/// non-finite amplitudes, and label/amplitude length mismatches.
class StateVector {
  public:
    StateVector(CVector amplitudes, BasisLabels labels,
                const Tolerances& tol = default_tolerances());

    /// State with amplitudes only; labels default to e0, e1, ...
    explicit StateVector(CVector amplitudes,
                         const Tolerances& tol = default_tolerances());

    /// Basis vector e_index of the given dimension.
    static StateVector basis_state(Eigen::Index dim, Eigen::Index index);
    static StateVector basis_state(Eigen::Index index, BasisLabels labels);

    const CVector& amplitudes() const { return amplitudes_; }
    const BasisLabels& labels() const { return labels_; }
    Eigen::Index dim() const { return amplitudes_.size(); }

    Complex amplitude(Eigen::Index i) const { return amplitudes_(i); }

    /// Index of a basis label; throws BasisMismatch if absent.
    Eigen::Index index_of(const std::string& label) const;

    bool same_basis(const StateVector& other) const {
        return labels_ == other.labels_;
    }

  private:
    void validate(const Tolerances& tol) const;

    CVector amplitudes_;
    BasisLabels labels_;
};

/// Dense square operator. Carrier type for effects, density operators and
/// element unitaries; validates squareness and finiteness only.
class Operator {
  public:
    explicit Operator(Matrix entries);

    const Matrix& mat() const { return entries_; }
    Eigen::Index dim() const { return entries_.rows(); }

    static Operator identity(Eigen::Index dim) {
        return Operator(Matrix::Identity(dim, dim));
    }
    static Operator zero(Eigen::Index dim) {
        return Operator(Matrix::Zero(dim, dim));
    }

  private:
    Matrix entries_;
};

/// Diagnostics from validating an operator against the effect invariants.
/// Always fully populated; validation never throws.
struct EffectDiagnostics {
    double hermiticity_residual = 0.0; // max entrywise |A - A^dagger|
    double min_eigenvalue = 0.0;
    double max_eigenvalue = 0.0;
    bool hermitian_pass = false;
    bool positive_pass = false; // min eigenvalue >= -tol.pos
    bool bounded_pass = false;  // max eigenvalue <= 1 + tol.pos

    bool pass() const { return hermitian_pass && positive_pass && bounded_pass; }
};

/// Hermiticity residual and extremal eigenvalues (hermitian eigendecomposition
/// of the symmetrized operator), with pass/fail per invariant.
EffectDiagnostics validate_effect(const Operator& op,
                                  const Tolerances& tol = default_tolerances());

/// Hermitian operator with spectrum contained in [0, 1] (within tol.pos): the
/// object that assigns an event its probability <phi|A|phi>. The checked
/// constructor enforces the invariants; unchecked() bypasses them and exists
/// so that deliberately invalid operators (negative controls) can be fed to
/// the validating entry points.
class Effect {
  public:
    explicit Effect(Operator op, const Tolerances& tol = default_tolerances());

    static Effect unchecked(Operator op);

    const Matrix& mat() const { return op_.mat(); }
    Eigen::Index dim() const { return op_.dim(); }
    const Operator& op() const { return op_; }

    /// Spectral norm, max |eigenvalue| of the symmetrized operator.
    double operator_norm() const;

    static Effect identity(Eigen::Index dim);
    static Effect zero(Eigen::Index dim);
    /// Rank-one projector |phi><phi|.
    static Effect projector(const StateVector& phi);
    /// eta * |e_index><e_index| on a dim-dimensional space, eta in [0, 1].
    static Effect scaled_basis_projector(Eigen::Index dim, Eigen::Index index,
                                         double eta);

  private:
    Effect(Operator op, bool); // unchecked tag
    Operator op_;
};

/// Hermitian, positive, unit-trace operator representing a possibly non-pure
/// state. Event probability is trace(rho * A).
class DensityOperator {
  public:
    explicit DensityOperator(Operator op,
                             const Tolerances& tol = default_tolerances());

    /// |phi><phi| for a normed phi.
    static DensityOperator pure(const StateVector& phi);

    /// Convex mixture sum_i w_i |phi_i><phi_i|; weights must be nonnegative
    /// and sum to 1 within tol.norm.
    static DensityOperator
    mixture(const std::vector<std::pair<double, StateVector>>& components,
            const Tolerances& tol = default_tolerances());

    const Matrix& mat() const { return op_.mat(); }
    Eigen::Index dim() const { return op_.dim(); }

  private:
    DensityOperator(Operator op, bool); // pre-validated tag
    Operator op_;
};

/// Normalized combination c1*phi1 + c2*phi2 of two orthogonal states on a
/// shared basis. Requires |c1|^2 + |c2|^2 = 1 (within 1e-10) and
/// |<phi1|phi2>| <= 1e-10; orthogonality is a precondition, not repaired,
/// so modelling errors surface instead of being silently Gram-Schmidted away.
StateVector superpose(Complex c1, const StateVector& phi1, Complex c2,
                      const StateVector& phi2,
                      const Tolerances& tol = default_tolerances());

/// Event probability <phi|A|phi>. The imaginary residue must not exceed
/// 1e-10 and the real part must lie in [-tol.pos, 1 + tol.pos]; only then is
/// the value clamped to [0, 1]. Out-of-range values signal an invalid effect
/// and throw ExpectationOutOfRange rather than being sanitized.
double expectation(const Effect& A, const StateVector& phi,
                   const Tolerances& tol = default_tolerances());

/// Event probability trace(rho * A) for a non-pure state.
double expectation_mixed(const Effect& A, const DensityOperator& rho,
                         const Tolerances& tol = default_tolerances());

struct KernelCheck {
    bool member = false;
    double residual = 0.0;  // ||A psi||
    double threshold = 0.0; // tol.kernel * ||A||
};

/// Whether psi lies in the kernel of A: ||A psi|| <= tol.kernel * ||A||.
/// For positive A this is equivalent to <psi|A|psi> = 0, which is what turns
/// the two zero-expectation hypotheses into kernel membership. Throws
/// NotPositive when A fails positivity validation.
KernelCheck kernel_member(const Effect& A, const StateVector& psi,
                          const Tolerances& tol = default_tolerances());

/// Raw quadratic form <v|M|v> without normalization or range checks.
/// Building block shared by the expectation routines and the theorem
/// verifier, which evaluates superpositions that need not be normed.
Complex quadratic_form(const Matrix& M, const CVector& v);

} // namespace sqi
