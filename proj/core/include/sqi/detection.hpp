#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sqi/hilbert.hpp"
#include "sqi/interferometer.hpp"
#include "sqi/rng.hpp"

// Detectors as complete effect families over joint outcomes, the
// coincidence/anticoincidence analysis, the reduction-theorem verifier, and
// the seeded Monte Carlo event sampler.
//
// The coincidence operator is never postulated: the all-fired effect of a
// layout-b family is the zero operator because any positive effect with zero
// expectation on both single-arm states vanishes on their entire span. The
// construction rule encodes exactly the condition careful experimenters
// calibrate against (no spurious coincidences when one arm carries nothing),
// and the verifier below makes the resulting claim falsifiable numerically.

namespace sqi {

/// One detector: which path it watches, its efficiency, and whether it
/// passes the quantum on (needed for the first detector of a serial pair).
struct DetectorSpec {
    std::string path;
    double efficiency = 1.0; // in [0, 1]
    bool transmitting = false;
};

/// Joint firing pattern, one flag per detector, ordered as the detectors
/// were given. Outcomes sort lexicographically on the flag vector.
struct JointOutcome {
    std::vector<bool> fired;

    static JointOutcome all_fired(std::size_t detectors);
    static JointOutcome none_fired(std::size_t detectors);

    /// Pattern string, e.g. "10" for first-only of two detectors.
    std::string to_string() const;

    friend bool operator<(const JointOutcome& a, const JointOutcome& b) {
        return a.fired < b.fired;
    }
    friend bool operator==(const JointOutcome& a, const JointOutcome& b) {
        return a.fired == b.fired;
    }
};

/// Complete family of effects indexed by joint detector outcomes. The
/// constructor re-validates every member effect and requires the family to
/// sum to the identity within tol.check.
class OutcomePOVM {
  public:
    OutcomePOVM(std::map<JointOutcome, Effect> outcomes, Layout layout,
                const Tolerances& tol = default_tolerances());

    const std::map<JointOutcome, Effect>& outcomes() const { return outcomes_; }
    const Effect& effect(const JointOutcome& outcome) const;

    Layout layout() const { return layout_; }
    Eigen::Index dim() const { return dim_; }
    std::size_t detector_count() const { return detector_count_; }
    double completeness_residual() const { return completeness_residual_; }

  private:
    std::map<JointOutcome, Effect> outcomes_;
    Layout layout_;
    Eigen::Index dim_ = 0;
    std::size_t detector_count_ = 0;
    double completeness_residual_ = 0.0;
};

/// Detector watching an arbitrary subspace via its projector; the building
/// block behind the label-based constructor and the spin-path presets.
struct SubspaceDetector {
    Matrix projector;
    double efficiency = 1.0;
    bool transmitting = false;
};

/// Joint-outcome family for two detectors on orthogonal projectors (layouts
/// a, b) or two serial detectors on one projector (layout c).
///
/// Layouts a/b: E[10] = eta1 P1, E[01] = eta2 P2, E[11] = 0,
/// E[00] = I - eta1 P1 - eta2 P2. The zero coincidence effect is forced: it
/// must vanish on both single-path subspaces, and a positive operator with
/// that property vanishes on their span.
///
/// Layout c (serial pair on projector P, first detector transmitting):
/// E[11] = eta1 eta2 P, E[10] = eta1 (1 - eta2) P, E[01] = (1 - eta1) eta2 P,
/// E[00] = I - (eta1 + eta2 - eta1 eta2) P. Detection attempts are
/// independent Bernoulli thinnings; at unit efficiencies everything except
/// both-or-none vanishes.
OutcomePOVM build_joint_povm(Layout layout,
                             const std::vector<SubspaceDetector>& detectors,
                             Eigen::Index dim,
                             const Tolerances& tol = default_tolerances());

/// Same, with detectors addressed by basis path label.
OutcomePOVM build_joint_povm(Layout layout,
                             const std::vector<DetectorSpec>& detectors,
                             const BasisLabels& basis,
                             const Tolerances& tol = default_tolerances());

/// Probability of the all-fired outcome. Throws MissingOutcome if the family
/// lacks one.
double coincidence_probability(const OutcomePOVM& povm, const StateVector& state,
                               const Tolerances& tol = default_tolerances());

/// Verdict of numerically exercising the reduction theorem on one instance.
struct TheoremReport {
    double epsilon1 = 0.0; // measured <psi1|A|psi1>
    double epsilon2 = 0.0; // measured <psi2|A|psi2>
    double max_superposition_expectation = 0.0;
    double max_abs_expectation = 0.0;
    double bound = 0.0;      // largest per-sample (|c1| sqrt(eps1) + |c2| sqrt(eps2))^2
    double max_excess = 0.0; // largest expectation minus its own sample's bound
    Complex argmax_c1{1.0, 0.0}; // coefficients attaining max_abs_expectation
    Complex argmax_c2{0.0, 0.0};
    std::uint64_t samples = 0;
    bool pass = false; // max_superposition_expectation <= bound + tol.check
};

/// Samples superpositions c1 psi1 + c2 psi2 with |c1|^2 + |c2|^2 = 1 drawn
/// uniformly from the coefficient 3-sphere, plus the deterministic extremes
/// (1,0), (0,1), (1,±1)/sqrt(2), (1,±i)/sqrt(2), and reports the largest
/// quadratic form against the square-root triangle-inequality bound.
/// Superpositions are evaluated as raw quadratic forms (psi1, psi2 need not
/// be orthogonal, so the combination need not be normed).
///
/// A must pass positivity validation (hermitian, min eigenvalue >= -tol.pos)
/// or NotPositive is thrown; enforce_positivity = false bypasses the check
/// and exists solely so negative controls can demonstrate that positivity is
/// what carries the conclusion.
TheoremReport verify_reduction_theorem(const Effect& A, const StateVector& psi1,
                                       const StateVector& psi2,
                                       std::uint64_t n_samples,
                                       std::uint64_t seed,
                                       const Tolerances& tol = default_tolerances(),
                                       bool enforce_positivity = true);

/// Draws one joint outcome per trial from the categorical distribution of
/// outcome probabilities. Trial i consumes exactly counter i of
/// CounterRng(seed), so identical seeds reproduce identical counts
/// bit-exactly, and partitioning the trial range across workers cannot
/// change the merged counts. The cumulative walk visits outcomes in
/// ascending order; zero-probability outcomes can never be selected.
/// Throws DegenerateDistribution when the outcome probabilities fail to sum
/// to 1 within 1e-9 before normalization.
std::map<JointOutcome, std::uint64_t>
sample_events(const OutcomePOVM& povm, const StateVector& state,
              std::uint64_t n_trials, std::uint64_t seed, unsigned workers = 1,
              const Tolerances& tol = default_tolerances());

/// Exact outcome distribution of a serial (layout c) pair.
struct SerialCorrelation {
    double both = 0.0;
    double first_only = 0.0;
    double second_only = 0.0;
    double none = 0.0;
};

SerialCorrelation serial_correlation(const OutcomePOVM& povm,
                                     const StateVector& state,
                                     const Tolerances& tol = default_tolerances());

/// Randomized theorem instance: A = P (B^dagger B) P scaled to unit spectral
/// norm, with B complex Ginibre and P the projector onto the orthogonal
/// complement of span{psi1, psi2}. The hypotheses hold exactly by
/// construction (up to floating point), so a failed conclusion indicts the
/// implementation rather than the generator.
struct KernelInstance {
    Effect effect;
    StateVector psi1;
    StateVector psi2;
};

KernelInstance make_kernel_instance(Eigen::Index dim, std::uint64_t seed);

/// Kernel instance whose states are leaked into the support of A so that
/// <psi_i|A|psi_i> = eps_i exactly: psi_i is mixed with an eigenvector of A
/// along which the expectation is controlled. Requires dim >= 3 (in dim 2
/// the complement of a generic span is trivial and A is zero).
KernelInstance make_perturbed_kernel_instance(Eigen::Index dim, double eps1,
                                              double eps2, std::uint64_t seed);

} // namespace sqi
