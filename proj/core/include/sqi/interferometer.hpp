#pragma once

#include <span>
#include <string>
#include <variant>
#include <vector>

#include "sqi/hilbert.hpp"

// Composable optical elements and arrangements. Elements act on amplitudes
// attached to discrete path labels; geometry (arm lengths, mirror angles) is
// abstracted into phase shifts. Everything here is unitary except Blocker,
// which damps one path's amplitude and is handled by postselection: the
// result of a propagation is a renormalized conditional state together with
// the probability that the quantum survived.

namespace sqi {

/// Detector placement variants of the canonical figure: (a) recombined
/// outputs, one detector per port; (b) one detector inside each arm, no
/// recombination; (c) two detectors in series in one arm. Tags carry no
/// behavior during propagation; detector semantics live in detection.
enum class Layout { a, b, c, custom };

std::string layout_name(Layout layout);

/// Two-path mixer. Convention: the symmetric matrix
///   [[cos(theta), i sin(theta)], [i sin(theta), cos(theta)]]
/// on (path_a, path_b), identity elsewhere. theta = pi/4 gives ideal 50:50
/// splitting. Any unitary convention only shifts fringe phases; this one is
/// fixed project-wide and pinned by tests.
struct BeamSplitter {
    double mixing_angle; // radians
    std::string path_a;
    std::string path_b;
};

/// Multiplies the amplitude on one path by exp(i phase). A scan marks
/// exactly one shifter as swept and replaces its phase per grid point.
struct PhaseShifter {
    std::string path;
    double phase = 0.0; // radians
    bool swept = false;
};

/// Phase-free swap of two path amplitudes.
struct Mirror {
    std::string path_a;
    std::string path_b;
};

/// Attenuates one path: amplitude scaled by sqrt(transmission). The only
/// non-unitary element; transmission 0 removes the path entirely.
struct Blocker {
    std::string path;
    double transmission; // in [0, 1]
};

using OpticalElement =
    std::variant<BeamSplitter, PhaseShifter, Mirror, Blocker>;

/// Ordered sequence of elements over a fixed labelled basis. The constructor
/// checks that every referenced path label exists, angles are finite and
/// transmissions lie in [0, 1].
class Arrangement {
  public:
    Arrangement(BasisLabels basis, std::vector<OpticalElement> elements,
                Layout layout = Layout::custom);

    const BasisLabels& basis() const { return basis_; }
    const std::vector<OpticalElement>& elements() const { return elements_; }
    Layout layout() const { return layout_; }
    Eigen::Index dim() const {
        return static_cast<Eigen::Index>(basis_.size());
    }

  private:
    BasisLabels basis_;
    std::vector<OpticalElement> elements_;
    Layout layout_;
};

/// Outcome of propagating through one or more elements: the surviving,
/// renormalized state and the probability that the quantum was not absorbed.
struct PropagationResult {
    StateVector conditional_state;
    double survival_probability = 1.0;
};

/// Beam-splitter unitary embedded on the (path_a, path_b) pair of a
/// dim-dimensional space. Throws InvalidPathPair for equal or out-of-range
/// indices.
Operator beam_splitter_unitary(double theta, Eigen::Index path_a,
                               Eigen::Index path_b, Eigen::Index dim);
Operator beam_splitter_unitary(double theta, const std::string& path_a,
                               const std::string& path_b,
                               const BasisLabels& basis);

/// Full-dimension unitary of a unitary element (BeamSplitter, PhaseShifter,
/// Mirror). Throws InvalidElement for Blocker, which has no unitary.
Operator element_unitary(const OpticalElement& element,
                         const BasisLabels& basis);

/// Applies one element. Unitary elements preserve the norm and return
/// survival 1. Blocker scales the blocked amplitude by sqrt(transmission);
/// the squared norm of what remains is the survival probability and the
/// renormalized remainder is the conditional state. Throws ZeroSurvival when
/// nothing remains.
PropagationResult propagate(const StateVector& state,
                            const OpticalElement& element,
                            const Tolerances& tol = default_tolerances());

/// Folds propagate over the arrangement's elements in order; survival
/// probabilities multiply.
PropagationResult run_arrangement(const Arrangement& arrangement,
                                  const StateVector& input,
                                  const Tolerances& tol = default_tolerances());

/// One (phase, probability) sample per grid point: the swept shifter is set
/// to phi, the arrangement is run, and the unconditional probability
/// survival * <conditional|E|conditional> is recorded. Requires exactly one
/// swept PhaseShifter.
std::vector<std::pair<double, double>>
fringe_scan(const Arrangement& arrangement, const StateVector& input,
            std::span<const double> phase_values, const Effect& output_effect,
            const Tolerances& tol = default_tolerances());

/// (max - min) / (max + min) over the probability column of a fringe table.
double visibility(std::span<const std::pair<double, double>> fringe);

} // namespace sqi
