#include "sqi/interferometer.hpp"

#include <algorithm>
#include <cmath>

namespace sqi {

namespace {

Eigen::Index label_index(const BasisLabels& basis, const std::string& label) {
    auto it = std::find(basis.begin(), basis.end(), label);
    if (it == basis.end()) {
        throw BasisMismatch("path label not in basis: " + label);
    }
    return static_cast<Eigen::Index>(it - basis.begin());
}

void check_finite_angle(double value, const char* what) {
    if (!std::isfinite(value)) {
        throw InvalidElement(std::string(what) + " must be finite");
    }
}

} // namespace

std::string layout_name(Layout layout) {
    switch (layout) {
    case Layout::a: return "a";
    case Layout::b: return "b";
    case Layout::c: return "c";
    case Layout::custom: return "custom";
    }
    return "custom";
}

Arrangement::Arrangement(BasisLabels basis, std::vector<OpticalElement> elements,
                         Layout layout)
    : basis_(std::move(basis)), elements_(std::move(elements)), layout_(layout) {
    if (basis_.empty()) {
        throw InvalidElement("arrangement basis must be nonempty");
    }
    for (const auto& element : elements_) {
        std::visit(
            [&](const auto& e) {
                using E = std::decay_t<decltype(e)>;
                if constexpr (std::is_same_v<E, BeamSplitter>) {
                    check_finite_angle(e.mixing_angle, "mixing angle");
                    if (e.path_a == e.path_b) {
                        throw InvalidPathPair("beam splitter paths must differ");
                    }
                    label_index(basis_, e.path_a);
                    label_index(basis_, e.path_b);
                } else if constexpr (std::is_same_v<E, PhaseShifter>) {
                    check_finite_angle(e.phase, "phase");
                    label_index(basis_, e.path);
                } else if constexpr (std::is_same_v<E, Mirror>) {
                    if (e.path_a == e.path_b) {
                        throw InvalidPathPair("mirror paths must differ");
                    }
                    label_index(basis_, e.path_a);
                    label_index(basis_, e.path_b);
                } else {
                    static_assert(std::is_same_v<E, Blocker>);
                    if (!std::isfinite(e.transmission) || e.transmission < 0.0 ||
                        e.transmission > 1.0) {
                        throw InvalidElement("blocker transmission must lie in [0, 1]");
                    }
                    label_index(basis_, e.path);
                }
            },
            element);
    }
}

Operator beam_splitter_unitary(double theta, Eigen::Index path_a,
                               Eigen::Index path_b, Eigen::Index dim) {
    check_finite_angle(theta, "mixing angle");
    if (path_a == path_b || path_a < 0 || path_b < 0 || path_a >= dim ||
        path_b >= dim) {
        throw InvalidPathPair("beam splitter needs two distinct in-range paths");
    }
    Matrix u = Matrix::Identity(dim, dim);
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    u(path_a, path_a) = Complex(c, 0.0);
    u(path_b, path_b) = Complex(c, 0.0);
    u(path_a, path_b) = Complex(0.0, s);
    u(path_b, path_a) = Complex(0.0, s);
    return Operator(std::move(u));
}

Operator beam_splitter_unitary(double theta, const std::string& path_a,
                               const std::string& path_b,
                               const BasisLabels& basis) {
    return beam_splitter_unitary(theta, label_index(basis, path_a),
                                 label_index(basis, path_b),
                                 static_cast<Eigen::Index>(basis.size()));
}

Operator element_unitary(const OpticalElement& element,
                         const BasisLabels& basis) {
    const auto dim = static_cast<Eigen::Index>(basis.size());
    return std::visit(
        [&](const auto& e) -> Operator {
            using E = std::decay_t<decltype(e)>;
            if constexpr (std::is_same_v<E, BeamSplitter>) {
                return beam_splitter_unitary(e.mixing_angle, e.path_a, e.path_b,
                                             basis);
            } else if constexpr (std::is_same_v<E, PhaseShifter>) {
                check_finite_angle(e.phase, "phase");
                Matrix u = Matrix::Identity(dim, dim);
                const Eigen::Index k = label_index(basis, e.path);
                u(k, k) = std::polar(1.0, e.phase);
                return Operator(std::move(u));
            } else if constexpr (std::is_same_v<E, Mirror>) {
                const Eigen::Index a = label_index(basis, e.path_a);
                const Eigen::Index b = label_index(basis, e.path_b);
                if (a == b) {
                    throw InvalidPathPair("mirror paths must differ");
                }
                Matrix u = Matrix::Identity(dim, dim);
                u(a, a) = u(b, b) = Complex(0.0, 0.0);
                u(a, b) = u(b, a) = Complex(1.0, 0.0);
                return Operator(std::move(u));
            } else {
                throw InvalidElement("blocker is not unitary");
            }
        },
        element);
}

PropagationResult propagate(const StateVector& state,
                            const OpticalElement& element,
                            const Tolerances& tol) {
    if (const auto* blocker = std::get_if<Blocker>(&element)) {
        if (!std::isfinite(blocker->transmission) ||
            blocker->transmission < 0.0 || blocker->transmission > 1.0) {
            throw InvalidElement("blocker transmission must lie in [0, 1]");
        }
        const Eigen::Index k = label_index(state.labels(), blocker->path);
        CVector damped = state.amplitudes();
        damped(k) *= std::sqrt(blocker->transmission);
        const double survival = damped.squaredNorm();
        if (survival <= 0.0) {
            throw ZeroSurvival("all amplitude on blocked path " + blocker->path +
                               " with transmission 0");
        }
        damped /= std::sqrt(survival);
        return PropagationResult{StateVector(std::move(damped), state.labels(), tol),
                                 survival};
    }
    Operator u = element_unitary(element, state.labels());
    CVector out = u.mat() * state.amplitudes();
    return PropagationResult{StateVector(std::move(out), state.labels(), tol), 1.0};
}

PropagationResult run_arrangement(const Arrangement& arrangement,
                                  const StateVector& input,
                                  const Tolerances& tol) {
    if (input.labels() != arrangement.basis()) {
        throw BasisMismatch("input state basis differs from arrangement basis");
    }
    PropagationResult result{input, 1.0};
    for (const auto& element : arrangement.elements()) {
        PropagationResult step = propagate(result.conditional_state, element, tol);
        result.conditional_state = std::move(step.conditional_state);
        result.survival_probability *= step.survival_probability;
    }
    return result;
}

std::vector<std::pair<double, double>>
fringe_scan(const Arrangement& arrangement, const StateVector& input,
            std::span<const double> phase_values, const Effect& output_effect,
            const Tolerances& tol) {
    std::size_t swept_index = 0;
    std::size_t swept_count = 0;
    for (std::size_t i = 0; i < arrangement.elements().size(); ++i) {
        const auto* shifter = std::get_if<PhaseShifter>(&arrangement.elements()[i]);
        if (shifter != nullptr && shifter->swept) {
            swept_index = i;
            ++swept_count;
        }
    }
    if (swept_count == 0) {
        throw NoSweptPhase("fringe scan needs a swept phase shifter");
    }
    if (swept_count > 1) {
        throw AmbiguousSweptPhase("fringe scan found " +
                                  std::to_string(swept_count) +
                                  " swept phase shifters");
    }

    std::vector<OpticalElement> elements = arrangement.elements();
    std::vector<std::pair<double, double>> table;
    table.reserve(phase_values.size());
    for (double phi : phase_values) {
        std::get<PhaseShifter>(elements[swept_index]).phase = phi;
        Arrangement scan(arrangement.basis(), elements, arrangement.layout());
        PropagationResult run = run_arrangement(scan, input, tol);
        const double p = run.survival_probability *
                         expectation(output_effect, run.conditional_state, tol);
        table.emplace_back(phi, p);
    }
    return table;
}

double visibility(std::span<const std::pair<double, double>> fringe) {
    if (fringe.empty()) {
        return 0.0;
    }
    double lo = fringe.front().second;
    double hi = lo;
    for (const auto& [phi, p] : fringe) {
        lo = std::min(lo, p);
        hi = std::max(hi, p);
    }
    if (lo + hi <= 0.0) {
        return 0.0;
    }
    return (hi - lo) / (hi + lo);
}

} // namespace sqi
