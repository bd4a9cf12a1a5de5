#include "sqi/detection.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <thread>

namespace sqi {

namespace {

constexpr double kProjectorTol = 1e-10;

void check_probability(double eta, const char* what) {
    if (!std::isfinite(eta) || eta < 0.0 || eta > 1.0) {
        throw LayoutMismatch(std::string(what) + " must lie in [0, 1]");
    }
}

void check_projector(const Matrix& p) {
    if (p.rows() != p.cols()) {
        throw LayoutMismatch("detector projector must be square");
    }
    const double herm = (p - p.adjoint()).cwiseAbs().maxCoeff();
    const double idem = (p * p - p).cwiseAbs().maxCoeff();
    if (herm > kProjectorTol || idem > kProjectorTol) {
        throw LayoutMismatch("detector subspace is not a projector");
    }
}

// Random unit vector with complex gaussian entries, dim pairs of normals.
CVector random_unit_vector(Eigen::Index dim, const CounterRng& rng) {
    CVector v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        auto [re, im] = rng.gaussians(static_cast<std::uint64_t>(i));
        v(i) = Complex(re, im);
    }
    const double norm = v.norm();
    if (norm < 1e-30) {
        v.setZero();
        v(0) = Complex(1.0, 0.0);
        return v;
    }
    return v / norm;
}

Matrix random_ginibre(Eigen::Index dim, const CounterRng& rng) {
    Matrix b(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        for (Eigen::Index j = 0; j < dim; ++j) {
            auto [re, im] =
                rng.gaussians(static_cast<std::uint64_t>(i * dim + j));
            b(i, j) = Complex(re, im);
        }
    }
    return b;
}

// Projector onto the orthogonal complement of span{v1, v2}, built by
// modified Gram-Schmidt; a nearly dependent pair degrades to a single
// direction instead of amplifying noise.
Matrix complement_projector(const CVector& v1, const CVector& v2) {
    const Eigen::Index dim = v1.size();
    Matrix p = Matrix::Identity(dim, dim);
    CVector q1 = v1 / v1.norm();
    p -= q1 * q1.adjoint();
    CVector r = v2 - q1 * q1.dot(v2);
    const double rem = r.norm();
    if (rem > 1e-12) {
        CVector q2 = r / rem;
        p -= q2 * q2.adjoint();
    }
    return p;
}

} // namespace

JointOutcome JointOutcome::all_fired(std::size_t detectors) {
    return JointOutcome{std::vector<bool>(detectors, true)};
}

JointOutcome JointOutcome::none_fired(std::size_t detectors) {
    return JointOutcome{std::vector<bool>(detectors, false)};
}

std::string JointOutcome::to_string() const {
    std::string s;
    s.reserve(fired.size());
    for (bool f : fired) {
        s.push_back(f ? '1' : '0');
    }
    return s;
}

OutcomePOVM::OutcomePOVM(std::map<JointOutcome, Effect> outcomes, Layout layout,
                         const Tolerances& tol)
    : outcomes_(std::move(outcomes)), layout_(layout) {
    if (outcomes_.empty()) {
        throw IncompleteFamily("outcome family is empty");
    }
    dim_ = outcomes_.begin()->second.dim();
    detector_count_ = outcomes_.begin()->first.fired.size();
    Matrix sum = Matrix::Zero(dim_, dim_);
    for (const auto& [outcome, effect] : outcomes_) {
        if (effect.dim() != dim_) {
            throw DimensionMismatch("outcome effects differ in dimension");
        }
        if (outcome.fired.size() != detector_count_) {
            throw IncompleteFamily("outcome arity differs across the family");
        }
        EffectDiagnostics diag = validate_effect(effect.op(), tol);
        if (!diag.pass()) {
            throw InvalidEffect("outcome " + outcome.to_string() +
                                " violates the effect invariants");
        }
        sum += effect.mat();
    }
    completeness_residual_ =
        (sum - Matrix::Identity(dim_, dim_)).cwiseAbs().maxCoeff();
    if (completeness_residual_ > tol.check) {
        throw IncompleteFamily("family sums to identity with residual " +
                               std::to_string(completeness_residual_));
    }
}

const Effect& OutcomePOVM::effect(const JointOutcome& outcome) const {
    auto it = outcomes_.find(outcome);
    if (it == outcomes_.end()) {
        throw MissingOutcome("no effect for outcome " + outcome.to_string());
    }
    return it->second;
}

OutcomePOVM build_joint_povm(Layout layout,
                             const std::vector<SubspaceDetector>& detectors,
                             Eigen::Index dim, const Tolerances& tol) {
    if (layout != Layout::a && layout != Layout::b && layout != Layout::c) {
        throw LayoutMismatch("joint families exist for layouts a, b, c");
    }
    if (detectors.size() != 2) {
        throw LayoutMismatch("layout " + layout_name(layout) +
                             " places exactly two detectors");
    }
    const double eta1 = detectors[0].efficiency;
    const double eta2 = detectors[1].efficiency;
    check_probability(eta1, "detector efficiency");
    check_probability(eta2, "detector efficiency");
    const Matrix& p1 = detectors[0].projector;
    const Matrix& p2 = detectors[1].projector;
    check_projector(p1);
    check_projector(p2);
    if (p1.rows() != dim || p2.rows() != dim) {
        throw DimensionMismatch("projector dimension differs from family dimension");
    }

    const Matrix identity = Matrix::Identity(dim, dim);
    std::map<JointOutcome, Effect> family;

    if (layout == Layout::c) {
        // Serial pair on one subspace; the first detector must pass the
        // quantum on for the second to see anything.
        if ((p1 - p2).cwiseAbs().maxCoeff() > kProjectorTol) {
            throw LayoutMismatch("layout c detectors must watch the same path");
        }
        if (!detectors[0].transmitting) {
            throw LayoutMismatch("layout c requires a transmitting first detector");
        }
        family.emplace(JointOutcome{{true, true}},
                       Effect(Operator(eta1 * eta2 * p1), tol));
        family.emplace(JointOutcome{{true, false}},
                       Effect(Operator(eta1 * (1.0 - eta2) * p1), tol));
        family.emplace(JointOutcome{{false, true}},
                       Effect(Operator((1.0 - eta1) * eta2 * p1), tol));
        family.emplace(JointOutcome{{false, false}},
                       Effect(Operator(identity -
                                       (eta1 + eta2 - eta1 * eta2) * p1),
                              tol));
    } else {
        // One detector per arm (b) or per output port (a). The subspaces
        // must be orthogonal; the coincidence effect is the zero operator.
        if ((p1 * p2).cwiseAbs().maxCoeff() > kProjectorTol) {
            throw LayoutMismatch("layout " + layout_name(layout) +
                                 " detectors must watch orthogonal paths");
        }
        family.emplace(JointOutcome{{true, true}},
                       Effect(Operator(Matrix::Zero(dim, dim)), tol));
        family.emplace(JointOutcome{{true, false}},
                       Effect(Operator(eta1 * p1), tol));
        family.emplace(JointOutcome{{false, true}},
                       Effect(Operator(eta2 * p2), tol));
        family.emplace(JointOutcome{{false, false}},
                       Effect(Operator(identity - eta1 * p1 - eta2 * p2), tol));
    }
    return OutcomePOVM(std::move(family), layout, tol);
}

OutcomePOVM build_joint_povm(Layout layout,
                             const std::vector<DetectorSpec>& detectors,
                             const BasisLabels& basis, const Tolerances& tol) {
    const auto dim = static_cast<Eigen::Index>(basis.size());
    std::vector<SubspaceDetector> subspace;
    subspace.reserve(detectors.size());
    for (const auto& det : detectors) {
        auto it = std::find(basis.begin(), basis.end(), det.path);
        if (it == basis.end()) {
            throw BasisMismatch("detector path not in basis: " + det.path);
        }
        const auto k = static_cast<Eigen::Index>(it - basis.begin());
        Matrix p = Matrix::Zero(dim, dim);
        p(k, k) = Complex(1.0, 0.0);
        subspace.push_back({std::move(p), det.efficiency, det.transmitting});
    }
    if (layout == Layout::b || layout == Layout::a) {
        if (detectors.size() == 2 && detectors[0].path == detectors[1].path) {
            throw LayoutMismatch("layout " + layout_name(layout) +
                                 " detectors must watch distinct paths");
        }
    }
    return build_joint_povm(layout, subspace, dim, tol);
}

double coincidence_probability(const OutcomePOVM& povm, const StateVector& state,
                               const Tolerances& tol) {
    const Effect& all = povm.effect(JointOutcome::all_fired(povm.detector_count()));
    return expectation(all, state, tol);
}

TheoremReport verify_reduction_theorem(const Effect& A, const StateVector& psi1,
                                       const StateVector& psi2,
                                       std::uint64_t n_samples,
                                       std::uint64_t seed,
                                       const Tolerances& tol,
                                       bool enforce_positivity) {
    if (A.dim() != psi1.dim() || A.dim() != psi2.dim()) {
        throw DimensionMismatch("operator and states differ in dimension");
    }
    if (enforce_positivity) {
        EffectDiagnostics diag = validate_effect(A.op(), tol);
        if (!diag.hermitian_pass || !diag.positive_pass) {
            throw NotPositive(
                "theorem hypothesis violated: min eigenvalue " +
                std::to_string(diag.min_eigenvalue) + ", hermiticity residual " +
                std::to_string(diag.hermiticity_residual));
        }
    }

    TheoremReport report;
    report.epsilon1 = quadratic_form(A.mat(), psi1.amplitudes()).real();
    report.epsilon2 = quadratic_form(A.mat(), psi2.amplitudes()).real();
    const double root1 = std::sqrt(std::max(report.epsilon1, 0.0));
    const double root2 = std::sqrt(std::max(report.epsilon2, 0.0));

    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const std::array<std::pair<Complex, Complex>, 6> extremes = {{
        {Complex(1.0, 0.0), Complex(0.0, 0.0)},
        {Complex(0.0, 0.0), Complex(1.0, 0.0)},
        {Complex(inv_sqrt2, 0.0), Complex(inv_sqrt2, 0.0)},
        {Complex(inv_sqrt2, 0.0), Complex(-inv_sqrt2, 0.0)},
        {Complex(inv_sqrt2, 0.0), Complex(0.0, inv_sqrt2)},
        {Complex(inv_sqrt2, 0.0), Complex(0.0, -inv_sqrt2)},
    }};

    double max_value = -std::numeric_limits<double>::infinity();
    double max_abs = -1.0;
    double max_bound = 0.0;
    double max_excess = -std::numeric_limits<double>::infinity();

    auto evaluate = [&](Complex c1, Complex c2) {
        const CVector combined =
            c1 * psi1.amplitudes() + c2 * psi2.amplitudes();
        const double value = quadratic_form(A.mat(), combined).real();
        const double sample_bound =
            std::pow(std::abs(c1) * root1 + std::abs(c2) * root2, 2.0);
        max_value = std::max(max_value, value);
        max_bound = std::max(max_bound, sample_bound);
        max_excess = std::max(max_excess, value - sample_bound);
        if (std::abs(value) > max_abs) {
            max_abs = std::abs(value);
            report.argmax_c1 = c1;
            report.argmax_c2 = c2;
        }
        ++report.samples;
    };

    for (const auto& [c1, c2] : extremes) {
        evaluate(c1, c2);
    }
    const CounterRng rng = CounterRng(seed).substream(1);
    for (std::uint64_t j = 0; j < n_samples; ++j) {
        auto [g0, g1] = rng.gaussians(2 * j);
        auto [g2, g3] = rng.gaussians(2 * j + 1);
        const double norm =
            std::sqrt(g0 * g0 + g1 * g1 + g2 * g2 + g3 * g3);
        if (norm < 1e-30) {
            evaluate(Complex(1.0, 0.0), Complex(0.0, 0.0));
            continue;
        }
        evaluate(Complex(g0 / norm, g1 / norm), Complex(g2 / norm, g3 / norm));
    }

    report.max_superposition_expectation = max_value;
    report.max_abs_expectation = max_abs;
    report.bound = max_bound;
    report.max_excess = max_excess;
    report.pass = max_value <= max_bound + tol.check;
    return report;
}

std::map<JointOutcome, std::uint64_t>
sample_events(const OutcomePOVM& povm, const StateVector& state,
              std::uint64_t n_trials, std::uint64_t seed, unsigned workers,
              const Tolerances& tol) {
    std::vector<const JointOutcome*> order;
    std::vector<double> probs;
    order.reserve(povm.outcomes().size());
    probs.reserve(povm.outcomes().size());
    for (const auto& [outcome, effect] : povm.outcomes()) {
        order.push_back(&outcome);
        probs.push_back(expectation(effect, state, tol));
    }
    const double total = std::accumulate(probs.begin(), probs.end(), 0.0);
    if (std::abs(total - 1.0) > 1e-9) {
        throw DegenerateDistribution("outcome probabilities sum to " +
                                     std::to_string(total));
    }
    for (double& p : probs) {
        p /= total;
    }

    // Last outcome with nonzero probability backstops the cumulative walk so
    // floating-point shortfall at u ~ 1 cannot land on a forbidden outcome.
    std::size_t last_supported = 0;
    for (std::size_t k = 0; k < probs.size(); ++k) {
        if (probs[k] > 0.0) {
            last_supported = k;
        }
    }

    const CounterRng rng(seed);
    const std::size_t outcome_count = probs.size();
    auto run_range = [&](std::uint64_t lo, std::uint64_t hi,
                         std::vector<std::uint64_t>& counts) {
        for (std::uint64_t trial = lo; trial < hi; ++trial) {
            const double u = rng.uniform01(trial);
            double cumulative = 0.0;
            std::size_t chosen = last_supported;
            for (std::size_t k = 0; k < outcome_count; ++k) {
                cumulative += probs[k];
                if (u < cumulative) {
                    chosen = k;
                    break;
                }
            }
            ++counts[chosen];
        }
    };

    if (workers == 0) {
        workers = 1;
    }
    std::vector<std::vector<std::uint64_t>> partials(
        workers, std::vector<std::uint64_t>(outcome_count, 0));
    if (workers == 1) {
        run_range(0, n_trials, partials[0]);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            const std::uint64_t lo = n_trials * w / workers;
            const std::uint64_t hi = n_trials * (w + 1) / workers;
            pool.emplace_back(
                [&run_range, lo, hi, &counts = partials[w]] { run_range(lo, hi, counts); });
        }
        for (auto& t : pool) {
            t.join();
        }
    }

    std::map<JointOutcome, std::uint64_t> counts;
    for (std::size_t k = 0; k < outcome_count; ++k) {
        std::uint64_t sum = 0;
        for (unsigned w = 0; w < workers; ++w) {
            sum += partials[w][k];
        }
        counts[*order[k]] = sum;
    }
    return counts;
}

SerialCorrelation serial_correlation(const OutcomePOVM& povm,
                                     const StateVector& state,
                                     const Tolerances& tol) {
    if (povm.layout() != Layout::c || povm.detector_count() != 2) {
        throw LayoutMismatch("serial correlation needs a layout-c pair");
    }
    SerialCorrelation dist;
    dist.both = expectation(povm.effect(JointOutcome{{true, true}}), state, tol);
    dist.first_only =
        expectation(povm.effect(JointOutcome{{true, false}}), state, tol);
    dist.second_only =
        expectation(povm.effect(JointOutcome{{false, true}}), state, tol);
    dist.none = expectation(povm.effect(JointOutcome{{false, false}}), state, tol);
    return dist;
}

KernelInstance make_kernel_instance(Eigen::Index dim, std::uint64_t seed) {
    if (dim < 2) {
        throw InvalidParams("kernel instances need dimension >= 2");
    }
    const CounterRng rng(seed);
    CVector v1 = random_unit_vector(dim, rng.substream(10));
    CVector v2 = random_unit_vector(dim, rng.substream(11));
    const Matrix p = complement_projector(v1, v2);
    const Matrix b = random_ginibre(dim, rng.substream(12));
    Matrix a = p * (b.adjoint() * b) * p;
    a = 0.5 * (a + a.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(a, Eigen::EigenvaluesOnly);
    const double top = solver.eigenvalues()(dim - 1);
    if (top > 1e-12) {
        a /= top;
    } else {
        a.setZero();
    }
    return KernelInstance{Effect(Operator(std::move(a))),
                          StateVector(std::move(v1)),
                          StateVector(std::move(v2))};
}

KernelInstance make_perturbed_kernel_instance(Eigen::Index dim, double eps1,
                                              double eps2, std::uint64_t seed) {
    if (dim < 3) {
        throw InvalidParams("perturbed instances need dimension >= 3");
    }
    if (eps1 < 0.0 || eps1 > 1.0 || eps2 < 0.0 || eps2 > 1.0) {
        throw InvalidParams("perturbation expectations must lie in [0, 1]");
    }
    KernelInstance base = make_kernel_instance(dim, seed);
    Eigen::SelfAdjointEigenSolver<Matrix> solver(base.effect.mat());
    const auto& values = solver.eigenvalues();
    const auto& vectors = solver.eigenvectors();

    // Leak each state into an eigendirection of A so its expectation is the
    // requested epsilon exactly: mixing weight beta gives beta^2 * lambda.
    auto leak = [&](const StateVector& psi, double eps,
                    Eigen::Index which) -> StateVector {
        Eigen::Index column = dim - 1 - which;
        if (column < 0 || values(column) < 10.0 * eps) {
            column = dim - 1; // fall back to the top eigenvector
        }
        const double lambda = values(column);
        if (lambda <= 0.0) {
            throw InvalidParams("instance has no positive spectrum to leak into");
        }
        const double beta = std::sqrt(eps / lambda);
        const double alpha = std::sqrt(1.0 - beta * beta);
        CVector mixed =
            alpha * psi.amplitudes() + beta * vectors.col(column);
        return StateVector(std::move(mixed), psi.labels());
    };

    StateVector psi1 = leak(base.psi1, eps1, 0);
    StateVector psi2 = leak(base.psi2, eps2, 1);
    return KernelInstance{base.effect, std::move(psi1), std::move(psi2)};
}

} // namespace sqi
