// Copyright 2026 The qlorenz Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * Variational quantum linear solver on the exact statevector simulator.
 *
 * The global cost C(theta) = <psi(theta)| A^H (I - |b><b|) A |psi(theta)>
 * vanishes exactly when the ansatz state is parallel to A^{-1} b. Angles are
 * trained by fixed-step gradient descent with parameter-shift gradients,
 * from several seeded random starts, and the best state is rescaled into a
 * classical solution vector.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "numkernel.hpp"
#include "parallel.hpp"
#include "pauli.hpp"
#include "qcirc.hpp"

namespace qlorenz::vqls {

using num::Complex;
using num::ComplexMatrix;
using num::ComplexVector;
using qcirc::AnsatzConfig;
using qcirc::AnsatzParams;

/// ||b|| below which the right-hand side is treated as zero.
inline constexpr double kZeroRhsTolerance = 1e-14;

struct VqlsProblem {
    ComplexMatrix a;
    ComplexVector b;
    ComplexVector b_unit;
    double b_norm = 0.0;
    ComplexMatrix hamiltonian_dense;
    pauli::PauliSum hamiltonian;

    [[nodiscard]] std::size_t qubit_count() const noexcept {
        return hamiltonian.qubit_count();
    }
};

/// Assemble H_G = A^H (I - |b><b|) A densely and decompose it into Paulis.
inline VqlsProblem build_problem(const ComplexMatrix &a,
                                 const ComplexVector &b) {
    if (!a.is_square()) {
        throw DimensionMismatch("VQLS needs a square matrix, got " +
                                a.shape_string());
    }
    const std::size_t qubits = num::log2_exact(a.rows());
    if (qubits == 0) {
        throw NotPowerOfTwo("VQLS needs dimension >= 2");
    }
    if (b.size() != a.rows()) {
        throw DimensionMismatch("rhs length " + std::to_string(b.size()) +
                                " for matrix " + a.shape_string());
    }
    const double bn = b.norm();
    if (!(bn >= kZeroRhsTolerance)) {
        throw ZeroRightHandSide("||b|| = " + std::to_string(bn));
    }

    VqlsProblem p;
    p.a = a;
    p.b = b;
    p.b_norm = bn;
    p.b_unit = (1.0 / bn) * b;
    const ComplexMatrix projector =
        ComplexMatrix::identity(a.rows()) - num::outer(p.b_unit, p.b_unit);
    p.hamiltonian_dense = a.adjoint() * projector * a;
    p.hamiltonian = pauli::decompose(p.hamiltonian_dense);
    return p;
}

struct VqlsConfig {
    std::size_t max_iterations = 200;
    double conv_tol = 1e-8;
    double stepsize = 0.1;
    std::size_t layer_count = 5;
    std::size_t restarts = 10;
    std::uint64_t seed = 0;
    std::size_t entangle_range = 1;
    /// Workers used for independent restarts; results do not depend on it.
    std::size_t threads = 1;

    void validate() const {
        if (max_iterations == 0) {
            throw InvalidArgument("max_iterations must be >= 1");
        }
        if (!(conv_tol > 0.0)) {
            throw InvalidArgument("conv_tol must be > 0");
        }
        if (!(stepsize > 0.0)) {
            throw InvalidArgument("stepsize must be > 0");
        }
        if (layer_count == 0) {
            throw InvalidArgument("layer_count must be >= 1");
        }
        if (restarts == 0) {
            throw InvalidArgument("restarts must be >= 1");
        }
    }

    [[nodiscard]] AnsatzConfig ansatz(std::size_t qubits) const {
        return {qubits, layer_count, entangle_range};
    }
};

inline void check_ansatz(const VqlsProblem &p, const AnsatzConfig &cfg) {
    if (cfg.qubit_count != p.qubit_count()) {
        throw ShapeMismatch("ansatz on " + std::to_string(cfg.qubit_count) +
                            " qubits for a " +
                            std::to_string(p.qubit_count()) + "-qubit problem");
    }
}

inline double cost(const VqlsProblem &p, const AnsatzConfig &cfg,
                   const AnsatzParams &theta) {
    check_ansatz(p, cfg);
    return qcirc::expectation(qcirc::run_ansatz(cfg, theta), p.hamiltonian);
}

/**
 * Parameter-shift gradient, dC/dtheta_k = [C(theta_k + pi/2) -
 * C(theta_k - pi/2)] / 2, exact for RY and RZ generators. The result has
 * the same shape as theta.
 */
inline AnsatzParams gradient(const VqlsProblem &p, const AnsatzConfig &cfg,
                             const AnsatzParams &theta) {
    check_ansatz(p, cfg);
    qcirc::check_shape(cfg, theta);
    constexpr double shift = std::numbers::pi / 2.0;
    AnsatzParams grad(theta.layers(), theta.qubits());
    AnsatzParams shifted = theta;
    for (std::size_t k = 0; k < theta.size(); ++k) {
        const double original = theta[k];
        shifted[k] = original + shift;
        const double plus = cost(p, cfg, shifted);
        shifted[k] = original - shift;
        const double minus = cost(p, cfg, shifted);
        shifted[k] = original;
        grad[k] = 0.5 * (plus - minus);
    }
    return grad;
}

/// Trace of a single gradient-descent run.
struct DescentRun {
    AnsatzParams theta;
    double initial_cost = 0.0;
    double final_cost = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
    /// Cost before the first update followed by the cost after each update.
    std::vector<double> cost_history;
};

/// theta <- theta - stepsize * grad until |C_t - C_{t-1}| < conv_tol.
inline DescentRun descend(const VqlsProblem &p, const AnsatzConfig &ansatz,
                          AnsatzParams theta, const VqlsConfig &cfg) {
    DescentRun run;
    double previous = cost(p, ansatz, theta);
    run.initial_cost = previous;
    run.cost_history.push_back(previous);
    for (std::size_t it = 1; it <= cfg.max_iterations; ++it) {
        const AnsatzParams grad = gradient(p, ansatz, theta);
        for (std::size_t k = 0; k < theta.size(); ++k) {
            theta[k] -= cfg.stepsize * grad[k];
        }
        const double current = cost(p, ansatz, theta);
        run.cost_history.push_back(current);
        run.iterations = it;
        const bool done = std::abs(current - previous) < cfg.conv_tol;
        previous = current;
        if (done) {
            run.converged = true;
            break;
        }
    }
    run.final_cost = previous;
    run.theta = std::move(theta);
    return run;
}

/// Angles drawn uniformly from [0, 2 pi) by an mt19937_64 seeded with `seed`.
inline AnsatzParams random_params(const AnsatzConfig &cfg,
                                  std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    AnsatzParams theta = AnsatzParams::zeros(cfg);
    for (auto &a : theta.flat()) {
        a = angle(rng);
    }
    return theta;
}

inline double relative_residual(const ComplexMatrix &a,
                                const ComplexVector &x,
                                const ComplexVector &b) {
    return (a * x - b).norm() / b.norm();
}

struct Extraction {
    ComplexVector solution;
    double scale = 0.0;
    int sign = 1;
};

/**
 * Turn the unit-norm ansatz state into a solution of A w = b.
 *
 * The global phase is fixed so the largest-magnitude amplitude is real and
 * nonnegative, the state is scaled by C = ||b|| / ||A w~||, and the sign in
 * {+1, -1} with the smaller residual ||A (s C w~) - b|| wins (ties keep +1).
 */
inline Extraction extract_from_state(const VqlsProblem &p,
                                     ComplexVector state) {
    std::size_t lead = 0;
    for (std::size_t i = 1; i < state.size(); ++i) {
        if (std::abs(state[i]) > std::abs(state[lead])) {
            lead = i;
        }
    }
    if (std::abs(state[lead]) > 0.0) {
        state *= std::conj(state[lead]) / std::abs(state[lead]);
        state[lead] = std::abs(state[lead]);
    }

    const double image = (p.a * state).norm();
    if (!(image >= 1e-14)) {
        throw DegenerateImage("||A w~|| = " + std::to_string(image));
    }
    Extraction out;
    out.scale = p.b_norm / image;
    const ComplexVector plus = out.scale * state;
    const ComplexVector minus = -out.scale * state;
    const double r_plus = (p.a * plus - p.b).norm();
    const double r_minus = (p.a * minus - p.b).norm();
    if (r_minus < r_plus) {
        out.sign = -1;
        out.solution = minus;
    } else {
        out.sign = 1;
        out.solution = plus;
    }
    return out;
}

inline Extraction extract_solution(const VqlsProblem &p,
                                   const AnsatzConfig &cfg,
                                   const AnsatzParams &theta) {
    check_ansatz(p, cfg);
    return extract_from_state(p,
                              qcirc::run_ansatz(cfg, theta).amplitudes());
}

struct VqlsOutcome {
    AnsatzParams theta_opt;
    double final_cost = 0.0;
    double initial_cost = 0.0;
    std::size_t iterations_used = 0;
    bool converged = false;
    std::size_t restart_index = 0;
    /// Unit-norm ansatz state at theta_opt, before any rescaling.
    ComplexVector state;
    ComplexVector solution;
    double residual = 0.0;
    double scale_c = 0.0;
    int sign = 1;
    std::vector<double> cost_history;
};

/**
 * Run `restarts` independent descents and keep the lowest final cost (ties go
 * to the lower restart index). Restart i starts from random_params(seed + i),
 * except that restart 0 starts from `warm_start` when one is supplied.
 *
 * Not converging within max_iterations is not an error; the caller judges
 * the returned cost and residual.
 */
inline VqlsOutcome optimize(const VqlsProblem &p, const VqlsConfig &cfg,
                            const AnsatzParams *warm_start = nullptr) {
    cfg.validate();
    const AnsatzConfig ansatz = cfg.ansatz(p.qubit_count());
    ansatz.validate();
    if (warm_start != nullptr) {
        qcirc::check_shape(ansatz, *warm_start);
    }

    std::vector<DescentRun> runs(cfg.restarts);
    parallel_for(cfg.restarts, cfg.threads, [&](std::size_t i) {
        AnsatzParams start = (i == 0 && warm_start != nullptr)
                                 ? *warm_start
                                 : random_params(ansatz, cfg.seed + i);
        runs[i] = descend(p, ansatz, std::move(start), cfg);
    });

    std::size_t best = 0;
    for (std::size_t i = 1; i < runs.size(); ++i) {
        if (runs[i].final_cost < runs[best].final_cost) {
            best = i;
        }
    }

    DescentRun &win = runs[best];
    VqlsOutcome out;
    out.state = qcirc::run_ansatz(ansatz, win.theta).amplitudes();
    Extraction ex = extract_from_state(p, out.state);
    out.theta_opt = std::move(win.theta);
    // Round-off can leave a PSD expectation a few ulps below zero.
    out.final_cost = std::max(0.0, win.final_cost);
    out.initial_cost = win.initial_cost;
    out.iterations_used = win.iterations;
    out.converged = win.converged;
    out.restart_index = best;
    out.cost_history = std::move(win.cost_history);
    out.residual = relative_residual(p.a, ex.solution, p.b);
    out.scale_c = ex.scale;
    out.sign = ex.sign;
    out.solution = std::move(ex.solution);
    return out;
}

/// Tolerance on ||u|| - 1 accepted by trace_distance.
inline constexpr double kNormTolerance = 1e-8;

/// Pure-state trace distance sqrt(1 - |<u|v>|^2).
inline double trace_distance(const ComplexVector &u, const ComplexVector &v) {
    if (std::abs(u.norm() - 1.0) > kNormTolerance ||
        std::abs(v.norm() - 1.0) > kNormTolerance) {
        throw NotNormalized("trace_distance needs unit vectors");
    }
    const double overlap = std::norm(num::inner(u, v));
    return std::sqrt(std::max(0.0, 1.0 - overlap));
}

/// kappa * sqrt(C_G), an upper bound on the trace distance to the solution.
inline double error_bound(double final_cost, double kappa) {
    if (final_cost < 0.0 || kappa < 1.0) {
        throw InvalidArgument("error_bound needs cost >= 0 and kappa >= 1");
    }
    return kappa * std::sqrt(final_cost);
}

} // namespace qlorenz::vqls
