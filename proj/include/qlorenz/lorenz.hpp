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
 * Forward-Euler discretizations of the Lorenz system as linear systems.
 *
 * The nonlinear step is embedded in an 8x8 system A_NL W = b_NL with
 *   W    = (x_n, y_n, z_n, x_{n+1}, y_{n+1}, z_{n+1}, x_n z_n, x_n y_n)
 *   b_NL = (x_n, y_n, z_n, 0, 0, 0, x_n z_n, x_n y_n)
 * so the products are known data and the solve itself is linear. The next
 * state is read from W[3..5].
 */
#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "numkernel.hpp"
#include "qcirc.hpp"
#include "vqls.hpp"

namespace qlorenz::lorenz {

using num::ComplexMatrix;
using num::ComplexVector;

struct LorenzParams {
    double sigma = 10.0;
    double rho = 28.0;
    double beta = 8.0 / 3.0;

    static LorenzParams classic() { return {}; }

    void validate() const {
        if (!(sigma > 0.0) || !(beta > 0.0) || !std::isfinite(sigma) ||
            !std::isfinite(rho) || !std::isfinite(beta)) {
            throw InvalidArgument("Lorenz parameters need sigma > 0, "
                                  "beta > 0 and finite rho");
        }
    }
};

struct State3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    [[nodiscard]] bool finite() const noexcept {
        return std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
    }
    [[nodiscard]] bool is_origin() const noexcept {
        return x == 0.0 && y == 0.0 && z == 0.0;
    }
    [[nodiscard]] std::array<double, 3> as_array() const noexcept {
        return {x, y, z};
    }

    friend bool operator==(const State3 &, const State3 &) = default;
};

/// Largest step accepted; explicit Euler on Lorenz is useless beyond it.
inline constexpr double kMaxStep = 0.5;

/// Time step h with 0 < h <= kMaxStep.
class StepSize {
  public:
    explicit StepSize(double h) : h_(h) {
        if (!(h > 0.0) || !(h <= kMaxStep)) {
            throw InvalidArgument("step size " + std::to_string(h) +
                                  " outside (0, 0.5]");
        }
    }
    [[nodiscard]] double value() const noexcept { return h_; }

  private:
    double h_;
};

/// A_L for the linearized dynamics (products x z and x y dropped).
inline ComplexMatrix build_linear_step(const LorenzParams &p, double h) {
    ComplexMatrix a(3, 3);
    a(0, 0) = 1.0 - h * p.sigma;
    a(0, 1) = h * p.sigma;
    a(1, 0) = h * p.rho;
    a(1, 1) = 1.0 - h;
    a(2, 2) = 1.0 - h * p.beta;
    return a;
}

struct BlockSystem {
    ComplexMatrix matrix;
    ComplexVector rhs;
};

/**
 * T linear steps as one 3T x 3T system: block row 0 is [I 0 ... 0] and block
 * row k > 0 holds A_L in column k-1 and -I in column k; rhs is (w1, 0, ...).
 */
inline BlockSystem build_block_system(const LorenzParams &p, double h,
                                      std::size_t steps, const State3 &w1) {
    if (steps == 0) {
        throw InvalidArgument("block system needs T >= 1");
    }
    const ComplexMatrix a = build_linear_step(p, h);
    const std::size_t n = 3 * steps;
    BlockSystem sys{ComplexMatrix(n, n), ComplexVector(n)};
    for (std::size_t i = 0; i < 3; ++i) {
        sys.matrix(i, i) = 1.0;
    }
    for (std::size_t k = 1; k < steps; ++k) {
        for (std::size_t r = 0; r < 3; ++r) {
            for (std::size_t c = 0; c < 3; ++c) {
                sys.matrix(3 * k + r, 3 * (k - 1) + c) = a(r, c);
            }
            sys.matrix(3 * k + r, 3 * k + r) = -1.0;
        }
    }
    sys.rhs[0] = w1.x;
    sys.rhs[1] = w1.y;
    sys.rhs[2] = w1.z;
    return sys;
}

/// The 8x8 matrix A_NL of one nonlinear Euler step.
inline ComplexMatrix build_nonlinear_system(const LorenzParams &p, double h) {
    ComplexMatrix a = ComplexMatrix::identity(8);
    a(3, 0) = -(1.0 - h * p.sigma);
    a(3, 1) = -h * p.sigma;
    a(4, 0) = -h * p.rho;
    a(4, 1) = -(1.0 - h);
    a(4, 6) = h;
    a(5, 2) = -(1.0 - p.beta * h);
    a(5, 7) = -h;
    return a;
}

inline ComplexVector build_rhs(const State3 &s) {
    if (!s.finite()) {
        throw InvalidArgument("non-finite state");
    }
    const double values[8] = {s.x, s.y, s.z, 0.0, 0.0, 0.0, s.x * s.z,
                              s.x * s.y};
    return ComplexVector::from_real(values);
}

/// Magnitude past which an integration is declared diverged.
inline constexpr double kDivergenceCap = 1e12;

inline State3 guard_overflow(const State3 &s) {
    if (!s.finite() || std::abs(s.x) > kDivergenceCap ||
        std::abs(s.y) > kDivergenceCap || std::abs(s.z) > kDivergenceCap) {
        throw Overflow("state (" + std::to_string(s.x) + ", " +
                       std::to_string(s.y) + ", " + std::to_string(s.z) +
                       ") exceeds 1e12");
    }
    return s;
}

/// Lorenz vector field f(s).
inline State3 derivative(const State3 &s, const LorenzParams &p) {
    return {p.sigma * (s.y - s.x), s.x * (p.rho - s.z) - s.y,
            s.x * s.y - p.beta * s.z};
}

inline State3 step_explicit(const State3 &s, const LorenzParams &p,
                            StepSize h) {
    if (!s.finite()) {
        throw InvalidArgument("non-finite state");
    }
    const double dt = h.value();
    const State3 next{s.x + dt * p.sigma * (s.y - s.x),
                      s.y + dt * (s.x * (p.rho - s.z) - s.y),
                      s.z + dt * (s.x * s.y - p.beta * s.z)};
    return guard_overflow(next);
}

enum class SolverKind { explicit_euler, direct, vqls };

inline std::string to_string(SolverKind k) {
    switch (k) {
    case SolverKind::explicit_euler:
        return "explicit";
    case SolverKind::direct:
        return "direct";
    case SolverKind::vqls:
        return "vqls";
    }
    return "unknown";
}

inline SolverKind solver_kind_from_string(const std::string &s) {
    if (s == "explicit") {
        return SolverKind::explicit_euler;
    }
    if (s == "direct") {
        return SolverKind::direct;
    }
    if (s == "vqls") {
        return SolverKind::vqls;
    }
    throw InvalidArgument("unknown solver '" + s + "'");
}

struct Solver {
    SolverKind kind = SolverKind::direct;
    vqls::VqlsConfig vqls;
    /// Seed restart 0 of each VQLS step with the previous step's angles.
    bool warm_start = true;

    static Solver explicit_euler() { return {SolverKind::explicit_euler}; }
    static Solver direct() { return {SolverKind::direct}; }
    static Solver quantum(vqls::VqlsConfig cfg, bool warm = true) {
        return {SolverKind::vqls, std::move(cfg), warm};
    }
};

struct StepDiagnostics {
    double cost = 0.0;
    std::size_t iterations = 0;
    double residual = 0.0;

    friend bool operator==(const StepDiagnostics &,
                           const StepDiagnostics &) = default;
};

struct StepResult {
    State3 next;
    /// Present for VQLS steps only.
    std::optional<StepDiagnostics> diagnostics;
    /// Optimized angles of a VQLS step, for warm starting the next one.
    std::optional<qcirc::AnsatzParams> theta;
};

/**
 * Advance one step by solving A_NL W = b_NL.
 *
 * The origin is a fixed point and b_NL vanishes there, so it is returned
 * unchanged without a solve. For VQLS the system is solved with b_NL / ||b_NL||
 * and the result scaled back; H_G only depends on the direction of b, so this
 * changes nothing except that states very close to the origin stay solvable.
 */
inline StepResult step_solve(const State3 &s, const LorenzParams &p,
                             StepSize h, const Solver &solver,
                             const qcirc::AnsatzParams *warm = nullptr) {
    if (!s.finite()) {
        throw InvalidArgument("non-finite state");
    }
    StepResult out;
    if (solver.kind == SolverKind::explicit_euler) {
        out.next = step_explicit(s, p, h);
        return out;
    }
    if (s.is_origin()) {
        out.next = s;
        if (solver.kind == SolverKind::vqls) {
            out.diagnostics = StepDiagnostics{};
            if (warm != nullptr) {
                out.theta = *warm;
            }
        }
        return out;
    }

    const ComplexMatrix a = build_nonlinear_system(p, h.value());
    const ComplexVector b = build_rhs(s);
    ComplexVector w;
    if (solver.kind == SolverKind::direct) {
        w = num::solve_dense(a, b);
    } else {
        const double scale = b.norm();
        const vqls::VqlsProblem problem =
            vqls::build_problem(a, (1.0 / scale) * b);
        vqls::VqlsOutcome res = vqls::optimize(problem, solver.vqls, warm);
        w = scale * res.solution;
        out.diagnostics =
            StepDiagnostics{res.final_cost, res.iterations_used, res.residual};
        out.theta = std::move(res.theta_opt);
    }
    out.next = guard_overflow({w[3].real(), w[4].real(), w[5].real()});
    return out;
}

struct Trajectory {
    LorenzParams params;
    double h = 0.0;
    SolverKind solver = SolverKind::direct;
    /// points[n] is the state at time n * h.
    std::vector<State3> points;
    /// One entry per step for VQLS trajectories, empty otherwise.
    std::vector<StepDiagnostics> diagnostics;
};

/// Integration overflowed; `partial` holds every state computed before it.
class DivergedAt : public Error {
  public:
    DivergedAt(std::size_t step, Trajectory partial)
        : Error("DivergedAt: state overflow at step " + std::to_string(step)),
          step_(step), partial_(std::move(partial)) {}

    [[nodiscard]] std::size_t step() const noexcept { return step_; }
    [[nodiscard]] const Trajectory &partial() const noexcept {
        return partial_;
    }

  private:
    std::size_t step_;
    Trajectory partial_;
};

/// Called after every completed step with (step index, trajectory so far).
using StepObserver = std::function<void(std::size_t, const Trajectory &)>;

inline Trajectory trajectory(const State3 &start, const LorenzParams &p,
                             StepSize h, std::size_t steps,
                             const Solver &solver,
                             const StepObserver &observer = {}) {
    p.validate();
    if (steps == 0) {
        throw InvalidArgument("trajectory needs T >= 1");
    }
    if (!start.finite()) {
        throw InvalidArgument("non-finite start state");
    }
    Trajectory traj;
    traj.params = p;
    traj.h = h.value();
    traj.solver = solver.kind;
    traj.points.reserve(steps + 1);
    traj.points.push_back(start);

    std::optional<qcirc::AnsatzParams> previous_theta;
    for (std::size_t n = 1; n <= steps; ++n) {
        StepResult r;
        try {
            const qcirc::AnsatzParams *warm =
                (solver.warm_start && previous_theta) ? &*previous_theta
                                                      : nullptr;
            r = step_solve(traj.points.back(), p, h, solver, warm);
        } catch (const Overflow &) {
            throw DivergedAt(n, std::move(traj));
        }
        traj.points.push_back(r.next);
        if (r.diagnostics) {
            traj.diagnostics.push_back(*r.diagnostics);
        }
        if (r.theta) {
            previous_theta = std::move(r.theta);
        }
        if (observer) {
            observer(n, traj);
        }
    }
    return traj;
}

/// Equilibria: the origin, plus the pair C+/C- when rho > 1.
inline std::vector<State3> fixed_points(const LorenzParams &p) {
    p.validate();
    std::vector<State3> out{{0.0, 0.0, 0.0}};
    if (p.rho > 1.0) {
        const double r = std::sqrt(p.beta * (p.rho - 1.0));
        out.push_back({r, r, p.rho - 1.0});
        out.push_back({-r, -r, p.rho - 1.0});
    }
    return out;
}

} // namespace qlorenz::lorenz
