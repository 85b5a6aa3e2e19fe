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


#include <catch_amalgamated.hpp>

#include <numbers>
#include <random>

#include "oracles.hpp"
#include "qlorenz/lorenz.hpp"
#include "qlorenz/vqls.hpp"

using namespace qlorenz;
using num::Complex;
using num::ComplexMatrix;
using num::ComplexVector;
using qcirc::AnsatzConfig;
using qcirc::AnsatzParams;
using vqls::VqlsConfig;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

const lorenz::LorenzParams kClassic{10.0, 28.0, 8.0 / 3.0};

vqls::VqlsProblem identity_problem() {
    return vqls::build_problem(ComplexMatrix::identity(8),
                               ComplexVector::basis(8, 0));
}

vqls::VqlsProblem lorenz_problem(double h) {
    return vqls::build_problem(lorenz::build_nonlinear_system(kClassic, h),
                               lorenz::build_rhs({1.0, -2.0, 4.0}));
}

double cost_of(const vqls::VqlsProblem &p, const AnsatzConfig &cfg,
               const std::vector<double> &flat) {
    return vqls::cost(p, cfg,
                      AnsatzParams(cfg.layer_count, cfg.qubit_count, flat));
}

ComplexVector normalized(const ComplexVector &v) {
    return (1.0 / v.norm()) * v;
}

} // namespace

TEST_CASE("build_problem on the identity", "[vqls]") {
    const auto p = identity_problem();
    const auto expected = ComplexMatrix::identity(8) -
                          num::outer(ComplexVector::basis(8, 0),
                                     ComplexVector::basis(8, 0));
    CHECK(oracle::max_abs_diff(pauli::reconstruct(p.hamiltonian), expected) <=
          1e-15);
    CHECK(p.b_norm == 1.0);
}

TEST_CASE("build_problem error paths", "[vqls]") {
    CHECK_THROWS_AS(vqls::build_problem(ComplexMatrix::identity(8),
                                        ComplexVector(8)),
                    ZeroRightHandSide);
    CHECK_THROWS_AS(vqls::build_problem(ComplexMatrix::identity(3),
                                        ComplexVector(3)),
                    NotPowerOfTwo);
    CHECK_THROWS_AS(vqls::build_problem(ComplexMatrix::identity(8),
                                        ComplexVector::basis(4, 0)),
                    DimensionMismatch);
}

TEST_CASE("cost examples", "[vqls]") {
    const auto p = identity_problem();
    const AnsatzConfig cfg;
    CHECK(vqls::cost(p, cfg, AnsatzParams::zeros(cfg)) == 0.0);

    AnsatzParams perp = AnsatzParams::zeros(cfg);
    perp.at(0, 2, 1) = std::numbers::pi; // |000> -> |001>
    CHECK_THAT(vqls::cost(p, cfg, perp), WithinAbs(1.0, 1e-14));
}

TEST_CASE("cost matches the dense expectation on the Lorenz instance",
          "[vqls][property]") {
    const auto p = lorenz_problem(0.01);
    const AnsatzConfig cfg;
    const auto eig = oracle::hermitian_eigenvalues(p.hamiltonian_dense);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto theta = vqls::random_params(cfg, seed);
        const auto psi = qcirc::run_ansatz(cfg, theta).amplitudes();
        const double c = vqls::cost(p, cfg, theta);
        CHECK_THAT(c, WithinAbs(oracle::dense_expectation(
                                    psi, p.hamiltonian_dense)
                                    .real(),
                                1e-10));
        CHECK(c >= -1e-10);
        CHECK(c <= eig.back() + 1e-10);
    }
}

TEST_CASE("gradient symmetry zeros at theta = 0", "[vqls]") {
    const auto p = identity_problem();
    const AnsatzConfig cfg;
    const auto g = vqls::gradient(p, cfg, AnsatzParams::zeros(cfg));
    for (std::size_t l = 0; l < cfg.layer_count; ++l) {
        for (std::size_t q = 0; q < cfg.qubit_count; ++q) {
            CHECK(std::abs(g.at(l, q, 0)) <= 1e-15);
            CHECK(std::abs(g.at(l, q, 2)) <= 1e-15);
        }
    }
    double inf = 0.0;
    for (double v : g.flat()) {
        inf = std::max(inf, std::abs(v));
    }
    CHECK(inf <= 1e-6);
}

TEST_CASE("parameter shift agrees with central differences",
          "[vqls][property]") {
    const std::vector<vqls::VqlsProblem> problems = {identity_problem(),
                                                     lorenz_problem(5e-3),
                                                     lorenz_problem(0.05)};
    const AnsatzConfig cfg;
    for (std::size_t i = 0; i < problems.size(); ++i) {
        for (std::uint64_t seed = 100; seed < 103; ++seed) {
            const auto theta = vqls::random_params(cfg, seed);
            const auto shift = vqls::gradient(problems[i], cfg, theta);
            const std::vector<double> x(theta.flat().begin(),
                                        theta.flat().end());
            const auto fd = oracle::central_difference(
                [&](const std::vector<double> &v) {
                    return cost_of(problems[i], cfg, v);
                },
                x, 1e-6);
            for (std::size_t k = 0; k < fd.size(); ++k) {
                INFO("problem " << i << " seed " << seed << " k " << k);
                CHECK_THAT(shift[k], WithinAbs(fd[k], 1e-5));
            }
        }
    }
}

TEST_CASE("optimize solves the identity problem", "[vqls]") {
    const auto p = identity_problem();
    const auto out = vqls::optimize(p, VqlsConfig{});
    // Descent stops on |dC| < conv_tol, which leaves the cost a few times
    // conv_tol above zero on this problem.
    CHECK(out.final_cost <= 2e-7);
    CHECK(out.residual <= 5e-4);
    CHECK(out.final_cost <= out.initial_cost);
    CHECK(out.converged);

    VqlsConfig tight;
    tight.conv_tol = 1e-12;
    tight.max_iterations = 2000;
    const auto deep = vqls::optimize(p, tight);
    CHECK(deep.final_cost <= 1e-8);
    CHECK(deep.residual <= 1e-4);

    double inf = 0.0;
    const auto grad = vqls::gradient(p, tight.ansatz(3), deep.theta_opt);
    for (double g : grad.flat()) {
        inf = std::max(inf, std::abs(g));
    }
    CHECK(inf <= 1e-5);
}

TEST_CASE("optimize solves one Lorenz step", "[vqls]") {
    const auto p = lorenz_problem(5e-3);
    const VqlsConfig cfg;
    const auto out = vqls::optimize(p, cfg);
    CHECK(out.residual <= 1e-3);
    CHECK(out.iterations_used <= 200);
    CHECK(out.final_cost <= out.initial_cost);
    CHECK(out.cost_history.size() == out.iterations_used + 1);
    CHECK(out.cost_history.front() == out.initial_cost);

    const auto exact = num::solve_dense(p.a, p.b);
    for (std::size_t i = 3; i < 6; ++i) {
        CHECK(std::abs(out.solution[i] - exact[i]) <= 1e-2);
    }

    // Scale correctness.
    const double ratio = (p.a * out.solution).norm() / p.b_norm;
    CHECK(ratio >= 1.0 - out.residual);
    CHECK(ratio <= 1.0 + out.residual);

    // Small cost means the state is parallel to the exact solution.
    if (out.final_cost < 1e-8) {
        CHECK(vqls::trace_distance(normalized(exact), out.state) < 1e-4);
    }

    // Bound soundness.
    const double kappa = num::condition_number(p.a);
    CHECK(vqls::trace_distance(normalized(exact), out.state) <=
          vqls::error_bound(out.final_cost, kappa));
}

TEST_CASE("bound soundness on random well-conditioned systems",
          "[vqls][property]") {
    std::mt19937_64 rng(77);
    VqlsConfig cfg;
    cfg.restarts = 2;
    for (int trial = 0; trial < 4; ++trial) {
        auto a = ComplexMatrix::identity(8);
        const auto noise = oracle::random_matrix(rng, 8, false);
        for (std::size_t r = 0; r < 8; ++r) {
            for (std::size_t c = 0; c < 8; ++c) {
                a(r, c) += 0.1 * noise(r, c);
            }
        }
        const auto b = oracle::random_vector(rng, 8, false);
        const auto p = vqls::build_problem(a, b);
        cfg.seed = static_cast<std::uint64_t>(trial);
        const auto out = vqls::optimize(p, cfg);
        const auto exact = normalized(num::solve_dense(a, b));
        INFO("trial " << trial << " cost " << out.final_cost);
        CHECK(vqls::trace_distance(exact, out.state) <=
              vqls::error_bound(out.final_cost, num::condition_number(a)) +
                  1e-12);
    }
}

TEST_CASE("optimize is deterministic and thread independent",
          "[vqls][property]") {
    const auto p = lorenz_problem(5e-3);
    VqlsConfig cfg;
    cfg.restarts = 3;
    cfg.max_iterations = 40;
    cfg.seed = 42;
    const auto a = vqls::optimize(p, cfg);
    cfg.threads = 3;
    const auto b = vqls::optimize(p, cfg);
    CHECK(a.cost_history == b.cost_history);
    CHECK(a.theta_opt == b.theta_opt);
    CHECK(a.solution == b.solution);
    CHECK(a.restart_index == b.restart_index);
}

TEST_CASE("warm start replaces restart 0", "[vqls]") {
    const auto p = identity_problem();
    VqlsConfig cfg;
    cfg.restarts = 2;
    const AnsatzConfig ansatz = cfg.ansatz(3);
    const auto warm = AnsatzParams::zeros(ansatz);
    const auto out = vqls::optimize(p, cfg, &warm);
    CHECK(out.restart_index == 0);
    CHECK(out.final_cost == 0.0);
    CHECK(out.iterations_used == 1);
    CHECK(out.theta_opt == warm);

    const AnsatzParams bad(2, 3);
    CHECK_THROWS_AS(vqls::optimize(p, cfg, &bad), ShapeMismatch);
}

TEST_CASE("VqlsConfig validation", "[vqls]") {
    const auto p = identity_problem();
    auto bad = [&](auto mutate) {
        VqlsConfig cfg;
        mutate(cfg);
        return cfg;
    };
    CHECK_THROWS_AS(vqls::optimize(p, bad([](auto &c) { c.max_iterations = 0; })),
                    InvalidArgument);
    CHECK_THROWS_AS(vqls::optimize(p, bad([](auto &c) { c.conv_tol = 0.0; })),
                    InvalidArgument);
    CHECK_THROWS_AS(vqls::optimize(p, bad([](auto &c) { c.stepsize = -1.0; })),
                    InvalidArgument);
    CHECK_THROWS_AS(vqls::optimize(p, bad([](auto &c) { c.layer_count = 0; })),
                    InvalidArgument);
    CHECK_THROWS_AS(vqls::optimize(p, bad([](auto &c) { c.restarts = 0; })),
                    InvalidArgument);
}

TEST_CASE("extract_solution examples", "[vqls]") {
    const AnsatzConfig cfg;
    const auto zero = AnsatzParams::zeros(cfg);

    const auto ex = vqls::extract_solution(identity_problem(), cfg, zero);
    CHECK(ex.solution == ComplexVector::basis(8, 0));
    CHECK(ex.scale == 1.0);
    CHECK(ex.sign == 1);

    const auto two = vqls::build_problem(Complex(2.0) * ComplexMatrix::identity(8),
                                         ComplexVector::basis(8, 0));
    const auto half = vqls::extract_solution(two, cfg, zero);
    CHECK(half.scale == 0.5);
    CHECK(half.solution == Complex(0.5) * ComplexVector::basis(8, 0));
}

TEST_CASE("extraction removes global phase and picks the sign",
          "[vqls][property]") {
    const auto p = lorenz_problem(5e-3);
    const auto exact = num::solve_dense(p.a, p.b);
    const auto unit = normalized(exact);
    for (double phase : {0.0, 0.7, 2.0, std::numbers::pi, -1.3}) {
        const auto state = std::polar(1.0, phase) * unit;
        const auto ex = vqls::extract_from_state(p, state);
        INFO("phase " << phase);
        CHECK(oracle::max_abs_diff(ex.solution, exact) <= 1e-12);
    }
    // Negative solution: b -> -b flips the sign.
    const auto neg = vqls::build_problem(p.a, Complex(-1.0) * p.b);
    const auto ex = vqls::extract_from_state(neg, unit);
    CHECK(ex.sign == -1);
    CHECK(oracle::max_abs_diff(ex.solution, Complex(-1.0) * exact) <= 1e-12);
}

TEST_CASE("trace_distance and error_bound", "[vqls]") {
    const auto e0 = ComplexVector::basis(2, 0);
    const auto e1 = ComplexVector::basis(2, 1);
    CHECK(vqls::trace_distance(e0, e0) == 0.0);
    CHECK(vqls::trace_distance(e0, e1) == 1.0);
    CHECK_THAT(vqls::trace_distance(e0, ComplexVector{0.6, 0.8}),
               WithinAbs(0.8, 1e-15));
    CHECK_THROWS_AS(vqls::trace_distance(e0, ComplexVector{1.0, 1.0}),
                    NotNormalized);

    CHECK(vqls::error_bound(0.0, 3.0) == 0.0);
    CHECK_THAT(vqls::error_bound(1e-6, 3.03), WithinRel(3.03e-3, 1e-14));
    CHECK_THROWS_AS(vqls::error_bound(-1.0, 3.0), InvalidArgument);
    CHECK_THROWS_AS(vqls::error_bound(1.0, 0.5), InvalidArgument);
}
