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

// Solves one Lorenz Euler step with VQLS and with LU and prints both.

#include <chrono>
#include <cstdio>

#include "qlorenz/lorenz.hpp"
#include "qlorenz/numkernel.hpp"
#include "qlorenz/vqls.hpp"

using namespace qlorenz;

int main() {
    const lorenz::LorenzParams params = lorenz::LorenzParams::classic();
    const lorenz::State3 s{1.0, -2.0, 4.0};
    const double h = 5e-3;

    const auto a = lorenz::build_nonlinear_system(params, h);
    const auto b = lorenz::build_rhs(s);
    const auto exact = num::solve_dense(a, b);

    const auto t0 = std::chrono::steady_clock::now();
    const auto problem = vqls::build_problem(a, b);
    const auto res = vqls::optimize(problem, vqls::VqlsConfig{});
    const auto t1 = std::chrono::steady_clock::now();

    std::printf("H_G has %zu Pauli terms\n", problem.hamiltonian.size());
    std::printf("restart %zu won: cost %.3e after %zu iterations (%s)\n",
                res.restart_index, res.final_cost, res.iterations_used,
                res.converged ? "converged" : "iteration cap");
    std::printf("relative residual %.3e, scale C %.6f, sign %+d\n",
                res.residual, res.scale_c, res.sign);
    std::printf("next state  vqls   (%.7f, %.7f, %.7f)\n",
                res.solution[3].real(), res.solution[4].real(),
                res.solution[5].real());
    std::printf("next state  direct (%.7f, %.7f, %.7f)\n", exact[3].real(),
                exact[4].real(), exact[5].real());
    std::printf("kappa(A) = %.6f, elapsed %.3f s\n", num::condition_number(a),
                std::chrono::duration<double>(t1 - t0).count());
    return 0;
}
