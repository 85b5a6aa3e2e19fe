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

#include <random>
#include <sstream>

#include "oracles.hpp"
#include "qlorenz/lorenz.hpp"
#include "qlorenz/pauli.hpp"
#include "qlorenz/vqls.hpp"

using namespace qlorenz;
using num::Complex;
using num::ComplexMatrix;
using num::ComplexVector;
using pauli::PauliSum;
using pauli::PauliTerm;
using Catch::Matchers::WithinAbs;

namespace {

ComplexMatrix lorenz_hamiltonian() {
    const auto a = lorenz::build_nonlinear_system({10.0, 28.0, 8.0 / 3.0}, 0.01);
    return vqls::build_problem(a, lorenz::build_rhs({1.0, -2.0, 4.0}))
        .hamiltonian_dense;
}

} // namespace

TEST_CASE("decompose identity and ZZ", "[pauli]") {
    const auto s = pauli::decompose(ComplexMatrix::identity(2));
    REQUIRE(s.size() == 1);
    CHECK(s.terms()[0] == PauliTerm{"I", 1.0});

    const Complex d[] = {1.0, -1.0, -1.0, 1.0};
    const auto zz = pauli::decompose(ComplexMatrix::diagonal(d));
    REQUIRE(zz.size() == 1);
    CHECK(zz.terms()[0] == PauliTerm{"ZZ", 1.0});
}

TEST_CASE("decompose rejects bad dimensions", "[pauli]") {
    CHECK_THROWS_AS(pauli::decompose(ComplexMatrix::identity(3)),
                    NotPowerOfTwo);
    CHECK_THROWS_AS(pauli::decompose(ComplexMatrix::identity(1)),
                    InvalidArgument);
    CHECK_THROWS_AS(pauli::decompose(ComplexMatrix::identity(128)),
                    InvalidArgument);
    CHECK_THROWS_AS(pauli::decompose(ComplexMatrix(2, 4)), DimensionMismatch);
}

TEST_CASE("decompose of the Lorenz cost Hamiltonian", "[pauli]") {
    const auto h = lorenz_hamiltonian();
    const auto s = pauli::decompose(h);
    CHECK(s.qubit_count() == 3);
    for (const auto &t : s.terms()) {
        CHECK(std::abs(t.coefficient.imag()) <= 1e-12);
    }
    CHECK(oracle::max_abs_diff(pauli::reconstruct(s), h) <= 1e-12);
}

TEST_CASE("reconstruct examples", "[pauli]") {
    CHECK(pauli::reconstruct(PauliSum(1, {{"I", 1.0}})) ==
          ComplexMatrix::identity(2));
    CHECK(pauli::reconstruct(PauliSum(1, {{"X", 0.5}, {"Z", 0.5}})) ==
          ComplexMatrix{{0.5, 0.5}, {0.5, -0.5}});
}

TEST_CASE("round trip on random real symmetric matrices",
          "[pauli][property]") {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 20; ++trial) {
        const auto r = oracle::random_real_symmetric(rng, 8);
        const auto s = pauli::decompose(r);
        CHECK(oracle::max_abs_diff(pauli::reconstruct(s), r) <= 1e-12);
        for (const auto &t : s.terms()) {
            CHECK(std::abs(t.coefficient.imag()) <= 1e-12);
        }
    }
}

TEST_CASE("Pauli strings match Kronecker products", "[pauli][property]") {
    for (std::size_t n = 1; n <= 3; ++n) {
        for (const auto &label : pauli::all_labels(n)) {
            INFO(label);
            CHECK(oracle::max_abs_diff(pauli::pauli_matrix(label),
                                       oracle::pauli_string(label)) == 0.0);
        }
    }
}

TEST_CASE("Parseval identity", "[pauli][property]") {
    std::mt19937_64 rng(21);
    for (std::size_t n = 1; n <= 4; ++n) {
        const auto m = oracle::random_matrix(rng, std::size_t{1} << n);
        const auto s = pauli::decompose(m);
        double sum = 0.0;
        for (const auto &t : s.terms()) {
            sum += std::norm(t.coefficient);
        }
        sum *= static_cast<double>(std::size_t{1} << n);
        const double f = m.frobenius_norm();
        CHECK(std::abs(sum - f * f) <= 1e-10 * f * f);
    }
}

TEST_CASE("decompose inverts reconstruct", "[pauli][property]") {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> g;
    std::uniform_int_distribution<int> keep(0, 2);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<PauliTerm> terms;
        for (const auto &label : pauli::all_labels(3)) {
            if (keep(rng) == 0) {
                terms.push_back({label, Complex(g(rng), g(rng))});
            }
        }
        if (terms.empty()) {
            continue;
        }
        const PauliSum s(3, terms);
        const auto back = pauli::decompose(pauli::reconstruct(s));
        REQUIRE(back.size() == s.size());
        for (std::size_t i = 0; i < s.size(); ++i) {
            CHECK(back.terms()[i].label == s.terms()[i].label);
            CHECK(std::abs(back.terms()[i].coefficient -
                           s.terms()[i].coefficient) <= 1e-12);
        }
    }
}

TEST_CASE("apply_term examples", "[pauli]") {
    std::mt19937_64 rng(17);
    const auto v = oracle::random_vector(rng, 8);
    CHECK(pauli::apply_term({"III", 1.0}, v) == v);

    const auto flipped = pauli::apply_term({"X", 1.0}, ComplexVector{1.0, 0.0});
    CHECK(flipped == ComplexVector{0.0, 1.0});

    const auto w = oracle::random_vector(rng, 4);
    const auto dense = oracle::pauli_string("ZY") * w;
    CHECK(oracle::max_abs_diff(pauli::apply_term({"ZY", 1.0}, w), dense) <=
          1e-13);

    CHECK_THROWS_AS(pauli::apply_term({"ZY", 1.0}, v), DimensionMismatch);
}

TEST_CASE("apply_term matches dense products on all two-qubit labels",
          "[pauli][property]") {
    std::mt19937_64 rng(23);
    for (const auto &label : pauli::all_labels(2)) {
        for (int trial = 0; trial < 5; ++trial) {
            const auto v = oracle::random_vector(rng, 4);
            const Complex c(0.3, -1.7);
            const PauliTerm t{label, c};
            const auto dense = c * (oracle::pauli_string(label) * v);
            CHECK(oracle::max_abs_diff(pauli::apply_term(t, v), dense) <=
                  1e-13);
            CHECK(std::abs(pauli::term_expectation(t, v) -
                           num::inner(v, dense)) <= 1e-12);
        }
    }
}

TEST_CASE("apply_sum matches the dense reconstruction", "[pauli][property]") {
    const auto h = lorenz_hamiltonian();
    const auto s = pauli::decompose(h);
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 10; ++trial) {
        const auto v = oracle::random_vector(rng, 8);
        CHECK(oracle::max_abs_diff(pauli::apply_sum(s, v), h * v) <= 1e-12);
    }
}

TEST_CASE("PauliSum invariants", "[pauli]") {
    CHECK_THROWS_AS(PauliSum(2, {{"X", 1.0}}), InvalidArgument);
    CHECK_THROWS_AS(PauliSum(1, {{"A", 1.0}}), InvalidArgument);
    CHECK_THROWS_AS(PauliSum(1, {{"X", 1.0}, {"X", 2.0}}), InvalidArgument);
    CHECK_THROWS_AS(PauliSum(0, {}), InvalidArgument);

    const PauliSum s(2, {{"ZI", 1.0}, {"XX", 2.0}, {"IY", 1e-13}});
    REQUIRE(s.size() == 2);
    CHECK(s.terms()[0].label == "XX");
    CHECK(s.terms()[1].label == "ZI");
}

TEST_CASE("text dump round trips bit-exactly", "[pauli]") {
    const auto s = pauli::decompose(lorenz_hamiltonian());
    const std::string text = pauli::to_text(s);
    std::istringstream in(text);
    const auto back = pauli::read_text(in);
    CHECK(back == s);
    CHECK(pauli::to_text(back) == text);

    CHECK(pauli::to_text(PauliSum(1, {{"I", 1.0}})) == "I 1 0\n");

    std::istringstream bad("XX 1\n");
    CHECK_THROWS_AS(pauli::read_text(bad), InvalidArgument);
    std::istringstream empty("# nothing\n");
    CHECK_THROWS_AS(pauli::read_text(empty), InvalidArgument);
}
