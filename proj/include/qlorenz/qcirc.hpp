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
 * Exact statevector simulation of the strongly entangling layers ansatz.
 *
 * Qubit 0 is the most significant bit of an amplitude index. A layer applies
 * R(a, b, g) = RZ(g) RY(b) RZ(a) to every qubit, then a ring of CNOTs with
 * control q and target (q + range) mod n.
 */
#pragma once

#include <algorithm>
#include <array>
#include <cassert>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "numkernel.hpp"
#include "pauli.hpp"

namespace qlorenz::qcirc {

using num::Complex;
using num::ComplexVector;

/// Row-major 2x2 unitary.
using Gate2 = std::array<Complex, 4>;

inline Gate2 rz_matrix(double theta) {
    const Complex m = std::polar(1.0, -theta / 2.0);
    return {m, 0.0, 0.0, std::conj(m)};
}

inline Gate2 ry_matrix(double theta) {
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    return {c, -s, s, c};
}

/// Closed form of RZ(gamma) RY(beta) RZ(alpha).
inline Gate2 rot_matrix(double alpha, double beta, double gamma) {
    const double c = std::cos(beta / 2.0);
    const double s = std::sin(beta / 2.0);
    return {std::polar(c, -(alpha + gamma) / 2.0),
            -std::polar(s, (alpha - gamma) / 2.0),
            std::polar(s, -(alpha - gamma) / 2.0),
            std::polar(c, (alpha + gamma) / 2.0)};
}

/// Normalized n-qubit state; starts in |0...0>.
class StateVector {
  public:
    explicit StateVector(std::size_t qubit_count)
        : qubits_(qubit_count), amps_(std::size_t{1} << qubit_count) {
        if (qubit_count == 0 || qubit_count > 24) {
            throw InvalidArgument("qubit count " +
                                  std::to_string(qubit_count));
        }
        amps_[0] = 1.0;
    }

    /// Wraps existing amplitudes; their length must be a power of two.
    explicit StateVector(ComplexVector amplitudes)
        : qubits_(num::log2_exact(amplitudes.size())),
          amps_(std::move(amplitudes)) {
        if (qubits_ == 0) {
            throw InvalidArgument("state needs at least one qubit");
        }
    }

    [[nodiscard]] std::size_t qubit_count() const noexcept { return qubits_; }
    [[nodiscard]] std::size_t dimension() const noexcept {
        return amps_.size();
    }
    [[nodiscard]] const ComplexVector &amplitudes() const noexcept {
        return amps_;
    }

    void apply_1q(const Gate2 &g, std::size_t qubit) {
        check_qubit(qubit);
        const std::size_t stride = std::size_t{1} << (qubits_ - 1 - qubit);
        const std::size_t dim = amps_.size();
        for (std::size_t base = 0; base < dim; base += 2 * stride) {
            for (std::size_t off = 0; off < stride; ++off) {
                const std::size_t i0 = base + off;
                const std::size_t i1 = i0 + stride;
                const Complex a0 = amps_[i0];
                const Complex a1 = amps_[i1];
                amps_[i0] = g[0] * a0 + g[1] * a1;
                amps_[i1] = g[2] * a0 + g[3] * a1;
            }
        }
    }

    void apply_rz(std::size_t qubit, double theta) {
        apply_1q(rz_matrix(theta), qubit);
    }
    void apply_ry(std::size_t qubit, double theta) {
        apply_1q(ry_matrix(theta), qubit);
    }
    void apply_rot(std::size_t qubit, double alpha, double beta,
                   double gamma) {
        apply_1q(rot_matrix(alpha, beta, gamma), qubit);
    }

    void apply_cnot(std::size_t control, std::size_t target) {
        check_qubit(control);
        check_qubit(target);
        if (control == target) {
            throw InvalidArgument("CNOT control equals target");
        }
        const std::uint64_t cbit = std::uint64_t{1} << (qubits_ - 1 - control);
        const std::uint64_t tbit = std::uint64_t{1} << (qubits_ - 1 - target);
        for (std::uint64_t i = 0; i < amps_.size(); ++i) {
            if ((i & cbit) && !(i & tbit)) {
                std::swap(amps_[i], amps_[i | tbit]);
            }
        }
    }

  private:
    void check_qubit(std::size_t q) const {
        if (q >= qubits_) {
            throw InvalidArgument("qubit index " + std::to_string(q) +
                                  " out of range for " +
                                  std::to_string(qubits_) + " qubits");
        }
    }

    std::size_t qubits_;
    ComplexVector amps_;
};

struct AnsatzConfig {
    std::size_t qubit_count = 3;
    std::size_t layer_count = 5;
    std::size_t entangle_range = 1;

    void validate() const {
        if (qubit_count == 0) {
            throw InvalidArgument("ansatz needs at least one qubit");
        }
        if (layer_count == 0) {
            throw InvalidArgument("ansatz needs at least one layer");
        }
        if (entangle_range == 0 ||
            (qubit_count > 1 && entangle_range >= qubit_count)) {
            throw InvalidArgument("entangle_range " +
                                  std::to_string(entangle_range) +
                                  " invalid for " +
                                  std::to_string(qubit_count) + " qubits");
        }
    }

    [[nodiscard]] std::size_t parameter_count() const noexcept {
        return layer_count * qubit_count * 3;
    }
};

/// Rotation angles laid out as [layer][qubit][alpha, beta, gamma].
class AnsatzParams {
  public:
    AnsatzParams() = default;
    AnsatzParams(std::size_t layers, std::size_t qubits)
        : layers_(layers), qubits_(qubits), angles_(layers * qubits * 3, 0.0) {}
    AnsatzParams(std::size_t layers, std::size_t qubits,
                 std::vector<double> flat)
        : layers_(layers), qubits_(qubits), angles_(std::move(flat)) {
        if (angles_.size() != layers * qubits * 3) {
            throw ShapeMismatch("expected " +
                                std::to_string(layers * qubits * 3) +
                                " angles, got " +
                                std::to_string(angles_.size()));
        }
    }

    static AnsatzParams zeros(const AnsatzConfig &cfg) {
        return AnsatzParams(cfg.layer_count, cfg.qubit_count);
    }

    [[nodiscard]] std::size_t layers() const noexcept { return layers_; }
    [[nodiscard]] std::size_t qubits() const noexcept { return qubits_; }
    [[nodiscard]] std::size_t size() const noexcept { return angles_.size(); }

    double &at(std::size_t layer, std::size_t qubit, std::size_t k) {
        return angles_.at((layer * qubits_ + qubit) * 3 + k);
    }
    [[nodiscard]] double at(std::size_t layer, std::size_t qubit,
                            std::size_t k) const {
        return angles_.at((layer * qubits_ + qubit) * 3 + k);
    }

    double &operator[](std::size_t i) noexcept { return angles_[i]; }
    double operator[](std::size_t i) const noexcept { return angles_[i]; }

    [[nodiscard]] std::span<double> flat() noexcept { return angles_; }
    [[nodiscard]] std::span<const double> flat() const noexcept {
        return angles_;
    }

    [[nodiscard]] bool matches(const AnsatzConfig &cfg) const noexcept {
        return layers_ == cfg.layer_count && qubits_ == cfg.qubit_count;
    }

    friend bool operator==(const AnsatzParams &,
                           const AnsatzParams &) = default;

  private:
    std::size_t layers_ = 0;
    std::size_t qubits_ = 0;
    std::vector<double> angles_;
};

inline void check_shape(const AnsatzConfig &cfg, const AnsatzParams &theta) {
    if (!theta.matches(cfg)) {
        throw ShapeMismatch(
            "parameters " + std::to_string(theta.layers()) + "x" +
            std::to_string(theta.qubits()) + "x3 do not match ansatz " +
            std::to_string(cfg.layer_count) + "x" +
            std::to_string(cfg.qubit_count) + "x3");
    }
    for (double a : theta.flat()) {
        if (!std::isfinite(a)) {
            throw InvalidArgument("non-finite ansatz angle");
        }
    }
}

inline StateVector run_ansatz(const AnsatzConfig &cfg,
                              const AnsatzParams &theta) {
    cfg.validate();
    check_shape(cfg, theta);
    const std::size_t n = cfg.qubit_count;
    StateVector psi(n);
    for (std::size_t layer = 0; layer < cfg.layer_count; ++layer) {
        for (std::size_t q = 0; q < n; ++q) {
            psi.apply_rot(q, theta.at(layer, q, 0), theta.at(layer, q, 1),
                          theta.at(layer, q, 2));
        }
        if (n > 1) {
            for (std::size_t q = 0; q < n; ++q) {
                psi.apply_cnot(q, (q + cfg.entangle_range) % n);
            }
        }
    }
    return psi;
}

/// Re<psi|H|psi>, accumulated term by term in label order.
inline double expectation(const StateVector &psi, const pauli::PauliSum &h) {
    if (psi.qubit_count() != h.qubit_count()) {
        throw DimensionMismatch("state on " +
                                std::to_string(psi.qubit_count()) +
                                " qubits, operator on " +
                                std::to_string(h.qubit_count()));
    }
    const ComplexVector &v = psi.amplitudes();
    Complex total{0.0, 0.0};
    for (const auto &term : h.terms()) {
        total += pauli::term_expectation(term, v);
    }
#ifndef NDEBUG
    const bool hermitian =
        std::all_of(h.terms().begin(), h.terms().end(), [](const auto &t) {
            return std::abs(t.coefficient.imag()) <= pauli::kCoefficientCutoff;
        });
    assert(!hermitian || std::abs(total.imag()) <= 1e-10);
#endif
    return total.real();
}

} // namespace qlorenz::qcirc
