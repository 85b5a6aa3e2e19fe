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
 * Pauli-string decomposition of dense matrices and matrix-free application
 * of Pauli terms to statevectors.
 *
 * Label character k acts on qubit k, and qubit 0 is the most significant bit
 * of an amplitude index.
 */
#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "numkernel.hpp"

namespace qlorenz::pauli {

using num::Complex;
using num::ComplexMatrix;
using num::ComplexVector;

/// Coefficients with magnitude below this are dropped from a PauliSum.
inline constexpr double kCoefficientCutoff = 1e-12;

/// Largest qubit count accepted by decompose().
inline constexpr std::size_t kMaxQubits = 6;

struct PauliTerm {
    std::string label;
    Complex coefficient{0.0, 0.0};

    friend bool operator==(const PauliTerm &, const PauliTerm &) = default;
};

/// Bit masks describing a Pauli string as a signed permutation.
struct PauliMasks {
    std::uint64_t flip = 0;  ///< qubits carrying X or Y
    std::uint64_t phase = 0; ///< qubits carrying Y or Z
    unsigned y_count = 0;
};

inline bool is_valid_label(std::string_view label) {
    return !label.empty() &&
           std::all_of(label.begin(), label.end(), [](char c) {
               return c == 'I' || c == 'X' || c == 'Y' || c == 'Z';
           });
}

inline PauliMasks masks_of(std::string_view label) {
    if (!is_valid_label(label)) {
        throw InvalidArgument("bad Pauli label '" + std::string(label) + "'");
    }
    PauliMasks m;
    const std::size_t n = label.size();
    for (std::size_t k = 0; k < n; ++k) {
        const std::uint64_t bit = std::uint64_t{1} << (n - 1 - k);
        switch (label[k]) {
        case 'X':
            m.flip |= bit;
            break;
        case 'Y':
            m.flip |= bit;
            m.phase |= bit;
            ++m.y_count;
            break;
        case 'Z':
            m.phase |= bit;
            break;
        default:
            break;
        }
    }
    return m;
}

/// i^k for integer k.
inline Complex i_power(unsigned k) {
    switch (k % 4) {
    case 0:
        return {1.0, 0.0};
    case 1:
        return {0.0, 1.0};
    case 2:
        return {-1.0, 0.0};
    default:
        return {0.0, -1.0};
    }
}

/// P|j> = phase(j) |j ^ flip>, phase(j) = i^{#Y} (-1)^{popcount(j & phase)}.
inline Complex column_phase(const PauliMasks &m, std::uint64_t j) {
    const Complex base = i_power(m.y_count);
    return (__builtin_popcountll(j & m.phase) & 1U) ? -base : base;
}

/**
 * Weighted sum of Pauli strings on a fixed number of qubits.
 *
 * Labels are unique and kept in lexicographic order; terms whose coefficient
 * magnitude is below kCoefficientCutoff are discarded on construction.
 */
class PauliSum {
  public:
    PauliSum() = default;

    PauliSum(std::size_t qubit_count, std::vector<PauliTerm> terms)
        : qubit_count_(qubit_count) {
        if (qubit_count == 0) {
            throw InvalidArgument("PauliSum needs at least one qubit");
        }
        for (auto &t : terms) {
            if (t.label.size() != qubit_count || !is_valid_label(t.label)) {
                throw InvalidArgument("label '" + t.label +
                                      "' does not fit " +
                                      std::to_string(qubit_count) +
                                      " qubits");
            }
        }
        std::sort(terms.begin(), terms.end(),
                  [](const PauliTerm &a, const PauliTerm &b) {
                      return a.label < b.label;
                  });
        for (std::size_t i = 1; i < terms.size(); ++i) {
            if (terms[i].label == terms[i - 1].label) {
                throw InvalidArgument("duplicate label '" + terms[i].label +
                                      "'");
            }
        }
        for (auto &t : terms) {
            if (std::abs(t.coefficient) >= kCoefficientCutoff) {
                terms_.push_back(std::move(t));
            }
        }
    }

    [[nodiscard]] std::size_t qubit_count() const noexcept {
        return qubit_count_;
    }
    [[nodiscard]] std::size_t dimension() const noexcept {
        return std::size_t{1} << qubit_count_;
    }
    [[nodiscard]] const std::vector<PauliTerm> &terms() const noexcept {
        return terms_;
    }
    [[nodiscard]] std::size_t size() const noexcept { return terms_.size(); }

    friend bool operator==(const PauliSum &, const PauliSum &) = default;

  private:
    std::size_t qubit_count_ = 0;
    std::vector<PauliTerm> terms_;
};

/// All 4^n labels in lexicographic order (I < X < Y < Z).
inline std::vector<std::string> all_labels(std::size_t n) {
    static constexpr char kAlphabet[] = {'I', 'X', 'Y', 'Z'};
    std::size_t total = 1;
    for (std::size_t k = 0; k < n; ++k) {
        total *= 4;
    }
    std::vector<std::string> labels;
    labels.reserve(total);
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::string label(n, 'I');
        std::size_t rest = idx;
        for (std::size_t k = n; k-- > 0;) {
            label[k] = kAlphabet[rest % 4];
            rest /= 4;
        }
        labels.push_back(std::move(label));
    }
    return labels;
}

/**
 * Coefficients c_P = Tr(P M) / 2^n over every Pauli string P.
 *
 * Each trace only touches the 2^n entries where P is nonzero, so the full
 * decomposition costs 4^n * 2^n operations.
 */
inline PauliSum decompose(const ComplexMatrix &m) {
    if (!m.is_square()) {
        throw DimensionMismatch("decompose needs a square matrix, got " +
                                m.shape_string());
    }
    const std::size_t n = num::log2_exact(m.rows());
    if (n == 0 || n > kMaxQubits) {
        throw InvalidArgument("decompose supports 1.." +
                              std::to_string(kMaxQubits) + " qubits, got " +
                              std::to_string(n));
    }
    const std::size_t dim = m.rows();
    const double norm = 1.0 / static_cast<double>(dim);

    std::vector<PauliTerm> terms;
    for (auto &label : all_labels(n)) {
        const PauliMasks masks = masks_of(label);
        // Tr(P M) = sum_j phase(j) M(j, j ^ flip)
        Complex acc{0.0, 0.0};
        for (std::uint64_t j = 0; j < dim; ++j) {
            acc += column_phase(masks, j) * m(j, j ^ masks.flip);
        }
        acc *= norm;
        if (std::abs(acc) >= kCoefficientCutoff) {
            terms.push_back({std::move(label), acc});
        }
    }
    return PauliSum(n, std::move(terms));
}

/// Dense matrix of a single Pauli string (unit coefficient).
inline ComplexMatrix pauli_matrix(std::string_view label) {
    const PauliMasks masks = masks_of(label);
    const std::size_t dim = std::size_t{1} << label.size();
    ComplexMatrix out(dim, dim);
    for (std::uint64_t j = 0; j < dim; ++j) {
        out(j ^ masks.flip, j) = column_phase(masks, j);
    }
    return out;
}

inline ComplexMatrix reconstruct(const PauliSum &s) {
    const std::size_t dim = s.dimension();
    ComplexMatrix out(dim, dim);
    for (const auto &term : s.terms()) {
        const PauliMasks masks = masks_of(term.label);
        for (std::uint64_t j = 0; j < dim; ++j) {
            out(j ^ masks.flip, j) += term.coefficient * column_phase(masks, j);
        }
    }
    return out;
}

/// coefficient * P * v in O(2^n).
inline ComplexVector apply_term(const PauliTerm &t, const ComplexVector &v) {
    const std::size_t dim = std::size_t{1} << t.label.size();
    if (v.size() != dim) {
        throw DimensionMismatch("term '" + t.label + "' applied to vector of "
                                "length " +
                                std::to_string(v.size()));
    }
    const PauliMasks masks = masks_of(t.label);
    ComplexVector out(dim);
    for (std::uint64_t j = 0; j < dim; ++j) {
        out[j ^ masks.flip] = t.coefficient * column_phase(masks, j) * v[j];
    }
    return out;
}

/// <v| coefficient * P |v> without materializing P v.
inline Complex term_expectation(const PauliTerm &t, const ComplexVector &v) {
    const std::size_t dim = std::size_t{1} << t.label.size();
    if (v.size() != dim) {
        throw DimensionMismatch("term '" + t.label + "' on vector of length " +
                                std::to_string(v.size()));
    }
    const PauliMasks masks = masks_of(t.label);
    Complex acc{0.0, 0.0};
    for (std::uint64_t j = 0; j < dim; ++j) {
        acc += std::conj(v[j ^ masks.flip]) * column_phase(masks, j) * v[j];
    }
    return t.coefficient * acc;
}

/// S * v, summing terms in label order.
inline ComplexVector apply_sum(const PauliSum &s, const ComplexVector &v) {
    if (v.size() != s.dimension()) {
        throw DimensionMismatch("Pauli sum on " +
                                std::to_string(s.qubit_count()) +
                                " qubits applied to vector of length " +
                                std::to_string(v.size()));
    }
    ComplexVector out(v.size());
    for (const auto &term : s.terms()) {
        out += apply_term(term, v);
    }
    return out;
}

namespace detail {
inline std::string format_real(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}
} // namespace detail

/// One `LABEL re im` line per term in lexicographic label order.
inline void write_text(std::ostream &os, const PauliSum &s) {
    for (const auto &t : s.terms()) {
        os << t.label << ' ' << detail::format_real(t.coefficient.real())
           << ' ' << detail::format_real(t.coefficient.imag()) << '\n';
    }
}

inline std::string to_text(const PauliSum &s) {
    std::ostringstream os;
    write_text(os, s);
    return os.str();
}

/// Inverse of write_text. Blank lines and lines starting with '#' are skipped.
inline PauliSum read_text(std::istream &is) {
    std::vector<PauliTerm> terms;
    std::size_t qubits = 0;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line.front() == '#') {
            continue;
        }
        std::istringstream ls(line);
        PauliTerm t;
        double re = 0.0;
        double im = 0.0;
        if (!(ls >> t.label >> re >> im)) {
            throw InvalidArgument("malformed Pauli line '" + line + "'");
        }
        t.coefficient = {re, im};
        if (qubits == 0) {
            qubits = t.label.size();
        }
        terms.push_back(std::move(t));
    }
    if (qubits == 0) {
        throw InvalidArgument("empty Pauli sum text");
    }
    return PauliSum(qubits, std::move(terms));
}

} // namespace qlorenz::pauli
