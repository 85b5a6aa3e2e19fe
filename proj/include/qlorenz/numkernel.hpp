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
 * Small dense complex linear algebra: vectors, matrices, LU solve, singular
 * values, condition numbers, Hermitian dilation and power-of-two padding.
 *
 * Everything is dense. Dimensions in this project never exceed 16, so the
 * routines favour accuracy and simplicity over asymptotic speed.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace qlorenz::num {

using Complex = std::complex<double>;

/// Dense column vector of complex numbers.
class ComplexVector {
  public:
    ComplexVector() = default;
    explicit ComplexVector(std::size_t n) : data_(n, Complex{0.0, 0.0}) {}
    ComplexVector(std::initializer_list<Complex> values) : data_(values) {}
    explicit ComplexVector(std::vector<Complex> values)
        : data_(std::move(values)) {}

    static ComplexVector from_real(std::span<const double> values) {
        ComplexVector v(values.size());
        for (std::size_t i = 0; i < values.size(); ++i) {
            v.data_[i] = values[i];
        }
        return v;
    }

    static ComplexVector basis(std::size_t n, std::size_t k) {
        ComplexVector v(n);
        v.data_.at(k) = 1.0;
        return v;
    }

    [[nodiscard]] std::size_t size() const noexcept { return data_.size(); }
    [[nodiscard]] bool empty() const noexcept { return data_.empty(); }

    Complex &operator[](std::size_t i) noexcept { return data_[i]; }
    const Complex &operator[](std::size_t i) const noexcept {
        return data_[i];
    }

    [[nodiscard]] std::span<Complex> span() noexcept { return data_; }
    [[nodiscard]] std::span<const Complex> span() const noexcept {
        return data_;
    }

    auto begin() noexcept { return data_.begin(); }
    auto end() noexcept { return data_.end(); }
    auto begin() const noexcept { return data_.begin(); }
    auto end() const noexcept { return data_.end(); }

    [[nodiscard]] double norm() const noexcept {
        double acc = 0.0;
        for (const auto &z : data_) {
            acc += std::norm(z);
        }
        return std::sqrt(acc);
    }

    [[nodiscard]] bool all_finite() const noexcept {
        return std::all_of(data_.begin(), data_.end(), [](const Complex &z) {
            return std::isfinite(z.real()) && std::isfinite(z.imag());
        });
    }

    ComplexVector &operator+=(const ComplexVector &rhs) {
        check_same_size(rhs);
        for (std::size_t i = 0; i < size(); ++i) {
            data_[i] += rhs.data_[i];
        }
        return *this;
    }
    ComplexVector &operator-=(const ComplexVector &rhs) {
        check_same_size(rhs);
        for (std::size_t i = 0; i < size(); ++i) {
            data_[i] -= rhs.data_[i];
        }
        return *this;
    }
    ComplexVector &operator*=(Complex s) noexcept {
        for (auto &z : data_) {
            z *= s;
        }
        return *this;
    }

    friend ComplexVector operator+(ComplexVector a, const ComplexVector &b) {
        return a += b;
    }
    friend ComplexVector operator-(ComplexVector a, const ComplexVector &b) {
        return a -= b;
    }
    friend ComplexVector operator*(Complex s, ComplexVector v) {
        return v *= s;
    }
    friend ComplexVector operator*(ComplexVector v, Complex s) {
        return v *= s;
    }

    friend bool operator==(const ComplexVector &,
                           const ComplexVector &) = default;

  private:
    void check_same_size(const ComplexVector &rhs) const {
        if (rhs.size() != size()) {
            throw DimensionMismatch("vector sizes " + std::to_string(size()) +
                                    " and " + std::to_string(rhs.size()));
        }
    }

    std::vector<Complex> data_;
};

/// <u|v>, conjugate-linear in the first argument.
inline Complex inner(const ComplexVector &u, const ComplexVector &v) {
    if (u.size() != v.size()) {
        throw DimensionMismatch("inner product of mismatched vectors");
    }
    Complex acc{0.0, 0.0};
    for (std::size_t i = 0; i < u.size(); ++i) {
        acc += std::conj(u[i]) * v[i];
    }
    return acc;
}

/// Row-major dense complex matrix.
class ComplexMatrix {
  public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, Complex{0.0, 0.0}) {}

    /// Build from nested rows; every row must have the same length.
    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
        : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
        data_.reserve(rows_ * cols_);
        for (const auto &row : rows) {
            if (row.size() != cols_) {
                throw DimensionMismatch("ragged matrix literal");
            }
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    static ComplexMatrix identity(std::size_t n) {
        ComplexMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            m(i, i) = 1.0;
        }
        return m;
    }

    static ComplexMatrix diagonal(std::span<const Complex> d) {
        ComplexMatrix m(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i) {
            m(i, i) = d[i];
        }
        return m;
    }

    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
    [[nodiscard]] bool is_square() const noexcept { return rows_ == cols_; }

    Complex &operator()(std::size_t r, std::size_t c) noexcept {
        return data_[r * cols_ + c];
    }
    const Complex &operator()(std::size_t r, std::size_t c) const noexcept {
        return data_[r * cols_ + c];
    }

    [[nodiscard]] std::span<const Complex> data() const noexcept {
        return data_;
    }

    [[nodiscard]] ComplexMatrix adjoint() const {
        ComplexMatrix out(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r) {
            for (std::size_t c = 0; c < cols_; ++c) {
                out(c, r) = std::conj((*this)(r, c));
            }
        }
        return out;
    }

    [[nodiscard]] double frobenius_norm() const noexcept {
        double acc = 0.0;
        for (const auto &z : data_) {
            acc += std::norm(z);
        }
        return std::sqrt(acc);
    }

    [[nodiscard]] double max_abs() const noexcept {
        double m = 0.0;
        for (const auto &z : data_) {
            m = std::max(m, std::abs(z));
        }
        return m;
    }

    [[nodiscard]] bool all_finite() const noexcept {
        return std::all_of(data_.begin(), data_.end(), [](const Complex &z) {
            return std::isfinite(z.real()) && std::isfinite(z.imag());
        });
    }

    ComplexMatrix &operator+=(const ComplexMatrix &rhs) {
        check_same_shape(rhs);
        for (std::size_t i = 0; i < data_.size(); ++i) {
            data_[i] += rhs.data_[i];
        }
        return *this;
    }
    ComplexMatrix &operator-=(const ComplexMatrix &rhs) {
        check_same_shape(rhs);
        for (std::size_t i = 0; i < data_.size(); ++i) {
            data_[i] -= rhs.data_[i];
        }
        return *this;
    }
    ComplexMatrix &operator*=(Complex s) noexcept {
        for (auto &z : data_) {
            z *= s;
        }
        return *this;
    }

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b) {
        return a += b;
    }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b) {
        return a -= b;
    }
    friend ComplexMatrix operator*(Complex s, ComplexMatrix m) {
        return m *= s;
    }

    friend ComplexMatrix operator*(const ComplexMatrix &a,
                                   const ComplexMatrix &b) {
        if (a.cols_ != b.rows_) {
            throw DimensionMismatch("matrix product " + a.shape_string() +
                                    " * " + b.shape_string());
        }
        ComplexMatrix out(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Complex aik = a(i, k);
                if (aik == Complex{}) {
                    continue;
                }
                for (std::size_t j = 0; j < b.cols_; ++j) {
                    out(i, j) += aik * b(k, j);
                }
            }
        }
        return out;
    }

    friend ComplexVector operator*(const ComplexMatrix &a,
                                   const ComplexVector &v) {
        if (a.cols_ != v.size()) {
            throw DimensionMismatch("matrix-vector product " +
                                    a.shape_string() + " * " +
                                    std::to_string(v.size()));
        }
        ComplexVector out(a.rows_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            Complex acc{0.0, 0.0};
            for (std::size_t j = 0; j < a.cols_; ++j) {
                acc += a(i, j) * v[j];
            }
            out[i] = acc;
        }
        return out;
    }

    friend bool operator==(const ComplexMatrix &,
                           const ComplexMatrix &) = default;

    [[nodiscard]] std::string shape_string() const {
        return std::to_string(rows_) + "x" + std::to_string(cols_);
    }

  private:
    void check_same_shape(const ComplexMatrix &rhs) const {
        if (rhs.rows_ != rows_ || rhs.cols_ != cols_) {
            throw DimensionMismatch(shape_string() + " vs " +
                                    rhs.shape_string());
        }
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

/// Outer product |u><v|.
inline ComplexMatrix outer(const ComplexVector &u, const ComplexVector &v) {
    ComplexMatrix m(u.size(), v.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        for (std::size_t j = 0; j < v.size(); ++j) {
            m(i, j) = u[i] * std::conj(v[j]);
        }
    }
    return m;
}

/// Pivot threshold relative to the Frobenius norm of A.
inline constexpr double kPivotTolerance = 1e-14;

/**
 * Solve A w = b by LU factorization with partial pivoting.
 *
 * Throws SingularMatrix when a pivot magnitude falls below
 * kPivotTolerance * ||A||_F.
 */
inline ComplexVector solve_dense(const ComplexMatrix &a,
                                 const ComplexVector &b) {
    if (!a.is_square()) {
        throw DimensionMismatch("solve_dense needs a square matrix, got " +
                                a.shape_string());
    }
    const std::size_t n = a.rows();
    if (b.size() != n) {
        throw DimensionMismatch("solve_dense: matrix " + a.shape_string() +
                                " with rhs of length " +
                                std::to_string(b.size()));
    }
    if (n == 0) {
        throw DimensionMismatch("solve_dense: empty system");
    }

    ComplexMatrix lu = a;
    ComplexVector x = b;
    const double threshold = kPivotTolerance * a.frobenius_norm();

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = k;
        double best = std::abs(lu(k, k));
        for (std::size_t r = k + 1; r < n; ++r) {
            const double mag = std::abs(lu(r, k));
            if (mag > best) {
                best = mag;
                pivot = r;
            }
        }
        if (!(best > threshold)) {
            throw SingularMatrix("pivot " + std::to_string(best) +
                                 " at column " + std::to_string(k));
        }
        if (pivot != k) {
            for (std::size_t c = 0; c < n; ++c) {
                std::swap(lu(k, c), lu(pivot, c));
            }
            std::swap(x[k], x[pivot]);
        }
        for (std::size_t r = k + 1; r < n; ++r) {
            const Complex factor = lu(r, k) / lu(k, k);
            if (factor == Complex{}) {
                continue;
            }
            lu(r, k) = factor;
            for (std::size_t c = k + 1; c < n; ++c) {
                lu(r, c) -= factor * lu(k, c);
            }
            x[r] -= factor * x[k];
        }
    }

    for (std::size_t i = n; i-- > 0;) {
        Complex acc = x[i];
        for (std::size_t c = i + 1; c < n; ++c) {
            acc -= lu(i, c) * x[c];
        }
        x[i] = acc / lu(i, i);
    }
    return x;
}

/**
 * Singular values in descending order, by one-sided (Hestenes) Jacobi.
 *
 * Columns are orthogonalized pairwise; each complex pair is first brought to
 * a real inner product by a unit-modulus column scaling, then rotated.
 */
inline std::vector<double> singular_values(const ComplexMatrix &m) {
    // Work on the orientation with at least as many rows as columns.
    ComplexMatrix work = m.rows() >= m.cols() ? m : m.adjoint();
    const std::size_t rows = work.rows();
    const std::size_t cols = work.cols();
    constexpr double eps = std::numeric_limits<double>::epsilon();
    constexpr int max_sweeps = 100;

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < cols; ++p) {
            for (std::size_t q = p + 1; q < cols; ++q) {
                double alpha = 0.0;
                double beta = 0.0;
                Complex gamma{0.0, 0.0};
                for (std::size_t r = 0; r < rows; ++r) {
                    alpha += std::norm(work(r, p));
                    beta += std::norm(work(r, q));
                    gamma += std::conj(work(r, p)) * work(r, q);
                }
                const double g = std::abs(gamma);
                if (g == 0.0 || g <= eps * std::sqrt(alpha * beta)) {
                    continue;
                }
                rotated = true;
                const Complex phase = std::conj(gamma) / g;
                const double zeta = (beta - alpha) / (2.0 * g);
                const double t =
                    std::copysign(1.0, zeta) /
                    (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                for (std::size_t r = 0; r < rows; ++r) {
                    const Complex up = work(r, p);
                    const Complex uq = work(r, q) * phase;
                    work(r, p) = c * up - s * uq;
                    work(r, q) = s * up + c * uq;
                }
            }
        }
        if (!rotated) {
            break;
        }
    }

    std::vector<double> sv(cols);
    for (std::size_t c = 0; c < cols; ++c) {
        double acc = 0.0;
        for (std::size_t r = 0; r < rows; ++r) {
            acc += std::norm(work(r, c));
        }
        sv[c] = std::sqrt(acc);
    }
    std::sort(sv.begin(), sv.end(), std::greater<>());
    return sv;
}

/// Relative floor on sigma_min below which a matrix counts as rank deficient.
inline constexpr double kRankTolerance = 1e-14;

/// 2-norm condition number sigma_max / sigma_min.
inline double condition_number(const ComplexMatrix &m) {
    if (!m.is_square() || m.rows() == 0) {
        throw DimensionMismatch("condition_number needs a nonempty square "
                                "matrix, got " +
                                m.shape_string());
    }
    const auto sv = singular_values(m);
    const double smax = sv.front();
    const double smin = sv.back();
    if (smax == 0.0) {
        throw RankDeficient("zero matrix");
    }
    if (smin < kRankTolerance * smax) {
        throw RankDeficient("sigma_min/sigma_max = " +
                            std::to_string(smin / smax));
    }
    return smax / smin;
}

/// [[0, A], [A^H, 0]].
inline ComplexMatrix hermitian_dilation(const ComplexMatrix &a) {
    if (!a.is_square()) {
        throw DimensionMismatch("hermitian_dilation needs a square matrix, "
                                "got " +
                                a.shape_string());
    }
    const std::size_t n = a.rows();
    ComplexMatrix out(2 * n, 2 * n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            out(r, n + c) = a(r, c);
            out(n + c, r) = std::conj(a(r, c));
        }
    }
    return out;
}

[[nodiscard]] constexpr bool is_power_of_two(std::size_t n) noexcept {
    return n != 0 && (n & (n - 1)) == 0;
}

/// Number of qubits k with 2^k == n; throws NotPowerOfTwo otherwise.
inline std::size_t log2_exact(std::size_t n) {
    if (!is_power_of_two(n)) {
        throw NotPowerOfTwo("dimension " + std::to_string(n));
    }
    std::size_t k = 0;
    while ((std::size_t{1} << k) < n) {
        ++k;
    }
    return k;
}

struct PaddedSystem {
    ComplexMatrix matrix;
    ComplexVector rhs;
};

/**
 * Embed an n x n system into the next power-of-two dimension. The original
 * block stays top-left, new diagonal entries are 1 and new rhs entries are 0,
 * so the first n coordinates of the padded solution are the original one.
 */
inline PaddedSystem pad_to_power_of_two(const ComplexMatrix &a,
                                        const ComplexVector &b) {
    if (!a.is_square() || a.rows() == 0) {
        throw DimensionMismatch("pad_to_power_of_two needs a nonempty square "
                                "matrix, got " +
                                a.shape_string());
    }
    if (b.size() != a.rows()) {
        throw DimensionMismatch("pad_to_power_of_two: rhs length " +
                                std::to_string(b.size()));
    }
    const std::size_t n = a.rows();
    std::size_t target = 1;
    while (target < n) {
        target <<= 1;
    }
    if (target == n) {
        return {a, b};
    }
    PaddedSystem out{ComplexMatrix(target, target), ComplexVector(target)};
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            out.matrix(r, c) = a(r, c);
        }
        out.rhs[r] = b[r];
    }
    for (std::size_t i = n; i < target; ++i) {
        out.matrix(i, i) = 1.0;
    }
    return out;
}

} // namespace qlorenz::num
