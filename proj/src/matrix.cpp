// Copyright 2026 The qmeasure Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qmeasure/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qmeasure/error.hpp"

namespace qmeasure {

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}

ComplexMatrix::ComplexMatrix(
    std::initializer_list<std::initializer_list<Complex>> rows)
    : ComplexMatrix(rows.size()) {
    std::size_t r = 0;
    for (const auto &row : rows) {
        if (row.size() != dim_) {
            throw Error(ErrorCode::DimMismatch, "matrix literal is not square");
        }
        std::copy(row.begin(), row.end(), data_.begin() + r * dim_);
        ++r;
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        m(i, i) = 1.0;
    }
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> entries) {
    ComplexMatrix m(entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) {
        m(i, i) = entries[i];
    }
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::initializer_list<double> entries) {
    return diagonal(std::span<const double>(entries.begin(), entries.size()));
}

ComplexMatrix ComplexMatrix::outer(std::span<const Complex> u,
                                   std::span<const Complex> v) {
    if (u.size() != v.size()) {
        throw Error(ErrorCode::DimMismatch, "outer product of unequal vectors");
    }
    ComplexMatrix m(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        for (std::size_t j = 0; j < v.size(); ++j) {
            m(i, j) = u[i] * std::conj(v[j]);
        }
    }
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
        for (std::size_t j = 0; j < dim_; ++j) {
            out(j, i) = std::conj((*this)(i, j));
        }
    }
    return out;
}

Complex ComplexMatrix::trace() const noexcept {
    Complex t = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) {
        t += (*this)(i, i);
    }
    return t;
}

Vector ComplexMatrix::column(std::size_t col) const {
    Vector v(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
        v[i] = (*this)(i, col);
    }
    return v;
}

double ComplexMatrix::max_abs() const noexcept {
    double best = 0.0;
    for (const auto &z : data_) {
        best = std::max(best, std::abs(z));
    }
    return best;
}

bool ComplexMatrix::all_finite() const noexcept {
    return std::all_of(data_.begin(), data_.end(), [](const Complex &z) {
        return std::isfinite(z.real()) && std::isfinite(z.imag());
    });
}

void require_same_dim(const ComplexMatrix &a, const ComplexMatrix &b,
                      const char *what) {
    if (a.dim() != b.dim()) {
        throw Error(ErrorCode::DimMismatch,
                    std::string(what) + ": dim " + std::to_string(a.dim()) +
                        " vs " + std::to_string(b.dim()));
    }
}

ComplexMatrix &ComplexMatrix::operator+=(const ComplexMatrix &other) {
    require_same_dim(*this, other, "matrix sum");
    for (std::size_t i = 0; i < data_.size(); ++i) {
        data_[i] += other.data_[i];
    }
    return *this;
}

ComplexMatrix &ComplexMatrix::operator-=(const ComplexMatrix &other) {
    require_same_dim(*this, other, "matrix difference");
    for (std::size_t i = 0; i < data_.size(); ++i) {
        data_[i] -= other.data_[i];
    }
    return *this;
}

ComplexMatrix &ComplexMatrix::operator*=(Complex scale) noexcept {
    for (auto &z : data_) {
        z *= scale;
    }
    return *this;
}

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix &rhs) {
    lhs += rhs;
    return lhs;
}

ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix &rhs) {
    lhs -= rhs;
    return lhs;
}

ComplexMatrix operator*(Complex scale, ComplexMatrix m) {
    m *= scale;
    return m;
}

// Products are spelled out on real and imaginary parts: std::complex
// multiplication carries NaN recovery branches that dominate the cost at
// these sizes.
ComplexMatrix operator*(const ComplexMatrix &lhs, const ComplexMatrix &rhs) {
    require_same_dim(lhs, rhs, "matrix product");
    const std::size_t n = lhs.dim();
    ComplexMatrix out(n);
    std::vector<double> acc_re(n);
    std::vector<double> acc_im(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::fill(acc_re.begin(), acc_re.end(), 0.0);
        std::fill(acc_im.begin(), acc_im.end(), 0.0);
        for (std::size_t k = 0; k < n; ++k) {
            const double ar = lhs(i, k).real();
            const double ai = lhs(i, k).imag();
            if (ar == 0.0 && ai == 0.0) {
                continue;
            }
            for (std::size_t j = 0; j < n; ++j) {
                const double br = rhs(k, j).real();
                const double bi = rhs(k, j).imag();
                acc_re[j] += ar * br - ai * bi;
                acc_im[j] += ar * bi + ai * br;
            }
        }
        for (std::size_t j = 0; j < n; ++j) {
            out(i, j) = Complex(acc_re[j], acc_im[j]);
        }
    }
    return out;
}

Vector operator*(const ComplexMatrix &m, std::span<const Complex> v) {
    if (m.dim() != v.size()) {
        throw Error(ErrorCode::DimMismatch, "matrix-vector product");
    }
    Vector out(v.size());
    for (std::size_t i = 0; i < m.dim(); ++i) {
        double re = 0.0;
        double im = 0.0;
        for (std::size_t j = 0; j < m.dim(); ++j) {
            const Complex a = m(i, j);
            re += a.real() * v[j].real() - a.imag() * v[j].imag();
            im += a.real() * v[j].imag() + a.imag() * v[j].real();
        }
        out[i] = Complex(re, im);
    }
    return out;
}

double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b) {
    require_same_dim(a, b, "matrix comparison");
    double best = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i) {
        best = std::max(best, std::abs(a.data()[i] - b.data()[i]));
    }
    return best;
}

double hermiticity_residual(const ComplexMatrix &m) noexcept {
    double best = 0.0;
    for (std::size_t i = 0; i < m.dim(); ++i) {
        for (std::size_t j = i; j < m.dim(); ++j) {
            best = std::max(best, std::abs(m(i, j) - std::conj(m(j, i))));
        }
    }
    return best;
}

ComplexMatrix commutator(const ComplexMatrix &a, const ComplexMatrix &b) {
    return a * b - b * a;
}

ComplexMatrix hermitian_part(const ComplexMatrix &m) {
    ComplexMatrix out(m.dim());
    for (std::size_t i = 0; i < m.dim(); ++i) {
        out(i, i) = m(i, i).real();
        for (std::size_t j = i + 1; j < m.dim(); ++j) {
            const Complex avg = 0.5 * (m(i, j) + std::conj(m(j, i)));
            out(i, j) = avg;
            out(j, i) = std::conj(avg);
        }
    }
    return out;
}

Complex trace_of_product(const ComplexMatrix &a, const ComplexMatrix &b) {
    require_same_dim(a, b, "trace of product");
    double re = 0.0;
    double im = 0.0;
    const std::size_t n = a.dim();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            const Complex x = a(i, k);
            const Complex y = b(k, i);
            re += x.real() * y.real() - x.imag() * y.imag();
            im += x.real() * y.imag() + x.imag() * y.real();
        }
    }
    return {re, im};
}

ComplexMatrix sandwich(const ComplexMatrix &a, const ComplexMatrix &b) {
    return a * b * a.adjoint();
}

Complex inner(std::span<const Complex> u, std::span<const Complex> v) {
    if (u.size() != v.size()) {
        throw Error(ErrorCode::DimMismatch, "inner product of unequal vectors");
    }
    Complex acc = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        acc += std::conj(u[i]) * v[i];
    }
    return acc;
}

double norm(std::span<const Complex> v) {
    double acc = 0.0;
    for (const auto &z : v) {
        acc += std::norm(z);
    }
    return std::sqrt(acc);
}

CommuteResult commutes(const ComplexMatrix &a, const ComplexMatrix &b,
                       double tol) {
    require_same_dim(a, b, "commutator");
    const double residual = commutator(a, b).max_abs();
    return {residual <= tol, residual};
}

double unitarity_residual(const ComplexMatrix &u) {
    return max_abs_diff(u.adjoint() * u, ComplexMatrix::identity(u.dim()));
}

} // namespace qmeasure
