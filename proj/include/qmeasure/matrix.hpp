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

#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace qmeasure {

using Complex = std::complex<double>;
using Vector = std::vector<Complex>;

/// Default absolute tolerance for hermiticity, commutator and
/// orthonormality checks.
inline constexpr double kDefaultTol = 1e-9;
/// Default relative tolerance for merging eigenvalues into one cluster.
inline constexpr double kDefaultClusterTol = 1e-9;

/**
 * Dense square matrix of complex doubles, row-major.
 *
 * Every operator in the library (states, observables, projectors,
 * constraints, measurement operators) is carried by this type. Sizes
 * are desk scale (dim <= a few hundred) so storage is always dense.
 */
class ComplexMatrix {
  public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(std::size_t dim);
    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static ComplexMatrix identity(std::size_t dim);
    static ComplexMatrix diagonal(std::span<const double> entries);
    static ComplexMatrix diagonal(std::initializer_list<double> entries);
    /// u v*
    static ComplexMatrix outer(std::span<const Complex> u,
                               std::span<const Complex> v);

    [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
    [[nodiscard]] bool empty() const noexcept { return dim_ == 0; }

    Complex &operator()(std::size_t row, std::size_t col) noexcept {
        return data_[row * dim_ + col];
    }
    const Complex &operator()(std::size_t row, std::size_t col) const noexcept {
        return data_[row * dim_ + col];
    }

    [[nodiscard]] std::span<const Complex> data() const noexcept {
        return data_;
    }

    [[nodiscard]] ComplexMatrix adjoint() const;
    [[nodiscard]] Complex trace() const noexcept;
    [[nodiscard]] Vector column(std::size_t col) const;
    /// max |a_ij|
    [[nodiscard]] double max_abs() const noexcept;
    [[nodiscard]] bool all_finite() const noexcept;

    ComplexMatrix &operator+=(const ComplexMatrix &other);
    ComplexMatrix &operator-=(const ComplexMatrix &other);
    ComplexMatrix &operator*=(Complex scale) noexcept;

    friend bool operator==(const ComplexMatrix &, const ComplexMatrix &) = default;

  private:
    std::size_t dim_ = 0;
    std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix &rhs);
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix &rhs);
ComplexMatrix operator*(const ComplexMatrix &lhs, const ComplexMatrix &rhs);
ComplexMatrix operator*(Complex scale, ComplexMatrix m);
Vector operator*(const ComplexMatrix &m, std::span<const Complex> v);

/// ‖A − B‖_max; throws DimMismatch on differing sizes.
double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b);
/// ‖A − A*‖_max
double hermiticity_residual(const ComplexMatrix &m) noexcept;
/// A B − B A
ComplexMatrix commutator(const ComplexMatrix &a, const ComplexMatrix &b);
/// (A + A*) / 2, used to scrub rounding asymmetry from products that are
/// Hermitian in exact arithmetic.
ComplexMatrix hermitian_part(const ComplexMatrix &m);

/// Tr(A B) without forming the product.
Complex trace_of_product(const ComplexMatrix &a, const ComplexMatrix &b);

/// A B A*
ComplexMatrix sandwich(const ComplexMatrix &a, const ComplexMatrix &b);

/// ⟨u, v⟩ = Σ conj(u_i) v_i
Complex inner(std::span<const Complex> u, std::span<const Complex> v);
double norm(std::span<const Complex> v);

struct CommuteResult {
    bool commutes;
    double residual;
};

/// ‖AB − BA‖_max ≤ tol, with the residual always reported.
CommuteResult commutes(const ComplexMatrix &a, const ComplexMatrix &b,
                       double tol = kDefaultTol);

/// ‖U*U − 1‖_max
double unitarity_residual(const ComplexMatrix &u);

void require_same_dim(const ComplexMatrix &a, const ComplexMatrix &b,
                      const char *what);

} // namespace qmeasure
