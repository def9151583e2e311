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

#include "qmeasure/random.hpp"

#include <cmath>
#include <numbers>

namespace qmeasure {

double Rng::uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double u1 = 1.0 - uniform(); // (0, 1]
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
}

Complex Rng::complex_normal() {
    const double re = normal();
    const double im = normal();
    return {re, im};
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

ComplexMatrix ginibre(std::size_t dim, Rng &rng) {
    ComplexMatrix g(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            g(i, j) = rng.complex_normal();
        }
    }
    return g;
}

ComplexMatrix random_hermitian(std::size_t dim, Rng &rng) {
    return hermitian_part(ginibre(dim, rng));
}

ComplexMatrix random_unitary(std::size_t dim, Rng &rng) {
    ComplexMatrix g = ginibre(dim, rng);
    ComplexMatrix q(dim);
    // Modified Gram–Schmidt on the columns, twice for orthogonality.
    for (std::size_t c = 0; c < dim; ++c) {
        Vector v = g.column(c);
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t prev = 0; prev < c; ++prev) {
                Complex proj = 0.0;
                for (std::size_t i = 0; i < dim; ++i) {
                    proj += std::conj(q(i, prev)) * v[i];
                }
                for (std::size_t i = 0; i < dim; ++i) {
                    v[i] -= proj * q(i, prev);
                }
            }
        }
        const double len = norm(v);
        for (std::size_t i = 0; i < dim; ++i) {
            q(i, c) = v[i] / len;
        }
    }
    return q;
}

} // namespace qmeasure
