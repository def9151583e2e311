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

#include <cstddef>
#include <cstdint>
#include <random>

#include "qmeasure/matrix.hpp"

namespace qmeasure {

/**
 * Seeded generator with a fully specified output sequence.
 *
 * Engine: std::mt19937_64, whose output is fixed by the standard.
 * Uniforms take the top 53 bits; normals use the Box–Muller transform
 * written out here, because std::normal_distribution is
 * implementation-defined and would break cross-platform reproducibility.
 */
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, 1).
    double uniform();
    double normal();
    /// Real and imaginary parts independent N(0, 1).
    Complex complex_normal();

  private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// SplitMix64 finaliser of (seed, index); used to give every sample of a
/// sampled loop its own independent stream.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept;

/// dim×dim matrix of independent standard complex Gaussians.
ComplexMatrix ginibre(std::size_t dim, Rng &rng);
/// (G + G*)/2 for a Ginibre G.
ComplexMatrix random_hermitian(std::size_t dim, Rng &rng);
/// Haar-distributed unitary: Gram–Schmidt on the columns of a Ginibre
/// matrix (the implied R factor has a positive diagonal).
ComplexMatrix random_unitary(std::size_t dim, Rng &rng);

} // namespace qmeasure
