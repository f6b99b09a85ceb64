// Copyright 2026 The Framecraft Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FRAMECRAFT_SAMPLING_HPP_
#define FRAMECRAFT_SAMPLING_HPP_

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace framecraft {

// Draws are built from raw mt19937_64 output only, so sequences are identical
// across standard libraries.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [0, 1) with 53 random bits.
  double Uniform();
  // Standard exponential via -log(1 - u).
  double Exponential();
  // +1 or -1 with equal probability.
  double Sign();
  // Uniform on the probability simplex of dimension n (flat Dirichlet).
  std::vector<double> Simplex(std::size_t n);
  // Uniform in the l1 ball of the given radius in R^n.
  std::vector<double> L1Ball(std::size_t n, double radius);
  // Uniform integer in [0, n).
  std::size_t Index(std::size_t n);

 private:
  std::mt19937_64 engine_;
};

// Euclidean projection of v onto the probability simplex.
std::vector<double> ProjectToSimplex(const std::vector<double>& v);

}  // namespace framecraft

#endif  // FRAMECRAFT_SAMPLING_HPP_
