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

#ifndef FRAMECRAFT_LATTICE_HPP_
#define FRAMECRAFT_LATTICE_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

namespace framecraft {

// C(n + k - 1, k - 1): number of beliefs over k states whose entries are
// multiples of 1/n. Saturates at UINT64_MAX.
std::uint64_t LatticeSize(std::size_t num_states, std::size_t resolution);

// Every n-uniform belief over k states, as integer counts summing to n.
// Order: lexicographic with the first coordinate descending, so the vertex
// e_0 comes first. Throws ValidationError beyond `max_points`.
std::vector<std::vector<std::uint32_t>> EnumerateLattice(std::size_t num_states,
                                                         std::size_t resolution,
                                                         std::uint64_t max_points = 50'000'000);

std::vector<double> LatticeBelief(const std::vector<std::uint32_t>& counts,
                                  std::size_t resolution);

// How a batch of independent evaluations is scheduled.
struct Execution {
  int jobs = 4;          // OpenMP threads; <= 1 runs serially
  bool parallel = true;  // false forces the serial reference path
};

// Value of a point, or NaN when the point is skipped.
using PointEvaluator = std::function<double(std::size_t)>;

// values[i] = eval(i) for i < count, in index order.
std::vector<double> EvaluateSerial(std::size_t count, const PointEvaluator& eval);

// Same result as EvaluateSerial, computed with an OpenMP parallel for. The
// first exception thrown by any evaluation is rethrown after the loop.
std::vector<double> EvaluateParallel(std::size_t count, const PointEvaluator& eval, int jobs);

std::vector<double> Evaluate(std::size_t count, const PointEvaluator& eval,
                             const Execution& exec);

// Index of the largest non-NaN value, ties to the lowest index; `count` when
// every value is NaN.
std::size_t DeterministicArgmax(const std::vector<double>& values);

}  // namespace framecraft

#endif  // FRAMECRAFT_LATTICE_HPP_
