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

#include "framecraft/lattice.hpp"

#include <cmath>
#include <exception>
#include <mutex>

#include <omp.h>

#include "framecraft/error.hpp"

namespace framecraft {

std::uint64_t LatticeSize(std::size_t num_states, std::size_t resolution) {
  if (num_states == 0) return 0;
  // C(n + k - 1, k - 1) built incrementally; each partial product is itself
  // a binomial coefficient, so the division is exact.
  const std::uint64_t k = num_states - 1;
  std::uint64_t result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    const std::uint64_t factor = resolution + i;
    if (result > std::numeric_limits<std::uint64_t>::max() / factor) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    result = result * factor / i;
  }
  return result;
}

namespace {

void Recurse(std::size_t pos, std::uint32_t remaining, std::vector<std::uint32_t>& current,
             std::vector<std::vector<std::uint32_t>>& out) {
  if (pos + 1 == current.size()) {
    current[pos] = remaining;
    out.push_back(current);
    return;
  }
  for (std::uint32_t c = remaining + 1; c-- > 0;) {
    current[pos] = c;
    Recurse(pos + 1, remaining - c, current, out);
  }
}

}  // namespace

std::vector<std::vector<std::uint32_t>> EnumerateLattice(std::size_t num_states,
                                                         std::size_t resolution,
                                                         std::uint64_t max_points) {
  if (num_states == 0) throw ValidationError("lattice needs at least one state");
  if (resolution == 0) throw ValidationError("lattice resolution must be positive");
  const std::uint64_t size = LatticeSize(num_states, resolution);
  if (size > max_points) {
    throw ValidationError("lattice has " + std::to_string(size) + " points, above the limit of " +
                          std::to_string(max_points));
  }
  std::vector<std::vector<std::uint32_t>> out;
  out.reserve(static_cast<std::size_t>(size));
  std::vector<std::uint32_t> current(num_states, 0);
  Recurse(0, static_cast<std::uint32_t>(resolution), current, out);
  return out;
}

std::vector<double> LatticeBelief(const std::vector<std::uint32_t>& counts,
                                  std::size_t resolution) {
  std::vector<double> out(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) {
    out[i] = static_cast<double>(counts[i]) / static_cast<double>(resolution);
  }
  return out;
}

std::vector<double> EvaluateSerial(std::size_t count, const PointEvaluator& eval) {
  std::vector<double> values(count);
  for (std::size_t i = 0; i < count; ++i) values[i] = eval(i);
  return values;
}

std::vector<double> EvaluateParallel(std::size_t count, const PointEvaluator& eval, int jobs) {
  std::vector<double> values(count, std::numeric_limits<double>::quiet_NaN());
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto n = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(dynamic, 16) num_threads(jobs > 0 ? jobs : 1)
  for (std::int64_t i = 0; i < n; ++i) {
    try {
      values[static_cast<std::size_t>(i)] = eval(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard<std::mutex> lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return values;
}

std::vector<double> Evaluate(std::size_t count, const PointEvaluator& eval,
                             const Execution& exec) {
  if (!exec.parallel || exec.jobs <= 1) return EvaluateSerial(count, eval);
  return EvaluateParallel(count, eval, exec.jobs);
}

std::size_t DeterministicArgmax(const std::vector<double>& values) {
  std::size_t best = values.size();
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (std::isnan(values[i])) continue;
    if (best == values.size() || values[i] > values[best]) best = i;
  }
  return best;
}

}  // namespace framecraft
