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

#include "framecraft/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace framecraft {

double Sampler::Uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Sampler::Exponential() { return -std::log1p(-Uniform()); }

double Sampler::Sign() { return (engine_() >> 63) != 0 ? 1.0 : -1.0; }

std::vector<double> Sampler::Simplex(std::size_t n) {
  std::vector<double> out(n);
  double total = 0.0;
  for (double& x : out) {
    x = Exponential();
    total += x;
  }
  if (!(total > 0.0)) {
    std::fill(out.begin(), out.end(), 1.0 / static_cast<double>(n));
    return out;
  }
  for (double& x : out) x /= total;
  return out;
}

std::vector<double> Sampler::L1Ball(std::size_t n, double radius) {
  // n + 1 exponentials normalized give a uniform point of the n-simplex; the
  // first n coordinates fill the positive orthant of the ball uniformly.
  std::vector<double> e(n + 1);
  double total = 0.0;
  for (double& x : e) {
    x = Exponential();
    total += x;
  }
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = radius * Sign() * e[i] / total;
  return out;
}

std::size_t Sampler::Index(std::size_t n) {
  return static_cast<std::size_t>(Uniform() * static_cast<double>(n)) % n;
}

std::vector<double> ProjectToSimplex(const std::vector<double>& v) {
  // Sort-based projection: find the threshold tau with sum max(v - tau, 0) = 1.
  std::vector<double> sorted = v;
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double cumulative = 0.0;
  double tau = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    cumulative += sorted[i];
    const double t = (cumulative - 1.0) / static_cast<double>(i + 1);
    if (sorted[i] - t > 0.0) tau = t;
  }
  std::vector<double> out(v.size());
  double total = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = std::max(v[i] - tau, 0.0);
    total += out[i];
  }
  if (total > 0.0) {
    for (double& x : out) x /= total;
  }
  return out;
}

}  // namespace framecraft
