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

#include "framecraft/framing_only.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <set>
#include <thread>

#include "framecraft/core.hpp"
#include "framecraft/error.hpp"

namespace framecraft {

double FixedSchemeUtility(const Instance& instance, const SignalingScheme& scheme,
                          const Belief& receiver_belief) {
  return SenderExAnteUtility(instance, receiver_belief, scheme);
}

DiscreteFramingSpace::DiscreteFramingSpace(std::vector<Framing> framings)
    : framings_(std::move(framings)) {
  if (framings_.empty()) throw ValidationError("framing space is empty");
  std::set<std::string> seen;
  for (const auto& f : framings_) {
    if (f.id.empty()) throw ValidationError("framing with empty id");
    if (f.text.empty()) throw ValidationError("framing '" + f.id + "' has empty text");
    if (!seen.insert(f.id).second) throw ValidationError("duplicate framing id '" + f.id + "'");
  }
}

EnumerationResult EnumerateFramings(const DiscreteFramingSpace& space, const BeliefOracle& oracle,
                                    const Instance& instance, const SignalingScheme& scheme,
                                    const std::string& context, int concurrency) {
  const std::size_t count = space.size();
  std::vector<FramingEvaluation> rows(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};

  const auto worker = [&]() {
    for (std::size_t i = next++; i < count; i = next++) {
      const Framing& framing = space.framings()[i];
      try {
        OracleResponse response = oracle.Query(framing, context);
        if (response.belief.size() != instance.num_states()) {
          throw ValidationError("oracle belief has " + std::to_string(response.belief.size()) +
                                " entries, instance has " +
                                std::to_string(instance.num_states()) + " states");
        }
        rows[i] = {framing, response.belief, std::move(response.reasoning),
                   FixedSchemeUtility(instance, scheme, response.belief)};
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };

  const std::size_t threads =
      std::min<std::size_t>(count, static_cast<std::size_t>(std::max(1, concurrency)));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  for (std::size_t i = 0; i < count; ++i) {
    if (!errors[i]) continue;
    const std::string prefix = "framing '" + space.framings()[i].id + "': ";
    try {
      std::rethrow_exception(errors[i]);
    } catch (const OracleError& e) {
      throw OracleError(e.kind(), prefix + e.what());
    } catch (const std::exception& e) {
      throw Error(prefix + e.what());
    }
  }

  EnumerationResult result;
  result.table = std::move(rows);
  for (std::size_t i = 1; i < count; ++i) {
    if (result.table[i].utility > result.table[result.best_index].utility) result.best_index = i;
  }
  result.utility = result.table[result.best_index].utility;
  return result;
}

namespace {

// Belief with mass t on w1 and 1 - t on w2.
std::vector<double> EdgePoint(std::size_t n, std::size_t w1, std::size_t w2, double t) {
  std::vector<double> mu(n, 0.0);
  mu[w1] = t;
  mu[w2] = 1.0 - t;
  return mu;
}

}  // namespace

std::optional<DiscontinuityReport> FindDiscontinuity(const Instance& instance,
                                                     const SignalingScheme& scheme) {
  const std::size_t n = instance.num_states();
  const std::size_t m = instance.num_actions();
  if (scheme.num_states() != n) throw ValidationError("scheme size does not match the instance");

  std::optional<DiscontinuityReport> best;
  for (std::size_t s = 0; s < scheme.num_signals(); ++s) {
    bool full = true;
    for (std::size_t w = 0; w < n; ++w) full = full && scheme(w, s) > 0.0;
    if (!full) continue;

    for (std::size_t a1 = 0; a1 < m; ++a1) {
      for (std::size_t a2 = a1 + 1; a2 < m; ++a2) {
        for (std::size_t w1 = 0; w1 < n; ++w1) {
          for (std::size_t w2 = w1 + 1; w2 < n; ++w2) {
            const double d1 = instance.v(a1, w1) - instance.v(a2, w1);
            const double d2 = instance.v(a1, w2) - instance.v(a2, w2);
            if (!((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))) continue;

            // g(t): a1-vs-a2 advantage at signal s on the edge; g(0) and g(1)
            // have opposite signs.
            const auto g = [&](double t) {
              return t * scheme(w1, s) * d1 + (1.0 - t) * scheme(w2, s) * d2;
            };
            double lo = 0.0;
            double hi = 1.0;
            const bool rising = g(1.0) > 0.0;
            while (hi - lo > kIndifferenceTol) {
              const double mid = 0.5 * (lo + hi);
              if ((g(mid) > 0.0) == rising) {
                hi = mid;
              } else {
                lo = mid;
              }
            }
            const double t = 0.5 * (lo + hi);

            DiscontinuityReport report;
            report.indifference_belief = Belief::Normalized(EdgePoint(n, w1, w2, t));
            report.signal = s;
            report.first_action = a1;
            report.second_action = a2;
            report.first_state = w1;
            report.second_state = w2;
            for (double eps : kEpsLadder) {
              if (t + eps > 1.0 || t - eps < 0.0) {
                report.ladder_gaps.push_back(0.0);
                continue;
              }
              const Belief plus = Belief::Normalized(EdgePoint(n, w1, w2, t + eps));
              const Belief minus = Belief::Normalized(EdgePoint(n, w1, w2, t - eps));
              const double gap = std::abs(FixedSchemeUtility(instance, scheme, plus) -
                                          FixedSchemeUtility(instance, scheme, minus));
              report.ladder_gaps.push_back(gap);
              report.plus = plus;
              report.minus = minus;
              report.eps = eps;
              report.gap = gap;
            }
            const std::size_t k = report.ladder_gaps.size();
            const double last = report.ladder_gaps[k - 1];
            const double prev = report.ladder_gaps[k - 2];
            if (!(last > kTieTol) || report.eps != kEpsLadder.back()) continue;
            if (std::abs(last - prev) >= 0.1 * std::max(last, prev)) continue;
            report.action_plus = ResponseProfile(instance, report.plus, scheme)[s];
            report.action_minus = ResponseProfile(instance, report.minus, scheme)[s];
            if (report.action_plus == report.action_minus) continue;
            if (!best || report.gap > best->gap) best = std::move(report);
          }
        }
      }
    }
  }
  return best;
}

}  // namespace framecraft
