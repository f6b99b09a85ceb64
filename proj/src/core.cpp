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

#include "framecraft/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "framecraft/error.hpp"
#include "framecraft/lp.hpp"

namespace framecraft {
namespace {

// Min-max map for one matrix, ignoring skipped cells.
std::pair<Matrix, std::pair<double, double>> MinMax(const Matrix& raw,
                                                    const std::vector<char>& skip,
                                                    const char* name) {
  if (raw.empty()) throw ValidationError(std::string(name) + " utility matrix is empty");
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < raw.data().size(); ++i) {
    if (!skip.empty() && skip[i]) continue;
    const double x = raw.data()[i];
    if (!std::isfinite(x)) {
      throw ValidationError(std::string(name) + " utility has a non-finite entry");
    }
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  if (!std::isfinite(lo)) throw ValidationError(std::string(name) + " utility has no usable cell");
  double offset = lo;
  double scale = hi - lo;
  if (!(scale > 0.0)) {
    offset = lo - 0.5;
    scale = 1.0;
  }
  Matrix out(raw.rows(), raw.cols());
  for (std::size_t r = 0; r < raw.rows(); ++r) {
    for (std::size_t c = 0; c < raw.cols(); ++c) {
      const std::size_t i = r * raw.cols() + c;
      out(r, c) = (!skip.empty() && skip[i]) ? 0.0 : (raw(r, c) - offset) / scale;
    }
  }
  return {std::move(out), {offset, scale}};
}

}  // namespace

NormalizedUtilities NormalizeUtilities(const Matrix& raw_sender, const Matrix& raw_receiver,
                                       const std::vector<char>& skip) {
  auto [s, s_map] = MinMax(raw_sender, skip, "sender");
  auto [r, r_map] = MinMax(raw_receiver, skip, "receiver");
  NormalizationRecord rec{s_map.first, s_map.second, r_map.first, r_map.second};
  return {std::move(s), std::move(r), rec};
}

bool ValidationReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

std::string ValidationReport::ToString() const {
  std::ostringstream os;
  for (const auto& c : checks) {
    os << (c.passed ? "PASS " : "FAIL ") << c.name;
    if (!c.detail.empty()) os << ": " << c.detail;
    os << '\n';
  }
  return os.str();
}

ValidationReport ValidateInstance(const Instance& instance) {
  ValidationReport report;

  ValidationCheck support{"full_support_prior", true, ""};
  for (std::size_t w = 0; w < instance.num_states(); ++w) {
    if (!(instance.prior()[w] > 0.0)) {
      support.passed = false;
      support.detail += (support.detail.empty() ? "zero prior on state " : ", ") +
                        instance.states()[w];
    }
  }
  report.checks.push_back(support);

  ValidationCheck range{"utility_range", true, ""};
  for (std::size_t a = 0; a < instance.num_actions(); ++a) {
    for (std::size_t w = 0; w < instance.num_states(); ++w) {
      for (double x : {instance.u(a, w), instance.v(a, w)}) {
        if (x < -1e-12 || x > 1.0 + 1e-12) {
          range.passed = false;
          range.detail = "entry at (" + instance.actions()[a] + ", " + instance.states()[w] +
                         ") outside [0,1]";
        }
      }
    }
  }
  report.checks.push_back(range);

  ValidationCheck inducible{"strict_inducibility", true, ""};
  const auto margin = ComputeInducibilityMargin(instance);
  for (std::size_t a = 0; a < instance.num_actions(); ++a) {
    if (!(margin.per_action[a] > kLpTol)) {
      inducible.passed = false;
      inducible.detail += (inducible.detail.empty() ? "not strictly inducible: " : ", ") +
                          instance.actions()[a];
    }
  }
  report.checks.push_back(inducible);
  return report;
}

Belief Posterior(const Belief& mu, const SignalingScheme& scheme, std::size_t signal) {
  if (mu.size() != scheme.num_states()) throw ValidationError("belief/scheme size mismatch");
  if (signal >= scheme.num_signals()) throw ValidationError("signal index out of range");
  std::vector<double> w(mu.size());
  double total = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    w[i] = mu[i] * scheme(i, signal);
    total += w[i];
  }
  if (!(total > 0.0)) {
    throw DomainError("signal '" + scheme.signals()[signal] +
                      "' has zero probability; posterior undefined");
  }
  for (double& x : w) x /= total;
  return Belief(std::move(w));
}

Belief Posterior(const Belief& mu, const SignalingScheme& scheme, const std::string& signal) {
  auto idx = scheme.signal_index(signal);
  if (!idx) throw ValidationError("unknown signal '" + signal + "'");
  return Posterior(mu, scheme, *idx);
}

std::size_t BestResponseWeighted(std::span<const double> receiver_weights,
                                 std::span<const double> sender_weights,
                                 const Instance& instance) {
  const std::size_t n = instance.num_states();
  const std::size_t m = instance.num_actions();
  double r_total = 0.0;
  double s_total = 0.0;
  for (std::size_t w = 0; w < n; ++w) {
    r_total += receiver_weights[w];
    s_total += sender_weights[w];
  }
  // Tie tolerances scale with the signal's total weight; unnormalized weights
  // tie exactly as their posteriors do.
  const double r_tol = kTieTol * std::max(r_total, 1e-300);
  std::span<const double> tie_weights = s_total > 0.0 ? sender_weights : receiver_weights;
  const double s_tol = kTieTol * std::max(s_total > 0.0 ? s_total : r_total, 1e-300);

  double best_r = -std::numeric_limits<double>::infinity();
  std::vector<double> r_score(m);
  for (std::size_t a = 0; a < m; ++a) {
    double acc = 0.0;
    for (std::size_t w = 0; w < n; ++w) acc += receiver_weights[w] * instance.v(a, w);
    r_score[a] = acc;
    best_r = std::max(best_r, acc);
  }
  std::size_t choice = m;
  double choice_s = -std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < m; ++a) {
    if (r_score[a] < best_r - r_tol) continue;
    double s = 0.0;
    for (std::size_t w = 0; w < n; ++w) s += tie_weights[w] * instance.u(a, w);
    if (choice == m || s > choice_s + s_tol) {
      choice = a;
      choice_s = s;
    }
  }
  return choice;
}

std::size_t BestResponse(const Belief& posterior, const Instance& instance) {
  return BestResponse(posterior, posterior, instance);
}

std::size_t BestResponse(const Belief& receiver_posterior, const Belief& sender_posterior,
                         const Instance& instance) {
  if (receiver_posterior.size() != instance.num_states() ||
      sender_posterior.size() != instance.num_states()) {
    throw ValidationError("belief size does not match the instance");
  }
  return BestResponseWeighted(receiver_posterior.probs(), sender_posterior.probs(), instance);
}

bool IsDirect(const SignalingScheme& scheme, const Instance& instance) {
  return scheme.signals() == instance.actions();
}

std::vector<std::size_t> ResponseProfile(const Instance& instance, const Belief& receiver_belief,
                                         const SignalingScheme& scheme) {
  const std::size_t n = instance.num_states();
  if (receiver_belief.size() != n || scheme.num_states() != n) {
    throw ValidationError("belief/scheme size does not match the instance");
  }
  const bool direct = IsDirect(scheme, instance);
  std::vector<std::size_t> profile(scheme.num_signals());
  std::vector<double> rw(n);
  std::vector<double> sw(n);
  for (std::size_t s = 0; s < scheme.num_signals(); ++s) {
    double r_total = 0.0;
    for (std::size_t w = 0; w < n; ++w) {
      rw[w] = receiver_belief[w] * scheme(w, s);
      sw[w] = instance.prior()[w] * scheme(w, s);
      r_total += rw[w];
    }
    if (r_total > 0.0) {
      profile[s] = BestResponseWeighted(rw, sw, instance);
    } else if (direct) {
      profile[s] = s;
    } else {
      profile[s] = BestResponseWeighted(receiver_belief.probs(), sw, instance);
    }
  }
  return profile;
}

double SenderExAnteUtility(const Instance& instance, const Belief& receiver_belief,
                           const SignalingScheme& scheme) {
  const auto profile = ResponseProfile(instance, receiver_belief, scheme);
  double total = 0.0;
  for (std::size_t w = 0; w < instance.num_states(); ++w) {
    for (std::size_t s = 0; s < scheme.num_signals(); ++s) {
      total += instance.prior()[w] * scheme(w, s) * instance.u(profile[s], w);
    }
  }
  return total;
}

SignalingScheme DirectScheme(const SignalingScheme& scheme, const Belief& receiver_belief,
                             const Instance& instance) {
  const auto profile = ResponseProfile(instance, receiver_belief, scheme);
  Matrix probs(instance.num_states(), instance.num_actions());
  for (std::size_t w = 0; w < instance.num_states(); ++w) {
    for (std::size_t s = 0; s < scheme.num_signals(); ++s) probs(w, profile[s]) += scheme(w, s);
  }
  return SignalingScheme(instance.actions(), std::move(probs));
}

InducibilityMargin ComputeInducibilityMargin(const Instance& instance) {
  const std::size_t n = instance.num_states();
  const std::size_t m = instance.num_actions();
  InducibilityMargin out;
  out.margin = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < m; ++a) {
    if (m == 1) {
      // No competitor: the margin is capped at the utility range.
      out.per_action.push_back(1.0);
      out.inducing_beliefs.push_back(Belief::Uniform(n));
      out.margin = 1.0;
      break;
    }
    // Variables: eta (n), delta_plus, delta_minus.
    lp::Problem p(n + 2);
    p.objective[n] = 1.0;
    p.objective[n + 1] = -1.0;
    std::vector<double> sum(n + 2, 0.0);
    std::fill(sum.begin(), sum.begin() + static_cast<long>(n), 1.0);
    p.Add(sum, lp::Sense::kEqual, 1.0);
    for (std::size_t b = 0; b < m; ++b) {
      if (b == a) continue;
      std::vector<double> row(n + 2, 0.0);
      for (std::size_t w = 0; w < n; ++w) row[w] = instance.v(a, w) - instance.v(b, w);
      row[n] = -1.0;
      row[n + 1] = 1.0;
      p.Add(std::move(row), lp::Sense::kGreaterEqual, 0.0);
    }
    auto sol = lp::Solve(p);
    if (sol.status != lp::Status::kOptimal) throw LpError("inducibility LP failed");
    out.per_action.push_back(sol.objective);
    std::vector<double> eta(sol.x.begin(), sol.x.begin() + static_cast<long>(n));
    out.inducing_beliefs.push_back(Belief::Normalized(std::move(eta)));
    out.margin = std::min(out.margin, sol.objective);
  }
  return out;
}

double ObedienceSlack(const Instance& instance, const Belief& belief,
                      const SignalingScheme& direct) {
  const std::size_t m = instance.num_actions();
  if (direct.num_signals() != m) throw ValidationError("scheme is not direct");
  if (m == 1) return 0.0;
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      if (a == b) continue;
      double acc = 0.0;
      for (std::size_t w = 0; w < instance.num_states(); ++w) {
        acc += belief[w] * direct(w, a) * (instance.v(a, w) - instance.v(b, w));
      }
      worst = std::min(worst, acc);
    }
  }
  return worst;
}

}  // namespace framecraft
