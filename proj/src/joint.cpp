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

#include "framecraft/joint.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "framecraft/core.hpp"
#include "framecraft/error.hpp"
#include "framecraft/lp.hpp"
#include "framecraft/sampling.hpp"

namespace framecraft {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Clips LP round-off and renormalizes each row.
Matrix CleanRows(Matrix m) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    double total = 0.0;
    for (double& x : m.row(r)) {
      if (x < 0.0) x = 0.0;
      total += x;
    }
    if (total > 0.0) {
      for (double& x : m.row(r)) x /= total;
    }
  }
  return m;
}

void RequireSize(const Instance& instance, const Belief& b, const char* what) {
  if (b.size() != instance.num_states()) {
    throw ValidationError(std::string(what) + " has " + std::to_string(b.size()) +
                          " entries, instance has " + std::to_string(instance.num_states()) +
                          " states");
  }
}

std::size_t SenderBestAction(const Instance& instance, std::size_t w) {
  std::size_t best = instance.num_actions();
  for (std::size_t a = 0; a < instance.num_actions(); ++a) {
    if (instance.forbidden(a, w)) continue;
    if (best == instance.num_actions() || instance.u(a, w) > instance.u(best, w) + kTieTol) {
      best = a;
    }
  }
  if (best == instance.num_actions()) {
    throw ValidationError("every action is forbidden at state " + instance.states()[w]);
  }
  return best;
}

}  // namespace

ConvexBeliefSet ConvexBeliefSet::FullSimplex(std::size_t num_states) {
  ConvexBeliefSet set;
  set.num_states_ = num_states;
  return set;
}

ConvexBeliefSet ConvexBeliefSet::Singleton(const Belief& mu) {
  std::vector<HalfSpace> hs;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    std::vector<double> e(mu.size(), 0.0);
    e[i] = 1.0;
    hs.push_back({e, mu[i]});
    e[i] = -1.0;
    hs.push_back({e, -mu[i]});
  }
  return ConvexBeliefSet(mu.size(), std::move(hs));
}

ConvexBeliefSet::ConvexBeliefSet(std::size_t num_states, std::vector<HalfSpace> half_spaces)
    : num_states_(num_states), half_spaces_(std::move(half_spaces)) {
  if (num_states_ == 0) throw ValidationError("belief set needs at least one state");
  lp::Problem p(num_states_);
  p.Add(std::vector<double>(num_states_, 1.0), lp::Sense::kEqual, 1.0);
  for (const auto& h : half_spaces_) {
    if (h.coeffs.size() != num_states_) {
      throw ValidationError("half-space has " + std::to_string(h.coeffs.size()) +
                            " coefficients, expected " + std::to_string(num_states_));
    }
    for (double c : h.coeffs) {
      if (!std::isfinite(c)) throw ValidationError("half-space coefficient is not finite");
    }
    // Loosened by the membership tolerance; sets touching the simplex in a
    // single point are accepted.
    p.Add(h.coeffs, lp::Sense::kLessEqual, h.bound + kLpTol);
  }
  if (lp::Solve(p).status != lp::Status::kOptimal) {
    throw DomainError("belief set does not intersect the simplex");
  }
}

bool ConvexBeliefSet::Contains(std::span<const double> mu, double tol) const {
  for (const auto& h : half_spaces_) {
    double acc = 0.0;
    for (std::size_t i = 0; i < mu.size(); ++i) acc += h.coeffs[i] * mu[i];
    if (acc > h.bound + tol) return false;
  }
  return true;
}

double DirectSchemeValue(const Instance& instance, const SignalingScheme& direct) {
  double total = 0.0;
  for (std::size_t w = 0; w < instance.num_states(); ++w) {
    for (std::size_t a = 0; a < instance.num_actions(); ++a) {
      total += instance.prior()[w] * direct(w, a) * instance.u(a, w);
    }
  }
  return total;
}

JointSolution SolveOptimalScheme(const Instance& instance, const Belief& receiver_belief,
                                 EpsilonObedience eps) {
  RequireSize(instance, receiver_belief, "receiver belief");
  const std::size_t n = instance.num_states();
  const std::size_t m = instance.num_actions();
  const auto var = [m](std::size_t w, std::size_t a) { return w * m + a; };

  lp::Problem p(n * m);
  for (std::size_t w = 0; w < n; ++w) {
    for (std::size_t a = 0; a < m; ++a) {
      p.objective[var(w, a)] = instance.prior()[w] * instance.u(a, w);
    }
  }
  for (std::size_t w = 0; w < n; ++w) {
    std::vector<double> row(n * m, 0.0);
    for (std::size_t a = 0; a < m; ++a) row[var(w, a)] = 1.0;
    p.Add(std::move(row), lp::Sense::kEqual, 1.0);
  }
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      if (a == b) continue;
      std::vector<double> row(n * m, 0.0);
      for (std::size_t w = 0; w < n; ++w) {
        row[var(w, a)] = receiver_belief[w] * (instance.v(a, w) - instance.v(b, w));
      }
      p.Add(std::move(row), lp::Sense::kGreaterEqual, -eps.epsilon);
    }
  }
  for (const auto& [a, w] : instance.forbidden_pairs()) {
    std::vector<double> row(n * m, 0.0);
    row[var(w, a)] = 1.0;
    p.Add(std::move(row), lp::Sense::kLessEqual, 0.0);
  }
  const auto sol = lp::Solve(p);
  if (sol.status != lp::Status::kOptimal) {
    throw LpError("no obedient scheme satisfies the forbidden pairs at this belief");
  }
  Matrix probs(n, m);
  for (std::size_t w = 0; w < n; ++w) {
    for (std::size_t a = 0; a < m; ++a) probs(w, a) = sol.x[var(w, a)];
  }
  SignalingScheme scheme(instance.actions(), CleanRows(std::move(probs)));
  JointSolution out{receiver_belief, scheme, DirectSchemeValue(instance, scheme),
                    ObedienceSlack(instance, receiver_belief, scheme)};
  return out;
}

JointSolution JointOptimizeGrid(const Instance& instance, const ConvexBeliefSet& B,
                                std::size_t resolution, EpsilonObedience eps,
                                const Execution& exec) {
  if (B.num_states() != instance.num_states()) {
    throw ValidationError("belief set dimension does not match the instance");
  }
  if (resolution == 0) throw ValidationError("grid resolution must be at least 1");
  const auto lattice = EnumerateLattice(instance.num_states(), resolution);
  std::vector<std::vector<double>> points;
  for (const auto& counts : lattice) {
    auto mu = LatticeBelief(counts, resolution);
    if (B.Contains(mu)) points.push_back(std::move(mu));
  }
  if (points.empty()) {
    throw DomainError("no resolution-" + std::to_string(resolution) +
                      " lattice point lies in the belief set; use a larger resolution");
  }
  const auto values = Evaluate(
      points.size(),
      [&](std::size_t i) {
        try {
          return SolveOptimalScheme(instance, Belief(points[i]), eps).sender_value;
        } catch (const LpError&) {
          return kNaN;
        }
      },
      exec);
  const std::size_t best = DeterministicArgmax(values);
  if (best == values.size()) {
    throw LpError("no lattice point in the belief set admits an obedient scheme");
  }
  return SolveOptimalScheme(instance, Belief(points[best]), eps);
}

std::size_t QptasResolution(std::size_t num_actions, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw ValidationError("qptas eps must lie in (0, 1)");
  if (num_actions == 0) throw ValidationError("instance has no actions");
  const double n = std::ceil(std::log(static_cast<double>(num_actions)) / (eps * eps));
  return std::max<std::size_t>(1, static_cast<std::size_t>(n));
}

JointSolution Qptas(const Instance& instance, const ConvexBeliefSet& B, double eps,
                    const Execution& exec) {
  const std::size_t n = QptasResolution(instance.num_actions(), eps);
  try {
    return JointOptimizeGrid(instance, B, n, EpsilonObedience(eps), exec);
  } catch (const DomainError&) {
    throw DomainError("no " + std::to_string(n) +
                      "-uniform belief lies in the belief set; a smaller eps gives a finer "
                      "lattice");
  }
}

double FullInformationSenderValue(const Instance& instance) {
  double total = 0.0;
  for (std::size_t w = 0; w < instance.num_states(); ++w) {
    total += instance.prior()[w] * instance.u(SenderBestAction(instance, w), w);
  }
  return total;
}

JointSolution BiCriteriaUnconstrained(const Instance& instance, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw ValidationError("bi-criteria eps must lie in (0, 1)");
  const std::size_t n = instance.num_states();
  const std::size_t m = instance.num_actions();
  if (n == 1) return SolveOptimalScheme(instance, Belief::PointMass(1, 0));

  std::vector<std::size_t> a_u(n);
  std::size_t w_min = 0;
  double stake_min = std::numeric_limits<double>::infinity();
  for (std::size_t w = 0; w < n; ++w) {
    a_u[w] = SenderBestAction(instance, w);
    const double stake = instance.prior()[w] * instance.u(a_u[w], w);
    if (stake < stake_min) {
      stake_min = stake;
      w_min = w;
    }
  }
  // Receiver-best allowed action at the point mass on w_min.
  std::size_t a_v = m;
  for (std::size_t a = 0; a < m; ++a) {
    if (instance.forbidden(a, w_min)) continue;
    if (a_v == m || instance.v(a, w_min) > instance.v(a_v, w_min) + kTieTol ||
        (std::abs(instance.v(a, w_min) - instance.v(a_v, w_min)) <= kTieTol &&
         instance.u(a, w_min) > instance.u(a_v, w_min) + kTieTol)) {
      a_v = a;
    }
  }

  std::vector<double> mu(n, eps / static_cast<double>(n - 1));
  mu[w_min] = 1.0 - eps;
  Matrix probs(n, m);
  for (std::size_t w = 0; w < n; ++w) probs(w, w == w_min ? a_v : a_u[w]) = 1.0;
  SignalingScheme scheme(instance.actions(), std::move(probs));
  Belief belief(std::move(mu));
  return {belief, scheme, DirectSchemeValue(instance, scheme),
          ObedienceSlack(instance, belief, scheme)};
}

JointSolution StateIndependentOptimal(const Instance& instance) {
  const std::size_t n = instance.num_states();
  const std::size_t m = instance.num_actions();
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t w = 1; w < n; ++w) {
      if (std::abs(instance.u(a, w) - instance.u(a, 0)) > kTieTol) {
        throw DomainError("sender utility depends on the state (action " + instance.actions()[a] +
                          "); use qptas instead");
      }
    }
  }
  std::vector<std::size_t> order(m);
  for (std::size_t a = 0; a < m; ++a) order[a] = a;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return instance.u(x, 0) > instance.u(y, 0) + kTieTol;
  });

  for (std::size_t a : order) {
    bool allowed = true;
    for (std::size_t w = 0; w < n; ++w) allowed = allowed && !instance.forbidden(a, w);
    if (!allowed) continue;
    // Variables: mu (n), t (n) with t >= |mu - mu0|; maximize -sum t.
    lp::Problem p(2 * n);
    for (std::size_t w = 0; w < n; ++w) p.objective[n + w] = -1.0;
    std::vector<double> sum(2 * n, 0.0);
    std::fill(sum.begin(), sum.begin() + static_cast<long>(n), 1.0);
    p.Add(std::move(sum), lp::Sense::kEqual, 1.0);
    for (std::size_t w = 0; w < n; ++w) {
      std::vector<double> up(2 * n, 0.0);
      up[w] = 1.0;
      up[n + w] = -1.0;
      p.Add(up, lp::Sense::kLessEqual, instance.prior()[w]);
      std::vector<double> down(2 * n, 0.0);
      down[w] = -1.0;
      down[n + w] = -1.0;
      p.Add(down, lp::Sense::kLessEqual, -instance.prior()[w]);
    }
    for (std::size_t b = 0; b < m; ++b) {
      if (b == a) continue;
      std::vector<double> row(2 * n, 0.0);
      for (std::size_t w = 0; w < n; ++w) row[w] = instance.v(a, w) - instance.v(b, w);
      p.Add(std::move(row), lp::Sense::kGreaterEqual, 0.0);
    }
    const auto sol = lp::Solve(p);
    if (sol.status != lp::Status::kOptimal) continue;
    std::vector<double> mu(sol.x.begin(), sol.x.begin() + static_cast<long>(n));
    Belief belief = Belief::Normalized(std::move(mu));
    Matrix probs(n, m);
    for (std::size_t w = 0; w < n; ++w) probs(w, a) = 1.0;
    SignalingScheme scheme(instance.actions(), std::move(probs));
    return {belief, scheme, DirectSchemeValue(instance, scheme),
            ObedienceSlack(instance, belief, scheme)};
  }
  throw DomainError("no allowed action is a best response at any belief");
}

double RecommendationSlack(const Instance& instance, const Belief& mu,
                           const SignalingScheme& scheme) {
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < scheme.num_signals(); ++s) {
    const auto a = instance.action_index(scheme.signals()[s]);
    if (!a) continue;
    for (std::size_t b = 0; b < instance.num_actions(); ++b) {
      if (b == *a) continue;
      double acc = 0.0;
      for (std::size_t w = 0; w < instance.num_states(); ++w) {
        acc += mu[w] * scheme(w, s) * (instance.v(*a, w) - instance.v(b, w));
      }
      worst = std::min(worst, acc);
    }
  }
  return std::isfinite(worst) ? worst : 0.0;
}

RobustifiedScheme RobustifyScheme(const Instance& instance, const Belief& mu,
                                  const SignalingScheme& direct, double eps) {
  RequireSize(instance, mu, "belief");
  if (!IsDirect(direct, instance)) throw ValidationError("robustify needs a direct scheme");
  if (!(eps >= 0.0)) throw ValidationError("eps must be nonnegative");
  if (ObedienceSlack(instance, mu, direct) < -kLpTol) {
    throw ValidationError("scheme is not obedient at the given belief");
  }
  const std::size_t n = instance.num_states();
  const std::size_t m = instance.num_actions();

  RobustifiedScheme out;
  out.p0 = mu.min() / 2.0;
  if (!(out.p0 > 0.0)) throw DomainError("belief must have full support");
  const auto margin = ComputeInducibilityMargin(instance);
  out.margin = margin.margin;
  if (!(out.margin > 0.0)) throw DomainError("instance is not strictly inducible");
  out.eps_bound = std::min(out.p0, out.p0 * out.p0 * out.margin / 2.0);
  if (eps > 0.0 && eps >= out.eps_bound) {
    std::ostringstream os;
    os << "eps = " << eps << " is not below the admissible bound min(p0, p0^2 D / 2) = "
       << out.eps_bound << " (p0 = " << out.p0 << ", D = " << out.margin << ")";
    throw DomainError(os.str());
  }
  out.delta = 2.0 * eps / (out.p0 * out.margin);

  // Signal probabilities and robust posteriors xi_a.
  std::vector<double> signal_prob(m, 0.0);
  Matrix xi(m, n);
  std::vector<double> xi_bar(n, 0.0);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t w = 0; w < n; ++w) signal_prob[a] += mu[w] * direct(w, a);
    if (!(signal_prob[a] > 0.0)) continue;
    for (std::size_t w = 0; w < n; ++w) {
      const double posterior = mu[w] * direct(w, a) / signal_prob[a];
      xi(a, w) = (1.0 - out.delta) * posterior + out.delta * margin.inducing_beliefs[a][w];
      xi_bar[w] += signal_prob[a] * xi(a, w);
    }
  }

  // Smallest y with mu - (1 - y) xi_bar >= 0.
  double y = 0.0;
  for (std::size_t w = 0; w < n; ++w) {
    if (xi_bar[w] > 0.0) y = std::max(y, 1.0 - mu[w] / xi_bar[w]);
  }
  if (y <= 1e-15) y = 0.0;
  out.y = y;
  std::vector<double> chi(n);
  if (y > 0.0) {
    for (std::size_t w = 0; w < n; ++w) chi[w] = std::max(0.0, mu[w] - (1.0 - y) * xi_bar[w]) / y;
    out.chi = Belief::Normalized(std::move(chi));
  } else {
    out.chi = mu;
  }

  std::vector<std::string> signals = instance.actions();
  for (const auto& s : instance.states()) signals.push_back(kRevealPrefix + s);
  Matrix probs(n, m + n);
  for (std::size_t w = 0; w < n; ++w) {
    for (std::size_t a = 0; a < m; ++a) {
      probs(w, a) = (1.0 - y) * signal_prob[a] * xi(a, w) / mu[w];
    }
    probs(w, m + w) = y > 0.0 ? y * out.chi[w] / mu[w] : 0.0;
  }
  out.scheme = SignalingScheme(std::move(signals), CleanRows(std::move(probs)));

  for (std::size_t w = 0; w < n; ++w) {
    for (std::size_t a = 0; a < m; ++a) {
      out.action_value += instance.prior()[w] * out.scheme(w, a) * instance.u(a, w);
    }
  }
  out.original_value = DirectSchemeValue(instance, direct);
  return out;
}

ContinuityProbeReport ContinuityProbe(const Instance& instance, std::size_t sample_count,
                                      double p0, std::uint64_t seed, const Execution& exec) {
  if (!(p0 > 0.0)) throw ValidationError("p0 must be positive");
  const std::size_t n = instance.num_states();
  const double floor = 2.0 * p0;
  const double free_mass = 1.0 - floor * static_cast<double>(n);
  if (free_mass < 0.0) throw ValidationError("2 p0 |states| exceeds 1; no belief qualifies");

  ContinuityProbeReport report;
  report.pairs = sample_count;
  report.p0 = p0;
  report.margin = ComputeInducibilityMargin(instance).margin;
  report.lipschitz_bound = report.margin > 0.0 ? 4.0 / (p0 * p0 * report.margin)
                                               : std::numeric_limits<double>::infinity();

  Sampler rng(seed);
  const auto draw = [&]() {
    auto s = rng.Simplex(n);
    for (double& x : s) x = floor + free_mass * x;
    return s;
  };
  std::vector<std::vector<double>> beliefs;
  beliefs.reserve(2 * sample_count);
  for (std::size_t i = 0; i < sample_count; ++i) {
    auto mu = draw();
    auto other = draw();
    if (i % 2 == 1) {
      const double lambda = std::pow(10.0, -4.0 * rng.Uniform());
      for (std::size_t w = 0; w < n; ++w) other[w] = (1.0 - lambda) * mu[w] + lambda * other[w];
    }
    beliefs.push_back(std::move(mu));
    beliefs.push_back(std::move(other));
  }
  const auto values = Evaluate(
      beliefs.size(),
      [&](std::size_t i) {
        return SolveOptimalScheme(instance, Belief::Normalized(beliefs[i])).sender_value;
      },
      exec);
  for (std::size_t i = 0; i < sample_count; ++i) {
    const double dist = L1Distance(beliefs[2 * i], beliefs[2 * i + 1]);
    const double diff = std::abs(values[2 * i] - values[2 * i + 1]);
    if (dist > 0.0) report.max_ratio = std::max(report.max_ratio, diff / dist);
    if (diff > report.lipschitz_bound * dist + kLpTol) ++report.violations;
  }
  return report;
}

std::vector<SweepPoint> SweepUtility(const Instance& instance, const Belief& from,
                                     const Belief& to, std::size_t steps, EpsilonObedience eps,
                                     const Execution& exec) {
  RequireSize(instance, from, "sweep start");
  RequireSize(instance, to, "sweep end");
  if (steps < 2) throw ValidationError("sweep needs at least 2 steps");
  std::vector<SweepPoint> curve(steps);
  Evaluate(
      steps,
      [&](std::size_t i) {
        const double t = static_cast<double>(i) / static_cast<double>(steps - 1);
        std::vector<double> mu(instance.num_states());
        for (std::size_t w = 0; w < mu.size(); ++w) mu[w] = (1.0 - t) * from[w] + t * to[w];
        Belief belief = Belief::Normalized(std::move(mu));
        const auto sol = SolveOptimalScheme(instance, belief, eps);
        curve[i] = {t, belief, sol.sender_value, sol.obedience_slack};
        return sol.sender_value;
      },
      exec);
  return curve;
}

CurveShape AnalyzeCurve(const std::vector<SweepPoint>& curve, double tol) {
  CurveShape shape;
  const std::size_t k = curve.size();
  for (std::size_t i = 0; i + 1 < k; ++i) {
    shape.max_step = std::max(shape.max_step, std::abs(curve[i + 1].value - curve[i].value));
  }
  for (std::size_t j = 1; j + 1 < k; ++j) {
    const auto& a = curve[j - 1];
    const auto& b = curve[j];
    const auto& c = curve[j + 1];
    const double span = c.t - a.t;
    if (!(span > 0.0)) continue;
    const double chord = a.value + (c.value - a.value) * (b.t - a.t) / span;
    if (!shape.above_chord && b.value > chord + tol) shape.above_chord = {j - 1, j, j + 1};
    if (!shape.below_chord && b.value < chord - tol) shape.below_chord = {j - 1, j, j + 1};
  }
  // Running argmax from the left and from the right.
  std::vector<std::size_t> left(k);
  std::vector<std::size_t> right(k);
  for (std::size_t i = 0; i < k; ++i) {
    left[i] = (i == 0 || curve[i].value > curve[left[i - 1]].value) ? i : left[i - 1];
  }
  for (std::size_t i = k; i-- > 0;) {
    right[i] = (i + 1 == k || curve[i].value > curve[right[i + 1]].value) ? i : right[i + 1];
  }
  for (std::size_t j = 1; j + 1 < k && !shape.dip; ++j) {
    const double low = std::min(curve[left[j - 1]].value, curve[right[j + 1]].value);
    if (curve[j].value < low - tol) shape.dip = {left[j - 1], j, right[j + 1]};
  }
  return shape;
}

}  // namespace framecraft
