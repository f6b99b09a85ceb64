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

#include "framecraft/bsg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "framecraft/core.hpp"
#include "framecraft/error.hpp"
#include "framecraft/lp.hpp"

namespace framecraft {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr std::uint64_t kMaxProfiles = 1'000'000;
// Profiles whose values differ by less than this are treated as tied.
constexpr double kProfileTieTol = 1e-12;

std::uint64_t ProfileCount(std::size_t options, std::size_t slots) {
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < slots; ++i) {
    count *= options;
    if (count > kMaxProfiles) {
      throw ValidationError("more than 1e6 best-response profiles (" + std::to_string(options) +
                            "^" + std::to_string(slots) + ")");
    }
  }
  return count;
}

// Mixed-radix decode; slot 0 varies slowest.
std::vector<std::size_t> DecodeProfile(std::uint64_t index, std::size_t options,
                                       std::size_t slots) {
  std::vector<std::size_t> profile(slots);
  for (std::size_t i = slots; i-- > 0;) {
    profile[i] = static_cast<std::size_t>(index % options);
    index /= options;
  }
  return profile;
}

std::size_t ArgmaxWithTol(const std::vector<double>& values) {
  std::size_t best = values.size();
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (std::isnan(values[i])) continue;
    if (best == values.size() || values[i] > values[best] + kProfileTieTol) best = i;
  }
  return best;
}

lp::Solution SolveProfileLp(const BSGInstance& bsg, const std::vector<std::size_t>& profile) {
  const std::size_t nl = bsg.leader_actions.size();
  lp::Problem p(nl);
  for (std::size_t t = 0; t < bsg.types.size(); ++t) {
    for (std::size_t l = 0; l < nl; ++l) {
      p.objective[l] += bsg.type_dist[t] * bsg.leader_utility[t](l, profile[t]);
    }
  }
  p.Add(std::vector<double>(nl, 1.0), lp::Sense::kEqual, 1.0);
  for (std::size_t t = 0; t < bsg.types.size(); ++t) {
    for (std::size_t f = 0; f < bsg.follower_actions.size(); ++f) {
      if (f == profile[t]) continue;
      std::vector<double> row(nl);
      for (std::size_t l = 0; l < nl; ++l) {
        row[l] = bsg.follower_utility[t](l, profile[t]) - bsg.follower_utility[t](l, f);
      }
      p.Add(std::move(row), lp::Sense::kGreaterEqual, 0.0);
    }
  }
  return lp::Solve(p);
}

std::vector<double> CleanStrategy(std::vector<double> x) {
  double total = 0.0;
  for (double& v : x) {
    v = std::max(v, 0.0);
    total += v;
  }
  for (double& v : x) v /= total;
  return x;
}

}  // namespace

void BSGInstance::Validate() const {
  const std::size_t nl = leader_actions.size();
  const std::size_t nf = follower_actions.size();
  const std::size_t nt = types.size();
  if (nl == 0 || nf == 0 || nt == 0) throw ValidationError("BSG has an empty action or type set");
  if (type_dist.size() != nt) throw ValidationError("type_dist length differs from types");
  if (leader_utility.size() != nt || follower_utility.size() != nt) {
    throw ValidationError("BSG needs one leader and one follower matrix per type");
  }
  double total = 0.0;
  for (double p : type_dist) {
    if (!std::isfinite(p) || p < 0.0) throw ValidationError("type_dist has a negative entry");
    total += p;
  }
  if (std::abs(total - 1.0) > kSimplexTol) throw ValidationError("type_dist does not sum to 1");
  for (std::size_t t = 0; t < nt; ++t) {
    for (const Matrix* m : {&leader_utility[t], &follower_utility[t]}) {
      if (m->rows() != nl || m->cols() != nf) {
        throw ValidationError("utility matrix for type " + types[t] +
                              " must be leader actions x follower actions");
      }
      for (double x : m->data()) {
        if (!std::isfinite(x)) throw ValidationError("BSG utility has a non-finite entry");
      }
    }
  }
}

double BsgLeaderValue(const BSGInstance& bsg, const std::vector<double>& x) {
  const std::size_t nl = bsg.leader_actions.size();
  const std::size_t nf = bsg.follower_actions.size();
  double value = 0.0;
  for (std::size_t t = 0; t < bsg.types.size(); ++t) {
    std::vector<double> fu(nf, 0.0);
    std::vector<double> lu(nf, 0.0);
    for (std::size_t f = 0; f < nf; ++f) {
      for (std::size_t l = 0; l < nl; ++l) {
        fu[f] += x[l] * bsg.follower_utility[t](l, f);
        lu[f] += x[l] * bsg.leader_utility[t](l, f);
      }
    }
    const double best = *std::max_element(fu.begin(), fu.end());
    std::size_t choice = nf;
    for (std::size_t f = 0; f < nf; ++f) {
      if (fu[f] < best - kTieTol) continue;
      if (choice == nf || lu[f] > lu[choice] + kTieTol) choice = f;
    }
    value += bsg.type_dist[t] * lu[choice];
  }
  return value;
}

BSGSolution SolveBsgExact(const BSGInstance& bsg, const Execution& exec) {
  bsg.Validate();
  const std::size_t nf = bsg.follower_actions.size();
  const std::size_t nt = bsg.types.size();
  const std::uint64_t count = ProfileCount(nf, nt);
  const auto values = Evaluate(
      static_cast<std::size_t>(count),
      [&](std::size_t i) {
        const auto sol = SolveProfileLp(bsg, DecodeProfile(i, nf, nt));
        return sol.status == lp::Status::kOptimal ? sol.objective : kNaN;
      },
      exec);
  const std::size_t best = ArgmaxWithTol(values);
  if (best == values.size()) throw LpError("no follower best-response profile is feasible");
  BSGSolution out;
  out.follower_profile = DecodeProfile(best, nf, nt);
  const auto sol = SolveProfileLp(bsg, out.follower_profile);
  out.leader_strategy = CleanStrategy(sol.x);
  out.value = sol.objective;
  return out;
}

BSGSolution SolveBsgGrid(const BSGInstance& bsg, std::size_t resolution) {
  bsg.Validate();
  const auto lattice = EnumerateLattice(bsg.leader_actions.size(), resolution);
  BSGSolution out;
  out.value = -std::numeric_limits<double>::infinity();
  for (const auto& counts : lattice) {
    auto x = LatticeBelief(counts, resolution);
    const double v = BsgLeaderValue(bsg, x);
    if (v > out.value) {
      out.value = v;
      out.leader_strategy = std::move(x);
    }
  }
  return out;
}

BSGInstance ReduceFramingToBsg(const Instance& instance, const SignalingScheme& scheme) {
  const std::size_t n = instance.num_states();
  const std::size_t m = instance.num_actions();
  if (scheme.num_states() != n) throw ValidationError("scheme does not match the instance");
  BSGInstance bsg;
  bsg.leader_actions = instance.states();
  bsg.follower_actions = instance.actions();
  bsg.types = scheme.signals();
  for (std::size_t s = 0; s < scheme.num_signals(); ++s) {
    double ps = 0.0;
    for (std::size_t w = 0; w < n; ++w) ps += instance.prior()[w] * scheme(w, s);
    if (!(ps > 0.0)) {
      throw ValidationError("signal '" + scheme.signals()[s] +
                            "' has zero probability under the prior; drop it first");
    }
    bsg.type_dist.push_back(ps);
    Matrix leader(n, m);
    Matrix follower(n, m);
    for (std::size_t a = 0; a < m; ++a) {
      double u_tilde = 0.0;
      for (std::size_t w = 0; w < n; ++w) u_tilde += instance.prior()[w] * scheme(w, s) * instance.u(a, w);
      u_tilde /= ps;
      for (std::size_t w = 0; w < n; ++w) {
        leader(w, a) = u_tilde;
        follower(w, a) = scheme(w, s) * instance.v(a, w);
      }
    }
    bsg.leader_utility.push_back(std::move(leader));
    bsg.follower_utility.push_back(std::move(follower));
  }
  double total = 0.0;
  for (double p : bsg.type_dist) total += p;
  for (double& p : bsg.type_dist) p /= total;
  return bsg;
}

FramingReduction ReduceBsgToFraming(const BSGInstance& bsg, double eps) {
  bsg.Validate();
  if (!(eps > 0.0 && eps < 1.0)) throw ValidationError("reduction eps must lie in (0, 1)");
  const std::size_t nl = bsg.leader_actions.size();
  const std::size_t nt = bsg.types.size();
  if (bsg.follower_actions.size() != 2) {
    throw ValidationError("hard family needs exactly two follower actions");
  }
  HardFamilyConstants c;
  c.eps = eps;
  c.p_min = *std::min_element(bsg.type_dist.begin(), bsg.type_dist.end());
  if (!(c.p_min > 0.0)) throw ValidationError("hard family needs every type to have positive probability");
  for (std::size_t t = 0; t < nt; ++t) {
    for (std::size_t l = 0; l < nl; ++l) {
      const double f0 = bsg.follower_utility[t](l, 0);
      const double f1 = bsg.follower_utility[t](l, 1);
      if (std::abs(f0 - 1.0) > 1e-12) {
        throw ValidationError("hard family needs follower utility 1 for the first action (type " +
                              bsg.types[t] + ")");
      }
      if (f1 < 0.0) throw ValidationError("hard family needs nonnegative follower utility");
      c.v_max = std::max({c.v_max, f0, f1});
      for (std::size_t f = 0; f < 2; ++f) {
        const double lu = bsg.leader_utility[t](l, f);
        if (lu != 0.0 && lu != 1.0) throw ValidationError("hard family needs binary leader utility");
        if (lu != bsg.leader_utility[t](0, f)) {
          throw ValidationError("hard family needs leader utility independent of the leader action");
        }
      }
    }
  }
  const double theta = static_cast<double>(nt);
  c.L = theta / eps + 1.0;
  c.N = 1.0 / ((1.0 - eps) * c.p_min) + 1.0;
  c.K = c.N;
  c.M = c.v_max * (1.0 + c.K);

  // State and action layout.
  const std::size_t n = nl + nt + 1;
  const std::size_t m = 2 * nt + 2;
  const auto w_leader = [](std::size_t l) { return l; };
  const auto w_type = [nl](std::size_t t) { return nl + t; };
  const std::size_t w_dummy = nl + nt;
  const auto a_type = [](std::size_t t, std::size_t f) { return 2 * t + f; };
  const std::size_t a_dummy1 = 2 * nt;
  const std::size_t a_dummy2 = 2 * nt + 1;

  std::vector<std::string> states;
  for (const auto& l : bsg.leader_actions) states.push_back("leader:" + l);
  for (const auto& t : bsg.types) states.push_back("type:" + t);
  states.push_back("dummy");
  std::vector<std::string> actions;
  for (const auto& t : bsg.types) {
    for (const auto& f : bsg.follower_actions) actions.push_back(t + "/" + f);
  }
  actions.push_back("dummy_1");
  actions.push_back("dummy_2");

  std::vector<double> prior(n, 0.0);
  prior[w_dummy] = 1.0 - eps;
  for (std::size_t t = 0; t < nt; ++t) prior[w_type(t)] = eps / theta;

  std::vector<std::string> signals;
  for (const auto& t : bsg.types) signals.push_back("s:" + t);
  Matrix pi(n, nt);
  for (std::size_t t = 0; t < nt; ++t) {
    pi(w_dummy, t) = bsg.type_dist[t];
    pi(w_type(t), t) = 1.0;
    for (std::size_t l = 0; l < nl; ++l) pi(w_leader(l), t) = 1.0 / theta;
  }

  Matrix u(m, n);
  Matrix v(m, n);
  for (std::size_t t = 0; t < nt; ++t) {
    for (std::size_t f = 0; f < 2; ++f) {
      const std::size_t a = a_type(t, f);
      const double lu = bsg.leader_utility[t](0, f);
      for (std::size_t l = 0; l < nl; ++l) {
        u(a, w_leader(l)) = lu;
        v(a, w_leader(l)) = bsg.follower_utility[t](l, f);
      }
      for (std::size_t t2 = 0; t2 < nt; ++t2) {
        u(a, w_type(t2)) = t2 == t ? 0.0 : -c.L;
        v(a, w_type(t2)) = t2 == t ? 0.0 : -c.M;
      }
      u(a, w_dummy) = lu;
      v(a, w_dummy) = 0.0;
    }
  }
  for (std::size_t w = 0; w < n; ++w) {
    u(a_dummy1, w) = -c.N;
    u(a_dummy2, w) = -c.K;
  }
  for (std::size_t l = 0; l < nl; ++l) {
    v(a_dummy1, w_leader(l)) = -c.M - 1.0;
    v(a_dummy2, w_leader(l)) = 0.0;
  }
  for (std::size_t t = 0; t < nt; ++t) {
    v(a_dummy1, w_type(t)) = -c.M - 1.0;
    v(a_dummy2, w_type(t)) = c.K;
  }
  v(a_dummy1, w_dummy) = c.N;
  v(a_dummy2, w_dummy) = 0.0;

  for (std::size_t a = 0; a < m; ++a) {
    for (double& x : u.row(a)) x /= (1.0 - eps);
  }
  FramingReduction out{Instance::FromRaw(states, actions, Belief(std::move(prior)), u, v),
                       SignalingScheme(std::move(signals), std::move(pi)), c};
  return out;
}

FramingOptimum SolveFramingExactSmall(const Instance& instance, const SignalingScheme& scheme,
                                      std::size_t resolution, const Execution& exec) {
  if (instance.num_states() > 3) {
    throw ValidationError("dense-grid framing search supports at most 3 states");
  }
  const auto lattice = EnumerateLattice(instance.num_states(), resolution);
  const auto values = Evaluate(
      lattice.size(),
      [&](std::size_t i) {
        return SenderExAnteUtility(instance, Belief(LatticeBelief(lattice[i], resolution)),
                                   scheme);
      },
      exec);
  const std::size_t best = DeterministicArgmax(values);
  FramingOptimum out;
  out.belief = Belief(LatticeBelief(lattice[best], resolution));
  out.value = values[best];
  out.response_profile = ResponseProfile(instance, out.belief, scheme);
  return out;
}

namespace {

// Feasibility LP for one response profile; maximizes the smallest receiver
// signal probability t. Variables: mu (n), t.
lp::Solution SolveResponseLp(const Instance& instance, const SignalingScheme& scheme,
                             const std::vector<std::size_t>& profile) {
  const std::size_t n = instance.num_states();
  lp::Problem p(n + 1);
  p.objective[n] = 1.0;
  std::vector<double> sum(n + 1, 1.0);
  sum[n] = 0.0;
  p.Add(std::move(sum), lp::Sense::kEqual, 1.0);
  for (std::size_t s = 0; s < scheme.num_signals(); ++s) {
    const std::size_t a = profile[s];
    for (std::size_t b = 0; b < instance.num_actions(); ++b) {
      if (b == a) continue;
      std::vector<double> row(n + 1, 0.0);
      for (std::size_t w = 0; w < n; ++w) {
        row[w] = scheme(w, s) * (instance.v(a, w) - instance.v(b, w));
      }
      p.Add(std::move(row), lp::Sense::kGreaterEqual, 0.0);
    }
    std::vector<double> prob(n + 1, 0.0);
    for (std::size_t w = 0; w < n; ++w) prob[w] = -scheme(w, s);
    prob[n] = 1.0;
    p.Add(std::move(prob), lp::Sense::kLessEqual, 0.0);
  }
  return lp::Solve(p);
}

}  // namespace

FramingOptimum SolveFramingExact(const Instance& instance, const SignalingScheme& scheme,
                                 const Execution& exec) {
  const std::size_t n = instance.num_states();
  const std::size_t m = instance.num_actions();
  const std::size_t ns = scheme.num_signals();
  if (scheme.num_states() != n) throw ValidationError("scheme does not match the instance");
  const std::uint64_t count = ProfileCount(m, ns);
  const auto values = Evaluate(
      static_cast<std::size_t>(count),
      [&](std::size_t i) {
        const auto profile = DecodeProfile(i, m, ns);
        if (SolveResponseLp(instance, scheme, profile).status != lp::Status::kOptimal) return kNaN;
        double value = 0.0;
        for (std::size_t s = 0; s < ns; ++s) {
          for (std::size_t w = 0; w < n; ++w) {
            value += instance.prior()[w] * scheme(w, s) * instance.u(profile[s], w);
          }
        }
        return value;
      },
      exec);
  const std::size_t best = ArgmaxWithTol(values);
  if (best == values.size()) throw LpError("no response profile is feasible");
  FramingOptimum out;
  out.response_profile = DecodeProfile(best, m, ns);
  const auto sol = SolveResponseLp(instance, scheme, out.response_profile);
  out.belief = Belief::Normalized(CleanStrategy({sol.x.begin(), sol.x.begin() + static_cast<long>(n)}));
  out.value = values[best];
  return out;
}

}  // namespace framecraft
