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

#include "framecraft/types.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "framecraft/core.hpp"
#include "framecraft/error.hpp"

namespace framecraft {

Matrix Matrix::FromRows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) return {};
  Matrix m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols()) throw ValidationError("ragged matrix rows");
    std::copy(rows[r].begin(), rows[r].end(), m.row(r).begin());
  }
  return m;
}

std::vector<std::vector<double>> Matrix::ToRows() const {
  std::vector<std::vector<double>> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r].assign(row(r).begin(), row(r).end());
  return out;
}

Belief::Belief(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.empty()) throw ValidationError("belief must have at least one entry");
  double sum = 0.0;
  for (double& p : probs_) {
    if (!std::isfinite(p)) throw ValidationError("belief entry is not finite");
    if (p < 0.0) {
      if (p < -1e-12) {
        std::ostringstream os;
        os << "belief entry " << p << " is negative";
        throw ValidationError(os.str());
      }
      p = 0.0;
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > kSimplexTol) {
    std::ostringstream os;
    os.precision(12);
    os << "belief sums to " << sum << ", not 1";
    throw ValidationError(os.str());
  }
}

Belief Belief::Normalized(std::vector<double> weights) {
  double sum = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw ValidationError("weights must be nonnegative");
    sum += w;
  }
  if (sum <= 0.0) throw ValidationError("weights sum to zero");
  for (double& w : weights) w /= sum;
  return Belief(std::move(weights));
}

Belief Belief::Uniform(std::size_t n) {
  return Belief(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

Belief Belief::PointMass(std::size_t n, std::size_t index) {
  std::vector<double> p(n, 0.0);
  p.at(index) = 1.0;
  return Belief(std::move(p));
}

double Belief::min() const { return *std::min_element(probs_.begin(), probs_.end()); }

double L1Distance(std::span<const double> a, std::span<const double> b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d += std::abs(a[i] - b[i]);
  return d;
}

SignalingScheme::SignalingScheme(std::vector<std::string> signals, Matrix probs)
    : signals_(std::move(signals)), probs_(std::move(probs)) {
  if (signals_.empty()) throw ValidationError("scheme needs at least one signal");
  if (probs_.cols() != signals_.size()) {
    throw ValidationError("scheme matrix columns must match the signal list");
  }
  for (std::size_t w = 0; w < probs_.rows(); ++w) {
    double sum = 0.0;
    for (double& p : probs_.row(w)) {
      if (!std::isfinite(p) || p < -1e-12) {
        throw ValidationError("scheme row " + std::to_string(w) + " has a negative entry");
      }
      p = std::max(p, 0.0);
      sum += p;
    }
    if (std::abs(sum - 1.0) > kSimplexTol) {
      std::ostringstream os;
      os.precision(12);
      os << "scheme row " << w << " sums to " << sum;
      throw ValidationError(os.str());
    }
  }
}

SignalingScheme SignalingScheme::Uninformative(std::size_t num_states, std::string signal) {
  return SignalingScheme({std::move(signal)}, Matrix(num_states, 1, 1.0));
}

std::optional<std::size_t> SignalingScheme::signal_index(const std::string& label) const {
  auto it = std::find(signals_.begin(), signals_.end(), label);
  if (it == signals_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - signals_.begin());
}

EpsilonObedience::EpsilonObedience(double eps) : epsilon(eps) {
  if (!(eps >= 0.0 && eps <= 1.0)) throw ValidationError("obedience epsilon must lie in [0,1]");
}

Instance::Instance(std::vector<std::string> states, std::vector<std::string> actions,
                   Belief prior, Matrix sender_utility, Matrix receiver_utility,
                   NormalizationRecord normalization,
                   std::vector<std::pair<std::size_t, std::size_t>> forbidden)
    : states_(std::move(states)),
      actions_(std::move(actions)),
      prior_(std::move(prior)),
      sender_(std::move(sender_utility)),
      receiver_(std::move(receiver_utility)),
      normalization_(normalization),
      forbidden_(std::move(forbidden)) {
  if (states_.empty() || actions_.empty()) {
    throw ValidationError("instance needs at least one state and one action");
  }
  if (prior_.size() != states_.size()) throw ValidationError("prior length != number of states");
  for (const Matrix* m : {&sender_, &receiver_}) {
    if (m->rows() != actions_.size() || m->cols() != states_.size()) {
      throw ValidationError("utility matrices must be actions x states");
    }
    for (double x : m->data()) {
      if (!std::isfinite(x)) throw ValidationError("utility entry is not finite");
    }
  }
  if (!(normalization_.sender_scale > 0.0) || !(normalization_.receiver_scale > 0.0)) {
    throw ValidationError("normalization scales must be positive");
  }
  forbidden_mask_.assign(actions_.size() * states_.size(), 0);
  for (auto [a, w] : forbidden_) {
    if (a >= actions_.size() || w >= states_.size()) {
      throw ValidationError("forbidden pair out of range");
    }
    forbidden_mask_[a * states_.size() + w] = 1;
  }
  std::sort(forbidden_.begin(), forbidden_.end());
  forbidden_.erase(std::unique(forbidden_.begin(), forbidden_.end()), forbidden_.end());
}

Instance Instance::FromRaw(std::vector<std::string> states, std::vector<std::string> actions,
                           Belief prior, const Matrix& raw_sender, const Matrix& raw_receiver,
                           std::vector<std::pair<std::size_t, std::size_t>> forbidden) {
  if (raw_sender.rows() != actions.size() || raw_sender.cols() != states.size() ||
      raw_receiver.rows() != actions.size() || raw_receiver.cols() != states.size()) {
    throw ValidationError("utility matrices must be actions x states");
  }
  std::vector<char> skip(actions.size() * states.size(), 0);
  for (auto [a, w] : forbidden) {
    if (a >= actions.size() || w >= states.size()) {
      throw ValidationError("forbidden pair out of range");
    }
    skip[a * states.size() + w] = 1;
  }
  auto norm = NormalizeUtilities(raw_sender, raw_receiver, skip);
  return Instance(std::move(states), std::move(actions), std::move(prior),
                  std::move(norm.sender), std::move(norm.receiver), norm.record,
                  std::move(forbidden));
}

std::optional<std::size_t> Instance::action_index(const std::string& label) const {
  auto it = std::find(actions_.begin(), actions_.end(), label);
  if (it == actions_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - actions_.begin());
}

std::optional<std::size_t> Instance::state_index(const std::string& label) const {
  auto it = std::find(states_.begin(), states_.end(), label);
  if (it == states_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - states_.begin());
}

Instance Instance::WithPrior(Belief prior) const {
  Instance copy = *this;
  if (prior.size() != states_.size()) throw ValidationError("prior length != number of states");
  copy.prior_ = std::move(prior);
  return copy;
}

}  // namespace framecraft
